#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>

namespace imdplan {

/// Worker count for library-internal parallel loops: hardware concurrency, capped
/// by the IMDPLAN_THREADS environment variable when set.
std::size_t worker_count();

/// Runs fn(i) for i in [0, n). Results must not depend on the worker count, so fn
/// may only write to slots owned by index i. The first exception is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                  std::size_t workers = worker_count());

/// SplitMix64-style mix of (seed, index) into an independent stream seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed, std::uint64_t index) {
  return Rng(derive_seed(seed, index));
}

/// Uniform double in [0, 1) from the top 53 bits; identical on every standard library.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace imdplan
