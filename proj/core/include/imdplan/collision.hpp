#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "imdplan/bands.hpp"
#include "imdplan/products.hpp"

namespace imdplan::collision {

/// Order bounds used when no explicit class list is given.
struct OrderFilter {
  int min_signal_order = 2;
  int max_signal_order = 2;
  int max_pump_order = 2;

  bool operator==(const OrderFilter&) const = default;
};

/// A spur closer than delta_min to a signal counts as a collision.
struct CollisionPolicy {
  Frequency delta_min = Frequency::mhz(5.0);
  /// Explicit classes take precedence over `orders` when non-empty.
  std::vector<ProductClass> classes;
  OrderFilter orders;
  /// Drop index combinations that reduce to a signal itself or to a pure pump harmonic.
  bool exclude_degenerate = true;

  void validate() const;
  /// Classes to scan; with an order filter, only those whose band comes within
  /// delta_min of the signal band (no other class can produce a collision).
  std::vector<ProductClass> resolve_classes(const SignalBand& band, Frequency pump) const;

  bool operator==(const CollisionPolicy&) const = default;
};

struct Collision {
  Coefficients product;  // reduced, canonical
  Frequency product_freq;
  std::size_t signal_index = 0;
  Frequency detuning;  // |f_prod - f_signal|
};

/// All (product, signal) pairs closer than delta_min, deduplicated by reduced product.
/// Sorted by (detuning, signal, product).
std::vector<Collision> detect_collisions(std::span<const Frequency> signals, Frequency pump,
                                         const CollisionPolicy& policy);

/// Smallest |f_prod - f_signal| over every non-degenerate product of `classes`;
/// +inf when there are none. A configuration collides iff this is < delta_min.
double min_detuning_hz(std::span<const double> signals_hz, double pump_hz,
                       std::span<const ProductClass> classes, bool exclude_degenerate);

struct MCConfig {
  std::size_t samples = 2000;
  SignalBand band{Frequency::ghz(6.4), Frequency::ghz(7.4)};
  Frequency min_spacing = Frequency::mhz(20.0);
  std::vector<int> n_values{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::vector<Frequency> delta_values{Frequency::mhz(0.2), Frequency::mhz(0.5),
                                      Frequency::mhz(1.0), Frequency::mhz(2.0),
                                      Frequency::mhz(5.0), Frequency::mhz(10.0)};
  Frequency pump = Frequency::ghz(7.92);
  std::uint64_t seed = 1;

  void validate() const;
  bool operator==(const MCConfig&) const = default;
};

/// Probability that N points, uniform on an interval of width W with pairwise
/// spacing >= s, pass rejection: (1 - (N - 1) s / W)^N.
double spacing_acceptance(int n, Frequency min_spacing, Frequency band_width);

/// One configuration of n signals, uniform in the band conditioned on spacing, drawn by
/// whole-configuration rejection from the stream (seed, sample).
std::vector<double> sample_configuration(const MCConfig& cfg, int n, std::uint64_t sample);

struct MCTable {
  std::vector<int> n_values;
  std::vector<Frequency> delta_values;
  std::vector<std::vector<double>> p_coll;  // [n][delta]
  std::vector<std::vector<double>> std_error;  // binomial standard error
  std::size_t samples = 0;

  double at(int n, Frequency delta) const;
};

/// Collision probability per (N, delta_min). Sample s draws one configuration of the
/// largest N and every smaller N uses its leading signals, so the table is exactly
/// monotone in N and in delta_min.
MCTable mc_collision_probability(const MCConfig& cfg, const CollisionPolicy& policy);

/// Lines sized as evenly as possible: 17 over 4 -> {5, 4, 4, 4}.
std::vector<int> even_split(int qubits, int lines);

/// 1 - prod_lines (1 - P_coll(N_line, delta_min)).
double surface_code_failure(std::span<const int> line_sizes, Frequency delta_min,
                            Frequency pump, const CollisionPolicy& policy, MCConfig cfg);
double compose_failure(std::span<const double> per_line);

struct FrequencyPlan {
  std::vector<Frequency> assigned;
  Frequency pump;
  std::vector<Collision> residual_collisions;
  std::size_t iterations = 0;
  std::size_t restarts = 0;

  bool valid() const { return residual_collisions.empty(); }
};

/// Randomized restarts with greedy repair; returns the first collision-free plan, else
/// the best plan found with its residual collisions listed.
FrequencyPlan plan_frequencies(int n, const SignalBand& band, const CollisionPolicy& policy,
                               Frequency pump, Frequency min_spacing, std::size_t max_iters,
                               std::uint64_t seed);

/// Detuning resolvable by a square pulse of length tau: 0.6 / tau (0.12 us -> 5 MHz).
Frequency fwhm_to_delta(double pulse_length_s);

}  // namespace imdplan::collision
