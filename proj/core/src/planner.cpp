#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "imdplan/collision.hpp"
#include "imdplan/parallel.hpp"

namespace imdplan::collision {

namespace {

bool fits(const std::vector<Frequency>& f, std::size_t skip, double candidate,
          double min_spacing) {
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (j == skip) continue;
    if (std::abs(f[j].hz() - candidate) < min_spacing) return false;
  }
  return true;
}

std::vector<Frequency> random_start(int n, const SignalBand& band, double min_spacing,
                                    Rng& rng) {
  const double lo = band.f_min.hz();
  const double w = band.width().hz();
  std::vector<Frequency> f(static_cast<std::size_t>(n));
  for (;;) {
    bool ok = true;
    for (std::size_t i = 0; i < f.size() && ok; ++i) {
      f[i] = Frequency::hz(lo + w * uniform01(rng));
      ok = fits(std::vector<Frequency>(f.begin(), f.begin() + static_cast<long>(i)),
                f.size(), f[i].hz(), min_spacing);
    }
    if (ok) return f;
  }
}

}  // namespace

FrequencyPlan plan_frequencies(int n, const SignalBand& band, const CollisionPolicy& policy,
                               Frequency pump, Frequency min_spacing, std::size_t max_iters,
                               std::uint64_t seed) {
  policy.validate();
  if (n < 1) throw std::invalid_argument("plan: N must be >= 1");
  if (spacing_acceptance(n, min_spacing, band.width()) < 1e-6) {
    throw std::invalid_argument("plan: " + std::to_string(n) +
                                " signals cannot be placed at the requested spacing");
  }
  const double spacing = min_spacing.hz();
  const std::size_t stall_limit = 50 + 10 * static_cast<std::size_t>(n);
  const double lo = band.f_min.hz();
  const double w = band.width().hz();

  FrequencyPlan best;
  bool have_best = false;
  std::size_t iters = 0;
  for (std::size_t restart = 0;; ++restart) {
    auto rng = make_rng(seed, restart);
    auto f = random_start(n, band, spacing, rng);
    auto coll = detect_collisions(f, pump, policy);
    std::size_t stall = 0;
    for (;;) {
      if (!have_best || coll.size() < best.residual_collisions.size()) {
        best.assigned = f;
        best.residual_collisions = coll;
        have_best = true;
      }
      if (coll.empty() || iters >= max_iters || stall >= stall_limit) break;
      ++iters;

      // Indices taking part in the worst collision: the victim and every contributor.
      const auto& worst = coll.front();
      std::vector<std::size_t> involved{worst.signal_index};
      for (std::size_t i = 0; i < worst.product.signal.size(); ++i) {
        if (worst.product.signal[i] != 0 && i != worst.signal_index) involved.push_back(i);
      }
      const std::size_t move =
          involved[static_cast<std::size_t>(uniform01(rng) * static_cast<double>(involved.size())) %
                   involved.size()];

      bool moved = false;
      auto trial = f;
      for (int attempt = 0; attempt < 64 && !moved; ++attempt) {
        const double cand = lo + w * uniform01(rng);
        if (fits(f, move, cand, spacing)) {
          trial[move] = Frequency::hz(cand);
          moved = true;
        }
      }
      if (!moved) {
        ++stall;
        continue;
      }
      auto trial_coll = detect_collisions(trial, pump, policy);
      if (trial_coll.size() < coll.size()) {
        stall = 0;
      } else {
        ++stall;
      }
      if (trial_coll.size() <= coll.size()) {
        f = std::move(trial);
        coll = std::move(trial_coll);
      }
    }
    best.restarts = restart;
    if (best.valid() || iters >= max_iters) break;
  }
  best.pump = pump;
  best.iterations = iters;
  return best;
}

}  // namespace imdplan::collision
