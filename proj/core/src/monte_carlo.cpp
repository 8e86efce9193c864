#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "imdplan/collision.hpp"
#include "imdplan/parallel.hpp"

namespace imdplan::collision {

namespace {

constexpr double kMinAcceptance = 1e-6;

bool spaced(std::vector<double> f, double min_spacing) {
  std::sort(f.begin(), f.end());
  for (std::size_t i = 1; i < f.size(); ++i) {
    if (f[i] - f[i - 1] < min_spacing) return false;
  }
  return true;
}

}  // namespace

void MCConfig::validate() const {
  if (samples == 0) throw std::invalid_argument("mc: samples must be >= 1");
  if (n_values.empty()) throw std::invalid_argument("mc: n_values is empty");
  for (int n : n_values) {
    if (n < 1) throw std::invalid_argument("mc: every N must be >= 1");
  }
  if (delta_values.empty()) throw std::invalid_argument("mc: delta_values is empty");
  for (const auto& d : delta_values) {
    if (!(d.hz() > 0.0)) throw std::invalid_argument("mc: delta_min values must be positive");
  }
  if (min_spacing.hz() < 0.0) throw std::invalid_argument("mc: min_spacing must be >= 0");
  const int n_max = *std::max_element(n_values.begin(), n_values.end());
  const double acc = spacing_acceptance(n_max, min_spacing, band.width());
  if (acc < kMinAcceptance) {
    throw std::invalid_argument("mc: N=" + std::to_string(n_max) + " signals at spacing " +
                                std::to_string(min_spacing.mhz()) +
                                " MHz do not fit the band (rejection acceptance " +
                                std::to_string(acc) + ")");
  }
}

double spacing_acceptance(int n, Frequency min_spacing, Frequency band_width) {
  if (n <= 1) return 1.0;
  const double x = 1.0 - (n - 1) * min_spacing.hz() / band_width.hz();
  if (x <= 0.0) return 0.0;
  return std::pow(x, n);
}

std::vector<double> sample_configuration(const MCConfig& cfg, int n, std::uint64_t sample) {
  const double acc = spacing_acceptance(n, cfg.min_spacing, cfg.band.width());
  if (acc < kMinAcceptance) {
    throw std::invalid_argument("spacing constraint is infeasible for N=" + std::to_string(n));
  }
  auto rng = make_rng(cfg.seed, sample);
  const double lo = cfg.band.f_min.hz();
  const double w = cfg.band.width().hz();
  std::vector<double> f(static_cast<std::size_t>(n));
  for (;;) {
    for (auto& x : f) x = lo + w * uniform01(rng);
    if (spaced(f, cfg.min_spacing.hz())) return f;
  }
}

double MCTable::at(int n, Frequency delta) const {
  const auto ni = std::find(n_values.begin(), n_values.end(), n);
  const auto di = std::find(delta_values.begin(), delta_values.end(), delta);
  if (ni == n_values.end() || di == delta_values.end()) {
    throw std::out_of_range("no MC entry for N=" + std::to_string(n));
  }
  return p_coll[static_cast<std::size_t>(ni - n_values.begin())]
               [static_cast<std::size_t>(di - delta_values.begin())];
}

MCTable mc_collision_probability(const MCConfig& cfg, const CollisionPolicy& policy) {
  cfg.validate();
  policy.validate();
  const int n_max = *std::max_element(cfg.n_values.begin(), cfg.n_values.end());
  // Scan classes for the widest delta in the table; narrower deltas are subsets.
  CollisionPolicy scan = policy;
  scan.delta_min = *std::max_element(cfg.delta_values.begin(), cfg.delta_values.end());
  const auto classes = scan.resolve_classes(cfg.band, cfg.pump);

  const std::size_t nn = cfg.n_values.size();
  std::vector<double> min_det(cfg.samples * nn);
  parallel_for(cfg.samples, [&](std::size_t s) {
    const auto f = sample_configuration(cfg, n_max, s);
    for (std::size_t i = 0; i < nn; ++i) {
      const auto n = static_cast<std::size_t>(cfg.n_values[i]);
      min_det[s * nn + i] = min_detuning_hz(std::span<const double>(f.data(), n),
                                            cfg.pump.hz(), classes, policy.exclude_degenerate);
    }
  });

  MCTable t;
  t.n_values = cfg.n_values;
  t.delta_values = cfg.delta_values;
  t.samples = cfg.samples;
  const double total = static_cast<double>(cfg.samples);
  for (std::size_t i = 0; i < nn; ++i) {
    std::vector<double> p, se;
    for (const auto& d : cfg.delta_values) {
      std::size_t hits = 0;
      for (std::size_t s = 0; s < cfg.samples; ++s) {
        if (min_det[s * nn + i] < d.hz()) ++hits;
      }
      const double q = static_cast<double>(hits) / total;
      p.push_back(q);
      se.push_back(std::sqrt(q * (1.0 - q) / total));
    }
    t.p_coll.push_back(std::move(p));
    t.std_error.push_back(std::move(se));
  }
  return t;
}

std::vector<int> even_split(int qubits, int lines) {
  if (qubits < 1 || lines < 1 || lines > qubits) {
    throw std::invalid_argument("need 1 <= lines <= qubits");
  }
  std::vector<int> out(static_cast<std::size_t>(lines), qubits / lines);
  for (int i = 0; i < qubits % lines; ++i) ++out[static_cast<std::size_t>(i)];
  return out;
}

double compose_failure(std::span<const double> per_line) {
  double ok = 1.0;
  for (double p : per_line) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("line probability outside [0, 1]");
    ok *= 1.0 - p;
  }
  return 1.0 - ok;
}

double surface_code_failure(std::span<const int> line_sizes, Frequency delta_min,
                            Frequency pump, const CollisionPolicy& policy, MCConfig cfg) {
  if (line_sizes.empty()) throw std::invalid_argument("no lines given");
  std::vector<int> ns(line_sizes.begin(), line_sizes.end());
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  cfg.n_values = ns;
  cfg.delta_values = {delta_min};
  cfg.pump = pump;
  CollisionPolicy pol = policy;
  pol.delta_min = delta_min;
  const auto table = mc_collision_probability(cfg, pol);
  std::vector<double> per_line;
  for (int n : line_sizes) per_line.push_back(table.at(n, delta_min));
  return compose_failure(per_line);
}

}  // namespace imdplan::collision
