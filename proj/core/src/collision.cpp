#include "imdplan/collision.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <stdexcept>
#include <tuple>

namespace imdplan::collision {

namespace {

// Walks every assignment of signal indices to the class's slots, with the plus slots
// and the minus slots each taken as multisets. `counts` holds the reduced signal
// coefficients for the current assignment.
class ClassWalker {
 public:
  ClassWalker(std::span<const double> signals_hz, double pump_hz, const ProductClass& cls,
              bool exclude_degenerate)
      : f_(signals_hz),
        pump_hz_(pump_hz),
        cls_(cls),
        exclude_degenerate_(exclude_degenerate),
        counts_(signals_hz.size(), 0) {}

  template <typename Visit>
  void run(Visit&& visit) {
    plus(0, 0, cls_.pump * pump_hz_, visit);
  }

 private:
  template <typename Visit>
  void plus(int slot, std::size_t start, double acc, Visit& visit) {
    if (slot == cls_.plus) {
      minus(0, 0, acc, visit);
      return;
    }
    for (std::size_t i = start; i < f_.size(); ++i) {
      ++counts_[i];
      plus(slot + 1, i, acc + f_[i], visit);
      --counts_[i];
    }
  }

  template <typename Visit>
  void minus(int slot, std::size_t start, double acc, Visit& visit) {
    if (slot == cls_.minus) {
      if (exclude_degenerate_ && degenerate()) return;
      visit(acc, std::span<const int>(counts_));
      return;
    }
    for (std::size_t i = start; i < f_.size(); ++i) {
      --counts_[i];
      minus(slot + 1, i, acc - f_[i], visit);
      ++counts_[i];
    }
  }

  bool degenerate() const {
    int nonzero = 0;
    int magnitude = 0;
    for (int c : counts_) {
      if (c != 0) {
        ++nonzero;
        magnitude += std::abs(c);
      }
    }
    if (nonzero == 0) return true;  // pump harmonic only
    return cls_.pump == 0 && nonzero == 1 && magnitude == 1;  // a signal itself
  }

  std::span<const double> f_;
  double pump_hz_;
  ProductClass cls_;
  bool exclude_degenerate_;
  std::vector<int> counts_;
};

}  // namespace

void CollisionPolicy::validate() const {
  if (!(delta_min.hz() > 0.0)) throw std::invalid_argument("delta_min must be positive");
  for (const auto& c : classes) {
    if (c.plus < 0 || c.minus < 0 || c.signal_order() < 1) {
      throw std::invalid_argument("product class needs at least one signal slot");
    }
  }
  if (classes.empty() &&
      (orders.min_signal_order < 1 || orders.max_signal_order < orders.min_signal_order ||
       orders.max_pump_order < 0)) {
    throw std::invalid_argument("invalid order filter");
  }
}

std::vector<ProductClass> CollisionPolicy::resolve_classes(const SignalBand& band,
                                                           Frequency pump) const {
  if (!classes.empty()) return classes;
  std::vector<ProductClass> out;
  const Frequency lo = band.f_min - delta_min;
  const Frequency hi = band.f_max + delta_min;
  for (const auto& c : enumerate_classes(orders.min_signal_order, orders.max_signal_order,
                                         orders.max_pump_order)) {
    if (class_band(c, band, pump).overlaps(lo, hi)) out.push_back(c);
  }
  return out;
}

std::vector<Collision> detect_collisions(std::span<const Frequency> signals, Frequency pump,
                                         const CollisionPolicy& policy) {
  policy.validate();
  std::vector<double> f;
  f.reserve(signals.size());
  for (const auto& s : signals) f.push_back(s.hz());
  {
    auto sorted = f;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument("signal frequencies must be distinct");
    }
  }
  if (f.empty()) return {};

  const auto [mn, mx] = std::minmax_element(f.begin(), f.end());
  std::vector<ProductClass> classes;
  if (*mn < *mx) {
    classes = policy.resolve_classes(SignalBand(Frequency::hz(*mn), Frequency::hz(*mx)), pump);
  } else {
    // One signal: a zero-width band; widen by a hair so the filter stays well defined.
    classes = policy.resolve_classes(
        SignalBand(Frequency::hz(*mn - 1.0), Frequency::hz(*mx + 1.0)), pump);
  }

  const double delta = policy.delta_min.hz();
  std::set<std::tuple<Coefficients, std::size_t>> seen;
  std::vector<Collision> out;
  for (const auto& cls : classes) {
    ClassWalker walker(f, pump.hz(), cls, policy.exclude_degenerate);
    walker.run([&](double signed_hz, std::span<const int> counts) {
      const double fp = std::abs(signed_hz);
      for (std::size_t k = 0; k < f.size(); ++k) {
        const double det = std::abs(fp - f[k]);
        if (det >= delta) continue;
        Coefficients c{cls.pump, std::vector<int>(counts.begin(), counts.end())};
        c = c.canonical();
        if (!seen.emplace(c, k).second) continue;
        out.push_back(Collision{std::move(c), Frequency::hz(fp), k, Frequency::hz(det)});
      }
    });
  }
  std::sort(out.begin(), out.end(), [](const Collision& a, const Collision& b) {
    return std::tie(a.detuning, a.signal_index, a.product) <
           std::tie(b.detuning, b.signal_index, b.product);
  });
  return out;
}

double min_detuning_hz(std::span<const double> signals_hz, double pump_hz,
                       std::span<const ProductClass> classes, bool exclude_degenerate) {
  std::vector<double> sorted(signals_hz.begin(), signals_hz.end());
  std::sort(sorted.begin(), sorted.end());
  double best = std::numeric_limits<double>::infinity();
  for (const auto& cls : classes) {
    ClassWalker walker(signals_hz, pump_hz, cls, exclude_degenerate);
    walker.run([&](double signed_hz, std::span<const int>) {
      const double fp = std::abs(signed_hz);
      auto it = std::lower_bound(sorted.begin(), sorted.end(), fp);
      if (it != sorted.end()) best = std::min(best, *it - fp);
      if (it != sorted.begin()) best = std::min(best, fp - *std::prev(it));
    });
  }
  return best;
}

Frequency fwhm_to_delta(double pulse_length_s) {
  if (!(pulse_length_s > 0.0)) throw std::invalid_argument("pulse length must be positive");
  return Frequency::hz(0.6 / pulse_length_s);
}

}  // namespace imdplan::collision
