#pragma once

#include <compare>
#include <string>
#include <vector>

#include "imdplan/products.hpp"
#include "imdplan/units.hpp"

namespace imdplan {

/// A family of products n_p f_p + (f_a1 + ... ) - (f_b1 + ...) where the signal
/// slots may hold any signal in the band. `plus` and `minus` count the slots.
struct ProductClass {
  int pump = 0;
  int plus = 0;
  int minus = 0;

  int signal_order() const { return plus + minus; }
  /// Conjugate classes fold onto the same spectrum; this picks pump > 0, or
  /// pump == 0 with plus >= minus.
  ProductClass canonical() const;
  std::string label() const;

  auto operator<=>(const ProductClass&) const = default;
};

struct FrequencyInterval {
  Frequency lo;
  Frequency hi;
  /// O_s * (f_max - f_min); the interval width before folding at zero.
  Frequency unfolded_width;

  bool overlaps(Frequency a, Frequency b) const { return lo <= b && a <= hi; }
};

/// Range of frequencies a class can reach with every slot placed anywhere in the band,
/// folded onto non-negative frequencies.
FrequencyInterval class_band(const ProductClass& cls, const SignalBand& band, Frequency pump);

/// f_p > 2 f_max - f_min: no product f_i +- (f_p - f_j) can land in the band.
bool pump_condition_satisfied(const SignalBand& band, Frequency pump);
/// f_p - (2 f_max - f_min): distance between the band and the nearest f_i +- (f_p - f_j).
Frequency pump_condition_margin(const SignalBand& band, Frequency pump);

/// Canonical classes with min_os <= O_s <= max_os and |n_p| <= max_pump_order.
std::vector<ProductClass> enumerate_classes(int min_signal_order, int max_signal_order,
                                            int max_pump_order);

/// The two O_s = 2 classes f_i + (f_p - f_j) and f_i - (f_p - f_j).
std::vector<ProductClass> pump_difference_classes();

}  // namespace imdplan
