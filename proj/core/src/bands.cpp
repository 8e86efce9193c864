#include "imdplan/bands.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>
#include <stdexcept>

namespace imdplan {

ProductClass ProductClass::canonical() const {
  if (pump < 0 || (pump == 0 && plus < minus)) {
    return ProductClass{-pump, minus, plus};
  }
  return *this;
}

std::string ProductClass::label() const {
  std::ostringstream os;
  bool first = true;
  auto term = [&](int count, char sign, const char* sym) {
    for (int i = 0; i < count; ++i) {
      if (first) {
        if (sign == '-') os << '-';
      } else {
        os << ' ' << sign << ' ';
      }
      os << sym;
      first = false;
    }
  };
  term(plus, '+', "w_s");
  term(minus, '-', "w_s");
  if (pump != 0) {
    const int n = std::abs(pump);
    if (first) {
      os << (pump < 0 ? "-" : "");
    } else {
      os << (pump < 0 ? " - " : " + ");
    }
    if (n != 1) os << n;
    os << "w_p";
  }
  if (first && pump == 0) os << "0";
  return os.str();
}

FrequencyInterval class_band(const ProductClass& cls, const SignalBand& band, Frequency pump) {
  const double fp = pump.hz();
  const double lo_b = band.f_min.hz();
  const double hi_b = band.f_max.hz();
  const double lo = cls.pump * fp + cls.plus * lo_b - cls.minus * hi_b;
  const double hi = cls.pump * fp + cls.plus * hi_b - cls.minus * lo_b;
  const Frequency width = Frequency::hz(hi - lo);
  if (lo >= 0.0) {
    return {Frequency::hz(lo), Frequency::hz(hi), width};
  }
  if (hi <= 0.0) {
    return {Frequency::hz(-hi), Frequency::hz(-lo), width};
  }
  return {Frequency::hz(0.0), Frequency::hz(std::max(-lo, hi)), width};
}

bool pump_condition_satisfied(const SignalBand& band, Frequency pump) {
  return pump.hz() > 2.0 * band.f_max.hz() - band.f_min.hz();
}

Frequency pump_condition_margin(const SignalBand& band, Frequency pump) {
  return Frequency::hz(pump.hz() - (2.0 * band.f_max.hz() - band.f_min.hz()));
}

std::vector<ProductClass> enumerate_classes(int min_signal_order, int max_signal_order,
                                            int max_pump_order) {
  if (min_signal_order < 0 || max_signal_order < min_signal_order || max_pump_order < 0) {
    throw std::invalid_argument("invalid class order bounds");
  }
  std::set<ProductClass> out;
  for (int os = std::max(min_signal_order, 1); os <= max_signal_order; ++os) {
    for (int np = -max_pump_order; np <= max_pump_order; ++np) {
      for (int plus = 0; plus <= os; ++plus) {
        out.insert(ProductClass{np, plus, os - plus}.canonical());
      }
    }
  }
  return {out.begin(), out.end()};
}

std::vector<ProductClass> pump_difference_classes() {
  // f_i + f_p - f_j, and f_i - f_p + f_j folded as f_p - f_i - f_j.
  return {ProductClass{1, 0, 2}, ProductClass{1, 1, 1}};
}

}  // namespace imdplan
