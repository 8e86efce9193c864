#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "imdplan/units.hpp"

namespace imdplan {

struct Tone {
  Frequency freq;
  PowerDbm power;
  double phase = 0.0;  // radians, kept in [0, 2pi)

  Tone() = default;
  Tone(Frequency f, PowerDbm p, double phase_rad = 0.0);

  bool operator==(const Tone&) const = default;
};

/// A pump plus N >= 1 signal tones with pairwise distinct frequencies.
class ToneSet {
 public:
  ToneSet(Tone pump, std::vector<Tone> signals);

  const Tone& pump() const { return pump_; }
  const std::vector<Tone>& signals() const { return signals_; }
  std::size_t size() const { return signals_.size(); }

  std::vector<double> signal_powers_dbm() const;
  std::vector<double> signal_phases() const;
  std::vector<double> signal_freqs_hz() const;

  /// Pump first, then the signals in order.
  std::vector<Tone> all_tones() const;

 private:
  Tone pump_;
  std::vector<Tone> signals_;
};

/// Closed frequency interval [f_min, f_max] holding the multiplexed signals.
struct SignalBand {
  Frequency f_min;
  Frequency f_max;

  SignalBand() = default;
  SignalBand(Frequency lo, Frequency hi);

  Frequency width() const { return f_max - f_min; }
  bool contains(Frequency f) const { return f >= f_min && f <= f_max; }

  bool operator==(const SignalBand&) const = default;
};

/// Integer mixing coefficients (n_p, n_1..n_N) of one output tone.
struct Coefficients {
  int pump = 0;
  std::vector<int> signal;

  int signal_order() const;
  int total_order() const;
  bool is_zero() const;

  /// Signed n_p f_p + sum n_i f_i.
  double signed_frequency_hz(double pump_hz, std::span<const double> signal_hz) const;

  Coefficients negated() const;
  /// Representative of {c, -c} whose first nonzero entry is positive.
  Coefficients canonical() const;

  std::string to_string() const;

  auto operator<=>(const Coefficients&) const = default;
};

struct IMProduct {
  Coefficients coeffs;
  Frequency freq;  // |n_p f_p + sum n_i f_i|

  int total_order() const { return coeffs.total_order(); }
  int signal_order() const { return coeffs.signal_order(); }

  bool operator==(const IMProduct&) const = default;
};

IMProduct make_product(const ToneSet& tones, Coefficients coeffs);

enum class Parity { all, odd_only };

inline constexpr int kMaxEnumerationOrder = 15;

/// Every distinct product with 1 <= O_t <= max_total_order, canonicalized so that
/// conjugate vectors appear once, optionally restricted to a band and to odd O_t.
/// Sorted by (O_s, O_t, freq, coefficients).
std::vector<IMProduct> enumerate_products(const ToneSet& tones,
                                          int max_total_order,
                                          std::optional<SignalBand> band = std::nullopt,
                                          Parity parity = Parity::all);

}  // namespace imdplan
