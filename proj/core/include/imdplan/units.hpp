#pragma once

#include <cmath>
#include <compare>
#include <numbers>

namespace imdplan {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reference impedance used for power <-> voltage conversion (matched 50 ohm line).
inline constexpr double kDefaultImpedanceOhm = 50.0;

/// Sentinel returned when a power in watts is exactly zero.
inline constexpr double kPowerFloorDbm = -300.0;

/// Ordinary frequency f = omega / 2pi, stored in hertz.
class Frequency {
 public:
  constexpr Frequency() = default;

  static constexpr Frequency hz(double v) { return Frequency(v); }
  static constexpr Frequency khz(double v) { return Frequency(v * 1e3); }
  static constexpr Frequency mhz(double v) { return Frequency(v * 1e6); }
  static constexpr Frequency ghz(double v) { return Frequency(v * 1e9); }

  constexpr double hz() const { return hz_; }
  constexpr double mhz() const { return hz_ * 1e-6; }
  constexpr double ghz() const { return hz_ * 1e-9; }

  /// Spectra are single sided: a negative mixing result is observed at |f|.
  Frequency folded() const { return Frequency(std::abs(hz_)); }

  constexpr Frequency operator+(Frequency o) const { return Frequency(hz_ + o.hz_); }
  constexpr Frequency operator-(Frequency o) const { return Frequency(hz_ - o.hz_); }
  constexpr Frequency operator*(double s) const { return Frequency(hz_ * s); }
  constexpr Frequency operator/(double s) const { return Frequency(hz_ / s); }
  constexpr Frequency operator-() const { return Frequency(-hz_); }

  constexpr auto operator<=>(const Frequency&) const = default;

 private:
  constexpr explicit Frequency(double v) : hz_(v) {}
  double hz_ = 0.0;
};

double dbm_to_watts(double dbm);
/// Returns kPowerFloorDbm for zero power.
double watts_to_dbm(double watts);

/// Power in dB-milliwatt.
struct PowerDbm {
  double dbm = kPowerFloorDbm;

  double watts() const { return dbm_to_watts(dbm); }
  static PowerDbm from_watts(double w) { return PowerDbm{watts_to_dbm(w)}; }

  auto operator<=>(const PowerDbm&) const = default;
};

/// Peak voltage of a sinusoid delivering `power` into `z0`: A = sqrt(2 P z0).
double amplitude_from_power(PowerDbm power, double z0 = kDefaultImpedanceOhm);
PowerDbm power_from_amplitude(double peak_volts, double z0 = kDefaultImpedanceOhm);

double db_to_linear_power(double db);
double linear_power_to_db(double ratio);

/// Reduces a phase to [0, 2pi).
double wrap_phase(double radians);

/// Shortest angular distance between two phases, in [0, pi].
double phase_distance(double a, double b);

}  // namespace imdplan
