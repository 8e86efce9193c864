#include "imdplan/units.hpp"

#include <algorithm>
#include <stdexcept>

namespace imdplan {

double dbm_to_watts(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }

double watts_to_dbm(double watts) {
  if (watts < 0.0 || std::isnan(watts)) {
    throw std::invalid_argument("power in watts must be non-negative");
  }
  if (watts == 0.0) {
    return kPowerFloorDbm;
  }
  return std::max(kPowerFloorDbm, 10.0 * std::log10(watts / 1e-3));
}

double amplitude_from_power(PowerDbm power, double z0) {
  return std::sqrt(2.0 * power.watts() * z0);
}

PowerDbm power_from_amplitude(double peak_volts, double z0) {
  return PowerDbm::from_watts(peak_volts * peak_volts / (2.0 * z0));
}

double db_to_linear_power(double db) { return std::pow(10.0, db / 10.0); }

double linear_power_to_db(double ratio) { return 10.0 * std::log10(ratio); }

double wrap_phase(double radians) {
  double r = std::fmod(radians, kTwoPi);
  if (r < 0.0) {
    r += kTwoPi;
  }
  // fmod of a value just below 0 can round up to exactly 2pi.
  if (r >= kTwoPi) {
    r = 0.0;
  }
  return r;
}

double phase_distance(double a, double b) {
  const double d = wrap_phase(a - b);
  return d > kPi ? kTwoPi - d : d;
}

}  // namespace imdplan
