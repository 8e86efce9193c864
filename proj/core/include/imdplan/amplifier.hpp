#pragma once

#include <map>
#include <span>

#include "imdplan/products.hpp"
#include "imdplan/units.hpp"

namespace imdplan {

/// Behavioral amplifier: linear gain, intercept points per signal order, and the
/// cubic coefficient of V_out = sqrt(G) V_in (1 - k V_in^2).
struct AmplifierModel {
  double gain_db = 0.0;
  /// Intercept point by signal order O_s >= 2.
  std::map<int, double> p_ip_dbm;
  /// Per-product intercept overrides, keyed by canonical coefficients.
  std::map<Coefficients, double> p_ip_override_dbm;
  double k_per_v2 = 0.0;
  double z0_ohm = kDefaultImpedanceOhm;
  /// Product-specific phase offsets, keyed by canonical coefficients. Missing means 0.
  std::map<Coefficients, double> theta_rad;

  void validate() const;
  double gain_linear() const { return db_to_linear_power(gain_db); }

  /// Intercept point for a product: per-product override, else the per-order value.
  /// Throws std::out_of_range if neither is present.
  double intercept_dbm(const Coefficients& coeffs) const;
  double theta(const Coefficients& coeffs) const;

  bool operator==(const AmplifierModel&) const = default;
};

/// P = G + (1 - O_s) p_IP + sum |n_i| p_i, all in dB units. O_s = 1 reduces to G + p_i.
PowerDbm product_power(const AmplifierModel& model, const ToneSet& tones, const IMProduct& prod);
PowerDbm product_power(const AmplifierModel& model, std::span<const double> signal_powers_dbm,
                       const Coefficients& coeffs);

/// Coefficients oriented so that n_p f_p + sum n_i f_i >= 0, i.e. the sign convention of
/// the tone actually observed at |f|.
Coefficients positive_frequency_orientation(const Coefficients& coeffs, double pump_hz,
                                            std::span<const double> signal_hz);

/// Phi = sum n_i phi_i + theta, with n taken in positive-frequency orientation; in [0, 2pi).
double product_phase(const AmplifierModel& model, const ToneSet& tones, const IMProduct& prod);
/// `oriented` must already be in positive-frequency orientation.
double product_phase(const AmplifierModel& model, std::span<const double> signal_phases,
                     const Coefficients& oriented);

/// Fundamental-component gain in dB of a single tone through the cubic model,
/// G (1 - 3/4 k A^2)^2 with A = sqrt(2 P z0). Throws std::domain_error past the
/// model's zero crossing.
double saturation_gain_db(const AmplifierModel& model, PowerDbm input);

/// Input power where the single-tone gain has dropped by 1 dB.
PowerDbm compression_point(const AmplifierModel& model);
/// Input power per tone where the extrapolated two-tone IM3 equals the fundamental.
PowerDbm ip3_point(const AmplifierModel& model);

/// Cubic coefficient that places the 1 dB compression point at `p1db`.
double k_for_compression_point(PowerDbm p1db, double z0 = kDefaultImpedanceOhm);

/// 10 log10(1 / (1 - 10^(-1/20))), about 9.64 dB.
double ip3_minus_compression_db();

}  // namespace imdplan
