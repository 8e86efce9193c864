#include "imdplan/amplifier.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace imdplan {

namespace {

// 1 - 10^(-1/20): the fractional amplitude loss at 1 dB compression.
double one_db_amplitude_drop() { return 1.0 - std::pow(10.0, -1.0 / 20.0); }

}  // namespace

void AmplifierModel::validate() const {
  if (!std::isfinite(gain_db)) throw std::invalid_argument("gain_db must be finite");
  if (!(k_per_v2 >= 0.0) || !std::isfinite(k_per_v2)) {
    throw std::invalid_argument("cubic coefficient k must be finite and >= 0");
  }
  if (!(z0_ohm > 0.0)) throw std::invalid_argument("z0 must be positive");
  for (const auto& [order, v] : p_ip_dbm) {
    if (order < 2) throw std::invalid_argument("intercept points are defined for O_s >= 2");
    if (!std::isfinite(v)) throw std::invalid_argument("intercept point must be finite");
  }
  for (const auto& [c, v] : p_ip_override_dbm) {
    if (!std::isfinite(v)) throw std::invalid_argument("intercept override must be finite");
  }
}

double AmplifierModel::intercept_dbm(const Coefficients& coeffs) const {
  if (auto it = p_ip_override_dbm.find(coeffs.canonical()); it != p_ip_override_dbm.end()) {
    return it->second;
  }
  const int order = coeffs.signal_order();
  if (auto it = p_ip_dbm.find(order); it != p_ip_dbm.end()) {
    return it->second;
  }
  throw std::out_of_range("no intercept point configured for signal order " +
                          std::to_string(order));
}

double AmplifierModel::theta(const Coefficients& coeffs) const {
  auto it = theta_rad.find(coeffs.canonical());
  return it == theta_rad.end() ? 0.0 : it->second;
}

PowerDbm product_power(const AmplifierModel& model, std::span<const double> signal_powers_dbm,
                       const Coefficients& coeffs) {
  if (signal_powers_dbm.size() != coeffs.signal.size()) {
    throw std::invalid_argument("coefficient vector length does not match the tone count");
  }
  const int os = coeffs.signal_order();
  if (os < 1) {
    throw std::invalid_argument("product power is defined for signal order >= 1");
  }
  double p = model.gain_db;
  for (std::size_t i = 0; i < coeffs.signal.size(); ++i) {
    p += std::abs(coeffs.signal[i]) * signal_powers_dbm[i];
  }
  if (os >= 2) {
    p += (1 - os) * model.intercept_dbm(coeffs);
  }
  return PowerDbm{p};
}

PowerDbm product_power(const AmplifierModel& model, const ToneSet& tones, const IMProduct& prod) {
  const auto powers = tones.signal_powers_dbm();
  return product_power(model, powers, prod.coeffs);
}

Coefficients positive_frequency_orientation(const Coefficients& coeffs, double pump_hz,
                                            std::span<const double> signal_hz) {
  return coeffs.signed_frequency_hz(pump_hz, signal_hz) < 0.0 ? coeffs.negated() : coeffs;
}

double product_phase(const AmplifierModel& model, std::span<const double> signal_phases,
                     const Coefficients& oriented) {
  if (signal_phases.size() != oriented.signal.size()) {
    throw std::invalid_argument("coefficient vector length does not match the tone count");
  }
  double phi = model.theta(oriented);
  for (std::size_t i = 0; i < oriented.signal.size(); ++i) {
    phi += oriented.signal[i] * signal_phases[i];
  }
  return wrap_phase(phi);
}

double product_phase(const AmplifierModel& model, const ToneSet& tones, const IMProduct& prod) {
  const auto freqs = tones.signal_freqs_hz();
  const auto phases = tones.signal_phases();
  const Coefficients oriented =
      positive_frequency_orientation(prod.coeffs, tones.pump().freq.hz(), freqs);
  return product_phase(model, phases, oriented);
}

double saturation_gain_db(const AmplifierModel& model, PowerDbm input) {
  if (model.k_per_v2 < 0.0) throw std::invalid_argument("k must be >= 0");
  if (!(model.z0_ohm > 0.0)) throw std::invalid_argument("z0 must be positive");
  const double a2 = 2.0 * input.watts() * model.z0_ohm;
  const double drop = 0.75 * model.k_per_v2 * a2;
  if (drop >= 1.0) {
    throw std::domain_error("input amplitude beyond the cubic model's zero crossing");
  }
  return model.gain_db + 20.0 * std::log10(1.0 - drop);
}

PowerDbm compression_point(const AmplifierModel& model) {
  if (!(model.k_per_v2 > 0.0)) throw std::invalid_argument("compression point requires k > 0");
  // 3/4 k A^2 = 1 - 10^(-1/20)
  const double a2 = one_db_amplitude_drop() / (0.75 * model.k_per_v2);
  return PowerDbm::from_watts(a2 / (2.0 * model.z0_ohm));
}

PowerDbm ip3_point(const AmplifierModel& model) {
  if (!(model.k_per_v2 > 0.0)) throw std::invalid_argument("IP3 requires k > 0");
  // Two equal tones: IM3 amplitude 3/4 k A^3 meets the fundamental A at A^2 = 4 / (3k).
  const double a2 = 4.0 / (3.0 * model.k_per_v2);
  return PowerDbm::from_watts(a2 / (2.0 * model.z0_ohm));
}

double k_for_compression_point(PowerDbm p1db, double z0) {
  const double a2 = 2.0 * p1db.watts() * z0;
  return one_db_amplitude_drop() / (0.75 * a2);
}

double ip3_minus_compression_db() { return -10.0 * std::log10(one_db_amplitude_drop()); }

}  // namespace imdplan
