#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "imdplan/amplifier.hpp"
#include "imdplan/products.hpp"

namespace imdplan::readout {

using Complex = std::complex<double>;

enum class Topology { side_coupled, transmission };

/// Effective single readout mode. kappa and chi are ordinary frequencies (kappa/2pi,
/// chi/2pi), so detunings are compared in Hz throughout.
struct ResonatorModel {
  Topology topology = Topology::side_coupled;
  Frequency f_r = Frequency::ghz(7.0);
  double kappa_hz = 10e6;
  double chi_hz = 5e6;
  int states = 3;
  /// Per-state pull of the mode; empty means s * 2 chi.
  std::vector<double> pulls_hz;

  void validate() const;
  double pull_hz(int state) const;
  Frequency state_frequency(int state) const;
  /// Midway between the g and e pulled frequencies.
  Frequency optimal_tone() const;
};

/// Complex input amplitude per state, |alpha|^2 in watts.
struct StateResponse {
  std::vector<Complex> alpha;
};

StateResponse steady_state_response(const ResonatorModel& res, const Tone& tone);

/// |a_e - a_g|^2 / (4 max(|a_g|^2, |a_e|^2)). Throws when both are zero.
double power_efficiency(Complex alpha_g, Complex alpha_e);
/// Subtracts the g/e mean from every state.
StateResponse displace_response(const StateResponse& resp);

double side_coupled_efficiency(double kappa_hz, double chi_hz);
double transmission_efficiency(double kappa_hz, double chi_hz);

enum class Weights { mode_matched, boxcar };

struct Integration {
  double length_s = 200e-9;
  Weights weights = Weights::mode_matched;
  /// Gaussian edge filter of the pulse, used by mode-matched weights.
  double filter_sigma_s = 10e-9;

  void validate() const;
};

/// Response of the integration weights to a tone detuned by `detuning_hz`, normalized
/// to 1 at zero detuning. Boxcar: e^{i pi dT} sinc(dT).
Complex weight_overlap(const Integration& integ, double detuning_hz);

struct QutritChannel {
  ResonatorModel resonator;
  PowerDbm power{-120.0};
  /// Readout tone; defaults to the resonator's optimal tone.
  std::optional<Frequency> tone;

  Frequency tone_freq() const { return tone.value_or(resonator.optimal_tone()); }
};

struct CrosstalkSettings {
  bool enabled = true;
  int min_signal_order = 2;
  int max_signal_order = 3;
  int max_pump_order = 2;
  /// Products within this distance of a readout tone reach its integrated outcome.
  double acquisition_halfwidth_hz = 25e6;
};

struct ReadoutScenario {
  std::vector<QutritChannel> qutrits;
  Tone pump;
  AmplifierModel amplifier;
  Integration integration;
  double eta_ref = 0.24;
  /// Per-quadrature noise variance at unit efficiency, in photon units (0.5 = vacuum).
  double noise_scale = 0.5;
  /// Loss from the resonators to the amplifier input, applied to every readout tone.
  double line_attenuation_db = 0.0;
  std::size_t shots = 10000;
  CrosstalkSettings crosstalk;

  void validate() const;
  int states() const;
  /// Variance per quadrature of an integrated outcome: noise_scale / eta_ref.
  double noise_variance() const;
  /// Readout tone of qutrit q as it arrives at the amplifier input.
  Tone input_tone(std::size_t qutrit) const;

  /// Two qutrits: victim tone at 7.5551 GHz, aggressor at 7.1924 GHz, pump at 7.92 GHz,
  /// kappa = 10 MHz, chi = kappa / 2, side coupled.
  static ReadoutScenario reference(double aggressor_dbm = -110.0);
};

/// Every prepared-state tuple, first qutrit slowest.
std::vector<std::vector<int>> state_tuples(int qutrits, int states);

/// Calibrated (crosstalk-free) integrated outcome of qutrit q in `state`, in
/// square-root-photon units.
Complex nominal_mean(const ReadoutScenario& sc, std::size_t qutrit, int state);

/// Sum over in-band products of their input-referred complex amplitude times the
/// victim's weight overlap at the product detuning, in the units of nominal_mean.
Complex crosstalk_shift(const ReadoutScenario& sc, std::size_t victim,
                        std::span<const int> states);

/// Conditional distribution Pr(xi_j | zeta_i): rows are prepared states of qutrit i,
/// columns are assigned states of qutrit j.
using ConfusionMatrix = std::vector<std::vector<double>>;

/// (sum over xi of max over zeta of Pr(xi | zeta) - 1) / (d - 1).
double cross_fidelity(const ConfusionMatrix& pr);

struct CrossFidelityMatrix {
  std::vector<std::vector<double>> F;       // [i][j]
  std::vector<std::vector<double>> stderr_F;  // binomial estimate per entry
  std::vector<std::vector<ConfusionMatrix>> pr;  // [i][j]
};

struct Shot {
  std::size_t tuple = 0;
  std::size_t qutrit = 0;
  Complex q;
  int assigned = 0;
};

struct ReadoutResult {
  CrossFidelityMatrix fidelity;
  std::vector<std::vector<int>> tuples;
  std::vector<std::vector<Complex>> shifts;  // [tuple][qutrit]
  std::vector<Shot> shots;                   // filled only when requested
};

/// Shots per prepared tuple with isotropic Gaussian noise around nominal + shift,
/// classified to the nearest unshifted mean. Each tuple draws from its own stream.
ReadoutResult simulate_readout(const ReadoutScenario& sc, std::uint64_t seed,
                               bool keep_shots = false);

}  // namespace imdplan::readout
