#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "imdplan/readout.hpp"

namespace imdplan::readout {

void ResonatorModel::validate() const {
  if (!(kappa_hz > 0.0)) throw std::invalid_argument("resonator: kappa must be positive");
  if (!std::isfinite(chi_hz)) throw std::invalid_argument("resonator: chi must be finite");
  if (states < 2) throw std::invalid_argument("resonator: need at least two states");
  if (!pulls_hz.empty() && pulls_hz.size() != static_cast<std::size_t>(states)) {
    throw std::invalid_argument("resonator: pulls_hz needs one entry per state");
  }
}

double ResonatorModel::pull_hz(int state) const {
  if (state < 0 || state >= states) throw std::out_of_range("resonator: state out of range");
  if (!pulls_hz.empty()) return pulls_hz[static_cast<std::size_t>(state)];
  return 2.0 * chi_hz * state;
}

Frequency ResonatorModel::state_frequency(int state) const {
  return f_r + Frequency::hz(pull_hz(state));
}

Frequency ResonatorModel::optimal_tone() const {
  return f_r + Frequency::hz(0.5 * (pull_hz(0) + pull_hz(1)));
}

StateResponse steady_state_response(const ResonatorModel& res, const Tone& tone) {
  res.validate();
  const double amp = std::sqrt(tone.power.watts());
  const Complex input = std::polar(amp, tone.phase);
  const double half = 0.5 * res.kappa_hz;
  StateResponse out;
  for (int s = 0; s < res.states; ++s) {
    const double delta = tone.freq.hz() - res.state_frequency(s).hz();
    const Complex r = half / Complex(half, delta);
    out.alpha.push_back(res.topology == Topology::transmission ? input * r
                                                               : input * (1.0 - r));
  }
  return out;
}

double power_efficiency(Complex alpha_g, Complex alpha_e) {
  const double peak = std::max(std::norm(alpha_g), std::norm(alpha_e));
  if (peak == 0.0) throw std::invalid_argument("power efficiency undefined for zero amplitudes");
  return std::norm(alpha_e - alpha_g) / (4.0 * peak);
}

StateResponse displace_response(const StateResponse& resp) {
  if (resp.alpha.size() < 2) throw std::invalid_argument("displacement needs g and e");
  const Complex mean = 0.5 * (resp.alpha[0] + resp.alpha[1]);
  StateResponse out = resp;
  for (auto& a : out.alpha) a -= mean;
  return out;
}

double side_coupled_efficiency(double kappa_hz, double chi_hz) {
  return kappa_hz * kappa_hz / (kappa_hz * kappa_hz + 4.0 * chi_hz * chi_hz);
}

double transmission_efficiency(double kappa_hz, double chi_hz) {
  return 4.0 * chi_hz * chi_hz / (kappa_hz * kappa_hz + 4.0 * chi_hz * chi_hz);
}

void Integration::validate() const {
  if (!(length_s > 0.0)) throw std::invalid_argument("integration length must be positive");
  if (filter_sigma_s < 0.0) throw std::invalid_argument("filter sigma must be >= 0");
}

Complex weight_overlap(const Integration& integ, double detuning_hz) {
  integ.validate();
  const double T = integ.length_s;
  if (integ.weights == Weights::boxcar || integ.filter_sigma_s == 0.0) {
    const double x = detuning_hz * T;
    const double sinc = x == 0.0 ? 1.0 : std::sin(kPi * x) / (kPi * x);
    return std::polar(sinc, kPi * x);
  }
  // Square pulse convolved with a Gaussian, integrated by the trapezoid rule.
  const double sigma = integ.filter_sigma_s;
  const double t0 = -6.0 * sigma;
  const double t1 = T + 6.0 * sigma;
  constexpr int kSteps = 4000;
  const double dt = (t1 - t0) / kSteps;
  const double c = 1.0 / (std::sqrt(2.0) * sigma);
  Complex num = 0.0;
  double den = 0.0;
  for (int k = 0; k <= kSteps; ++k) {
    const double t = t0 + dt * k;
    const double w = (k == 0 || k == kSteps ? 0.5 : 1.0) * 0.5 *
                     (std::erf(t * c) - std::erf((t - T) * c));
    num += w * std::polar(1.0, kTwoPi * detuning_hz * t);
    den += w;
  }
  return num / den;
}

}  // namespace imdplan::readout
