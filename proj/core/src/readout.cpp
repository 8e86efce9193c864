#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "imdplan/parallel.hpp"
#include "imdplan/readout.hpp"

namespace imdplan::readout {

namespace {

constexpr double kPlanck = 6.62607015e-34;

// Integrated outcome scale: amplitude in sqrt(W) to sqrt(photons) over the window.
double photon_scale(const ReadoutScenario& sc, Frequency f) {
  return std::sqrt(sc.integration.length_s / (kPlanck * f.hz()));
}

}  // namespace

void ReadoutScenario::validate() const {
  if (qutrits.empty()) throw std::invalid_argument("readout: no qutrits configured");
  for (const auto& q : qutrits) q.resonator.validate();
  for (const auto& q : qutrits) {
    if (q.resonator.states != qutrits.front().resonator.states) {
      throw std::invalid_argument("readout: every qutrit needs the same number of states");
    }
  }
  if (!(eta_ref > 0.0 && eta_ref <= 1.0)) throw std::invalid_argument("readout: eta_ref in (0, 1]");
  if (noise_scale < 0.0) throw std::invalid_argument("readout: noise_scale must be >= 0");
  if (!std::isfinite(line_attenuation_db)) {
    throw std::invalid_argument("readout: line attenuation must be finite");
  }
  if (shots < 1) throw std::invalid_argument("readout: shots must be >= 1");
  integration.validate();
  amplifier.validate();
  if (crosstalk.acquisition_halfwidth_hz < 0.0) {
    throw std::invalid_argument("readout: acquisition halfwidth must be >= 0");
  }
}

int ReadoutScenario::states() const { return qutrits.front().resonator.states; }

double ReadoutScenario::noise_variance() const { return noise_scale / eta_ref; }

Tone ReadoutScenario::input_tone(std::size_t qutrit) const {
  const auto& q = qutrits.at(qutrit);
  return Tone(q.tone_freq(), PowerDbm{q.power.dbm - line_attenuation_db}, 0.0);
}

ReadoutScenario ReadoutScenario::reference(double aggressor_dbm) {
  ReadoutScenario sc;
  auto make = [](double tone_ghz, double dbm) {
    QutritChannel q;
    q.resonator.kappa_hz = 10e6;
    q.resonator.chi_hz = 5e6;
    q.resonator.f_r = Frequency::ghz(tone_ghz) - Frequency::hz(q.resonator.chi_hz);
    q.power = PowerDbm{dbm};
    q.tone = Frequency::ghz(tone_ghz);
    return q;
  };
  sc.qutrits = {make(7.5551, -118.0), make(7.1924, aggressor_dbm)};
  sc.pump = Tone(Frequency::ghz(7.92), PowerDbm{-70.0}, 0.0);
  sc.amplifier.gain_db = 18.4;
  sc.amplifier.p_ip_dbm = {{2, -91.0}, {3, -88.0}};
  return sc;
}

std::vector<std::vector<int>> state_tuples(int qutrits, int states) {
  std::vector<std::vector<int>> out{{}};
  for (int q = 0; q < qutrits; ++q) {
    std::vector<std::vector<int>> next;
    for (const auto& t : out) {
      for (int s = 0; s < states; ++s) {
        auto u = t;
        u.push_back(s);
        next.push_back(std::move(u));
      }
    }
    out = std::move(next);
  }
  return out;
}

Complex nominal_mean(const ReadoutScenario& sc, std::size_t qutrit, int state) {
  const Tone tone = sc.input_tone(qutrit);
  const auto resp = steady_state_response(sc.qutrits.at(qutrit).resonator, tone);
  return resp.alpha.at(static_cast<std::size_t>(state)) * photon_scale(sc, tone.freq);
}

Complex crosstalk_shift(const ReadoutScenario& sc, std::size_t victim,
                        std::span<const int> states) {
  if (!sc.crosstalk.enabled) return 0.0;
  if (states.size() != sc.qutrits.size()) {
    throw std::invalid_argument("crosstalk: one prepared state per qutrit required");
  }
  std::vector<Tone> tones;
  for (std::size_t q = 0; q < sc.qutrits.size(); ++q) {
    const Tone in = sc.input_tone(q);
    const auto resp = steady_state_response(sc.qutrits[q].resonator, in);
    const Complex a = resp.alpha.at(static_cast<std::size_t>(states[q]));
    tones.emplace_back(in.freq, PowerDbm::from_watts(std::norm(a)), std::arg(a));
  }
  const ToneSet set(sc.pump, tones);
  const Frequency fv = tones.at(victim).freq;
  const Frequency hw = Frequency::hz(sc.crosstalk.acquisition_halfwidth_hz);
  const SignalBand window(fv - hw, fv + hw);
  const int max_order = sc.crosstalk.max_pump_order + sc.crosstalk.max_signal_order;
  const double gain = sc.amplifier.gain_linear();

  Complex shift = 0.0;
  for (const auto& prod : enumerate_products(set, max_order, window, Parity::all)) {
    const int os = prod.signal_order();
    if (os < sc.crosstalk.min_signal_order || os > sc.crosstalk.max_signal_order) continue;
    if (std::abs(prod.coeffs.pump) > sc.crosstalk.max_pump_order) continue;
    PowerDbm p;
    try {
      p = product_power(sc.amplifier, set, prod);
    } catch (const std::out_of_range&) {
      continue;  // no intercept configured for this order
    }
    const double amp = std::sqrt(p.watts() / gain);
    const double phase = product_phase(sc.amplifier, set, prod);
    shift += std::polar(amp, phase) * weight_overlap(sc.integration, (prod.freq - fv).hz());
  }
  return shift * photon_scale(sc, fv);
}

double cross_fidelity(const ConfusionMatrix& pr) {
  const std::size_t d = pr.size();
  if (d < 2) throw std::invalid_argument("cross fidelity needs d >= 2");
  for (const auto& row : pr) {
    if (row.size() != d) throw std::invalid_argument("confusion matrix must be d x d");
    double sum = 0.0;
    for (double p : row) {
      if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability outside [0, 1]");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("row does not sum to 1");
  }
  double total = 0.0;
  for (std::size_t xi = 0; xi < d; ++xi) {
    double best = 0.0;
    for (std::size_t zeta = 0; zeta < d; ++zeta) best = std::max(best, pr[zeta][xi]);
    total += best;
  }
  // Clamp rounding at the ends of [0, 1].
  return std::clamp((total - 1.0) / static_cast<double>(d - 1), 0.0, 1.0);
}

ReadoutResult simulate_readout(const ReadoutScenario& sc, std::uint64_t seed, bool keep_shots) {
  sc.validate();
  const std::size_t nq = sc.qutrits.size();
  const int d = sc.states();
  const auto ud = static_cast<std::size_t>(d);

  std::vector<std::vector<Complex>> means(nq);
  for (std::size_t q = 0; q < nq; ++q) {
    for (int s = 0; s < d; ++s) means[q].push_back(nominal_mean(sc, q, s));
  }

  ReadoutResult res;
  res.tuples = state_tuples(static_cast<int>(nq), d);
  const std::size_t nt = res.tuples.size();
  res.shifts.assign(nt, std::vector<Complex>(nq));
  // counts[t][q][xi]: shots of tuple t where qutrit q was assigned xi.
  std::vector<std::vector<std::vector<std::size_t>>> counts(
      nt, std::vector<std::vector<std::size_t>>(nq, std::vector<std::size_t>(ud, 0)));
  std::vector<std::vector<Shot>> shots(nt);
  const double sigma = std::sqrt(sc.noise_variance());

  parallel_for(nt, [&](std::size_t t) {
    for (std::size_t q = 0; q < nq; ++q) res.shifts[t][q] = crosstalk_shift(sc, q, res.tuples[t]);
    auto rng = make_rng(seed, t);
    std::normal_distribution<double> normal(0.0, 1.0);
    if (keep_shots) shots[t].reserve(sc.shots * nq);
    for (std::size_t k = 0; k < sc.shots; ++k) {
      for (std::size_t q = 0; q < nq; ++q) {
        const double re = normal(rng);
        const double im = normal(rng);
        const Complex outcome = means[q][static_cast<std::size_t>(res.tuples[t][q])] +
                                res.shifts[t][q] + sigma * Complex(re, im);
        std::size_t best = 0;
        for (std::size_t s = 1; s < ud; ++s) {
          if (std::norm(outcome - means[q][s]) < std::norm(outcome - means[q][best])) best = s;
        }
        ++counts[t][q][best];
        if (keep_shots) shots[t].push_back({t, q, outcome, static_cast<int>(best)});
      }
    }
  });

  auto& cf = res.fidelity;
  cf.F.assign(nq, std::vector<double>(nq));
  cf.stderr_F.assign(nq, std::vector<double>(nq));
  cf.pr.assign(nq, std::vector<ConfusionMatrix>(nq));
  const double per_zeta = static_cast<double>(sc.shots * (nt / ud));
  for (std::size_t i = 0; i < nq; ++i) {
    for (std::size_t j = 0; j < nq; ++j) {
      ConfusionMatrix pr(ud, std::vector<double>(ud, 0.0));
      for (std::size_t t = 0; t < nt; ++t) {
        const auto zeta = static_cast<std::size_t>(res.tuples[t][i]);
        for (std::size_t xi = 0; xi < ud; ++xi) {
          pr[zeta][xi] += static_cast<double>(counts[t][j][xi]);
        }
      }
      for (auto& row : pr) {
        for (auto& p : row) p /= per_zeta;
      }
      double var = 0.0;
      for (std::size_t xi = 0; xi < ud; ++xi) {
        double best = 0.0;
        for (std::size_t zeta = 0; zeta < ud; ++zeta) best = std::max(best, pr[zeta][xi]);
        var += best * (1.0 - best) / per_zeta;
      }
      cf.F[i][j] = cross_fidelity(pr);
      cf.stderr_F[i][j] = std::sqrt(var) / static_cast<double>(d - 1);
      cf.pr[i][j] = std::move(pr);
    }
  }
  if (keep_shots) {
    for (auto& s : shots) res.shots.insert(res.shots.end(), s.begin(), s.end());
  }
  return res;
}

}  // namespace imdplan::readout
