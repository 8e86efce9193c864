#include "imdplan/products.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace imdplan {

Tone::Tone(Frequency f, PowerDbm p, double phase_rad)
    : freq(f), power(p), phase(wrap_phase(phase_rad)) {
  if (!std::isfinite(f.hz())) {
    throw std::invalid_argument("tone frequency must be finite");
  }
}

ToneSet::ToneSet(Tone pump, std::vector<Tone> signals)
    : pump_(std::move(pump)), signals_(std::move(signals)) {
  if (signals_.empty()) {
    throw std::invalid_argument("a tone set needs at least one signal tone");
  }
  std::vector<double> freqs{pump_.freq.hz()};
  for (const auto& s : signals_) {
    freqs.push_back(s.freq.hz());
  }
  std::sort(freqs.begin(), freqs.end());
  if (std::adjacent_find(freqs.begin(), freqs.end()) != freqs.end()) {
    throw std::invalid_argument("tone frequencies must be pairwise distinct");
  }
}

std::vector<double> ToneSet::signal_powers_dbm() const {
  std::vector<double> out;
  out.reserve(signals_.size());
  for (const auto& s : signals_) out.push_back(s.power.dbm);
  return out;
}

std::vector<double> ToneSet::signal_phases() const {
  std::vector<double> out;
  out.reserve(signals_.size());
  for (const auto& s : signals_) out.push_back(s.phase);
  return out;
}

std::vector<double> ToneSet::signal_freqs_hz() const {
  std::vector<double> out;
  out.reserve(signals_.size());
  for (const auto& s : signals_) out.push_back(s.freq.hz());
  return out;
}

std::vector<Tone> ToneSet::all_tones() const {
  std::vector<Tone> out{pump_};
  out.insert(out.end(), signals_.begin(), signals_.end());
  return out;
}

SignalBand::SignalBand(Frequency lo, Frequency hi) : f_min(lo), f_max(hi) {
  if (!(lo < hi)) {
    throw std::invalid_argument("signal band requires f_min < f_max");
  }
}

int Coefficients::signal_order() const {
  int s = 0;
  for (int c : signal) s += std::abs(c);
  return s;
}

int Coefficients::total_order() const { return std::abs(pump) + signal_order(); }

bool Coefficients::is_zero() const { return total_order() == 0; }

double Coefficients::signed_frequency_hz(double pump_hz,
                                         std::span<const double> signal_hz) const {
  if (signal_hz.size() != signal.size()) {
    throw std::invalid_argument("coefficient vector length does not match the tone count");
  }
  double f = pump * pump_hz;
  for (std::size_t i = 0; i < signal.size(); ++i) {
    f += signal[i] * signal_hz[i];
  }
  return f;
}

Coefficients Coefficients::negated() const {
  Coefficients out{-pump, signal};
  for (int& c : out.signal) c = -c;
  return out;
}

Coefficients Coefficients::canonical() const {
  int first = pump;
  for (std::size_t i = 0; first == 0 && i < signal.size(); ++i) {
    first = signal[i];
  }
  return first < 0 ? negated() : *this;
}

std::string Coefficients::to_string() const {
  std::ostringstream os;
  os << "(" << pump << "; ";
  for (std::size_t i = 0; i < signal.size(); ++i) {
    os << (i ? "," : "") << signal[i];
  }
  os << ")";
  return os.str();
}

IMProduct make_product(const ToneSet& tones, Coefficients coeffs) {
  const auto freqs = tones.signal_freqs_hz();
  const double f = coeffs.signed_frequency_hz(tones.pump().freq.hz(), freqs);
  return IMProduct{std::move(coeffs), Frequency::hz(std::abs(f))};
}

namespace {

// Fills coefficients slot by slot; `seen_nonzero` tracks whether a nonzero entry
// has been placed yet, so the first nonzero one is forced positive.
void enumerate_rec(std::vector<int>& slots, std::size_t pos, int budget, bool seen_nonzero,
                   std::vector<std::vector<int>>& out) {
  if (pos == slots.size()) {
    if (seen_nonzero) out.push_back(slots);
    return;
  }
  const int lo = seen_nonzero ? -budget : 0;
  for (int c = lo; c <= budget; ++c) {
    slots[pos] = c;
    enumerate_rec(slots, pos + 1, budget - std::abs(c), seen_nonzero || c != 0, out);
  }
  slots[pos] = 0;
}

}  // namespace

std::vector<IMProduct> enumerate_products(const ToneSet& tones, int max_total_order,
                                          std::optional<SignalBand> band, Parity parity) {
  if (max_total_order < 1) {
    throw std::invalid_argument("max_total_order must be >= 1");
  }
  if (max_total_order > kMaxEnumerationOrder) {
    throw std::invalid_argument("max_total_order above " + std::to_string(kMaxEnumerationOrder) +
                                " is rejected");
  }

  std::vector<std::vector<int>> raw;
  std::vector<int> slots(tones.size() + 1, 0);
  enumerate_rec(slots, 0, max_total_order, false, raw);

  const auto freqs = tones.signal_freqs_hz();
  const double pump_hz = tones.pump().freq.hz();

  std::vector<IMProduct> out;
  out.reserve(raw.size());
  for (auto& v : raw) {
    Coefficients c{v[0], std::vector<int>(v.begin() + 1, v.end())};
    if (parity == Parity::odd_only && c.total_order() % 2 == 0) continue;
    const Frequency f = Frequency::hz(std::abs(c.signed_frequency_hz(pump_hz, freqs)));
    if (band && !band->contains(f)) continue;
    out.push_back(IMProduct{std::move(c), f});
  }

  std::sort(out.begin(), out.end(), [](const IMProduct& a, const IMProduct& b) {
    const auto ka = std::tuple(a.signal_order(), a.total_order(), a.freq.hz());
    const auto kb = std::tuple(b.signal_order(), b.total_order(), b.freq.hz());
    if (ka != kb) return ka < kb;
    return a.coeffs < b.coeffs;
  });
  return out;
}

}  // namespace imdplan
