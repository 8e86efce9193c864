#include "imdplan/spectrum.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace imdplan::oracle {

std::vector<double> window_coefficients(Window window, std::size_t n) {
  std::vector<double> w(n, 1.0);
  if (window == Window::none) return w;
  const double step = kTwoPi / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = step * static_cast<double>(i);
    w[i] = kBh4A0 - kBh4A1 * std::cos(x) + kBh4A2 * std::cos(2.0 * x) - kBh4A3 * std::cos(3.0 * x);
  }
  return w;
}

std::complex<double> project(const TimeTrace& trace, std::span<const double> window,
                             Frequency freq) {
  if (window.size() != trace.size()) {
    throw std::invalid_argument("window length does not match the trace");
  }
  const double cycles_per_sample = freq.hz() / trace.sample_rate_hz;
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t n = 0; n < trace.size(); ++n) {
    const double cycles = cycles_per_sample * static_cast<double>(n);
    const double arg = -kTwoPi * (cycles - std::floor(cycles));
    const std::complex<double> x{trace.samples[n], trace.is_complex() ? trace.quadrature[n] : 0.0};
    acc += window[n] * x * std::polar(1.0, arg);
  }
  return acc;
}

std::vector<ToneEstimate> extract_tones(const TimeTrace& trace, std::span<const Frequency> freqs,
                                        Window window, double z0) {
  trace.validate();
  const double nyq = 0.5 * trace.sample_rate_hz;
  for (const auto& f : freqs) {
    if (f.hz() < 0.0 || f.hz() >= nyq) {
      throw std::invalid_argument("requested frequency is outside [0, Nyquist)");
    }
  }
  const auto w = window_coefficients(window, trace.size());
  const double coherent = std::accumulate(w.begin(), w.end(), 0.0);
  // A real cosine splits its amplitude between +f and -f.
  const double amp_scale = (trace.is_complex() ? 1.0 : 2.0) / coherent;
  const double min_sep = 2.0 / trace.duration_s();

  std::vector<ToneEstimate> out;
  out.reserve(freqs.size());
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    const auto x = project(trace, w, freqs[i]);
    ToneEstimate est;
    est.freq = freqs[i];
    est.power = power_from_amplitude(amp_scale * std::abs(x), z0);
    est.phase = wrap_phase(std::arg(x));
    for (std::size_t j = 0; j < freqs.size(); ++j) {
      if (j != i && std::abs(freqs[j].hz() - freqs[i].hz()) < min_sep) est.resolvable = false;
    }
    out.push_back(est);
  }
  return out;
}

std::vector<std::complex<double>> windowed_dft(const TimeTrace& trace, Window window) {
  trace.validate();
  const std::size_t n = trace.size();
  const auto w = window_coefficients(window, n);
  std::vector<std::complex<double>> twiddle(n);
  for (std::size_t k = 0; k < n; ++k) {
    twiddle[k] = std::polar(1.0, -kTwoPi * static_cast<double>(k) / static_cast<double>(n));
  }
  std::vector<std::complex<double>> xw(n);
  for (std::size_t i = 0; i < n; ++i) {
    xw[i] = w[i] * std::complex<double>{trace.samples[i],
                                        trace.is_complex() ? trace.quadrature[i] : 0.0};
  }
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc{0.0, 0.0};
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n; ++i) {
      acc += xw[i] * twiddle[idx];
      idx += k;
      if (idx >= n) idx -= n;
    }
    out[k] = acc;
  }
  return out;
}

std::vector<SpectrumLine> one_sided_spectrum(const TimeTrace& trace, Window window, double z0) {
  const auto dft = windowed_dft(trace, window);
  const auto w = window_coefficients(window, trace.size());
  const double coherent = std::accumulate(w.begin(), w.end(), 0.0);
  const double bin_hz = trace.sample_rate_hz / static_cast<double>(trace.size());
  std::vector<SpectrumLine> out;
  for (std::size_t k = 0; k <= trace.size() / 2; ++k) {
    const double scale = (trace.is_complex() || k == 0 ? 1.0 : 2.0) / coherent;
    out.push_back(SpectrumLine{Frequency::hz(bin_hz * static_cast<double>(k)),
                               power_from_amplitude(scale * std::abs(dft[k]), z0),
                               wrap_phase(std::arg(dft[k]))});
  }
  return out;
}

}  // namespace imdplan::oracle
