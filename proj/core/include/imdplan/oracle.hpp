#pragma once

#include <span>
#include <vector>

#include "imdplan/amplifier.hpp"
#include "imdplan/products.hpp"
#include "imdplan/spectrum.hpp"
#include "imdplan/trace.hpp"

// Brute-force measurement procedures on top of the time-domain simulator. These are
// the independent checks for the closed-form power, phase and saturation laws.
namespace imdplan::oracle {

// Reference pump / signal placement on the default 4095-point grid. Every product up to
// total order 5 lands on its own bin at least 13 bins from any other, and 5 f_p stays
// below Nyquist, so a memoryless polynomial produces no overlapping or aliased lines.
inline constexpr int kReferencePumpBin = 403;
inline constexpr int kReferenceSignal1Bin = 390;
inline constexpr int kReferenceSignal2Bin = 325;

ToneSet reference_tone_plan(const TraceConfig& cfg, PowerDbm pump, PowerDbm p1, PowerDbm p2,
                            double phi1 = 0.0, double phi2 = 0.0);

struct OracleSettings {
  AmplifierModel model;
  double quintic_per_v4 = 0.0;
  TraceConfig trace;
};

struct ProductMeasurement {
  Coefficients coeffs;
  Frequency freq;
  PowerDbm power;
  double phase = 0.0;
};

/// Noiseless trace of all tones through the nonlinearity, read out at each product.
std::vector<ProductMeasurement> measure_products(const OracleSettings& settings,
                                                 const ToneSet& tones,
                                                 std::span<const IMProduct> products);

/// Lines a pure cubic can produce from the tone set: odd O_t <= 3 with O_s >= 1.
std::vector<IMProduct> cubic_products(const ToneSet& tones);

/// Least-squares slope of y against x.
double fit_slope(std::span<const double> xs, std::span<const double> ys);

struct PowerSweepSpec {
  /// Index of the swept signal, or -1 to sweep every signal together.
  int swept_signal = -1;
  double start_dbm = -140.0;
  double stop_dbm = -120.0;
  int points = 11;
  /// Joint sweeps set p_i = swept + offset_i. Missing entries count as 0 dB.
  std::vector<double> joint_offsets_db;
};

struct PowerSweepResult {
  std::vector<double> swept_dbm;
  std::vector<Coefficients> products;
  std::vector<std::vector<double>> power_dbm;  // [product][point]
  std::vector<std::vector<double>> input_dbm;  // [point][signal]
  std::vector<double> slopes;                  // d P_dBm / d swept_dBm, per product
};

PowerSweepResult power_sweep(const OracleSettings& settings, const ToneSet& base,
                             std::span<const IMProduct> products, const PowerSweepSpec& spec);

struct PhaseGridResult {
  std::vector<Coefficients> products;
  /// theta per product: measured phase minus sum n_i phi_i at the first grid point.
  std::vector<double> theta;
  /// Largest circular deviation from theta over the grid.
  std::vector<double> max_residual;
  struct Row {
    double phi1 = 0.0;
    double phi2 = 0.0;
    std::size_t product = 0;
    double phase = 0.0;
    double residual = 0.0;
  };
  std::vector<Row> rows;
};

/// Sweeps the phases of the first two signals over a grid x grid lattice on [0, 2pi).
PhaseGridResult phase_grid(const OracleSettings& settings, const ToneSet& base,
                           std::span<const IMProduct> products, int grid);

struct SaturationPoint {
  double input_dbm = 0.0;
  double oracle_gain_db = 0.0;
  double model_gain_db = 0.0;
};

/// Single tone (no pump) through the nonlinearity; fundamental gain vs input power.
std::vector<SaturationPoint> single_tone_saturation(const OracleSettings& settings, Frequency f,
                                                    double start_dbm, double stop_dbm,
                                                    int points);

double oracle_single_tone_gain_db(const OracleSettings& settings, Frequency f, PowerDbm input);

/// Input power at which the measured single-tone gain has dropped 1 dB below its
/// small-signal value, by bracketing and bisection on oracle runs.
PowerDbm oracle_compression_point(const OracleSettings& settings, Frequency f);

/// Two equal tones at `probe`: p_IP3 = p + (P_fund - P_IM3) / 2 using the 2 f1 - f2 line.
PowerDbm oracle_ip3_point(const OracleSettings& settings, Frequency f1, Frequency f2,
                          PowerDbm probe);

/// Fits per-product intercepts and phase offsets from a single operating point, using
/// `gain_db` as G. Products with O_s < 2 only contribute phase offsets.
AmplifierModel calibrate_from_measurement(const AmplifierModel& base, const ToneSet& tones,
                                          std::span<const ProductMeasurement> measured,
                                          double gain_db);

}  // namespace imdplan::oracle
