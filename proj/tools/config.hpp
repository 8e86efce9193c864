#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "imdplan/amplifier.hpp"
#include "imdplan/collision.hpp"
#include "imdplan/oracle.hpp"
#include "imdplan/products.hpp"
#include "imdplan/readout.hpp"

namespace imdplan::cli {

/// Raised for schema violations; `where` is a JSON pointer into the config.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

struct ToneSpec {
  double freq_ghz = 0.0;
  double power_dbm = -120.0;
  double phase_rad = 0.0;

  bool operator==(const ToneSpec&) const = default;
};

struct BandSpec {
  double f_min_ghz = 6.4;
  double f_max_ghz = 7.4;

  bool operator==(const BandSpec&) const = default;
};

struct AmplifierSpec {
  double gain_db = 18.4;
  std::optional<double> p_ip2_dbm = -91.0;
  std::optional<double> p_ip3_dbm = -88.0;
  /// Cubic coefficient; when absent it follows from p1db_dbm (or is 0).
  std::optional<double> k_per_v2;
  std::optional<double> p1db_dbm = -96.7;
  double z0_ohm = 50.0;

  bool operator==(const AmplifierSpec&) const = default;
};

struct EnumerateSpec {
  int max_order = 5;
  std::optional<BandSpec> band;
  bool odd_only = false;

  bool operator==(const EnumerateSpec&) const = default;
};

struct PowerSpec {
  double start_dbm = -130.0;
  double stop_dbm = -90.0;
  int points = 41;

  bool operator==(const PowerSpec&) const = default;
};

struct ProductClassSpec {
  int pump = 0;
  int plus = 0;
  int minus = 0;

  bool operator==(const ProductClassSpec&) const = default;
};

struct PolicySpec {
  double delta_min_mhz = 5.0;
  int min_signal_order = 2;
  int max_signal_order = 2;
  int max_pump_order = 2;
  std::vector<ProductClassSpec> classes;
  bool exclude_degenerate = true;

  bool operator==(const PolicySpec&) const = default;
};

struct MCSpec {
  std::size_t samples = 2000;
  double min_spacing_mhz = 20.0;
  std::vector<int> n{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::vector<double> delta_min_mhz{0.2, 0.5, 1.0, 2.0, 5.0, 10.0};

  bool operator==(const MCSpec&) const = default;
};

struct LayoutSpec {
  int qubits = 17;
  int lines = 4;

  bool operator==(const LayoutSpec&) const = default;
};

struct SurfaceCodeSpec {
  double delta_min_mhz = 5.0;
  std::vector<LayoutSpec> layouts{{17, 4}, {49, 12}, {49, 10}, {49, 8}};

  bool operator==(const SurfaceCodeSpec&) const = default;
};

struct PlanSpec {
  int n = 5;
  double min_spacing_mhz = 20.0;
  std::size_t max_iters = 20000;

  bool operator==(const PlanSpec&) const = default;
};

struct BandsSpec {
  double pump_start_ghz = 8.0;
  double pump_stop_ghz = 12.0;
  int pump_points = 81;
  int min_signal_order = 1;
  int max_signal_order = 3;
  int max_pump_order = 2;

  bool operator==(const BandsSpec&) const = default;
};

struct OracleSpec {
  double sample_rate_ghz = 1.8;
  std::size_t samples = 4095;
  std::string window = "blackman_harris_4term";
  double quintic_per_v4 = 0.0;
  /// Sweeps cover [p1dB - stop_below - span, p1dB - stop_below].
  double sweep_span_db = 20.0;
  double sweep_stop_below_p1db_db = 20.0;
  int sweep_points = 11;
  double pump_below_p1db_db = 10.0;
  double fixed_signal_below_p1db_db = 25.0;
  double joint_offset_db = -3.0;
  int phase_grid = 16;
  bool write_traces = false;

  bool operator==(const OracleSpec&) const = default;
};

struct QutritSpec {
  std::string topology = "side_coupled";
  double f_r_ghz = 7.0;
  std::optional<double> tone_ghz;
  double kappa_mhz = 10.0;
  double chi_mhz = 5.0;
  int states = 3;
  std::vector<double> pulls_mhz;
  double power_dbm = -120.0;

  bool operator==(const QutritSpec&) const = default;
};

struct CrosstalkSpec {
  bool enabled = true;
  int min_signal_order = 2;
  int max_signal_order = 3;
  int max_pump_order = 2;
  double acquisition_halfwidth_mhz = 25.0;

  bool operator==(const CrosstalkSpec&) const = default;
};

struct SweepSpec {
  int qutrit = 2;  // 1-based
  std::vector<double> power_dbm;

  bool operator==(const SweepSpec&) const = default;
};

struct ReadoutSpec {
  std::vector<QutritSpec> qutrits;
  double length_ns = 200.0;
  std::string weights = "mode_matched";
  double filter_sigma_ns = 10.0;
  double eta_ref = 0.24;
  double noise_scale = 0.5;
  double line_attenuation_db = 0.0;
  std::size_t shots = 10000;
  CrosstalkSpec crosstalk;
  std::optional<SweepSpec> sweep;
  bool write_shots = false;

  ReadoutSpec();
  bool operator==(const ReadoutSpec&) const = default;
};

struct TraceSetSpec {
  std::string label;
  double freq_ghz = 0.0;
  double applied_dbm = -126.0;
  std::vector<std::string> traces;

  bool operator==(const TraceSetSpec&) const = default;
};

struct AnalyzeSpec {
  /// The first set is the reference for efficiency changes.
  std::vector<TraceSetSpec> sets;

  bool operator==(const AnalyzeSpec&) const = default;
};

struct RunConfig {
  std::uint64_t seed = 1;
  BandSpec band;
  ToneSpec pump{7.92, -70.0, 0.0};
  std::vector<ToneSpec> signals{{7.5551, -115.0, 0.0}, {7.1924, -110.0, 0.0}};
  AmplifierSpec amplifier;
  EnumerateSpec enumerate;
  PowerSpec power;
  PolicySpec policy;
  MCSpec mc;
  SurfaceCodeSpec surface_code;
  PlanSpec plan;
  BandsSpec bands;
  OracleSpec oracle;
  ReadoutSpec readout;
  AnalyzeSpec analyze;

  bool operator==(const RunConfig&) const = default;
};

/// Parses and validates; throws ConfigError with a JSON pointer (or the parser's line
/// and column) on any problem, including unknown keys.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
nlohmann::ordered_json to_json(const RunConfig& cfg);
/// Semantic checks shared by parse_config and programmatic construction.
void validate(const RunConfig& cfg);

// Conversions into library types.
SignalBand to_band(const BandSpec& b);
Tone to_tone(const ToneSpec& t);
ToneSet tone_set(const RunConfig& cfg);
AmplifierModel amplifier_model(const RunConfig& cfg);
collision::CollisionPolicy collision_policy(const RunConfig& cfg);
collision::MCConfig mc_config(const RunConfig& cfg);
oracle::TraceConfig trace_config(const RunConfig& cfg);
readout::ReadoutScenario readout_scenario(const RunConfig& cfg);

}  // namespace imdplan::cli
