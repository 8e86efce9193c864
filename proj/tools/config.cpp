#include "config.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "imdplan/trace_io.hpp"

namespace imdplan::cli {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Each spec lists its keys once; the same list drives parsing and serialization.
template <class V> void fields(V& v, ToneSpec& s) {
  v("freq_ghz", s.freq_ghz);
  v("power_dbm", s.power_dbm);
  v("phase_rad", s.phase_rad);
}
template <class V> void fields(V& v, BandSpec& s) {
  v("f_min_ghz", s.f_min_ghz);
  v("f_max_ghz", s.f_max_ghz);
}
template <class V> void fields(V& v, AmplifierSpec& s) {
  v("gain_db", s.gain_db);
  v("p_ip2_dbm", s.p_ip2_dbm);
  v("p_ip3_dbm", s.p_ip3_dbm);
  v("k_per_v2", s.k_per_v2);
  v("p1db_dbm", s.p1db_dbm);
  v("z0_ohm", s.z0_ohm);
}
template <class V> void fields(V& v, EnumerateSpec& s) {
  v("max_order", s.max_order);
  v("band", s.band);
  v("odd_only", s.odd_only);
}
template <class V> void fields(V& v, PowerSpec& s) {
  v("start_dbm", s.start_dbm);
  v("stop_dbm", s.stop_dbm);
  v("points", s.points);
}
template <class V> void fields(V& v, ProductClassSpec& s) {
  v("pump", s.pump);
  v("plus", s.plus);
  v("minus", s.minus);
}
template <class V> void fields(V& v, PolicySpec& s) {
  v("delta_min_mhz", s.delta_min_mhz);
  v("min_signal_order", s.min_signal_order);
  v("max_signal_order", s.max_signal_order);
  v("max_pump_order", s.max_pump_order);
  v("classes", s.classes);
  v("exclude_degenerate", s.exclude_degenerate);
}
template <class V> void fields(V& v, MCSpec& s) {
  v("samples", s.samples);
  v("min_spacing_mhz", s.min_spacing_mhz);
  v("n", s.n);
  v("delta_min_mhz", s.delta_min_mhz);
}
template <class V> void fields(V& v, LayoutSpec& s) {
  v("qubits", s.qubits);
  v("lines", s.lines);
}
template <class V> void fields(V& v, SurfaceCodeSpec& s) {
  v("delta_min_mhz", s.delta_min_mhz);
  v("layouts", s.layouts);
}
template <class V> void fields(V& v, PlanSpec& s) {
  v("n", s.n);
  v("min_spacing_mhz", s.min_spacing_mhz);
  v("max_iters", s.max_iters);
}
template <class V> void fields(V& v, BandsSpec& s) {
  v("pump_start_ghz", s.pump_start_ghz);
  v("pump_stop_ghz", s.pump_stop_ghz);
  v("pump_points", s.pump_points);
  v("min_signal_order", s.min_signal_order);
  v("max_signal_order", s.max_signal_order);
  v("max_pump_order", s.max_pump_order);
}
template <class V> void fields(V& v, OracleSpec& s) {
  v("sample_rate_ghz", s.sample_rate_ghz);
  v("samples", s.samples);
  v("window", s.window);
  v("quintic_per_v4", s.quintic_per_v4);
  v("sweep_span_db", s.sweep_span_db);
  v("sweep_stop_below_p1db_db", s.sweep_stop_below_p1db_db);
  v("sweep_points", s.sweep_points);
  v("pump_below_p1db_db", s.pump_below_p1db_db);
  v("fixed_signal_below_p1db_db", s.fixed_signal_below_p1db_db);
  v("joint_offset_db", s.joint_offset_db);
  v("phase_grid", s.phase_grid);
  v("write_traces", s.write_traces);
}
template <class V> void fields(V& v, QutritSpec& s) {
  v("topology", s.topology);
  v("f_r_ghz", s.f_r_ghz);
  v("tone_ghz", s.tone_ghz);
  v("kappa_mhz", s.kappa_mhz);
  v("chi_mhz", s.chi_mhz);
  v("states", s.states);
  v("pulls_mhz", s.pulls_mhz);
  v("power_dbm", s.power_dbm);
}
template <class V> void fields(V& v, CrosstalkSpec& s) {
  v("enabled", s.enabled);
  v("min_signal_order", s.min_signal_order);
  v("max_signal_order", s.max_signal_order);
  v("max_pump_order", s.max_pump_order);
  v("acquisition_halfwidth_mhz", s.acquisition_halfwidth_mhz);
}
template <class V> void fields(V& v, SweepSpec& s) {
  v("qutrit", s.qutrit);
  v("power_dbm", s.power_dbm);
}
template <class V> void fields(V& v, ReadoutSpec& s) {
  v("qutrits", s.qutrits);
  v("length_ns", s.length_ns);
  v("weights", s.weights);
  v("filter_sigma_ns", s.filter_sigma_ns);
  v("eta_ref", s.eta_ref);
  v("noise_scale", s.noise_scale);
  v("line_attenuation_db", s.line_attenuation_db);
  v("shots", s.shots);
  v("crosstalk", s.crosstalk);
  v("sweep", s.sweep);
  v("write_shots", s.write_shots);
}
template <class V> void fields(V& v, TraceSetSpec& s) {
  v("label", s.label);
  v("freq_ghz", s.freq_ghz);
  v("applied_dbm", s.applied_dbm);
  v("traces", s.traces);
}
template <class V> void fields(V& v, AnalyzeSpec& s) { v("sets", s.sets); }
template <class V> void fields(V& v, RunConfig& s) {
  v("seed", s.seed);
  v("band", s.band);
  v("pump", s.pump);
  v("signals", s.signals);
  v("amplifier", s.amplifier);
  v("enumerate", s.enumerate);
  v("power", s.power);
  v("policy", s.policy);
  v("mc", s.mc);
  v("surface_code", s.surface_code);
  v("plan", s.plan);
  v("bands", s.bands);
  v("oracle", s.oracle);
  v("readout", s.readout);
  v("analyze", s.analyze);
}

struct Probe {
  template <class T> void operator()(const char*, T&) {}
};
template <class T>
concept Record = requires(Probe& p, T& t) { fields(p, t); };

void read(const json& j, const std::string& ptr, double& out) {
  if (!j.is_number()) throw ConfigError(ptr, "expected a number");
  out = j.get<double>();
  if (!std::isfinite(out)) throw ConfigError(ptr, "expected a finite number");
}
void read(const json& j, const std::string& ptr, int& out) {
  if (!j.is_number_integer()) throw ConfigError(ptr, "expected an integer");
  const auto v = j.get<long long>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw ConfigError(ptr, "integer out of range");
  }
  out = static_cast<int>(v);
}
void read(const json& j, const std::string& ptr, std::size_t& out) {
  if (!j.is_number_unsigned()) throw ConfigError(ptr, "expected a non-negative integer");
  out = j.get<std::size_t>();
}
static_assert(std::is_same_v<std::uint64_t, std::size_t>, "seed parsing assumes 64-bit size_t");
void read(const json& j, const std::string& ptr, bool& out) {
  if (!j.is_boolean()) throw ConfigError(ptr, "expected true or false");
  out = j.get<bool>();
}
void read(const json& j, const std::string& ptr, std::string& out) {
  if (!j.is_string()) throw ConfigError(ptr, "expected a string");
  out = j.get<std::string>();
}
template <Record T> void read(const json& j, const std::string& ptr, T& out);
template <class T> void read(const json& j, const std::string& ptr, std::vector<T>& out);
template <class T> void read(const json& j, const std::string& ptr, std::optional<T>& out);

class Reader {
 public:
  Reader(const json& j, std::string ptr) : j_(j), ptr_(std::move(ptr)) {}

  template <class T> void operator()(const char* key, T& field) {
    const auto it = j_.find(key);
    if (it == j_.end()) return;
    seen_.insert(key);
    read(*it, ptr_ + "/" + key, field);
  }

  void reject_unknown() const {
    for (const auto& [k, _] : j_.items()) {
      if (!seen_.count(k)) throw ConfigError(ptr_ + "/" + k, "unknown key");
    }
  }

 private:
  const json& j_;
  std::string ptr_;
  std::set<std::string> seen_;
};

template <Record T> void read(const json& j, const std::string& ptr, T& out) {
  if (!j.is_object()) throw ConfigError(ptr.empty() ? "/" : ptr, "expected an object");
  Reader r(j, ptr);
  fields(r, out);
  r.reject_unknown();
}

template <class T> void read(const json& j, const std::string& ptr, std::vector<T>& out) {
  if (!j.is_array()) throw ConfigError(ptr, "expected an array");
  out.clear();
  for (std::size_t i = 0; i < j.size(); ++i) {
    T item{};
    read(j[i], ptr + "/" + std::to_string(i), item);
    out.push_back(std::move(item));
  }
}

template <class T> void read(const json& j, const std::string& ptr, std::optional<T>& out) {
  if (j.is_null()) {
    out.reset();
    return;
  }
  T v = out.value_or(T{});
  read(j, ptr, v);
  out = std::move(v);
}

ordered_json write(double v) { return v; }
ordered_json write(int v) { return v; }
ordered_json write(std::size_t v) { return v; }
ordered_json write(bool v) { return v; }
ordered_json write(const std::string& v) { return v; }
template <Record T> ordered_json write(const T& v);
template <class T> ordered_json write(const std::vector<T>& v) {
  ordered_json a = ordered_json::array();
  for (const auto& x : v) a.push_back(write(x));
  return a;
}
template <class T> ordered_json write(const std::optional<T>& v) {
  return v ? write(*v) : ordered_json(nullptr);
}

class Writer {
 public:
  explicit Writer(ordered_json& j) : j_(j) {}
  template <class T> void operator()(const char* key, T& field) { j_[key] = write(field); }

 private:
  ordered_json& j_;
};

template <Record T> ordered_json write(const T& v) {
  ordered_json j = ordered_json::object();
  T copy = v;
  Writer w(j);
  fields(w, copy);
  return j;
}

void require(bool ok, const std::string& where, const std::string& what) {
  if (!ok) throw ConfigError(where, what);
}

void check_orders(const std::string& ptr, int min_os, int max_os, int max_np) {
  require(min_os >= 1, ptr + "/min_signal_order", "must be >= 1");
  require(max_os >= min_os, ptr + "/max_signal_order", "must be >= min_signal_order");
  require(max_os <= 6, ptr + "/max_signal_order", "must be <= 6");
  require(max_np >= 0 && max_np <= 6, ptr + "/max_pump_order", "must be in [0, 6]");
}

}  // namespace

ReadoutSpec::ReadoutSpec() {
  QutritSpec victim;
  victim.f_r_ghz = 7.5501;
  victim.tone_ghz = 7.5551;
  victim.power_dbm = -118.0;
  QutritSpec aggressor;
  aggressor.f_r_ghz = 7.1874;
  aggressor.tone_ghz = 7.1924;
  aggressor.power_dbm = -110.0;
  qutrits = {victim, aggressor};
  sweep = SweepSpec{2, {-130.0, -125.0, -120.0, -115.0, -110.0, -105.0, -100.0}};
}

void validate(const RunConfig& c) {
  require(c.band.f_min_ghz > 0.0 && c.band.f_min_ghz < c.band.f_max_ghz, "/band",
          "need 0 < f_min_ghz < f_max_ghz");
  require(c.pump.freq_ghz > 0.0, "/pump/freq_ghz", "must be positive");
  require(!c.signals.empty(), "/signals", "at least one signal is required");
  for (std::size_t i = 0; i < c.signals.size(); ++i) {
    const std::string p = "/signals/" + std::to_string(i);
    require(c.signals[i].freq_ghz > 0.0, p + "/freq_ghz", "must be positive");
    require(c.signals[i].freq_ghz != c.pump.freq_ghz, p + "/freq_ghz",
            "coincides with the pump");
    for (std::size_t j = 0; j < i; ++j) {
      require(c.signals[i].freq_ghz != c.signals[j].freq_ghz, p + "/freq_ghz",
              "duplicates signal " + std::to_string(j));
    }
  }
  require(c.amplifier.z0_ohm > 0.0, "/amplifier/z0_ohm", "must be positive");
  if (c.amplifier.k_per_v2) require(*c.amplifier.k_per_v2 >= 0.0, "/amplifier/k_per_v2", "must be >= 0");

  require(c.enumerate.max_order >= 1 && c.enumerate.max_order <= kMaxEnumerationOrder,
          "/enumerate/max_order", "must be in [1, " + std::to_string(kMaxEnumerationOrder) + "]");
  if (c.enumerate.band) {
    require(c.enumerate.band->f_min_ghz < c.enumerate.band->f_max_ghz, "/enumerate/band",
            "need f_min_ghz < f_max_ghz");
  }
  require(c.power.points >= 2, "/power/points", "must be >= 2");
  require(c.power.start_dbm < c.power.stop_dbm, "/power", "need start_dbm < stop_dbm");

  require(c.policy.delta_min_mhz > 0.0, "/policy/delta_min_mhz", "must be positive");
  check_orders("/policy", c.policy.min_signal_order, c.policy.max_signal_order,
               c.policy.max_pump_order);
  for (std::size_t i = 0; i < c.policy.classes.size(); ++i) {
    const auto& k = c.policy.classes[i];
    require(k.plus >= 0 && k.minus >= 0 && k.plus + k.minus >= 1,
            "/policy/classes/" + std::to_string(i), "needs plus, minus >= 0 with plus + minus >= 1");
  }

  require(c.mc.samples >= 1, "/mc/samples", "must be >= 1");
  require(!c.mc.n.empty(), "/mc/n", "must not be empty");
  for (std::size_t i = 0; i < c.mc.n.size(); ++i) {
    require(c.mc.n[i] >= 1, "/mc/n/" + std::to_string(i), "must be >= 1");
  }
  require(!c.mc.delta_min_mhz.empty(), "/mc/delta_min_mhz", "must not be empty");
  for (std::size_t i = 0; i < c.mc.delta_min_mhz.size(); ++i) {
    require(c.mc.delta_min_mhz[i] > 0.0, "/mc/delta_min_mhz/" + std::to_string(i),
            "must be positive");
  }
  require(c.mc.min_spacing_mhz >= 0.0, "/mc/min_spacing_mhz", "must be >= 0");

  require(c.surface_code.delta_min_mhz > 0.0, "/surface_code/delta_min_mhz", "must be positive");
  for (std::size_t i = 0; i < c.surface_code.layouts.size(); ++i) {
    const auto& l = c.surface_code.layouts[i];
    require(l.lines >= 1 && l.lines <= l.qubits, "/surface_code/layouts/" + std::to_string(i),
            "need 1 <= lines <= qubits");
  }

  require(c.plan.n >= 1, "/plan/n", "must be >= 1");
  require(c.plan.min_spacing_mhz >= 0.0, "/plan/min_spacing_mhz", "must be >= 0");

  require(c.bands.pump_points >= 1, "/bands/pump_points", "must be >= 1");
  require(c.bands.pump_start_ghz <= c.bands.pump_stop_ghz, "/bands",
          "need pump_start_ghz <= pump_stop_ghz");
  require(c.bands.min_signal_order >= 1, "/bands/min_signal_order", "must be >= 1");
  check_orders("/bands", c.bands.min_signal_order, c.bands.max_signal_order,
               c.bands.max_pump_order);

  require(c.oracle.sample_rate_ghz > 0.0, "/oracle/sample_rate_ghz", "must be positive");
  require(c.oracle.samples >= 16, "/oracle/samples", "must be >= 16");
  require(c.oracle.window == "none" || c.oracle.window == "blackman_harris_4term",
          "/oracle/window", "must be 'none' or 'blackman_harris_4term'");
  require(c.oracle.sweep_points >= 2, "/oracle/sweep_points", "must be >= 2");
  require(c.oracle.sweep_span_db > 0.0, "/oracle/sweep_span_db", "must be positive");
  require(c.oracle.phase_grid >= 1, "/oracle/phase_grid", "must be >= 1");

  const auto& r = c.readout;
  require(!r.qutrits.empty(), "/readout/qutrits", "at least one qutrit is required");
  for (std::size_t i = 0; i < r.qutrits.size(); ++i) {
    const std::string p = "/readout/qutrits/" + std::to_string(i);
    const auto& q = r.qutrits[i];
    require(q.topology == "side_coupled" || q.topology == "transmission", p + "/topology",
            "must be 'side_coupled' or 'transmission'");
    require(q.f_r_ghz > 0.0, p + "/f_r_ghz", "must be positive");
    require(q.kappa_mhz > 0.0, p + "/kappa_mhz", "must be positive");
    require(q.states >= 2, p + "/states", "must be >= 2");
    require(q.states == r.qutrits.front().states, p + "/states",
            "every qutrit needs the same number of states");
    require(q.pulls_mhz.empty() || q.pulls_mhz.size() == static_cast<std::size_t>(q.states),
            p + "/pulls_mhz", "needs one entry per state");
  }
  require(r.length_ns > 0.0, "/readout/length_ns", "must be positive");
  require(r.weights == "mode_matched" || r.weights == "boxcar", "/readout/weights",
          "must be 'mode_matched' or 'boxcar'");
  require(r.filter_sigma_ns >= 0.0, "/readout/filter_sigma_ns", "must be >= 0");
  require(r.eta_ref > 0.0 && r.eta_ref <= 1.0, "/readout/eta_ref", "must be in (0, 1]");
  require(r.noise_scale >= 0.0, "/readout/noise_scale", "must be >= 0");
  require(r.shots >= 1, "/readout/shots", "must be >= 1");
  require(r.crosstalk.acquisition_halfwidth_mhz >= 0.0,
          "/readout/crosstalk/acquisition_halfwidth_mhz", "must be >= 0");
  check_orders("/readout/crosstalk", r.crosstalk.min_signal_order, r.crosstalk.max_signal_order,
               r.crosstalk.max_pump_order);
  if (r.sweep) {
    require(r.sweep->qutrit >= 1 && r.sweep->qutrit <= static_cast<int>(r.qutrits.size()),
            "/readout/sweep/qutrit", "must name a configured qutrit (1-based)");
  }

  for (std::size_t i = 0; i < c.analyze.sets.size(); ++i) {
    const std::string p = "/analyze/sets/" + std::to_string(i);
    const auto& s = c.analyze.sets[i];
    require(s.freq_ghz > 0.0, p + "/freq_ghz", "must be positive");
    require(s.traces.size() >= 2, p + "/traces", "needs at least two shot traces");
  }

  // Library-level checks, reported against the section that feeds them.
  try {
    (void)tone_set(c);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("/signals", e.what());
  }
  try {
    amplifier_model(c).validate();
  } catch (const std::exception& e) {
    throw ConfigError("/amplifier", e.what());
  }
  try {
    collision_policy(c).validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("/policy", e.what());
  }
  try {
    mc_config(c).validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("/mc", e.what());
  }
  try {
    readout_scenario(c).validate();
  } catch (const std::exception& e) {
    throw ConfigError("/readout", e.what());
  }
}

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("(syntax)", e.what());
  }
  RunConfig cfg;
  read(j, "", cfg);
  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::string text;
  try {
    text = io::read_file(path);
  } catch (const std::exception& e) {
    throw ConfigError("(file)", e.what());
  }
  return parse_config(text);
}

ordered_json to_json(const RunConfig& cfg) { return write(cfg); }

SignalBand to_band(const BandSpec& b) {
  return SignalBand(Frequency::ghz(b.f_min_ghz), Frequency::ghz(b.f_max_ghz));
}

Tone to_tone(const ToneSpec& t) {
  return Tone(Frequency::ghz(t.freq_ghz), PowerDbm{t.power_dbm}, t.phase_rad);
}

ToneSet tone_set(const RunConfig& cfg) {
  std::vector<Tone> sig;
  for (const auto& s : cfg.signals) sig.push_back(to_tone(s));
  return ToneSet(to_tone(cfg.pump), std::move(sig));
}

AmplifierModel amplifier_model(const RunConfig& cfg) {
  const auto& a = cfg.amplifier;
  AmplifierModel m;
  m.gain_db = a.gain_db;
  m.z0_ohm = a.z0_ohm;
  if (a.p_ip2_dbm) m.p_ip_dbm[2] = *a.p_ip2_dbm;
  if (a.p_ip3_dbm) m.p_ip_dbm[3] = *a.p_ip3_dbm;
  if (a.k_per_v2) {
    m.k_per_v2 = *a.k_per_v2;
  } else if (a.p1db_dbm) {
    m.k_per_v2 = k_for_compression_point(PowerDbm{*a.p1db_dbm}, a.z0_ohm);
  }
  return m;
}

collision::CollisionPolicy collision_policy(const RunConfig& cfg) {
  collision::CollisionPolicy p;
  p.delta_min = Frequency::mhz(cfg.policy.delta_min_mhz);
  p.orders = {cfg.policy.min_signal_order, cfg.policy.max_signal_order,
              cfg.policy.max_pump_order};
  for (const auto& k : cfg.policy.classes) p.classes.push_back({k.pump, k.plus, k.minus});
  p.exclude_degenerate = cfg.policy.exclude_degenerate;
  return p;
}

collision::MCConfig mc_config(const RunConfig& cfg) {
  collision::MCConfig m;
  m.samples = cfg.mc.samples;
  m.band = to_band(cfg.band);
  m.min_spacing = Frequency::mhz(cfg.mc.min_spacing_mhz);
  m.n_values = cfg.mc.n;
  m.delta_values.clear();
  for (double d : cfg.mc.delta_min_mhz) m.delta_values.push_back(Frequency::mhz(d));
  m.pump = Frequency::ghz(cfg.pump.freq_ghz);
  m.seed = cfg.seed;
  return m;
}

oracle::TraceConfig trace_config(const RunConfig& cfg) {
  oracle::TraceConfig t;
  t.sample_rate_hz = cfg.oracle.sample_rate_ghz * 1e9;
  t.samples = cfg.oracle.samples;
  t.window = cfg.oracle.window == "none" ? oracle::Window::none
                                         : oracle::Window::blackman_harris_4term;
  t.z0_ohm = cfg.amplifier.z0_ohm;
  return t;
}

readout::ReadoutScenario readout_scenario(const RunConfig& cfg) {
  const auto& r = cfg.readout;
  readout::ReadoutScenario sc;
  for (const auto& q : r.qutrits) {
    readout::QutritChannel ch;
    ch.resonator.topology = q.topology == "transmission" ? readout::Topology::transmission
                                                         : readout::Topology::side_coupled;
    ch.resonator.f_r = Frequency::ghz(q.f_r_ghz);
    ch.resonator.kappa_hz = q.kappa_mhz * 1e6;
    ch.resonator.chi_hz = q.chi_mhz * 1e6;
    ch.resonator.states = q.states;
    for (double p : q.pulls_mhz) ch.resonator.pulls_hz.push_back(p * 1e6);
    ch.power = PowerDbm{q.power_dbm};
    if (q.tone_ghz) ch.tone = Frequency::ghz(*q.tone_ghz);
    sc.qutrits.push_back(std::move(ch));
  }
  sc.pump = to_tone(cfg.pump);
  sc.amplifier = amplifier_model(cfg);
  sc.integration.length_s = r.length_ns * 1e-9;
  sc.integration.weights =
      r.weights == "boxcar" ? readout::Weights::boxcar : readout::Weights::mode_matched;
  sc.integration.filter_sigma_s = r.filter_sigma_ns * 1e-9;
  sc.eta_ref = r.eta_ref;
  sc.noise_scale = r.noise_scale;
  sc.line_attenuation_db = r.line_attenuation_db;
  sc.shots = r.shots;
  sc.crosstalk.enabled = r.crosstalk.enabled;
  sc.crosstalk.min_signal_order = r.crosstalk.min_signal_order;
  sc.crosstalk.max_signal_order = r.crosstalk.max_signal_order;
  sc.crosstalk.max_pump_order = r.crosstalk.max_pump_order;
  sc.crosstalk.acquisition_halfwidth_hz = r.crosstalk.acquisition_halfwidth_mhz * 1e6;
  return sc;
}

}  // namespace imdplan::cli
