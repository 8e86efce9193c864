#include "commands.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "imdplan/bands.hpp"
#include "imdplan/collision.hpp"
#include "imdplan/estimators.hpp"
#include "imdplan/oracle.hpp"
#include "imdplan/readout.hpp"
#include "imdplan/trace_io.hpp"

#ifndef IMDPLAN_VERSION
#define IMDPLAN_VERSION "0.0.0"
#endif

namespace imdplan::cli {

namespace {

using nlohmann::ordered_json;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

long long ll(std::size_t v) { return static_cast<long long>(v); }

std::vector<std::string> coefficient_columns(std::size_t n) {
  std::vector<std::string> cols{"n_p"};
  for (std::size_t i = 1; i <= n; ++i) cols.push_back("n_" + std::to_string(i));
  return cols;
}

void push_coefficients(std::vector<Cell>& row, const Coefficients& c) {
  row.emplace_back(static_cast<long long>(c.pump));
  for (int n : c.signal) row.emplace_back(static_cast<long long>(n));
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out;
  for (int k = 0; k < n; ++k) {
    out.push_back(n == 1 ? a : a + (b - a) * static_cast<double>(k) / (n - 1));
  }
  return out;
}

ordered_json finite_or_null(double v) {
  return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr);
}

}  // namespace

const char* tool_version() { return IMDPLAN_VERSION; }

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"enumerate", "power",   "bands",
                                              "check",     "mc",      "plan",
                                              "oracle",    "readout", "analyze"};
  return names;
}

CommandOutput run_command(const std::string& name, const RunConfig& cfg) {
  if (name == "enumerate") return cmd_enumerate(cfg);
  if (name == "power") return cmd_power(cfg);
  if (name == "bands") return cmd_bands(cfg);
  if (name == "check") return cmd_check(cfg);
  if (name == "mc") return cmd_mc(cfg);
  if (name == "plan") return cmd_plan(cfg);
  if (name == "oracle") return cmd_oracle(cfg);
  if (name == "readout") return cmd_readout(cfg);
  if (name == "analyze") return cmd_analyze(cfg);
  throw std::invalid_argument("unknown command '" + name + "'");
}

CommandOutput cmd_enumerate(const RunConfig& cfg) {
  const auto tones = tone_set(cfg);
  const auto model = amplifier_model(cfg);
  std::optional<SignalBand> band;
  if (cfg.enumerate.band) band = to_band(*cfg.enumerate.band);
  const auto products = enumerate_products(
      tones, cfg.enumerate.max_order, band,
      cfg.enumerate.odd_only ? Parity::odd_only : Parity::all);

  Table t;
  t.name = "enumerate";
  t.columns = coefficient_columns(tones.size());
  for (const char* c : {"freq_ghz", "o_t", "o_s", "power_dbm", "phase_rad"}) {
    t.columns.emplace_back(c);
  }
  for (const auto& p : products) {
    std::vector<Cell> row;
    push_coefficients(row, p.coeffs);
    double power = kNaN;
    if (p.signal_order() >= 1) {
      try {
        power = product_power(model, tones, p).dbm;
      } catch (const std::out_of_range&) {
        // no intercept configured for this signal order
      }
    }
    row.emplace_back(p.freq.ghz());
    row.emplace_back(static_cast<long long>(p.total_order()));
    row.emplace_back(static_cast<long long>(p.signal_order()));
    row.emplace_back(power);
    row.emplace_back(product_phase(model, tones, p));
    t.add(std::move(row));
  }

  CommandOutput out;
  out.results["products"] = products.size();
  out.tables.push_back(std::move(t));
  return out;
}

CommandOutput cmd_power(const RunConfig& cfg) {
  const auto model = amplifier_model(cfg);
  if (!(model.k_per_v2 > 0.0)) {
    throw std::invalid_argument("power: the amplifier needs k_per_v2 or p1db_dbm");
  }
  Table t;
  t.name = "saturation";
  t.columns = {"input_dbm", "gain_db"};
  for (double p : linspace(cfg.power.start_dbm, cfg.power.stop_dbm, cfg.power.points)) {
    double g = kNaN;
    try {
      g = saturation_gain_db(model, PowerDbm{p});
    } catch (const std::domain_error&) {
      // past the cubic's turning point
    }
    t.add({p, g});
  }
  CommandOutput out;
  const double p1 = compression_point(model).dbm;
  const double ip3 = ip3_point(model).dbm;
  out.results["k_per_v2"] = model.k_per_v2;
  out.results["small_signal_gain_db"] = model.gain_db;
  out.results["compression_point_dbm"] = p1;
  out.results["ip3_point_dbm"] = ip3;
  out.results["ip3_minus_compression_db"] = ip3 - p1;
  out.tables.push_back(std::move(t));
  return out;
}

CommandOutput cmd_bands(const RunConfig& cfg) {
  const auto band = to_band(cfg.band);
  const auto classes = enumerate_classes(cfg.bands.min_signal_order, cfg.bands.max_signal_order,
                                         cfg.bands.max_pump_order);
  Table t;
  t.name = "bands";
  t.columns = {"pump_ghz", "class", "n_p",    "plus",          "minus",
               "o_s",      "lo_ghz", "hi_ghz", "overlaps_band"};
  std::optional<double> first_clear;
  for (double fp : linspace(cfg.bands.pump_start_ghz, cfg.bands.pump_stop_ghz,
                            cfg.bands.pump_points)) {
    const auto pump = Frequency::ghz(fp);
    bool os2_overlap = false;
    for (const auto& c : classes) {
      const auto iv = class_band(c, band, pump);
      const bool hit = iv.overlaps(band.f_min, band.f_max);
      if (hit && c.signal_order() == 2) os2_overlap = true;
      t.add({fp, c.label(), static_cast<long long>(c.pump), static_cast<long long>(c.plus),
             static_cast<long long>(c.minus), static_cast<long long>(c.signal_order()),
             iv.lo.ghz(), iv.hi.ghz(), static_cast<long long>(hit)});
    }
    if (!os2_overlap && !first_clear) first_clear = fp;
  }
  CommandOutput out;
  out.results["pump_condition_threshold_ghz"] =
      (band.f_max * 2.0 - band.f_min).ghz();
  out.results["first_pump_clear_of_second_order_ghz"] =
      first_clear ? ordered_json(*first_clear) : ordered_json(nullptr);
  out.results["classes"] = classes.size();
  out.tables.push_back(std::move(t));
  return out;
}

CommandOutput cmd_check(const RunConfig& cfg) {
  const auto tones = tone_set(cfg);
  const auto policy = collision_policy(cfg);
  const auto band = to_band(cfg.band);
  std::vector<Frequency> sig;
  for (const auto& s : tones.signals()) sig.push_back(s.freq);
  const auto pump = tones.pump().freq;
  const auto coll = collision::detect_collisions(sig, pump, policy);

  Table t;
  t.name = "collisions";
  t.columns = coefficient_columns(sig.size());
  for (const char* c : {"product_ghz", "signal", "signal_ghz", "detuning_mhz"}) {
    t.columns.emplace_back(c);
  }
  for (const auto& c : coll) {
    std::vector<Cell> row;
    push_coefficients(row, c.product);
    row.emplace_back(c.product_freq.ghz());
    row.emplace_back(static_cast<long long>(c.signal_index + 1));
    row.emplace_back(sig[c.signal_index].ghz());
    row.emplace_back(c.detuning.mhz());
    t.add(std::move(row));
  }
  CommandOutput out;
  out.results["pump_condition_satisfied"] = pump_condition_satisfied(band, pump);
  out.results["pump_condition_margin_ghz"] = pump_condition_margin(band, pump).ghz();
  out.results["collisions"] = coll.size();
  out.tables.push_back(std::move(t));
  return out;
}

CommandOutput cmd_mc(const RunConfig& cfg) {
  const auto mc = mc_config(cfg);
  const auto policy = collision_policy(cfg);
  const auto table = collision::mc_collision_probability(mc, policy);

  Table t;
  t.name = "mc";
  t.columns = {"n", "delta_min_hz", "p_coll", "stderr"};
  ordered_json grid = ordered_json::array();
  for (std::size_t i = 0; i < table.n_values.size(); ++i) {
    for (std::size_t j = 0; j < table.delta_values.size(); ++j) {
      t.add({static_cast<long long>(table.n_values[i]), table.delta_values[j].hz(),
             table.p_coll[i][j], table.std_error[i][j]});
      grid.push_back({{"n", table.n_values[i]},
                      {"delta_min_hz", table.delta_values[j].hz()},
                      {"p_coll", table.p_coll[i][j]}});
    }
  }

  Table sc;
  sc.name = "surface_code";
  sc.columns = {"qubits", "lines", "line_sizes", "delta_min_mhz", "p_fail"};
  ordered_json surface = ordered_json::array();
  const auto delta = Frequency::mhz(cfg.surface_code.delta_min_mhz);
  for (const auto& l : cfg.surface_code.layouts) {
    const auto sizes = collision::even_split(l.qubits, l.lines);
    std::string label;
    for (std::size_t k = 0; k < sizes.size(); ++k) {
      if (k) label += ';';
      label += std::to_string(sizes[k]);
    }
    const double pf = collision::surface_code_failure(sizes, delta, mc.pump, policy, mc);
    sc.add({static_cast<long long>(l.qubits), static_cast<long long>(l.lines), label,
            cfg.surface_code.delta_min_mhz, pf});
    surface.push_back({{"qubits", l.qubits}, {"lines", l.lines}, {"p_fail", pf}});
  }

  CommandOutput out;
  out.results["samples"] = table.samples;
  out.results["p_coll"] = std::move(grid);
  out.results["surface_code"] = std::move(surface);
  out.tables.push_back(std::move(t));
  out.tables.push_back(std::move(sc));
  return out;
}

CommandOutput cmd_plan(const RunConfig& cfg) {
  const auto policy = collision_policy(cfg);
  const auto plan = collision::plan_frequencies(
      cfg.plan.n, to_band(cfg.band), policy, Frequency::ghz(cfg.pump.freq_ghz),
      Frequency::mhz(cfg.plan.min_spacing_mhz), cfg.plan.max_iters, cfg.seed);

  Table t;
  t.name = "plan";
  t.columns = {"signal", "freq_ghz"};
  ordered_json assigned = ordered_json::array();
  for (std::size_t i = 0; i < plan.assigned.size(); ++i) {
    t.add({static_cast<long long>(i + 1), plan.assigned[i].ghz()});
    assigned.push_back(plan.assigned[i].ghz());
  }
  Table r;
  r.name = "plan_residual";
  r.columns = coefficient_columns(plan.assigned.size());
  for (const char* c : {"product_ghz", "signal", "detuning_mhz"}) r.columns.emplace_back(c);
  for (const auto& c : plan.residual_collisions) {
    std::vector<Cell> row;
    push_coefficients(row, c.product);
    row.emplace_back(c.product_freq.ghz());
    row.emplace_back(static_cast<long long>(c.signal_index + 1));
    row.emplace_back(c.detuning.mhz());
    r.add(std::move(row));
  }
  CommandOutput out;
  out.results["valid"] = plan.valid();
  out.results["assigned_ghz"] = std::move(assigned);
  out.results["residual_collisions"] = plan.residual_collisions.size();
  out.results["iterations"] = plan.iterations;
  out.results["restarts"] = plan.restarts;
  out.tables.push_back(std::move(t));
  out.tables.push_back(std::move(r));
  return out;
}

CommandOutput cmd_oracle(const RunConfig& cfg) {
  oracle::OracleSettings st;
  st.model = amplifier_model(cfg);
  st.quintic_per_v4 = cfg.oracle.quintic_per_v4;
  st.trace = trace_config(cfg);
  st.trace.validate();
  if (!(st.model.k_per_v2 > 0.0)) {
    throw std::invalid_argument("oracle: the amplifier needs k_per_v2 or p1db_dbm");
  }
  const auto& o = cfg.oracle;
  const double p1 = compression_point(st.model).dbm;
  const double stop = p1 - o.sweep_stop_below_p1db_db;
  const double start = stop - o.sweep_span_db;
  const double fixed = p1 - o.fixed_signal_below_p1db_db;
  const auto base = oracle::reference_tone_plan(st.trace, PowerDbm{p1 - o.pump_below_p1db_db},
                                                PowerDbm{fixed}, PowerDbm{fixed});
  const auto products = oracle::cubic_products(base);
  CommandOutput out;

  Table law;
  law.name = "power_law";
  law.columns = {"sweep", "n_p", "n_1", "n_2", "swept_dbm", "power_dbm"};
  Table slopes;
  slopes.name = "power_law_slopes";
  slopes.columns = {"sweep", "n_p", "n_1", "n_2", "slope", "expected"};
  const std::vector<std::pair<std::string, int>> sweeps{{"signal_1", 0}, {"signal_2", 1},
                                                        {"joint", -1}};
  for (const auto& [label, idx] : sweeps) {
    oracle::PowerSweepSpec spec;
    spec.swept_signal = idx;
    spec.start_dbm = start;
    spec.stop_dbm = stop;
    spec.points = o.sweep_points;
    spec.joint_offsets_db = {0.0, o.joint_offset_db};
    const auto res = oracle::power_sweep(st, base, products, spec);
    for (std::size_t j = 0; j < products.size(); ++j) {
      const auto& c = products[j].coeffs;
      for (std::size_t k = 0; k < res.swept_dbm.size(); ++k) {
        std::vector<Cell> row{label};
        push_coefficients(row, c);
        row.emplace_back(res.swept_dbm[k]);
        row.emplace_back(res.power_dbm[j][k]);
        law.add(std::move(row));
      }
      const double expected = idx < 0 ? c.signal_order()
                                      : std::abs(c.signal[static_cast<std::size_t>(idx)]);
      std::vector<Cell> row{label};
      push_coefficients(row, c);
      row.emplace_back(res.slopes[j]);
      row.emplace_back(expected);
      slopes.add(std::move(row));
    }
  }

  const auto grid = oracle::phase_grid(st, base, products, o.phase_grid);
  Table ph;
  ph.name = "phase_grid";
  ph.columns = {"phi1_rad", "phi2_rad", "n_p", "n_1", "n_2", "phase_rad", "residual_rad"};
  for (const auto& r : grid.rows) {
    std::vector<Cell> row{r.phi1, r.phi2};
    push_coefficients(row, grid.products[r.product]);
    row.emplace_back(r.phase);
    row.emplace_back(r.residual);
    ph.add(std::move(row));
  }
  double worst = 0.0;
  for (double r : grid.max_residual) worst = std::max(worst, r);

  const auto f1 = base.signals()[0].freq;
  const auto f2 = base.signals()[1].freq;
  const auto sat = oracle::single_tone_saturation(st, f1, p1 - 30.0, p1 + 3.0, 34);
  Table s;
  s.name = "saturation";
  s.columns = {"input_dbm", "oracle_gain_db", "model_gain_db"};
  for (const auto& p : sat) s.add({p.input_dbm, p.oracle_gain_db, p.model_gain_db});

  const double p1_oracle = oracle::oracle_compression_point(st, f1).dbm;
  const double ip3_oracle = oracle::oracle_ip3_point(st, f1, f2, PowerDbm{p1 - 40.0}).dbm;

  out.results["compression_point_dbm"] = p1;
  out.results["ip3_point_dbm"] = ip3_point(st.model).dbm;
  out.results["oracle_compression_point_dbm"] = p1_oracle;
  out.results["oracle_ip3_point_dbm"] = ip3_oracle;
  out.results["oracle_ip3_minus_compression_db"] = ip3_oracle - p1_oracle;
  out.results["phase_grid_max_residual_rad"] = worst;
  out.results["pump_ghz"] = base.pump().freq.ghz();
  out.results["signal_ghz"] = {f1.ghz(), f2.ghz()};
  out.tables.push_back(std::move(law));
  out.tables.push_back(std::move(slopes));
  out.tables.push_back(std::move(ph));
  out.tables.push_back(std::move(s));

  if (o.write_traces) {
    const auto in = oracle::synthesize_trace(base.all_tones(), st.trace);
    out.traces.emplace_back("oracle_input_trace", in);
    out.traces.emplace_back("oracle_output_trace",
                            oracle::apply_nonlinearity(in, st.model, st.quintic_per_v4));
  }
  return out;
}

namespace {

void add_fidelity_rows(Table& t, const readout::CrossFidelityMatrix& cf, double sweep_dbm) {
  for (std::size_t i = 0; i < cf.F.size(); ++i) {
    for (std::size_t j = 0; j < cf.F.size(); ++j) {
      t.add({sweep_dbm, ll(i + 1), ll(j + 1), cf.F[i][j], cf.stderr_F[i][j]});
    }
  }
}

ordered_json matrix_json(const std::vector<std::vector<double>>& m) {
  ordered_json a = ordered_json::array();
  for (const auto& r : m) a.push_back(r);
  return a;
}

}  // namespace

CommandOutput cmd_readout(const RunConfig& cfg) {
  auto sc = readout_scenario(cfg);
  sc.validate();
  const std::size_t nq = sc.qutrits.size();
  CommandOutput out;

  const auto base = readout::simulate_readout(sc, cfg.seed, cfg.readout.write_shots);
  Table fid;
  fid.name = "fidelity";
  fid.columns = {"sweep_power_dbm", "i", "j", "F", "stderr"};
  add_fidelity_rows(fid, base.fidelity, kNaN);

  Table shifts;
  shifts.name = "shifts";
  for (std::size_t q = 1; q <= nq; ++q) shifts.columns.push_back("prep_" + std::to_string(q));
  for (const char* c : {"qutrit", "shift_re", "shift_im"}) shifts.columns.emplace_back(c);
  for (std::size_t t = 0; t < base.tuples.size(); ++t) {
    for (std::size_t q = 0; q < nq; ++q) {
      std::vector<Cell> row;
      for (int s : base.tuples[t]) row.emplace_back(static_cast<long long>(s));
      row.emplace_back(ll(q + 1));
      row.emplace_back(base.shifts[t][q].real());
      row.emplace_back(base.shifts[t][q].imag());
      shifts.add(std::move(row));
    }
  }

  ordered_json eff = ordered_json::array();
  for (std::size_t q = 0; q < nq; ++q) {
    const auto& res = sc.qutrits[q].resonator;
    const auto resp = readout::steady_state_response(res, sc.input_tone(q));
    const double closed = res.topology == readout::Topology::side_coupled
                              ? readout::side_coupled_efficiency(res.kappa_hz, res.chi_hz)
                              : readout::transmission_efficiency(res.kappa_hz, res.chi_hz);
    eff.push_back({{"qutrit", q + 1},
                   {"power_efficiency", readout::power_efficiency(resp.alpha[0], resp.alpha[1])},
                   {"closed_form_at_optimal_tone", closed}});
  }
  out.results["F"] = matrix_json(base.fidelity.F);
  out.results["stderr_F"] = matrix_json(base.fidelity.stderr_F);
  out.results["power_efficiency"] = std::move(eff);

  if (cfg.readout.sweep && !cfg.readout.sweep->power_dbm.empty()) {
    const auto q = static_cast<std::size_t>(cfg.readout.sweep->qutrit - 1);
    ordered_json sweep = ordered_json::array();
    for (double p : cfg.readout.sweep->power_dbm) {
      auto point = sc;
      point.qutrits[q].power = PowerDbm{p};
      const auto r = readout::simulate_readout(point, cfg.seed);
      add_fidelity_rows(fid, r.fidelity, p);
      sweep.push_back({{"power_dbm", p}, {"F", matrix_json(r.fidelity.F)}});
    }
    out.results["sweep_qutrit"] = cfg.readout.sweep->qutrit;
    out.results["sweep"] = std::move(sweep);
  }
  out.tables.push_back(std::move(fid));
  out.tables.push_back(std::move(shifts));

  if (cfg.readout.write_shots) {
    for (std::size_t q = 0; q < nq; ++q) {
      Table t;
      t.name = "shots_q" + std::to_string(q + 1);
      for (std::size_t k = 1; k <= nq; ++k) t.columns.push_back("prep_" + std::to_string(k));
      for (const char* c : {"q_re", "q_im", "assigned"}) t.columns.emplace_back(c);
      for (const auto& s : base.shots) {
        if (s.qutrit != q) continue;
        std::vector<Cell> row;
        for (int p : base.tuples[s.tuple]) row.emplace_back(static_cast<long long>(p));
        row.emplace_back(s.q.real());
        row.emplace_back(s.q.imag());
        row.emplace_back(static_cast<long long>(s.assigned));
        t.add(std::move(row));
      }
      out.tables.push_back(std::move(t));
    }
  }
  return out;
}

CommandOutput cmd_analyze(const RunConfig& cfg) {
  if (cfg.analyze.sets.empty()) throw std::invalid_argument("analyze: no trace sets configured");
  std::vector<oracle::GainNoiseEstimate> est;
  for (const auto& set : cfg.analyze.sets) {
    std::vector<oracle::TimeTrace> shots;
    double z0 = kDefaultImpedanceOhm;
    for (const auto& path : set.traces) {
      auto loaded = io::read_trace(path);
      z0 = loaded.meta.z0_ohm;
      shots.push_back(std::move(loaded.trace));
    }
    est.push_back(oracle::estimate_gain_noise(shots, Frequency::ghz(set.freq_ghz),
                                              PowerDbm{set.applied_dbm}, {}, z0));
  }
  Table t;
  t.name = "analyze";
  t.columns = {"label",   "freq_ghz",  "applied_dbm", "shots",
               "gain_db", "noise_w",   "noise_dbm",   "efficiency_change_db"};
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < est.size(); ++i) {
    const auto& s = cfg.analyze.sets[i];
    double eff = kNaN;
    try {
      eff = oracle::efficiency_change_db(est[i], est.front());
    } catch (const std::invalid_argument&) {
      // reference without gain or noise: no ratio to form
    }
    const double gain_db = est[i].gain > 0.0 ? linear_power_to_db(est[i].gain) : kNaN;
    t.add({s.label, s.freq_ghz, s.applied_dbm, ll(est[i].shots), gain_db, est[i].noise_w,
           watts_to_dbm(est[i].noise_w), eff});
    rows.push_back({{"label", s.label},
                    {"gain_db", finite_or_null(gain_db)},
                    {"noise_w", est[i].noise_w},
                    {"efficiency_change_db", finite_or_null(eff)}});
  }
  CommandOutput out;
  out.results["sets"] = std::move(rows);
  out.tables.push_back(std::move(t));
  return out;
}

ordered_json make_report(const std::string& command, const RunConfig& cfg,
                         const CommandOutput& out, double wall_clock_s) {
  ordered_json r = ordered_json::object();
  r["tool"] = kToolName;
  r["version"] = tool_version();
  r["command"] = command;
  r["seed"] = cfg.seed;
  r["config"] = to_json(cfg);
  r["results"] = out.results;
  r["wall_clock_s"] = wall_clock_s;
  return r;
}

std::vector<std::filesystem::path> write_outputs(const std::filesystem::path& dir,
                                                 const std::string& command,
                                                 const CommandOutput& out,
                                                 const ordered_json& report, Format format,
                                                 double z0_ohm) {
  std::vector<std::filesystem::path> written;
  for (const auto& t : out.tables) {
    const auto path = dir / (t.name + extension(format));
    io::write_file_atomic(path, render(t, format));
    written.push_back(path);
  }
  for (const auto& [name, trace] : out.traces) {
    const auto path = dir / (name + ".csv");
    io::write_trace(path, trace, z0_ohm);
    written.push_back(path);
  }
  const auto rp = dir / (command + "_report.json");
  io::write_file_atomic(rp, report.dump(2) + "\n");
  written.push_back(rp);
  return written;
}

}  // namespace imdplan::cli
