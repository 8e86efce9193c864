#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"

namespace {

struct Common {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::string format = "csv";
};

struct EnumerateFlags {
  std::optional<int> max_order;
  std::string band;
  bool odd_only = false;
};

imdplan::cli::BandSpec parse_band_flag(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) {
    throw imdplan::cli::ConfigError("--band", "expected 'F_MIN_GHZ,F_MAX_GHZ'");
  }
  imdplan::cli::BandSpec b;
  try {
    b.f_min_ghz = std::stod(s.substr(0, comma));
    b.f_max_ghz = std::stod(s.substr(comma + 1));
  } catch (const std::exception&) {
    throw imdplan::cli::ConfigError("--band", "expected two numbers in GHz");
  }
  return b;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace imdplan::cli;

  CLI::App app{"Intermodulation spur analysis and frequency planning for multiplexed readout"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tool_version()));

  Common common;
  EnumerateFlags en;
  const std::vector<std::pair<std::string, std::string>> help{
      {"enumerate", "list intermodulation products with predicted power and phase"},
      {"power", "single-tone saturation curve, compression and intercept points"},
      {"bands", "product-class intervals versus pump frequency"},
      {"check", "pump condition and collisions for the configured signals"},
      {"mc", "Monte Carlo collision probabilities and surface-code composition"},
      {"plan", "search for a collision-free frequency assignment"},
      {"oracle", "time-domain verification sweeps of the closed-form laws"},
      {"readout", "multiplexed qutrit readout with intermodulation crosstalk"},
      {"analyze", "gain, noise and efficiency change from recorded shot traces"}};
  for (const auto& [name, desc] : help) {
    auto* sub = app.add_subcommand(name, desc);
    sub->add_option("--config", common.config_path, "JSON run configuration")
        ->check(CLI::ExistingFile);
    sub->add_option("--seed", common.seed, "seed for randomized commands");
    sub->add_option("--out", common.out_dir, "directory for tables and the report");
    sub->add_option("--format", common.format, "table format")
        ->check(CLI::IsMember({"csv", "json-lines"}));
    if (name == "enumerate") {
      sub->add_option("--max-order", en.max_order, "largest total order O_t");
      sub->add_option("--band", en.band, "keep products in F_MIN_GHZ,F_MAX_GHZ");
      sub->add_flag("--odd-only", en.odd_only, "keep odd total orders only");
    }
  }

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    RunConfig cfg = common.config_path.empty() ? RunConfig{} : load_config(common.config_path);
    if (common.seed) cfg.seed = *common.seed;
    if (command == "enumerate") {
      if (en.max_order) cfg.enumerate.max_order = *en.max_order;
      if (!en.band.empty()) cfg.enumerate.band = parse_band_flag(en.band);
      if (en.odd_only) cfg.enumerate.odd_only = true;
    }
    validate(cfg);

    const auto t0 = std::chrono::steady_clock::now();
    const auto out = run_command(command, cfg);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const Format format = common.format == "csv" ? Format::csv : Format::json_lines;
    const auto report = make_report(command, cfg, out, wall);

    if (!common.out_dir.empty()) {
      for (const auto& p : write_outputs(common.out_dir, command, out, report, format,
                                         cfg.amplifier.z0_ohm)) {
        std::cerr << "wrote " << p.string() << '\n';
      }
    } else if (!out.tables.empty()) {
      std::cout << render(out.tables.front(), format);
    } else {
      std::cout << report.dump(2) << '\n';
    }
    if (common.out_dir.empty()) std::cerr << out.results.dump() << '\n';
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
