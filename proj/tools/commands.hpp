#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "config.hpp"
#include "imdplan/trace.hpp"
#include "table.hpp"

namespace imdplan::cli {

inline constexpr const char* kToolName = "imdplan";
const char* tool_version();

/// Everything a command produces; the caller decides where it goes.
struct CommandOutput {
  nlohmann::ordered_json results = nlohmann::ordered_json::object();
  std::vector<Table> tables;
  std::vector<std::pair<std::string, oracle::TimeTrace>> traces;
};

const std::vector<std::string>& command_names();

/// Runs a subcommand against a validated config. Throws std::invalid_argument for
/// unknown commands and propagates library errors.
CommandOutput run_command(const std::string& name, const RunConfig& cfg);

CommandOutput cmd_enumerate(const RunConfig& cfg);
CommandOutput cmd_power(const RunConfig& cfg);
CommandOutput cmd_bands(const RunConfig& cfg);
CommandOutput cmd_check(const RunConfig& cfg);
CommandOutput cmd_mc(const RunConfig& cfg);
CommandOutput cmd_plan(const RunConfig& cfg);
CommandOutput cmd_oracle(const RunConfig& cfg);
CommandOutput cmd_readout(const RunConfig& cfg);
CommandOutput cmd_analyze(const RunConfig& cfg);

/// {tool, version, command, seed, config, results, wall_clock_s}.
nlohmann::ordered_json make_report(const std::string& command, const RunConfig& cfg,
                                   const CommandOutput& out, double wall_clock_s);

/// Writes every table, trace and the report below `dir`, each file atomically.
/// Returns the written paths.
std::vector<std::filesystem::path> write_outputs(const std::filesystem::path& dir,
                                                 const std::string& command,
                                                 const CommandOutput& out,
                                                 const nlohmann::ordered_json& report,
                                                 Format format, double z0_ohm);

}  // namespace imdplan::cli
