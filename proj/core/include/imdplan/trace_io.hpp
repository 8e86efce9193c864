#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "imdplan/spectrum.hpp"
#include "imdplan/trace.hpp"

namespace imdplan::io {

/// Shortest text that parses back to the same double ("%.17g"); "nan"/"inf" for non-finite.
std::string format_double(double v);
/// Strict decimal parse of a whole field; throws std::invalid_argument on junk.
double parse_double(const std::string& field);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

/// Splits one CSV line on commas (no quoting; all emitted fields are numeric or bare words).
std::vector<std::string> split_csv_line(const std::string& line);

struct TraceMetadata {
  double sample_rate_hz = 0.0;
  double z0_ohm = kDefaultImpedanceOhm;
};

/// Sidecar path for a trace CSV: "<file>.meta.json".
std::filesystem::path metadata_path(const std::filesystem::path& trace_csv);

/// `t_s,v` for real traces or `t_s,i_v,q_v` for complex ones, plus the sidecar.
void write_trace(const std::filesystem::path& path, const oracle::TimeTrace& trace,
                 double z0 = kDefaultImpedanceOhm);
std::string trace_to_csv(const oracle::TimeTrace& trace);

struct LoadedTrace {
  oracle::TimeTrace trace;
  TraceMetadata meta;
};

/// Reads a trace CSV. Without a sidecar the sample rate comes from the time column.
LoadedTrace read_trace(const std::filesystem::path& path);
oracle::TimeTrace trace_from_csv(const std::string& text, double sample_rate_hz = 0.0);

/// `freq_hz,power_dbm,phase_rad`.
std::string spectrum_to_csv(std::span<const oracle::SpectrumLine> lines);

}  // namespace imdplan::io
