#include "imdplan/trace_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace imdplan::io {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const std::string& field) {
  const char* begin = field.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw std::invalid_argument("not a number: '" + field + "'");
  }
  return v;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::filesystem::path metadata_path(const std::filesystem::path& trace_csv) {
  auto p = trace_csv;
  p += ".meta.json";
  return p;
}

std::string trace_to_csv(const oracle::TimeTrace& trace) {
  std::string out = trace.is_complex() ? "t_s,i_v,q_v\n" : "t_s,v\n";
  for (std::size_t n = 0; n < trace.size(); ++n) {
    out += format_double(static_cast<double>(n) / trace.sample_rate_hz);
    out += ',';
    out += format_double(trace.samples[n]);
    if (trace.is_complex()) {
      out += ',';
      out += format_double(trace.quadrature[n]);
    }
    out += '\n';
  }
  return out;
}

void write_trace(const std::filesystem::path& path, const oracle::TimeTrace& trace, double z0) {
  write_file_atomic(path, trace_to_csv(trace));
  nlohmann::json meta = {{"sample_rate_hz", trace.sample_rate_hz}, {"z0_ohm", z0}};
  write_file_atomic(metadata_path(path), meta.dump(2) + "\n");
}

oracle::TimeTrace trace_from_csv(const std::string& text, double sample_rate_hz) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty trace file");
  const auto header = split_csv_line(line);
  bool complex_trace = false;
  if (header == std::vector<std::string>{"t_s", "v"}) {
    complex_trace = false;
  } else if (header == std::vector<std::string>{"t_s", "i_v", "q_v"}) {
    complex_trace = true;
  } else {
    throw std::invalid_argument("trace header must be 't_s,v' or 't_s,i_v,q_v', got '" + line +
                                "'");
  }
  oracle::TimeTrace trace;
  std::vector<double> times;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv_line(line);
    if (f.size() != header.size()) {
      throw std::invalid_argument("trace line " + std::to_string(lineno) + ": expected " +
                                  std::to_string(header.size()) + " fields");
    }
    try {
      times.push_back(parse_double(f[0]));
      trace.samples.push_back(parse_double(f[1]));
      if (complex_trace) trace.quadrature.push_back(parse_double(f[2]));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("trace line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (sample_rate_hz <= 0.0) {
    if (times.size() < 2 || !(times[1] > times[0])) {
      throw std::invalid_argument("cannot infer the sample rate from the time column");
    }
    sample_rate_hz = static_cast<double>(times.size() - 1) / (times.back() - times.front());
  }
  trace.sample_rate_hz = sample_rate_hz;
  trace.validate();
  return trace;
}

LoadedTrace read_trace(const std::filesystem::path& path) {
  LoadedTrace out;
  const auto meta_path = metadata_path(path);
  if (std::filesystem::exists(meta_path)) {
    const auto j = nlohmann::json::parse(read_file(meta_path));
    out.meta.sample_rate_hz = j.at("sample_rate_hz").get<double>();
    out.meta.z0_ohm = j.value("z0_ohm", kDefaultImpedanceOhm);
  }
  out.trace = trace_from_csv(read_file(path), out.meta.sample_rate_hz);
  out.meta.sample_rate_hz = out.trace.sample_rate_hz;
  return out;
}

std::string spectrum_to_csv(std::span<const oracle::SpectrumLine> lines) {
  std::string out = "freq_hz,power_dbm,phase_rad\n";
  for (const auto& l : lines) {
    out += format_double(l.freq.hz()) + ',' + format_double(l.power.dbm) + ',' +
           format_double(l.phase) + '\n';
  }
  return out;
}

}  // namespace imdplan::io
