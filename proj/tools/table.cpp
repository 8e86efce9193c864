#include "table.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "imdplan/trace_io.hpp"

namespace imdplan::cli {

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw std::logic_error("table " + name + ": row width does not match the header");
  }
  rows.push_back(std::move(row));
}

std::string render_csv(const Table& t) {
  std::string out;
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    if (c) out += ',';
    out += t.columns[c];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      if (const auto* d = std::get_if<double>(&row[c])) {
        out += io::format_double(*d);
      } else if (const auto* i = std::get_if<long long>(&row[c])) {
        out += std::to_string(*i);
      } else {
        out += std::get<std::string>(row[c]);
      }
    }
    out += '\n';
  }
  return out;
}

std::string render_json_lines(const Table& t) {
  std::string out;
  for (const auto& row : t.rows) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (const auto* d = std::get_if<double>(&row[c])) {
        j[t.columns[c]] = std::isfinite(*d) ? nlohmann::ordered_json(*d) : nlohmann::ordered_json(nullptr);
      } else if (const auto* i = std::get_if<long long>(&row[c])) {
        j[t.columns[c]] = *i;
      } else {
        j[t.columns[c]] = std::get<std::string>(row[c]);
      }
    }
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string render(const Table& t, Format f) {
  return f == Format::csv ? render_csv(t) : render_json_lines(t);
}

const char* extension(Format f) { return f == Format::csv ? ".csv" : ".jsonl"; }

}  // namespace imdplan::cli
