#pragma once

#include <string>
#include <variant>
#include <vector>

namespace imdplan::cli {

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::string name;  // file stem
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

enum class Format { csv, json_lines };

/// Reals use 17 significant digits so every value parses back exactly.
std::string render_csv(const Table& t);
/// One JSON object per row; non-finite reals become null.
std::string render_json_lines(const Table& t);
std::string render(const Table& t, Format f);
const char* extension(Format f);

}  // namespace imdplan::cli
