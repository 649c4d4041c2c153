#include "sgini/csv.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>

#include "sgini/errors.hpp"

namespace sgini {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      cells.push_back(trim(line.substr(start)));
      break;
    }
    cells.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return cells;
}

double parse_value(const std::string& cell, long row, const std::string& column) {
  const std::string where = "row " + std::to_string(row) + ", column '" + column + "'";
  if (cell.empty()) throw DataError(where + ": missing value");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (end != cell.c_str() + cell.size() || errno == ERANGE) {
    throw DataError(where + ": '" + cell + "' is not a number");
  }
  if (!std::isfinite(v) || !(v > 0.0)) {
    throw DataError(where + ": value must be finite and strictly positive");
  }
  return v;
}

}  // namespace

DataFile load_csv(const std::string& path, const std::string& value_column,
                  const std::string& group_column) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");

  std::string line;
  if (!std::getline(in, line)) throw DataError("'" + path + "': empty file, header row required");
  const std::vector<std::string> header = split_row(line);

  long value_idx = -1;
  long group_idx = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == value_column) value_idx = static_cast<long>(i);
    if (!group_column.empty() && header[i] == group_column) group_idx = static_cast<long>(i);
  }
  if (value_idx < 0) throw DataError("'" + path + "': missing column '" + value_column + "'");
  if (!group_column.empty() && group_idx < 0) {
    throw DataError("'" + path + "': missing column '" + group_column + "'");
  }

  std::vector<std::string> order;
  std::map<std::string, std::vector<double>> buckets;
  long row = 1;  // header is row 1
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const std::vector<std::string> cells = split_row(line);
    if (cells.size() != header.size()) {
      throw DataError("row " + std::to_string(row) + ": expected " +
                      std::to_string(header.size()) + " fields, got " +
                      std::to_string(cells.size()));
    }
    const double v = parse_value(cells[static_cast<std::size_t>(value_idx)], row, value_column);
    std::string label = "all";
    if (group_idx >= 0) {
      label = cells[static_cast<std::size_t>(group_idx)];
      if (label.empty()) {
        throw DataError("row " + std::to_string(row) + ", column '" + group_column +
                        "': missing group label");
      }
    }
    auto [it, inserted] = buckets.try_emplace(label);
    if (inserted) order.push_back(label);
    it->second.push_back(v);
  }

  if (order.empty()) throw DataError("'" + path + "': no data rows");

  DataFile file;
  file.groups.reserve(order.size());
  for (const std::string& label : order) {
    const std::vector<double>& values = buckets[label];
    file.groups.push_back(
        {label, Sample(Eigen::Map<const Eigen::ArrayXd>(values.data(),
                                                        static_cast<Eigen::Index>(values.size())))});
  }
  return file;
}

}  // namespace sgini
