#pragma once

#include <string>
#include <vector>

#include "sgini/sample.hpp"

namespace sgini {

struct DataGroup {
  std::string label;
  Sample sample;
};

/// Parsed CSV input: one group per distinct group-column label, in first
/// appearance order, or a single group "all" when no group column is given.
struct DataFile {
  std::vector<DataGroup> groups;
};

/// Loads a header-rowed CSV ('.' decimal separator). Non-numeric,
/// non-positive or missing values are rejected with row-numbered errors.
DataFile load_csv(const std::string& path, const std::string& value_column,
                  const std::string& group_column = "");

}  // namespace sgini
