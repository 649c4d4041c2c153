#pragma once

#include <stdexcept>
#include <string>

namespace sgini {

// Error taxonomy. The CLI maps kinds onto process exit codes, so every
// failure thrown out of the library carries one.
enum class ErrorKind {
  domain,               // parameter outside its admissible range
  insufficient_sample,  // n too small for the requested operation
  oracle_size,          // brute-force enumeration would exceed its cap
  calibration,          // bootstrap calibration collapsed (too many degenerate replicates)
  data                  // malformed input data (CSV parsing, bad values)
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};

struct InsufficientSampleError : Error {
  explicit InsufficientSampleError(const std::string& what)
      : Error(ErrorKind::insufficient_sample, what) {}
};

struct OracleSizeError : Error {
  explicit OracleSizeError(const std::string& what) : Error(ErrorKind::oracle_size, what) {}
};

struct CalibrationError : Error {
  explicit CalibrationError(const std::string& what) : Error(ErrorKind::calibration, what) {}
};

struct DataError : Error {
  explicit DataError(const std::string& what) : Error(ErrorKind::data, what) {}
};

}  // namespace sgini
