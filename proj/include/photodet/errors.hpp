#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace photodet {

// Index errors are reported with std::out_of_range.

struct InvalidSpaceError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct IncompatibleSpaceError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Numerical precondition violated (non-Hermitian input, mixed parity, ...).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LookupError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed scenario configuration. Carries every offending key/path.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const { return issues_; }

 private:
  std::vector<std::string> issues_;
};

}  // namespace photodet
