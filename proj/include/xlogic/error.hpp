#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace xlogic {

enum class errc {
  invalid_argument,
  unknown_variable,
  unknown_state,
  capacity,
  classifier_integrity,
  validation,
  invalid_distribution,
  unsupported_split,
  configuration,
};

inline const char* to_string(errc code) {
  switch (code) {
    case errc::invalid_argument: return "invalid-argument";
    case errc::unknown_variable: return "unknown-variable";
    case errc::unknown_state: return "unknown-state";
    case errc::capacity: return "capacity";
    case errc::classifier_integrity: return "classifier-integrity";
    case errc::validation: return "validation";
    case errc::invalid_distribution: return "invalid-distribution";
    case errc::unsupported_split: return "unsupported-split";
    case errc::configuration: return "configuration";
  }
  return "unknown";
}

// All library failures are reported through this type. `details` carries
// per-item findings for structured validation (one line per offending node).
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what, std::vector<std::string> details = {})
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        details_(std::move(details)) {}

  errc code() const noexcept { return code_; }
  const std::vector<std::string>& details() const noexcept { return details_; }

 private:
  errc code_;
  std::vector<std::string> details_;
};

// Exhaustive operations refuse to run past these limits instead of sampling.
struct Limits {
  std::uint64_t worlds = std::uint64_t{1} << 20;
  std::size_t clauses = 100000;
  std::size_t paths = 100000;
};

}  // namespace xlogic
