#pragma once

#include <stdexcept>
#include <string>

namespace auditsim {

// Invalid configuration: unknown registry key, out-of-range parameter,
// malformed config file.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A strategy or policy broke its interface contract mid-game (e.g. a
// report outside [0,1] or a sample size below 1). Aborts the trial.
class ContractViolation : public std::runtime_error {
 public:
  explicit ContractViolation(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace auditsim
