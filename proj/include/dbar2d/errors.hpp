// Error types carrying the module and pipeline stage that failed.
#pragma once

#include <stdexcept>
#include <string>

namespace dbar2d {

// Bad inputs: malformed configs, invalid grids, mismatched operands.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string module, std::string stage, const std::string& what)
      : std::runtime_error("[" + module + "/" + stage + "] " + what),
        module_(std::move(module)),
        stage_(std::move(stage)) {}

  const std::string& module() const { return module_; }
  const std::string& stage() const { return stage_; }

 private:
  std::string module_;
  std::string stage_;
};

// Numerical failures: solver non-convergence, residual blowups, singular
// symbols. These indicate the computation cannot be trusted, not bad usage.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(std::string module, std::string stage, const std::string& what)
      : std::runtime_error("[" + module + "/" + stage + "] " + what),
        module_(std::move(module)),
        stage_(std::move(stage)) {}

  const std::string& module() const { return module_; }
  const std::string& stage() const { return stage_; }

 private:
  std::string module_;
  std::string stage_;
};

}  // namespace dbar2d
