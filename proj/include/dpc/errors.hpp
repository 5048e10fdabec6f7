#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dpc {

enum class ErrorCode {
  DomainError,
  ConvergenceFailure,
  AlphaRange,
  SubcriticalSum,
  MuTooLarge,
  CriticalMuNonnegative,
  QuadratureNonConvergence,
  GridMismatch,
  BiorthResidualTooLarge,
  TraceVanishes,
  AccuracyBudgetExceeded,
  ConfigError,
  IoError,
};

std::string_view codeName(ErrorCode c) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(codeName(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dpc
