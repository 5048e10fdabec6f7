#include "dpc/errors.hpp"

namespace dpc {

std::string_view codeName(ErrorCode c) noexcept {
  switch (c) {
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::AlphaRange: return "AlphaRange";
    case ErrorCode::SubcriticalSum: return "SubcriticalSum";
    case ErrorCode::MuTooLarge: return "MuTooLarge";
    case ErrorCode::CriticalMuNonnegative: return "CriticalMuNonnegative";
    case ErrorCode::QuadratureNonConvergence: return "QuadratureNonConvergence";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::BiorthResidualTooLarge: return "BiorthResidualTooLarge";
    case ErrorCode::TraceVanishes: return "TraceVanishes";
    case ErrorCode::AccuracyBudgetExceeded: return "AccuracyBudgetExceeded";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace dpc
