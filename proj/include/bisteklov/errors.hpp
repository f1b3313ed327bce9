#pragma once

#include <stdexcept>
#include <string>

namespace bisteklov {

enum class ErrorCode {
  InvalidArgument,
  Overflow,
  Pole,
  DegenerateFormula,
  DegenerateMode,
  Divergence,
  RefineNeeded,
  BranchLoss,
  InvalidPolygon,
  InvalidTrialFunction,
  NoConvergence,
  NoRoot,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::Overflow: return "overflow";
    case ErrorCode::Pole: return "pole";
    case ErrorCode::DegenerateFormula: return "degenerate-formula";
    case ErrorCode::DegenerateMode: return "degenerate-mode";
    case ErrorCode::Divergence: return "divergence";
    case ErrorCode::RefineNeeded: return "refine-needed";
    case ErrorCode::BranchLoss: return "branch-loss";
    case ErrorCode::InvalidPolygon: return "invalid-polygon";
    case ErrorCode::InvalidTrialFunction: return "invalid-trial-function";
    case ErrorCode::NoConvergence: return "no-convergence";
    case ErrorCode::NoRoot: return "no-root";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(std::string(to_string(code)) + ": " + msg), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

namespace detail {
inline void require(bool ok, const std::string& msg, ErrorCode code = ErrorCode::InvalidArgument) {
  if (!ok) throw Error(code, msg);
}
}  // namespace detail

}  // namespace bisteklov
