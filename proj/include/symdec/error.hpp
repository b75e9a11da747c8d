#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace symdec {

enum class ErrorCode {
  IndexOutOfRange,
  DimensionMismatch,
  NotASymplex,
  NotSymplectic,
  ComplexEigenvalues,
  DegenerateB,
  BoostDomain,
  BranchMismatch,
  PrecisionLoss,
  UnstableBlock,
  MaxStepsExceeded,
  PivotComplex,
  UnstableSystem,
  BranchAmbiguity,
  Parse,
  Io,
};

std::string_view to_string(ErrorCode code);

/// Library error. `step()` is the 1-based pipeline step for BoostDomain,
/// `pivot()` the block pair for PivotComplex; both are zero otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Error(ErrorCode code, const std::string& what, int step)
      : Error(code, what) {
    step_ = step;
  }

  ErrorCode code() const noexcept { return code_; }
  int step() const noexcept { return step_; }
  std::size_t pivot_i() const noexcept { return pivot_i_; }
  std::size_t pivot_j() const noexcept { return pivot_j_; }

  Error& with_pivot(std::size_t i, std::size_t j) {
    pivot_i_ = i;
    pivot_j_ = j;
    return *this;
  }

 private:
  ErrorCode code_;
  int step_ = 0;
  std::size_t pivot_i_ = 0;
  std::size_t pivot_j_ = 0;
};

}  // namespace symdec
