#include "symdec/error.hpp"

namespace symdec {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotASymplex: return "NotASymplex";
    case ErrorCode::NotSymplectic: return "NotSymplectic";
    case ErrorCode::ComplexEigenvalues: return "ComplexEigenvalues";
    case ErrorCode::DegenerateB: return "DegenerateB";
    case ErrorCode::BoostDomain: return "BoostDomain";
    case ErrorCode::BranchMismatch: return "BranchMismatch";
    case ErrorCode::PrecisionLoss: return "PrecisionLoss";
    case ErrorCode::UnstableBlock: return "UnstableBlock";
    case ErrorCode::MaxStepsExceeded: return "MaxStepsExceeded";
    case ErrorCode::PivotComplex: return "PivotComplex";
    case ErrorCode::UnstableSystem: return "UnstableSystem";
    case ErrorCode::BranchAmbiguity: return "BranchAmbiguity";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace symdec
