#include "ovalens/error.hpp"

namespace ovalens {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidParameter: return "InvalidParameter";
        case ErrorKind::EmptyLocus: return "EmptyLocus";
        case ErrorKind::DegenerateLocus: return "DegenerateLocus";
        case ErrorKind::AtFocus: return "AtFocus";
        case ErrorKind::OffCurve: return "OffCurve";
        case ErrorKind::SolverFailure: return "SolverFailure";
        case ErrorKind::CoincidentPoint: return "CoincidentPoint";
        case ErrorKind::AxialDegeneracy: return "AxialDegeneracy";
        case ErrorKind::DisagreementBeyondTolerance: return "DisagreementBeyondTolerance";
        case ErrorKind::InvalidRatio: return "InvalidRatio";
        case ErrorKind::TotalInternalReflection: return "TotalInternalReflection";
        case ErrorKind::AxisSingularity: return "AxisSingularity";
        case ErrorKind::FocusSingularity: return "FocusSingularity";
        case ErrorKind::StepFailure: return "StepFailure";
        case ErrorKind::StartOffCurve: return "StartOffCurve";
        case ErrorKind::NoIntersection: return "NoIntersection";
        case ErrorKind::OnAxis: return "OnAxis";
        case ErrorKind::OffSurface: return "OffSurface";
        case ErrorKind::ZeroGradient: return "ZeroGradient";
        case ErrorKind::ParallelToAxis: return "ParallelToAxis";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

}  // namespace ovalens
