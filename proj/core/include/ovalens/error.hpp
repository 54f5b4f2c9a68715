#pragma once

#include <stdexcept>
#include <string>

namespace ovalens {

/// Machine-readable failure categories used across the library.
enum class ErrorKind {
    InvalidParameter,
    EmptyLocus,
    DegenerateLocus,
    AtFocus,
    OffCurve,
    SolverFailure,
    CoincidentPoint,
    AxialDegeneracy,
    DisagreementBeyondTolerance,
    InvalidRatio,
    TotalInternalReflection,
    AxisSingularity,
    FocusSingularity,
    StepFailure,
    StartOffCurve,
    NoIntersection,
    OnAxis,
    OffSurface,
    ZeroGradient,
    ParallelToAxis,
};

const char* to_string(ErrorKind kind);

/// Exception whose what() starts with the ErrorKind name, e.g. "EmptyLocus: ...".
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail);
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace ovalens
