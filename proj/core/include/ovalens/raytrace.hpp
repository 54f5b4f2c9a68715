#pragma once

#include <utility>
#include <vector>

#include "ovalens/conic.hpp"
#include "ovalens/error.hpp"
#include "ovalens/geometry.hpp"
#include "ovalens/oval.hpp"

namespace ovalens {

struct TraceFailure {
    int ray = 0;
    ErrorKind error = ErrorKind::NoIntersection;
};

/// Aggregate deviation statistics of a refracted ray fan.
/// ray_count = successful rays + failures.size(); the angular statistics are
/// taken over the successful rays.
struct FocusReport {
    int ray_count = 0;
    double max_angular_deviation = 0.0;  // radians
    double rms_angular_deviation = 0.0;  // radians
    double max_miss_distance = 0.0;      // closest approach of the refracted line to F'
    std::vector<TraceFailure> failures;
};

/// Per-ray record for CSV export.
struct TraceSample {
    double psi = 0.0;  // ray parameter: polar angle, or height for parallel fans
    Point2 hit;
    double deviation = 0.0;
    double miss = 0.0;
};

/// First intersection of the ray with the bipolar branch: a bracketing scan
/// of the bipolar residual along the ray (step <= c/100) followed by
/// bisection + Newton polish to |residual| < 1e-12; smallest positive
/// parameter wins. Throws NoIntersection or SolverFailure.
Point2 intersect_ray_oval(const Ray2& ray, const CartesianOval& oval);

/// Traces count rays from F with polar angles uniform in psi_range, refracts
/// each at the oval with ratio n (radiant side index 1, lens side n) and
/// measures the angle between the transmitted direction and the direction to
/// F' plus the line-to-point miss distance. Per-ray failures are recorded in
/// the report, never aborting the fan.
FocusReport trace_fan(const CartesianOval& oval, int count,
                      std::pair<double, double> psi_range,
                      std::vector<TraceSample>* per_ray = nullptr);

/// Same fan against the radially perturbed interface r(psi)*(1 + eps*cos(k*psi));
/// quantifies how fast the focus degrades when the shape is wrong.
FocusReport trace_fan_perturbed(const CartesianOval& oval, double eps, int k, int count,
                                std::pair<double, double> psi_range,
                                std::vector<TraceSample>* per_ray = nullptr);

/// Traces count rays with direction (1,0) at uniform heights onto the first
/// surface of the conic (from conic_infinite_source), refracts with ratio n
/// and measures convergence to (b, 0).
FocusReport trace_parallel_fan(const ConicSpec& conic, double b, double n, int count,
                               std::vector<TraceSample>* per_ray = nullptr);

/// Largest |psi| at which a ray from F still meets the near branch (pi when
/// F is enclosed by the curve).
double aperture_half_angle(const CartesianOval& oval);

}  // namespace ovalens
