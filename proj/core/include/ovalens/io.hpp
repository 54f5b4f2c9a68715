#pragma once

#include <string>
#include <vector>

#include "ovalens/conic.hpp"
#include "ovalens/ode.hpp"
#include "ovalens/oval.hpp"
#include "ovalens/raytrace.hpp"
#include "ovalens/revolution.hpp"

namespace ovalens {

/// Fixed float formatting for all text outputs: 17 significant digits,
/// '.' decimal separator.
std::string format_g17(double v);

/// Header "psi,x,y,nx,ny", one row per sample, '\n' line endings.
std::string samples_to_csv(const std::vector<OvalSample>& samples);

/// Header "x,y,Q"; Q recomputed from the trajectory's field kind.
std::string trajectory_to_csv(const Trajectory& traj);

/// Header "psi,hit_x,hit_y,deviation,miss".
std::string rays_to_csv(const std::vector<TraceSample>& rays);

struct RevolvedRow {
    Point3 point;
    Vec3 normal;
    double coplanarity = 0.0;
    double det = 0.0;
    double axis_distance = 0.0;
};

/// Header "x,y,z,nx,ny,nz,coplanarity,revolution_det,axis_distance".
std::string revolved_to_csv(const std::vector<RevolvedRow>& rows);

std::string oval_to_json(const CartesianOval& oval);
CartesianOval oval_from_json(const std::string& text);

std::string conic_to_json(const ConicSpec& conic);
std::string report_to_json(const FocusReport& report);

/// Minimal standalone SVG 1.1 document: the curve polyline plus focus
/// markers, viewBox auto-fit with a 5% margin.
std::string samples_to_svg(const std::vector<OvalSample>& samples, const CartesianOval& oval);

}  // namespace ovalens
