#include "ovalens/io.hpp"

#include <algorithm>
#include <cstdio>

#include "json.hpp"
#include "ovalens/error.hpp"

namespace ovalens {

using nlohmann::json;

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string samples_to_csv(const std::vector<OvalSample>& samples) {
    std::string out = "psi,x,y,nx,ny\n";
    for (const OvalSample& s : samples) {
        out += format_g17(s.psi);
        out += ',';
        out += format_g17(s.point.x);
        out += ',';
        out += format_g17(s.point.y);
        out += ',';
        out += format_g17(s.normal.x);
        out += ',';
        out += format_g17(s.normal.y);
        out += '\n';
    }
    return out;
}

std::string trajectory_to_csv(const Trajectory& traj) {
    std::string out = "x,y,Q\n";
    for (const Point2& p : traj.points) {
        out += format_g17(p.x);
        out += ',';
        out += format_g17(p.y);
        out += ',';
        out += format_g17(conserved_quantity(traj.kind, p));
        out += '\n';
    }
    return out;
}

std::string rays_to_csv(const std::vector<TraceSample>& rays) {
    std::string out = "psi,hit_x,hit_y,deviation,miss\n";
    for (const TraceSample& r : rays) {
        out += format_g17(r.psi);
        out += ',';
        out += format_g17(r.hit.x);
        out += ',';
        out += format_g17(r.hit.y);
        out += ',';
        out += format_g17(r.deviation);
        out += ',';
        out += format_g17(r.miss);
        out += '\n';
    }
    return out;
}

std::string revolved_to_csv(const std::vector<RevolvedRow>& rows) {
    std::string out = "x,y,z,nx,ny,nz,coplanarity,revolution_det,axis_distance\n";
    for (const RevolvedRow& r : rows) {
        out += format_g17(r.point.x);
        out += ',';
        out += format_g17(r.point.y);
        out += ',';
        out += format_g17(r.point.z);
        out += ',';
        out += format_g17(r.normal.x);
        out += ',';
        out += format_g17(r.normal.y);
        out += ',';
        out += format_g17(r.normal.z);
        out += ',';
        out += format_g17(r.coplanarity);
        out += ',';
        out += format_g17(r.det);
        out += ',';
        out += format_g17(r.axis_distance);
        out += '\n';
    }
    return out;
}

std::string oval_to_json(const CartesianOval& oval) {
    return json{{"b", oval.b}, {"n", oval.n}, {"c", oval.c}}.dump() + "\n";
}

CartesianOval oval_from_json(const std::string& text) {
    const json j = json::parse(text);
    return {j.at("b").get<double>(), j.at("n").get<double>(), j.at("c").get<double>()};
}

std::string conic_to_json(const ConicSpec& conic) {
    json j;
    j["kind"] = to_string(conic.kind);
    switch (conic.kind) {
        case ConicKind::Ellipse:
        case ConicKind::Hyperbola:
            j["center_x"] = conic.center_x;
            j["semi_axis_sq_x"] = conic.semi_axis_sq_x;
            j["semi_axis_sq_y"] = conic.semi_axis_sq_y;
            j["eccentricity"] = conic.eccentricity;
            break;
        case ConicKind::Parabola:
            j["parabola_4b"] = conic.parabola_4b;
            j["eccentricity"] = conic.eccentricity;
            break;
        case ConicKind::Segment:
            j["segment_ends"] = {conic.segment_ends.first, conic.segment_ends.second};
            break;
        case ConicKind::VerticalLine:
            j["line_x"] = conic.line_x;
            break;
    }
    return j.dump() + "\n";
}

std::string report_to_json(const FocusReport& report) {
    json failures = json::array();
    for (const TraceFailure& f : report.failures)
        failures.push_back({{"ray", f.ray}, {"error", to_string(f.error)}});
    const json j{{"ray_count", report.ray_count},
                 {"max_angular_deviation", report.max_angular_deviation},
                 {"rms_angular_deviation", report.rms_angular_deviation},
                 {"max_miss_distance", report.max_miss_distance},
                 {"failures", failures}};
    return j.dump() + "\n";
}

std::string samples_to_svg(const std::vector<OvalSample>& samples, const CartesianOval& oval) {
    double min_x = 0.0, max_x = oval.b, min_y = 0.0, max_y = 0.0;
    for (const OvalSample& s : samples) {
        min_x = std::min(min_x, s.point.x);
        max_x = std::max(max_x, s.point.x);
        min_y = std::min(min_y, s.point.y);
        max_y = std::max(max_y, s.point.y);
    }
    const double margin = 0.05 * std::max({max_x - min_x, max_y - min_y, 1e-3});
    const double width = (max_x - min_x) + 2.0 * margin;
    const double height = (max_y - min_y) + 2.0 * margin;
    const double marker = 0.01 * std::max(width, height);

    // y is negated so the plot reads with +y up.
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"";
    out += format_g17(min_x - margin) + " " + format_g17(-(max_y + margin)) + " " +
           format_g17(width) + " " + format_g17(height) + "\">\n";
    out += "  <polyline fill=\"none\" stroke=\"black\" stroke-width=\"" + format_g17(marker * 0.3) +
           "\" points=\"";
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (i) out += ' ';
        out += format_g17(samples[i].point.x) + "," + format_g17(-samples[i].point.y);
    }
    out += "\"/>\n";
    out += "  <circle cx=\"0\" cy=\"0\" r=\"" + format_g17(marker) + "\" fill=\"red\"/>\n";
    out += "  <circle cx=\"" + format_g17(oval.b) + "\" cy=\"0\" r=\"" + format_g17(marker) +
           "\" fill=\"blue\"/>\n";
    out += "</svg>\n";
    return out;
}

}  // namespace ovalens
