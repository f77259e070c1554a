#include "billiards/svg.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "billiards/errors.hpp"
#include "billiards/json_writer.hpp"

namespace billiards {

namespace {

struct Project2 {
    ProjectionPlane plane;

    std::pair<double, double> operator()(const Vec3& p) const {
        switch (plane) {
            case ProjectionPlane::XY: return {p.x, p.y};
            case ProjectionPlane::XZ: return {p.x, p.z};
            default: return {p.y, p.z};
        }
    }

    // Out-of-plane coordinate.
    double depth(const Vec3& p) const {
        switch (plane) {
            case ProjectionPlane::XY: return p.z;
            case ProjectionPlane::XZ: return p.y;
            default: return p.x;
        }
    }

    Vec3 unproject(double a, double b, double depth_value) const {
        switch (plane) {
            case ProjectionPlane::XY: return {a, b, depth_value};
            case ProjectionPlane::XZ: return {a, depth_value, b};
            default: return {depth_value, a, b};
        }
    }
};

std::string num(double v) {
    std::ostringstream s;
    s.precision(8);
    s << v;
    return s.str();
}

// Marching squares (midpoint rule) over the membership field; emits iso
// segments separating inside from outside cells.
void body_outline_segments(std::ostringstream& svg, const Body& body, const Project2& proj,
                           double depth_value, double lo, double hi, int grid, double y_flip) {
    if (body.is_empty()) return;
    const double step = (hi - lo) / grid;
    std::vector<char> inside(std::size_t(grid + 1) * (grid + 1));
    for (int i = 0; i <= grid; ++i)
        for (int j = 0; j <= grid; ++j)
            inside[std::size_t(i) * (grid + 1) + j] =
                body.contains(proj.unproject(lo + i * step, lo + j * step, depth_value)) ? 1 : 0;

    svg << "<g stroke=\"#1f5fbf\" stroke-width=\"" << num(step * 0.6)
        << "\" fill=\"none\" stroke-linecap=\"round\">\n";
    for (int i = 0; i < grid; ++i) {
        for (int j = 0; j < grid; ++j) {
            const char c00 = inside[std::size_t(i) * (grid + 1) + j];
            const char c10 = inside[std::size_t(i + 1) * (grid + 1) + j];
            const char c01 = inside[std::size_t(i) * (grid + 1) + j + 1];
            const char c11 = inside[std::size_t(i + 1) * (grid + 1) + j + 1];
            if (c00 + c10 + c01 + c11 == 0 || c00 + c10 + c01 + c11 == 4) continue;
            const double x0 = lo + i * step, x1 = x0 + step;
            const double y0 = lo + j * step, y1 = y0 + step;
            // midpoints of crossed cell edges
            std::vector<std::pair<double, double>> pts;
            if (c00 != c10) pts.push_back({0.5 * (x0 + x1), y0});
            if (c01 != c11) pts.push_back({0.5 * (x0 + x1), y1});
            if (c00 != c01) pts.push_back({x0, 0.5 * (y0 + y1)});
            if (c10 != c11) pts.push_back({x1, 0.5 * (y0 + y1)});
            for (std::size_t k = 0; k + 1 < pts.size(); k += 2) {
                svg << "<line x1=\"" << num(pts[k].first) << "\" y1=\""
                    << num(y_flip * pts[k].second) << "\" x2=\"" << num(pts[k + 1].first)
                    << "\" y2=\"" << num(y_flip * pts[k + 1].second) << "\"/>\n";
            }
        }
    }
    svg << "</g>\n";
}

}  // namespace

std::string render_trajectory_svg(const Body& body, const AmbientBody& ambient,
                                  const std::vector<Vec3>& polyline, ProjectionPlane plane,
                                  int grid) {
    const Project2 proj{plane};
    const double R = ambient.size();
    const double margin = 0.08 * R;
    const double lo = -R - margin, hi = R + margin;
    // SVG y grows downward; flip the second coordinate.
    const double y_flip = -1.0;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(lo) << " " << num(lo)
        << " " << num(hi - lo) << " " << num(hi - lo) << "\">\n";
    svg << "<rect x=\"" << num(lo) << "\" y=\"" << num(lo) << "\" width=\"" << num(hi - lo)
        << "\" height=\"" << num(hi - lo) << "\" fill=\"white\"/>\n";

    if (ambient.kind() == AmbientKind::Sphere) {
        svg << "<circle cx=\"0\" cy=\"0\" r=\"" << num(R)
            << "\" fill=\"none\" stroke=\"#888\" stroke-width=\"" << num(0.01 * R) << "\"/>\n";
    } else {
        svg << "<rect x=\"" << num(-R) << "\" y=\"" << num(-R) << "\" width=\"" << num(2 * R)
            << "\" height=\"" << num(2 * R)
            << "\" fill=\"none\" stroke=\"#888\" stroke-width=\"" << num(0.01 * R) << "\"/>\n";
    }

    const double depth_value = polyline.empty() ? 0.0 : proj.depth(polyline.front());
    body_outline_segments(svg, body, proj, depth_value, lo, hi, grid, y_flip);

    if (!polyline.empty()) {
        svg << "<polyline fill=\"none\" stroke=\"#c62828\" stroke-width=\"" << num(0.012 * R)
            << "\" points=\"";
        for (const Vec3& p : polyline) {
            const auto [a, b] = proj(p);
            svg << num(a) << "," << num(y_flip * b) << " ";
        }
        svg << "\"/>\n";
        const auto [a0, b0] = proj(polyline.front());
        const auto [a1, b1] = proj(polyline.back());
        svg << "<circle cx=\"" << num(a0) << "\" cy=\"" << num(y_flip * b0) << "\" r=\""
            << num(0.02 * R) << "\" fill=\"#2e7d32\"/>\n";
        svg << "<circle cx=\"" << num(a1) << "\" cy=\"" << num(y_flip * b1) << "\" r=\""
            << num(0.02 * R) << "\" fill=\"#c62828\"/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write file: " + path);
    out << content;
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace billiards
