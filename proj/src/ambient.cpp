#include "billiards/ambient.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "billiards/errors.hpp"

namespace billiards {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

AmbientBody AmbientBody::sphere(double radius) {
    if (!(radius > 0.0)) throw InvalidParams("ambient sphere: radius must be positive");
    return AmbientBody(AmbientKind::Sphere, radius);
}

AmbientBody AmbientBody::box(double half_extent) {
    if (!(half_extent > 0.0)) throw InvalidParams("ambient box: half extent must be positive");
    return AmbientBody(AmbientKind::Box, half_extent);
}

bool AmbientBody::contains(const Vec3& p, double tol) const {
    if (kind_ == AmbientKind::Sphere) return norm(p) <= size_ + tol;
    return std::max({std::abs(p.x), std::abs(p.y), std::abs(p.z)}) <= size_ + tol;
}

bool AmbientBody::on_boundary(const Vec3& p, double tol) const {
    if (kind_ == AmbientKind::Sphere) return std::abs(norm(p) - size_) <= tol;
    const double m = std::max({std::abs(p.x), std::abs(p.y), std::abs(p.z)});
    return std::abs(m - size_) <= tol;
}

bool AmbientBody::contains_box(const Aabb& b, double tol) const {
    if (!b.valid()) return true;  // empty box
    for (int i = 0; i < 8; ++i) {
        const Vec3 corner{(i & 1) ? b.hi.x : b.lo.x, (i & 2) ? b.hi.y : b.lo.y,
                          (i & 4) ? b.hi.z : b.lo.z};
        if (!contains(corner, tol)) return false;
    }
    return true;
}

UnitVec3 AmbientBody::outer_normal(const Vec3& p) const {
    if (kind_ == AmbientKind::Sphere) return UnitVec3::normalize(p);
    // Face of largest |coordinate|; first axis wins ties (edges/corners).
    int best = 0;
    double best_abs = std::abs(p.x);
    if (std::abs(p.y) > best_abs) { best = 1; best_abs = std::abs(p.y); }
    if (std::abs(p.z) > best_abs) { best = 2; best_abs = std::abs(p.z); }
    Vec3 n;
    axis_set(n, best, axis_get(p, best) >= 0.0 ? 1.0 : -1.0);
    return UnitVec3(n);
}

std::pair<Vec3, double> AmbientBody::exit(const Ray& ray) const {
    if (!contains(ray.origin, 1e-9))
        throw OutsideAmbient("ambient exit: ray origin lies outside the ambient body");
    double t = 0.0;
    if (kind_ == AmbientKind::Sphere) {
        const double b = dot(ray.origin, ray.dir.vec());
        const double c = norm2(ray.origin) - size_ * size_;
        const double disc = std::max(b * b - c, 0.0);
        t = -b + std::sqrt(disc);
    } else {
        t = std::numeric_limits<double>::infinity();
        const Vec3& d = ray.dir.vec();
        for (int a = 0; a < 3; ++a) {
            const double da = axis_get(d, a);
            if (da == 0.0) continue;
            const double face = da > 0.0 ? size_ : -size_;
            t = std::min(t, (face - axis_get(ray.origin, a)) / da);
        }
    }
    t = std::max(t, 0.0);
    return {ray.at(t), t};
}

double AmbientBody::boundary_area() const {
    if (kind_ == AmbientKind::Sphere) return 4.0 * kPi * size_ * size_;
    return 24.0 * size_ * size_;
}

double AmbientBody::volume() const {
    if (kind_ == AmbientKind::Sphere) return 4.0 / 3.0 * kPi * size_ * size_ * size_;
    return 8.0 * size_ * size_ * size_;
}

std::pair<Vec3, double> ambient_exit(const AmbientBody& ambient, const Ray& ray) {
    return ambient.exit(ray);
}

}  // namespace billiards
