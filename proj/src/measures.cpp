#include "billiards/measures.hpp"

#include <cmath>

#include "billiards/errors.hpp"

namespace billiards {

namespace {

constexpr double kPi = 3.14159265358979323846;

/// Cosine-weighted direction about `inward` (= -n), built from a concentric
/// disk sample; the resulting flux weights are constant.
UnitVec3 cosine_direction(const UnitVec3& inward, SampleRng& rng) {
    const auto [dx, dy] = rng.disk_concentric();
    const double r2 = dx * dx + dy * dy;
    const double z = std::sqrt(std::max(1.0 - r2, 0.0));
    const auto [e1, e2] = orthonormal_frame(inward);
    return UnitVec3::normalize(dx * e1.vec() + dy * e2.vec() + z * inward.vec());
}

}  // namespace

double mu_minus_total(const AmbientBody& ambient) { return ambient.boundary_area() * kPi; }

MuMinusSample sample_mu_minus(const AmbientBody& ambient, SampleRng& rng) {
    Vec3 point;
    if (ambient.kind() == AmbientKind::Sphere) {
        const double z = 1.0 - 2.0 * rng.uniform01();
        const double phi = 2.0 * kPi * rng.uniform01();
        const double r = std::sqrt(std::max(1.0 - z * z, 0.0));
        point = ambient.size() * Vec3{r * std::cos(phi), r * std::sin(phi), z};
    } else {
        // Faces have equal area: pick one uniformly, then a uniform point on it.
        const double h = ambient.size();
        const std::uint64_t face = rng.next_u64() % 6;
        const int axis = int(face / 2);
        const double side = (face % 2 == 0) ? h : -h;
        Vec3 p;
        axis_set(p, axis, side);
        axis_set(p, (axis + 1) % 3, rng.uniform(-h, h));
        axis_set(p, (axis + 2) % 3, rng.uniform(-h, h));
        point = p;
    }
    const UnitVec3 inward = -ambient.outer_normal(point);
    return MuMinusSample{point, cosine_direction(inward, rng), mu_minus_total(ambient)};
}

CrossSection::CrossSection(const AmbientBody& ambient, const UnitVec3& v) : v_(v) {
    auto [e1, e2] = orthonormal_frame(v);
    e1_ = e1;
    e2_ = e2;
    if (ambient.kind() == AmbientKind::Sphere) {
        omega_ = OmegaKind::Disk;
        radius_ = ambient.size();
    } else {
        // The box shadow is a square only for axis-aligned directions; the
        // general oblique shadow (a hexagon) is not needed here.
        const Vec3& d = v.vec();
        const bool axis_aligned = std::abs(std::abs(d.x) + std::abs(d.y) + std::abs(d.z) - 1.0) <
                                      1e-12 &&
                                  (std::abs(d.x) > 1.0 - 1e-12 || std::abs(d.y) > 1.0 - 1e-12 ||
                                   std::abs(d.z) > 1.0 - 1e-12);
        if (!axis_aligned)
            throw InvalidParams(
                "cross section: box ambient supports axis-aligned directions only");
        omega_ = OmegaKind::Rect;
        radius_ = ambient.size();
    }
}

CrossSection cross_section(const AmbientBody& ambient, const UnitVec3& v) {
    return CrossSection(ambient, v);
}

double CrossSection::omega_area() const {
    if (omega_ == OmegaKind::Disk) return kPi * radius_ * radius_;
    return 4.0 * radius_ * radius_;
}

bool CrossSection::omega_contains(double u1, double u2) const {
    if (omega_ == OmegaKind::Disk) return u1 * u1 + u2 * u2 <= radius_ * radius_;
    return std::abs(u1) <= radius_ && std::abs(u2) <= radius_;
}

std::pair<double, double> CrossSection::omega_half_extent() const { return {radius_, radius_}; }

double CrossSection::f_minus(double u1, double u2) const { return -f_plus(u1, u2); }

double CrossSection::f_plus(double u1, double u2) const {
    if (omega_ == OmegaKind::Disk) {
        const double r2 = radius_ * radius_ - u1 * u1 - u2 * u2;
        return std::sqrt(std::max(r2, 0.0));
    }
    return radius_;
}

Vec3 CrossSection::lift_entry(double u1, double u2) const {
    return u1 * e1_.vec() + u2 * e2_.vec() + f_minus(u1, u2) * v_.vec();
}

Vec3 CrossSection::lift_exit(double u1, double u2) const {
    return u1 * e1_.vec() + u2 * e2_.vec() + f_plus(u1, u2) * v_.vec();
}

std::pair<double, double> CrossSection::project(const Vec3& p) const {
    return {dot(p, e1_.vec()), dot(p, e2_.vec())};
}

std::pair<double, double> CrossSection::sample_omega(SampleRng& rng) const {
    if (omega_ == OmegaKind::Disk) {
        const auto [a, b] = rng.disk_concentric();
        return {radius_ * a, radius_ * b};
    }
    return {rng.uniform(-radius_, radius_), rng.uniform(-radius_, radius_)};
}

Vec3 sample_cross_section(const CrossSection& cs, SampleRng& rng) {
    const auto [u1, u2] = cs.sample_omega(rng);
    return cs.lift_entry(u1, u2);
}

}  // namespace billiards
