#include "billiards/geom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace billiards {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

void Aabb::expand(const Vec3& p) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
}

void Aabb::expand(const Aabb& b) {
    expand(b.lo);
    expand(b.hi);
}

Aabb Aabb::empty() {
    return {{kInf, kInf, kInf}, {-kInf, -kInf, -kInf}};
}

TrimTerm TrimTerm::abs_interval(int axis, double center, double lo, double hi) {
    TrimTerm t;
    t.kind = TrimKind::AbsInterval;
    t.interval = {axis, center, lo, hi};
    return t;
}

TrimTerm TrimTerm::parabola(int bounded_axis, double bounded_center, int arg_axis,
                            double arg_center, double alpha, double offset) {
    TrimTerm t;
    t.kind = TrimKind::Parabolic;
    t.parabolic = {bounded_axis, bounded_center, arg_axis, arg_center, alpha, offset};
    return t;
}

double TrimTerm::margin(const Vec3& p) const {
    if (kind == TrimKind::AbsInterval) {
        const double d = std::abs(axis_get(p, interval.axis) - interval.center);
        const double outer = interval.hi - d;
        if (interval.lo <= 0.0) return outer;  // inner bound inactive
        return std::min(d - interval.lo, outer);
    }
    const double w = parabola_height(parabolic.alpha, parabolic.offset,
                                     axis_get(p, parabolic.arg_axis) - parabolic.arg_center);
    return w - std::abs(axis_get(p, parabolic.bounded_axis) - parabolic.bounded_center);
}

Patch Patch::parabolic_cylinder(int arg_axis, int height_axis, double sign, double alpha,
                                double offset, double arg_center, double height_center,
                                std::vector<TrimTerm> trim) {
    Patch p;
    p.kind = PatchKind::ParabolicCylinder;
    p.arg_axis = arg_axis;
    p.height_axis = height_axis;
    p.sign = sign;
    p.alpha = alpha;
    p.offset = offset;
    p.arg_center = arg_center;
    p.height_center = height_center;
    p.trim = std::move(trim);
    return p;
}

Patch Patch::plane(const Vec3& point, const UnitVec3& outer_normal, std::vector<TrimTerm> trim) {
    Patch p;
    p.kind = PatchKind::Plane;
    p.plane_point = point;
    p.plane_normal = outer_normal;
    p.trim = std::move(trim);
    return p;
}

Patch Patch::sphere(const Vec3& center, double radius) {
    if (!(radius > 0.0)) throw InvalidParams("sphere patch: radius must be positive");
    Patch p;
    p.kind = PatchKind::Sphere;
    p.center = center;
    p.radius = radius;
    return p;
}

bool Patch::trim_contains(const Vec3& p, double* margin_out) const {
    double worst = kInf;
    for (const TrimTerm& term : trim) {
        const double m = term.margin(p);
        if (m < 0.0) return false;
        worst = std::min(worst, m);
    }
    if (margin_out) *margin_out = trim.empty() ? kInf : worst;
    return true;
}

bool Patch::operator==(const Patch& o) const {
    if (kind != o.kind || trim != o.trim) return false;
    switch (kind) {
        case PatchKind::ParabolicCylinder:
            return arg_axis == o.arg_axis && height_axis == o.height_axis && sign == o.sign &&
                   alpha == o.alpha && offset == o.offset && arg_center == o.arg_center &&
                   height_center == o.height_center;
        case PatchKind::Plane:
            return plane_point == o.plane_point && plane_normal.vec() == o.plane_normal.vec();
        case PatchKind::Sphere:
            return center == o.center && radius == o.radius;
    }
    return false;
}

Aabb Patch::bounds() const {
    // Start from trim-implied per-axis intervals.
    double lo[3] = {-kInf, -kInf, -kInf};
    double hi[3] = {kInf, kInf, kInf};
    double arg_abs_max = kInf;

    for (const TrimTerm& term : trim) {
        if (term.kind == TrimKind::AbsInterval) {
            const auto& iv = term.interval;
            lo[iv.axis] = std::max(lo[iv.axis], iv.center - iv.hi);
            hi[iv.axis] = std::min(hi[iv.axis], iv.center + iv.hi);
            if (kind == PatchKind::ParabolicCylinder && iv.axis == arg_axis)
                arg_abs_max = std::min(arg_abs_max, iv.hi + std::abs(iv.center - arg_center));
        }
    }
    if (kind == PatchKind::ParabolicCylinder) {
        if (!std::isfinite(arg_abs_max))
            throw InvalidParams("parabolic patch: trim leaves the quadratic argument unbounded");
        // Height range of s*(alpha u^2 - c) over |u| <= arg_abs_max.
        const double peak = parabola_height(alpha, offset, arg_abs_max);
        const double valley = -offset;  // vertex value
        const double h_min = sign > 0 ? std::min(valley, peak) : -std::max(valley, peak);
        const double h_max = sign > 0 ? std::max(valley, peak) : -std::min(valley, peak);
        lo[height_axis] = std::max(lo[height_axis], height_center + h_min);
        hi[height_axis] = std::min(hi[height_axis], height_center + h_max);
        for (const TrimTerm& term : trim) {
            if (term.kind != TrimKind::Parabolic) continue;
            const auto& pb = term.parabolic;
            const double reach = pb.alpha * arg_abs_max * arg_abs_max + std::abs(pb.offset);
            lo[pb.bounded_axis] = std::max(lo[pb.bounded_axis], pb.bounded_center - reach);
            hi[pb.bounded_axis] = std::min(hi[pb.bounded_axis], pb.bounded_center + reach);
        }
    } else if (kind == PatchKind::Plane) {
        // Axis-aligned carriers pin their own coordinate.
        const Vec3& n = plane_normal.vec();
        for (int a = 0; a < 3; ++a) {
            if (std::abs(axis_get(n, a)) > 1.0 - 1e-12) {
                const double c = axis_get(plane_point, a);
                lo[a] = std::max(lo[a], c);
                hi[a] = std::min(hi[a], c);
            }
        }
        for (const TrimTerm& term : trim) {
            if (term.kind != TrimKind::Parabolic) continue;
            const auto& pb = term.parabolic;
            if (!std::isfinite(hi[pb.arg_axis]) || !std::isfinite(lo[pb.arg_axis])) continue;
            const double span = std::max(std::abs(hi[pb.arg_axis] - pb.arg_center),
                                         std::abs(lo[pb.arg_axis] - pb.arg_center));
            const double reach = pb.alpha * span * span + std::abs(pb.offset);
            lo[pb.bounded_axis] = std::max(lo[pb.bounded_axis], pb.bounded_center - reach);
            hi[pb.bounded_axis] = std::min(hi[pb.bounded_axis], pb.bounded_center + reach);
        }
    } else {  // Sphere
        for (int a = 0; a < 3; ++a) {
            lo[a] = std::max(lo[a], axis_get(center, a) - radius);
            hi[a] = std::min(hi[a], axis_get(center, a) + radius);
        }
    }

    for (int a = 0; a < 3; ++a)
        if (!std::isfinite(lo[a]) || !std::isfinite(hi[a]))
            throw InvalidParams("patch: trim leaves a coordinate unbounded");
    return {{lo[0], lo[1], lo[2]}, {hi[0], hi[1], hi[2]}};
}

UnitVec3 reflect(const UnitVec3& v, const UnitVec3& n) {
    const Vec3 r = v.vec() - 2.0 * dot(v.vec(), n.vec()) * n.vec();
    return UnitVec3::normalize(r);
}

namespace {

void append_hit(std::vector<Hit>& hits, const Patch& patch, const Ray& ray, double t,
                const UnitVec3& normal, bool tangential) {
    if (!(t > kEpsT) || !std::isfinite(t)) return;
    const Vec3 p = ray.at(t);
    double margin = 0.0;
    if (!patch.trim_contains(p, &margin)) return;
    hits.push_back(Hit{t, p, normal, margin, tangential});
}

}  // namespace

std::vector<Hit> intersect_parabolic_cylinder(const Ray& ray, const Patch& patch) {
    const int ua = patch.arg_axis;
    const int ha = patch.height_axis;
    const double s = patch.sign;
    const double a = patch.alpha;

    const double ou = axis_get(ray.origin, ua) - patch.arg_center;
    const double du = axis_get(ray.dir.vec(), ua);
    const double ow = axis_get(ray.origin, ha) - patch.height_center;
    const double dw = axis_get(ray.dir.vec(), ha);

    // f(t) = s*alpha*(ou + t du)^2 - s*offset - (ow + t dw)
    const double A = s * a * du * du;
    const double B = 2.0 * s * a * ou * du - dw;
    const double C = s * parabola_height(a, patch.offset, ou) - ow;

    double roots[2];
    int nroots = 0;
    bool tangential = false;

    const double mag = std::max({std::abs(A), std::abs(B), std::abs(C)});
    if (mag == 0.0) return {};  // ray lies in the carrier
    if (std::abs(A) <= 1e-14 * mag) {
        if (std::abs(B) <= 1e-14 * mag) return {};  // parallel, off the sheet
        roots[nroots++] = -C / B;
    } else {
        const double disc = B * B - 4.0 * A * C;
        const double disc_scale = std::max(B * B, std::abs(4.0 * A * C));
        if (disc < -kEpsDisc * disc_scale) return {};
        if (disc <= kEpsDisc * disc_scale) {
            tangential = true;
            roots[nroots++] = -B / (2.0 * A);
        } else {
            const double sq = std::sqrt(disc);
            const double q = -0.5 * (B + std::copysign(sq, B == 0.0 ? 1.0 : B));
            roots[nroots++] = q / A;
            roots[nroots++] = C / q;
            if (roots[0] > roots[1]) std::swap(roots[0], roots[1]);
        }
    }

    std::vector<Hit> hits;
    for (int i = 0; i < nroots; ++i) {
        const double t = roots[i];
        const double u_at = ou + t * du;
        // Outward from the material slab |height| <= alpha u^2 - c.
        Vec3 nvec;
        axis_set(nvec, ua, -2.0 * a * u_at);
        axis_set(nvec, ha, s);
        append_hit(hits, patch, ray, t, UnitVec3::normalize(nvec), tangential);
    }
    return hits;
}

std::vector<Hit> intersect_plane(const Ray& ray, const Patch& patch, bool* coplanar) {
    if (coplanar) *coplanar = false;
    const Vec3& n = patch.plane_normal.vec();
    const double denom = dot(ray.dir.vec(), n);
    const double height = dot(ray.origin - patch.plane_point, n);
    if (std::abs(denom) <= kEpsParallel) {
        if (coplanar && std::abs(height) <= kEpsParallel) *coplanar = true;
        return {};
    }
    std::vector<Hit> hits;
    append_hit(hits, patch, ray, -height / denom, patch.plane_normal, false);
    return hits;
}

std::vector<Hit> intersect_sphere(const Ray& ray, const Patch& patch) {
    const Vec3 oc = ray.origin - patch.center;
    const double b = dot(oc, ray.dir.vec());
    const double c = norm2(oc) - patch.radius * patch.radius;
    const double disc = b * b - c;
    const double disc_scale = std::max(b * b, std::abs(c));
    std::vector<Hit> hits;
    if (disc_scale == 0.0) return hits;
    if (disc < -kEpsDisc * disc_scale) return hits;
    const bool tangential = disc <= kEpsDisc * disc_scale;
    const double sq = std::sqrt(std::max(disc, 0.0));
    for (double t : {-b - sq, -b + sq}) {
        if (!(t > kEpsT)) continue;
        const Vec3 p = ray.at(t);
        hits.push_back(Hit{t, p, UnitVec3::normalize(p - patch.center), kInf, tangential});
        if (tangential) break;  // double root, report one flagged hit
    }
    return hits;
}

std::vector<Hit> intersect_patch(const Ray& ray, const Patch& patch, bool* coplanar) {
    if (coplanar) *coplanar = false;
    switch (patch.kind) {
        case PatchKind::ParabolicCylinder:
            return intersect_parabolic_cylinder(ray, patch);
        case PatchKind::Plane:
            return intersect_plane(ray, patch, coplanar);
        case PatchKind::Sphere:
            return intersect_sphere(ray, patch);
    }
    return {};
}

}  // namespace billiards
