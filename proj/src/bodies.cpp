#include "billiards/bodies.hpp"

#include <cmath>
#include <utility>

#include "billiards/rng.hpp"
#include "billiards/stats.hpp"

namespace billiards {

namespace {

constexpr int kX = 0;
constexpr int kY = 1;
constexpr int kZ = 2;

}  // namespace

BodySpec BodySpec::validated(double alpha, double beta, double gamma, BodyKind kind,
                             double z_extent) {
    if (!(alpha > 0.0)) throw InvalidParams("body spec: alpha must be positive");
    if (!(beta > 0.0)) throw InvalidParams("body spec: beta must be positive");
    if (!(gamma >= 0.0)) throw InvalidParams("body spec: gamma must be nonnegative");
    if (!(2.0 * alpha * beta > 1.0))
        throw InvalidParams("body spec: requires 2*alpha*beta > 1");
    if (!(gamma < beta)) throw InvalidParams("body spec: requires gamma < beta");
    if (kind == BodyKind::Slab2D && !(z_extent > 0.0))
        throw InvalidParams("body spec: slab z_extent must be positive");

    BodySpec s;
    s.alpha = alpha;
    s.beta = beta;
    s.gamma = gamma;
    s.kind = kind;
    s.regime = gamma <= 1.0 / (2.0 * alpha) ? Regime::Triangular : Regime::Trapezial;
    s.h = 2.0 * parabola_height(alpha, 1.0 / (4.0 * alpha), beta);
    s.z_extent = z_extent;
    return s;
}

Body::Body(std::vector<Patch> patches, std::function<bool(const Vec3&)> contains, Aabb bbox,
           std::optional<BodySpec> spec)
    : patches_(std::move(patches)), contains_(std::move(contains)), bbox_(bbox),
      spec_(std::move(spec)) {}

Body Body::empty() { return Body({}, [](const Vec3&) { return false; }, Aabb::empty(), {}); }

namespace {

struct FamilyGeometry {
    double alpha, beta, gamma, c;
    double x_lo;    // inner end of the material support: max(gamma, 1/(2 alpha))
    double m_beta;  // half-width of the outer face, alpha*beta^2 - c
    double m_gamma; // half-width of the inner face (trapezial only)
};

FamilyGeometry family_geometry(const BodySpec& s) {
    FamilyGeometry g;
    g.alpha = s.alpha;
    g.beta = s.beta;
    g.gamma = s.gamma;
    g.c = 1.0 / (4.0 * s.alpha);
    const double tip = 1.0 / (2.0 * s.alpha);
    g.x_lo = std::max(s.gamma, tip);
    g.m_beta = parabola_height(s.alpha, g.c, s.beta);
    g.m_gamma = parabola_height(s.alpha, g.c, s.gamma);
    return g;
}

// Two mirror sheets height = +-(alpha x^2 - c) over the material support in x,
// with the transverse coordinate bounded by `transverse`.
void add_sheets(std::vector<Patch>& patches, const FamilyGeometry& g, int height_axis,
                const TrimTerm& transverse) {
    for (double sign : {1.0, -1.0}) {
        std::vector<TrimTerm> trim;
        trim.push_back(TrimTerm::abs_interval(kX, 0.0, g.x_lo, g.beta));
        trim.push_back(transverse);
        patches.push_back(Patch::parabolic_cylinder(kX, height_axis, sign, g.alpha, g.c, 0.0,
                                                    0.0, std::move(trim)));
    }
}

void add_x_faces(std::vector<Patch>& patches, double x_abs, bool outward_positive,
                 const TrimTerm& ty, const TrimTerm& tz) {
    for (double side : {1.0, -1.0}) {
        const double nx = outward_positive ? side : -side;
        patches.push_back(Patch::plane(Vec3{side * x_abs, 0.0, 0.0},
                                       UnitVec3(nx, 0.0, 0.0), {ty, tz}));
    }
}

}  // namespace

Body make_two_dir_body(double alpha, double beta, double gamma) {
    const BodySpec spec = BodySpec::validated(alpha, beta, gamma, BodyKind::TwoDir3D);
    const FamilyGeometry g = family_geometry(spec);

    std::vector<Patch> patches;
    const TrimTerm z_parab = TrimTerm::parabola(kZ, 0.0, kX, 0.0, g.alpha, g.c);
    const TrimTerm y_parab = TrimTerm::parabola(kY, 0.0, kX, 0.0, g.alpha, g.c);
    add_sheets(patches, g, kY, z_parab);
    add_sheets(patches, g, kZ, y_parab);

    add_x_faces(patches, g.beta, true, TrimTerm::abs_interval(kY, 0.0, 0.0, g.m_beta),
                TrimTerm::abs_interval(kZ, 0.0, 0.0, g.m_beta));
    if (spec.regime == Regime::Trapezial) {
        add_x_faces(patches, g.gamma, false,
                    TrimTerm::abs_interval(kY, 0.0, 0.0, g.m_gamma),
                    TrimTerm::abs_interval(kZ, 0.0, 0.0, g.m_gamma));
    }

    auto contains = [alpha, beta, gamma, c = g.c](const Vec3& p) {
        const double ax = std::abs(p.x);
        if (ax < gamma || ax > beta) return false;
        const double w = parabola_height(alpha, c, p.x);
        return std::abs(p.y) <= w && std::abs(p.z) <= w;
    };

    const Aabb bbox{{-g.beta, -g.m_beta, -g.m_beta}, {g.beta, g.m_beta, g.m_beta}};
    return Body(std::move(patches), contains, bbox, spec);
}

Body make_slab_2d_body(double alpha, double beta, double gamma, double z_extent) {
    const BodySpec spec = BodySpec::validated(alpha, beta, gamma, BodyKind::Slab2D, z_extent);
    const FamilyGeometry g = family_geometry(spec);
    const double zh = z_extent / 2.0;

    std::vector<Patch> patches;
    add_sheets(patches, g, kY, TrimTerm::abs_interval(kZ, 0.0, 0.0, zh));

    const TrimTerm z_band = TrimTerm::abs_interval(kZ, 0.0, 0.0, zh);
    add_x_faces(patches, g.beta, true, TrimTerm::abs_interval(kY, 0.0, 0.0, g.m_beta),
                z_band);
    if (spec.regime == Regime::Trapezial) {
        add_x_faces(patches, g.gamma, false,
                    TrimTerm::abs_interval(kY, 0.0, 0.0, g.m_gamma), z_band);
    }
    // Flat caps carrying the planar figure's outline.
    for (double side : {1.0, -1.0}) {
        patches.push_back(Patch::plane(
            Vec3{0.0, 0.0, side * zh}, UnitVec3(0.0, 0.0, side),
            {TrimTerm::abs_interval(kX, 0.0, g.x_lo, g.beta),
             TrimTerm::parabola(kY, 0.0, kX, 0.0, g.alpha, g.c)}));
    }

    auto contains = [alpha, beta, gamma, zh, c = g.c](const Vec3& p) {
        const double ax = std::abs(p.x);
        if (ax < gamma || ax > beta) return false;
        if (std::abs(p.z) > zh) return false;
        return std::abs(p.y) <= parabola_height(alpha, c, p.x);
    };

    const Aabb bbox{{-g.beta, -g.m_beta, -zh}, {g.beta, g.m_beta, zh}};
    return Body(std::move(patches), contains, bbox, spec);
}

Body make_invisible_union(double alpha, double beta, double gamma) {
    const BodySpec spec = BodySpec::validated(alpha, beta, gamma, BodyKind::InvisibleUnion);
    const Body base = make_two_dir_body(alpha, beta, gamma);
    const double h = spec.h;

    // Shifts by 0, h*v1, h*v2, h*(v1+v2) with v1 = (0,-1,0), v2 = (0,0,-1).
    const Vec3 shifts[4] = {{0.0, 0.0, 0.0}, {0.0, -h, 0.0}, {0.0, 0.0, -h}, {0.0, -h, -h}};

    std::vector<Patch> patches;
    Aabb bbox = Aabb::empty();
    for (const Vec3& d : shifts) {
        const Body copy = translate_body(base, d);
        patches.insert(patches.end(), copy.patches().begin(), copy.patches().end());
        bbox.expand(copy.bbox());
    }

    auto base_contains = [alpha, beta, gamma, c = 1.0 / (4.0 * alpha)](const Vec3& p) {
        const double ax = std::abs(p.x);
        if (ax < gamma || ax > beta) return false;
        const double w = parabola_height(alpha, c, p.x);
        return std::abs(p.y) <= w && std::abs(p.z) <= w;
    };
    auto contains = [base_contains, h](const Vec3& p) {
        return base_contains(p) || base_contains(p + Vec3{0.0, h, 0.0}) ||
               base_contains(p + Vec3{0.0, 0.0, h}) || base_contains(p + Vec3{0.0, h, h});
    };

    return Body(std::move(patches), contains, bbox, spec);
}

Body make_sphere_body(double radius) {
    if (!(radius > 0.0)) throw InvalidParams("sphere body: radius must be positive");
    std::vector<Patch> patches{Patch::sphere(Vec3{0.0, 0.0, 0.0}, radius)};
    auto contains = [radius](const Vec3& p) { return norm2(p) <= radius * radius; };
    const Aabb bbox{{-radius, -radius, -radius}, {radius, radius, radius}};
    return Body(std::move(patches), contains, bbox, {});
}

namespace {

Patch translate_patch(Patch p, const Vec3& d) {
    for (TrimTerm& t : p.trim) {
        if (t.kind == TrimKind::AbsInterval) {
            t.interval.center += axis_get(d, t.interval.axis);
        } else {
            t.parabolic.bounded_center += axis_get(d, t.parabolic.bounded_axis);
            t.parabolic.arg_center += axis_get(d, t.parabolic.arg_axis);
        }
    }
    switch (p.kind) {
        case PatchKind::ParabolicCylinder:
            p.arg_center += axis_get(d, p.arg_axis);
            p.height_center += axis_get(d, p.height_axis);
            break;
        case PatchKind::Plane:
            p.plane_point += d;
            break;
        case PatchKind::Sphere:
            p.center += d;
            break;
    }
    return p;
}

// (x, y, z) -> (x, -z, y); inverse (x, y, z) -> (x, z, -y).
Vec3 rot_x_quarter(const Vec3& p) { return {p.x, -p.z, p.y}; }

// Axis image and sign under the rotation: x->x, y->z, z->-y.
struct AxisImage {
    int axis;
    double sign;
};
AxisImage rotate_axis(int axis) {
    if (axis == 0) return {0, 1.0};
    if (axis == 1) return {2, 1.0};
    return {1, -1.0};
}

Patch rotate_patch(const Patch& in) {
    Patch p = in;
    for (TrimTerm& t : p.trim) {
        if (t.kind == TrimKind::AbsInterval) {
            const AxisImage im = rotate_axis(t.interval.axis);
            t.interval.axis = im.axis;
            t.interval.center *= im.sign;
        } else {
            const AxisImage bi = rotate_axis(t.parabolic.bounded_axis);
            t.parabolic.bounded_axis = bi.axis;
            t.parabolic.bounded_center *= bi.sign;
            const AxisImage ai = rotate_axis(t.parabolic.arg_axis);
            t.parabolic.arg_axis = ai.axis;
            t.parabolic.arg_center *= ai.sign;
        }
    }
    switch (p.kind) {
        case PatchKind::ParabolicCylinder: {
            const AxisImage au = rotate_axis(p.arg_axis);
            p.arg_axis = au.axis;
            p.arg_center *= au.sign;  // (u - u0) flips sign; even in the carrier
            const AxisImage ah = rotate_axis(p.height_axis);
            p.height_axis = ah.axis;
            p.height_center *= ah.sign;
            p.sign *= ah.sign;  // height coordinate flipped => mirror the sheet
            break;
        }
        case PatchKind::Plane:
            p.plane_point = rot_x_quarter(p.plane_point);
            p.plane_normal = UnitVec3(rot_x_quarter(p.plane_normal.vec()));
            break;
        case PatchKind::Sphere:
            p.center = rot_x_quarter(p.center);
            break;
    }
    return p;
}

}  // namespace

Body translate_body(const Body& body, const Vec3& offset) {
    std::vector<Patch> patches;
    patches.reserve(body.patches().size());
    for (const Patch& p : body.patches()) patches.push_back(translate_patch(p, offset));

    auto inner = body;  // copy keeps the original membership closure alive
    auto contains = [inner, offset](const Vec3& p) { return inner.contains(p - offset); };
    const Aabb bbox =
        body.bbox().valid() ? body.bbox().translated(offset) : Aabb::empty();
    return Body(std::move(patches), contains, bbox, body.spec());
}

Body rotate_body_quarter_turn_x(const Body& body) {
    std::vector<Patch> patches;
    patches.reserve(body.patches().size());
    for (const Patch& p : body.patches()) patches.push_back(rotate_patch(p));

    auto inner = body;
    auto contains = [inner](const Vec3& p) { return inner.contains(Vec3{p.x, p.z, -p.y}); };
    Aabb bbox = Aabb::empty();
    if (body.bbox().valid()) {
        const Aabb& b = body.bbox();
        for (int i = 0; i < 8; ++i) {
            bbox.expand(rot_x_quarter(Vec3{(i & 1) ? b.hi.x : b.lo.x, (i & 2) ? b.hi.y : b.lo.y,
                                           (i & 4) ? b.hi.z : b.lo.z}));
        }
    }
    return Body(std::move(patches), contains, bbox, body.spec());
}

VolumeEstimate body_volume(const Body& body, std::uint64_t n, std::uint64_t seed, int workers) {
    VolumeEstimate est;
    est.samples = n;
    if (body.is_empty() || !body.bbox().valid() || n == 0) return est;

    const Aabb& b = body.bbox();
    const Vec3 ext = b.extent();
    const double box_vol = ext.x * ext.y * ext.z;
    if (!(box_vol > 0.0)) return est;

    std::vector<std::uint64_t> inside(block_count(n), 0);
    run_blocks(n, workers, [&](std::uint64_t block, std::uint64_t begin, std::uint64_t end) {
        std::uint64_t k = 0;
        for (std::uint64_t i = begin; i < end; ++i) {
            SampleRng rng(seed, i);
            const Vec3 p{b.lo.x + ext.x * rng.uniform01(), b.lo.y + ext.y * rng.uniform01(),
                         b.lo.z + ext.z * rng.uniform01()};
            if (body.contains(p)) ++k;
        }
        inside[block] = k;
    });

    std::uint64_t hits = 0;
    for (std::uint64_t k : inside) hits += k;
    const double p_hat = double(hits) / double(n);
    est.value = box_vol * p_hat;
    est.stderr_ = box_vol * std::sqrt(p_hat * (1.0 - p_hat) / double(n));
    return est;
}

}  // namespace billiards
