#pragma once

#include <optional>
#include <string>
#include <vector>

#include "billiards/vec.hpp"

namespace billiards {

/// Minimum ray-parameter advance; hits at t <= kEpsT are treated as the launch
/// point itself (prevents re-hitting a surface after reflection).
inline constexpr double kEpsT = 1e-9;

/// Tangency threshold on the normalized quadratic discriminant.
inline constexpr double kEpsDisc = 1e-12;

/// Parallel-ray threshold for plane intersection.
inline constexpr double kEpsParallel = 1e-12;

struct Ray {
    Vec3 origin;
    UnitVec3 dir;

    Vec3 at(double t) const { return origin + t * dir.vec(); }
};

struct Aabb {
    Vec3 lo;
    Vec3 hi;

    bool valid() const { return lo.x <= hi.x && lo.y <= hi.y && lo.z <= hi.z; }
    Vec3 extent() const { return hi - lo; }
    void expand(const Vec3& p);
    void expand(const Aabb& b);
    Aabb translated(const Vec3& d) const { return {lo + d, hi + d}; }

    static Aabb empty();
};

// ---------------------------------------------------------------------------
// Trim terms: closed-form inequalities restricting an infinite carrier surface
// to a patch. A point is on the patch iff it satisfies every term.
// ---------------------------------------------------------------------------

/// lo <= |p[axis] - center| <= hi   (lo <= 0 disables the inner bound)
struct AbsIntervalTrim {
    int axis = 0;
    double center = 0.0;
    double lo = 0.0;
    double hi = 0.0;

    bool operator==(const AbsIntervalTrim&) const = default;
};

/// |p[bounded_axis] - bounded_center| <= alpha * (p[arg_axis] - arg_center)^2 - offset
struct ParabolicTrim {
    int bounded_axis = 0;
    double bounded_center = 0.0;
    int arg_axis = 0;
    double arg_center = 0.0;
    double alpha = 1.0;
    double offset = 0.0;

    bool operator==(const ParabolicTrim&) const = default;
};

enum class TrimKind { AbsInterval, Parabolic };

struct TrimTerm {
    TrimKind kind = TrimKind::AbsInterval;
    AbsIntervalTrim interval;
    ParabolicTrim parabolic;

    static TrimTerm abs_interval(int axis, double center, double lo, double hi);
    static TrimTerm parabola(int bounded_axis, double bounded_center, int arg_axis,
                             double arg_center, double alpha, double offset);

    /// Signed slack of the term at p (>= 0 means satisfied).
    double margin(const Vec3& p) const;

    bool operator==(const TrimTerm&) const = default;
};

/// Shared parabola-height evaluation; the mesh generator and the body builders
/// must agree bit-for-bit on this value for watertight tessellation.
inline double parabola_height(double alpha, double offset, double u) {
    return alpha * u * u - offset;
}

// ---------------------------------------------------------------------------
// Patches
// ---------------------------------------------------------------------------

enum class PatchKind { ParabolicCylinder, Plane, Sphere };

/// One oriented mirror surface piece. The carrier is analytic; `trim`
/// restricts it to the actual patch. Outward normals point away from the body
/// material and are fixed at construction, never inferred from a ray.
struct Patch {
    PatchKind kind = PatchKind::Plane;

    // ParabolicCylinder: p[height_axis] - height_center
    //                      = sign * (alpha * (p[arg_axis] - arg_center)^2 - offset)
    int arg_axis = 0;
    int height_axis = 1;
    double sign = 1.0;
    double alpha = 1.0;
    double offset = 0.25;  // paper patches use offset = 1/(4 alpha)
    double arg_center = 0.0;
    double height_center = 0.0;

    // Plane: passes through plane_point with outer normal plane_normal.
    Vec3 plane_point;
    UnitVec3 plane_normal;

    // Sphere: |p - center| = radius (used by test fixtures).
    Vec3 center;
    double radius = 1.0;

    std::vector<TrimTerm> trim;

    static Patch parabolic_cylinder(int arg_axis, int height_axis, double sign, double alpha,
                                    double offset, double arg_center, double height_center,
                                    std::vector<TrimTerm> trim);
    static Patch plane(const Vec3& point, const UnitVec3& outer_normal, std::vector<TrimTerm> trim);
    static Patch sphere(const Vec3& center, double radius);

    /// True iff p satisfies all trim terms; margin receives the smallest slack.
    bool trim_contains(const Vec3& p, double* margin = nullptr) const;

    /// Conservative bounds of the trimmed patch. Throws InvalidParams if the
    /// trim leaves a coordinate unbounded.
    Aabb bounds() const;

    bool operator==(const Patch&) const;
};

/// Ray/patch intersection record.
struct Hit {
    double t = 0.0;           // ray parameter == distance (unit direction)
    Vec3 point;
    UnitVec3 normal;          // outward from body material
    double edge_distance = 0.0;  // slack to the nearest trim boundary
    bool tangential = false;  // grazing root (discriminant ~ 0)
};

/// Specular reflection v' = v - 2 (v.n) n.
UnitVec3 reflect(const UnitVec3& v, const UnitVec3& n);

/// All trim-accepted hits with t > kEpsT, ascending in t. Tangential roots are
/// returned flagged rather than dropped.
std::vector<Hit> intersect_parabolic_cylinder(const Ray& ray, const Patch& patch);

/// Zero or one hit; `coplanar`, when given, is set if the ray runs inside the
/// carrier plane.
std::vector<Hit> intersect_plane(const Ray& ray, const Patch& patch, bool* coplanar = nullptr);

std::vector<Hit> intersect_sphere(const Ray& ray, const Patch& patch);

/// Dispatch on patch.kind.
std::vector<Hit> intersect_patch(const Ray& ray, const Patch& patch, bool* coplanar = nullptr);

}  // namespace billiards
