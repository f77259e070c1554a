#pragma once

#include <utility>

#include "billiards/geom.hpp"

namespace billiards {

enum class AmbientKind { Sphere, Box };

/// Convex container C (origin-centered sphere of given radius, or the cube
/// [-h, h]^3). Billiard entry/exit bookkeeping happens on its boundary.
class AmbientBody {
public:
    static AmbientBody sphere(double radius);
    static AmbientBody box(double half_extent);

    AmbientKind kind() const { return kind_; }

    /// Sphere radius or box half-extent.
    double size() const { return size_; }

    bool contains(const Vec3& p, double tol = 1e-9) const;
    bool on_boundary(const Vec3& p, double tol = 1e-9) const;
    bool contains_box(const Aabb& b, double tol = 1e-9) const;

    /// Unit outer normal at a boundary point (deterministic on edges/corners).
    UnitVec3 outer_normal(const Vec3& p) const;

    /// Forward exit of a ray whose origin lies inside or on the boundary:
    /// the farthest-side intersection with the boundary, t >= 0. Throws
    /// OutsideAmbient for origins outside C.
    std::pair<Vec3, double> exit(const Ray& ray) const;

    double boundary_area() const;
    double volume() const;

private:
    AmbientBody(AmbientKind k, double s) : kind_(k), size_(s) {}

    AmbientKind kind_;
    double size_;
};

/// Free-function form of AmbientBody::exit.
std::pair<Vec3, double> ambient_exit(const AmbientBody& ambient, const Ray& ray);

}  // namespace billiards
