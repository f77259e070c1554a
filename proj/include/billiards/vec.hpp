#pragma once

#include <cmath>
#include <utility>

#include "billiards/errors.hpp"

namespace billiards {

struct Vec3 {
    double x{0.0};
    double y{0.0};
    double z{0.0};

    constexpr Vec3() = default;
    constexpr Vec3(double X, double Y, double Z) : x(X), y(Y), z(Z) {}

    constexpr Vec3 operator+(const Vec3& r) const { return {x + r.x, y + r.y, z + r.z}; }
    constexpr Vec3 operator-(const Vec3& r) const { return {x - r.x, y - r.y, z - r.z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    friend constexpr Vec3 operator*(double s, const Vec3& v) { return {v.x * s, v.y * s, v.z * s}; }

    Vec3& operator+=(const Vec3& r) { x += r.x; y += r.y; z += r.z; return *this; }
    Vec3& operator-=(const Vec3& r) { x -= r.x; y -= r.y; z -= r.z; return *this; }

    constexpr bool operator==(const Vec3& r) const { return x == r.x && y == r.y && z == r.z; }
};

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm2(const Vec3& v) { return dot(v, v); }
inline double norm(const Vec3& v) { return std::sqrt(norm2(v)); }

inline double axis_get(const Vec3& v, int axis) {
    return axis == 0 ? v.x : (axis == 1 ? v.y : v.z);
}

inline void axis_set(Vec3& v, int axis, double value) {
    (axis == 0 ? v.x : (axis == 1 ? v.y : v.z)) = value;
}

inline Vec3 axis_unit(int axis) {
    Vec3 v;
    axis_set(v, axis, 1.0);
    return v;
}

/// Unit vector on S^2; the norm stays within 1e-12 of 1.
class UnitVec3 {
public:
    UnitVec3() : v_{1.0, 0.0, 0.0} {}

    /// Wraps a vector that is already unit length (renormalized; rejects norms off by > 1e-9).
    explicit UnitVec3(const Vec3& v) {
        const double n = norm(v);
        if (std::abs(n - 1.0) > 1e-9)
            throw PreconditionViolation("UnitVec3: vector norm deviates from 1");
        v_ = v / n;
    }
    UnitVec3(double x, double y, double z) : UnitVec3(Vec3{x, y, z}) {}

    /// Normalizes an arbitrary nonzero vector.
    static UnitVec3 normalize(const Vec3& v) {
        const double n = norm(v);
        if (!(n > 0.0) || !std::isfinite(n))
            throw PreconditionViolation("UnitVec3: cannot normalize zero/non-finite vector");
        UnitVec3 u;
        u.v_ = v / n;
        return u;
    }

    const Vec3& vec() const { return v_; }
    operator const Vec3&() const { return v_; }
    double x() const { return v_.x; }
    double y() const { return v_.y; }
    double z() const { return v_.z; }

    UnitVec3 operator-() const {
        UnitVec3 u;
        u.v_ = -v_;
        return u;
    }

private:
    Vec3 v_;
};

/// Right-handed orthonormal frame (e1, e2, v) with e1 x e2 = v.
///
/// Directions within 1e-12 of a coordinate axis get a fixed frame from a
/// lookup table so that all ambient shapes agree on cross-section coordinates
/// for the axis-aligned directions.
std::pair<UnitVec3, UnitVec3> orthonormal_frame(const UnitVec3& v);

}  // namespace billiards
