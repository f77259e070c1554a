#include "billiards/vec.hpp"

#include <cmath>

namespace billiards {

std::pair<UnitVec3, UnitVec3> orthonormal_frame(const UnitVec3& v) {
    const Vec3& d = v.vec();
    // Axis-aligned directions get frames from a fixed table (e1 x e2 = v).
    constexpr double tol = 1e-12;
    for (int axis = 0; axis < 3; ++axis) {
        for (int sgn = -1; sgn <= 1; sgn += 2) {
            Vec3 ref = axis_unit(axis) * double(sgn);
            if (norm(d - ref) <= tol) {
                const int a1 = (axis + (sgn > 0 ? 1 : 2)) % 3;
                const int a2 = (axis + (sgn > 0 ? 2 : 1)) % 3;
                return {UnitVec3(axis_unit(a1)), UnitVec3(axis_unit(a2))};
            }
        }
    }
    // Generic direction: build off the smallest component.
    Vec3 helper{1.0, 0.0, 0.0};
    double ax = std::abs(d.x), ay = std::abs(d.y), az = std::abs(d.z);
    if (ay <= ax && ay <= az)
        helper = {0.0, 1.0, 0.0};
    else if (az <= ax && az <= ay)
        helper = {0.0, 0.0, 1.0};
    UnitVec3 e1 = UnitVec3::normalize(cross(d, helper));
    UnitVec3 e2 = UnitVec3::normalize(cross(d, e1.vec()));
    return {e1, e2};
}

}  // namespace billiards
