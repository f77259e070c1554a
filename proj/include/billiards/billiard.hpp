#pragma once

#include <vector>

#include "billiards/ambient.hpp"
#include "billiards/bodies.hpp"

namespace billiards {

enum class TraceStatus { Exited, Trapped, Degenerate };

struct TraceLimits {
    int max_bounces = 64;
    double eps_advance = kEpsT;   // origin nudge after each reflection
    double eps_edge = 1e-9;       // trim-edge degeneracy margin
    bool record_polyline = false;
};

/// Outcome of one billiard trajectory through C \ B.
///
/// For Exited results: exit_point lies on the ambient boundary within 1e-9,
/// the exit velocity points outward, and path_length >= |exit_point - entry|
/// (the path is a connected polyline, nudge segments included).
struct TraceResult {
    Vec3 exit_point;
    UnitVec3 exit_velocity;
    double path_length = 0.0;
    int bounces = 0;
    TraceStatus status = TraceStatus::Exited;
    std::vector<Vec3> polyline;  // entry, reflection points, exit (if recorded)
};

/// Traces one particle: free flight, nearest-patch specular reflection,
/// ambient exit. Grazing/edge contacts are classified Degenerate, never
/// resolved by guessing; bounce counts beyond the cap are Trapped.
///
/// Preconditions: entry on the ambient boundary within 1e-9 and
/// n(entry) . v <= 1e-9 (incoming); body bounds inside the ambient.
TraceResult trace(const Body& body, const AmbientBody& ambient, const Vec3& entry,
                  const UnitVec3& v, const TraceLimits& limits = {});

/// Straight-line reference (B = empty): exit point and chord length.
std::pair<Vec3, double> free_exit(const AmbientBody& ambient, const Vec3& entry,
                                  const UnitVec3& v);

}  // namespace billiards
