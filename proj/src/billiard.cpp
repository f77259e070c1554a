#include "billiards/billiard.hpp"

#include <cmath>
#include <limits>

#include "billiards/errors.hpp"

namespace billiards {

namespace {

constexpr double kBoundaryTol = 1e-9;
constexpr double kTieTol = 1e-12;

void check_entry(const Body& body, const AmbientBody& ambient, const Vec3& entry,
                 const UnitVec3& v) {
    if (!ambient.on_boundary(entry, kBoundaryTol))
        throw PreconditionViolation("trace: entry point is not on the ambient boundary");
    if (dot(ambient.outer_normal(entry).vec(), v.vec()) > kBoundaryTol)
        throw PreconditionViolation("trace: entry velocity points out of the ambient body");
    if (!body.is_empty() && !ambient.contains_box(body.bbox(), kBoundaryTol))
        throw PreconditionViolation("trace: body is not contained in the ambient body");
}

}  // namespace

TraceResult trace(const Body& body, const AmbientBody& ambient, const Vec3& entry,
                  const UnitVec3& v, const TraceLimits& limits) {
    check_entry(body, ambient, entry, v);

    TraceResult result;
    if (limits.record_polyline) result.polyline.push_back(entry);

    Vec3 pos = entry;
    UnitVec3 dir = v;
    double tau = 0.0;
    int bounces = 0;

    for (;;) {
        const Ray ray{pos, dir};
        const auto [exit_point, exit_t] = ambient.exit(ray);

        // Nearest trim-accepted patch hit strictly before the ambient exit.
        const Hit* best = nullptr;
        Hit best_hit;
        bool tie = false;
        bool coplanar_any = false;
        for (const Patch& patch : body.patches()) {
            bool coplanar = false;
            for (const Hit& h : intersect_patch(ray, patch, &coplanar)) {
                if (!(h.t > limits.eps_advance) || !(h.t < exit_t)) continue;
                if (!best || h.t < best_hit.t - kTieTol) {
                    best_hit = h;
                    best = &best_hit;
                    tie = false;
                } else if (std::abs(h.t - best_hit.t) <= kTieTol) {
                    tie = true;  // simultaneous contact with two patches
                }
            }
            coplanar_any = coplanar_any || coplanar;
        }

        if (coplanar_any) {
            // Sliding along a mirror carrier plane: a null set, never resolved.
            result.status = TraceStatus::Degenerate;
            result.exit_point = pos;
            result.exit_velocity = dir;
            break;
        }

        if (!best) {
            tau += norm(exit_point - pos);
            result.exit_point = exit_point;
            result.exit_velocity = dir;
            result.status = TraceStatus::Exited;
            if (limits.record_polyline) result.polyline.push_back(exit_point);
            break;
        }

        tau += norm(best_hit.point - pos);
        if (limits.record_polyline) result.polyline.push_back(best_hit.point);

        if (tie || best_hit.tangential || best_hit.edge_distance < limits.eps_edge) {
            result.status = TraceStatus::Degenerate;
            result.exit_point = best_hit.point;
            result.exit_velocity = dir;
            break;
        }
        if (bounces >= limits.max_bounces) {
            result.status = TraceStatus::Trapped;
            result.exit_point = best_hit.point;
            result.exit_velocity = dir;
            break;
        }

        ++bounces;
        dir = reflect(dir, best_hit.normal);
        pos = best_hit.point + limits.eps_advance * dir.vec();
        tau += limits.eps_advance;  // nudge segment is part of the path
    }

    result.path_length = tau;
    result.bounces = bounces;
    return result;
}

std::pair<Vec3, double> free_exit(const AmbientBody& ambient, const Vec3& entry,
                                  const UnitVec3& v) {
    check_entry(Body::empty(), ambient, entry, v);
    const auto [point, t] = ambient.exit(Ray{entry, v});
    return {point, norm(point - entry)};
}

}  // namespace billiards
