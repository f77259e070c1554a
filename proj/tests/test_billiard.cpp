#include <doctest.h>

#include <cmath>

#include "billiards/billiard.hpp"
#include "billiards/measures.hpp"
#include "billiards/rng.hpp"
#include "oracles.hpp"

using namespace billiards;

namespace {

const UnitVec3 kV1(0.0, -1.0, 0.0);
const UnitVec3 kV2(0.0, 0.0, -1.0);

Vec3 sphere_entry_above(double radius, double x0, double z0) {
    return {x0, std::sqrt(radius * radius - x0 * x0 - z0 * z0), z0};
}

}  // namespace

TEST_CASE("free flight through an empty container") {
    const AmbientBody sph = AmbientBody::sphere(1.0);
    const TraceResult tr = trace(Body::empty(), sph, Vec3{0.0, 1.0, 0.0}, kV1);
    CHECK(tr.status == TraceStatus::Exited);
    CHECK(tr.bounces == 0);
    CHECK(norm(tr.exit_point - Vec3{0.0, -1.0, 0.0}) < 1e-12);
    CHECK(tr.path_length == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(norm(tr.exit_velocity.vec() - kV1.vec()) == 0.0);
}

TEST_CASE("free_exit: diameter, grazing chord, chord formula") {
    const AmbientBody sph = AmbientBody::sphere(1.0);
    auto [p0, t0] = free_exit(sph, Vec3{0.0, 1.0, 0.0}, kV1);
    CHECK(norm(p0 - Vec3{0.0, -1.0, 0.0}) < 1e-12);
    CHECK(t0 == doctest::Approx(2.0).epsilon(1e-12));

    auto [pg, tg] = free_exit(sph, Vec3{0.0, 1.0, 0.0}, UnitVec3(1.0, 0.0, 0.0));
    CHECK(tg < 1e-7);
    CHECK(norm(pg - Vec3{0.0, 1.0, 0.0}) < 1e-7);

    for (double theta : {0.2, 0.7, 1.2}) {
        auto [pc, tc] = free_exit(sph, Vec3{std::sin(theta), std::cos(theta), 0.0}, kV1);
        CHECK(tc == doctest::Approx(2.0 * std::cos(theta)).epsilon(1e-12));
        (void)pc;
    }

    CHECK_THROWS_AS(free_exit(sph, Vec3{0.0, 0.5, 0.0}, kV1), PreconditionViolation);
    CHECK_THROWS_AS(free_exit(sph, Vec3{0.0, 1.0, 0.0}, UnitVec3(0.0, 1.0, 0.0)),
                    PreconditionViolation);
}

TEST_CASE("two-dir body: the two-reflection path matches the analytic oracle") {
    const Body body = make_two_dir_body(1.0, 1.0, 0.6);
    const AmbientBody sph = AmbientBody::sphere(3.0);
    TraceLimits limits;
    limits.record_polyline = true;

    const TraceResult tr =
        trace(body, sph, sphere_entry_above(3.0, 0.8, 0.2), kV1, limits);
    CHECK(tr.status == TraceStatus::Exited);
    CHECK(tr.bounces == 2);
    CHECK(norm(tr.exit_velocity.vec() - kV1.vec()) < 1e-9);
    REQUIRE(tr.polyline.size() == 4);
    const auto expect = oracles::two_reflection_points(1.0, 0.8, 0.2);
    CHECK(norm(tr.polyline[1] - expect.first) < 1e-12);
    CHECK(norm(tr.polyline[2] - expect.second) < 1e-12);
    CHECK(tr.exit_point.x == doctest::Approx(-0.8).epsilon(1e-9));
    CHECK(tr.exit_point.z == doctest::Approx(0.2).epsilon(1e-9));
}

TEST_CASE("slab: ray through the gap passes untouched") {
    const Body body = make_slab_2d_body(1.0, 1.0, 0.3, 1.0);
    const AmbientBody sph = AmbientBody::sphere(3.0);
    const TraceResult tr = trace(body, sph, sphere_entry_above(3.0, 0.2, 0.0), kV1);
    CHECK(tr.status == TraceStatus::Exited);
    CHECK(tr.bounces == 0);
    CHECK(norm(tr.exit_velocity.vec() - kV1.vec()) == 0.0);
    // Exit stays collinear with the entry line.
    CHECK(tr.exit_point.x == doctest::Approx(0.2).epsilon(1e-12));

    // Slab traced in a z = const plane behaves as the planar figure.
    const TraceResult hit = trace(body, sph, sphere_entry_above(3.0, 0.8, 0.0), kV1);
    CHECK(hit.bounces == 2);
    CHECK(hit.exit_point.x == doctest::Approx(-0.8).epsilon(1e-9));
}

TEST_CASE("invisible union: four bounces and a collinear exit; v2 by symmetry") {
    const Body body = make_invisible_union(1.0, 1.0, 0.6);
    const AmbientBody sph = AmbientBody::sphere(4.0);
    TraceLimits limits;
    limits.record_polyline = true;

    const TraceResult tr =
        trace(body, sph, sphere_entry_above(4.0, 0.8, 0.2), kV1, limits);
    CHECK(tr.status == TraceStatus::Exited);
    CHECK(tr.bounces == 4);
    CHECK(norm(tr.exit_velocity.vec() - kV1.vec()) < 1e-9);
    const Vec3 d = tr.exit_point - sphere_entry_above(4.0, 0.8, 0.2);
    CHECK(norm(d - dot(d, kV1.vec()) * kV1.vec()) < 1e-9);
    REQUIRE(tr.polyline.size() == 6);
    CHECK(norm(tr.polyline[1] - Vec3{0.8, 0.39, 0.2}) < 1e-12);
    CHECK(norm(tr.polyline[2] - Vec3{-0.8, -0.39, 0.2}) < 1e-12);
    CHECK(norm(tr.polyline[3] - Vec3{-0.8, 0.39 - 1.5, 0.2}) < 1e-9);
    CHECK(norm(tr.polyline[4] - Vec3{0.8, -0.39 - 1.5, 0.2}) < 1e-9);

    // Same entry offsets with v2: the construction is symmetric under y<->z.
    const Vec3 entry2{0.8, 0.2, std::sqrt(16.0 - 0.64 - 0.04)};
    const TraceResult tr2 = trace(body, sph, entry2, kV2, limits);
    CHECK(tr2.status == TraceStatus::Exited);
    CHECK(tr2.bounces == 4);
    CHECK(norm(tr2.exit_velocity.vec() - kV2.vec()) < 1e-9);
    const Vec3 d2 = tr2.exit_point - entry2;
    CHECK(norm(d2 - dot(d2, kV2.vec()) * kV2.vec()) < 1e-9);
}

namespace {

// Parallel-mirror channel fixture: walls at y = 0 and y = 0.02 spanning
// |x| <= 3; a shallow ray entering the mouth bounces ~60 times.
Body channel_fixture() {
    std::vector<Patch> walls;
    walls.push_back(Patch::plane(Vec3{0.0, 0.0, 0.0}, UnitVec3(0.0, 1.0, 0.0),
                                 {TrimTerm::abs_interval(0, 0.0, 0.0, 3.0),
                                  TrimTerm::abs_interval(2, 0.0, 0.0, 0.5)}));
    walls.push_back(Patch::plane(Vec3{0.0, 0.02, 0.0}, UnitVec3(0.0, -1.0, 0.0),
                                 {TrimTerm::abs_interval(0, 0.0, 0.0, 3.0),
                                  TrimTerm::abs_interval(2, 0.0, 0.0, 0.5)}));
    return Body(walls, [](const Vec3&) { return false; },
                Aabb{{-3.0, 0.0, -0.5}, {3.0, 0.02, 0.5}}, std::nullopt);
}

// Entry point on the sphere for the line through `anchor` along v.
Vec3 sphere_entry_along(double radius, const Vec3& anchor, const UnitVec3& v) {
    const Vec3 start = anchor - 6.0 * v.vec();
    const double b = dot(start, v.vec());
    const double tt = -b - std::sqrt(b * b - (norm2(start) - radius * radius));
    return start + tt * v.vec();
}

}  // namespace

TEST_CASE("speed conservation across many bounces") {
    const Body channel = channel_fixture();
    const AmbientBody sph = AmbientBody::sphere(5.0);

    TraceLimits limits;
    limits.max_bounces = 256;
    limits.record_polyline = true;
    const UnitVec3 v = UnitVec3::normalize(Vec3{1.0, -0.2, 0.0});
    const Vec3 entry = sphere_entry_along(5.0, Vec3{-3.05, 0.015, 0.0}, v);
    const TraceResult tr = trace(channel, sph, entry, v, limits);
    CHECK(tr.status == TraceStatus::Exited);
    CHECK(tr.bounces > 50);
    CHECK(std::abs(norm(tr.exit_velocity.vec()) - 1.0) < 1e-12);

    // Path length equals the polyline length within roundoff.
    double poly_len = 0.0;
    for (std::size_t i = 0; i + 1 < tr.polyline.size(); ++i)
        poly_len += norm(tr.polyline[i + 1] - tr.polyline[i]);
    CHECK(tr.path_length == doctest::Approx(poly_len).epsilon(1e-9));
    // Straight-line bound on the path length.
    CHECK(tr.path_length >= norm(tr.exit_point - tr.polyline.front()) - 1e-12);
}

TEST_CASE("trapped: bounce cap turns a long channel orbit into Trapped") {
    const Body channel = channel_fixture();
    const AmbientBody sph = AmbientBody::sphere(5.0);
    const UnitVec3 v = UnitVec3::normalize(Vec3{1.0, -0.2, 0.0});
    const Vec3 entry = sphere_entry_along(5.0, Vec3{-3.05, 0.015, 0.0}, v);

    TraceLimits limits;
    limits.max_bounces = 8;
    const TraceResult tr = trace(channel, sph, entry, v, limits);
    CHECK(tr.status == TraceStatus::Trapped);
    CHECK(tr.bounces == 8);
}

TEST_CASE("degenerate: hitting the sheet-sheet corner edge is flagged") {
    const Body body = make_two_dir_body(1.0, 1.0, 0.6);
    const AmbientBody sph = AmbientBody::sphere(3.0);
    // Along v1 at z0 = g(x0): the first hit lies exactly on the trim edge
    // shared by the y-sheet and the z-sheet.
    const double x0 = 0.8, z0 = 0.8 * 0.8 - 0.25;
    const TraceResult tr = trace(body, sph, sphere_entry_above(3.0, x0, z0), kV1);
    CHECK(tr.status == TraceStatus::Degenerate);
}

TEST_CASE("degenerate: ray sliding in a face carrier plane is flagged") {
    const Body body = make_two_dir_body(1.0, 1.0, 0.6);
    const AmbientBody sph = AmbientBody::sphere(3.0);
    const TraceResult tr = trace(body, sph, sphere_entry_above(3.0, 1.0, 0.1), kV1);
    CHECK(tr.status == TraceStatus::Degenerate);
}

TEST_CASE("time reversal returns to the entry state") {
    const Body body = make_two_dir_body(1.0, 1.0, 0.6);
    const AmbientBody sph = AmbientBody::sphere(3.0);
    const CrossSection cs(sph, kV1);
    std::uint64_t reversed = 0;
    for (std::uint64_t i = 0; i < 2000; ++i) {
        SampleRng rng(23, i);
        const Vec3 entry = sample_cross_section(cs, rng);
        const TraceResult fwd = trace(body, sph, entry, kV1);
        if (fwd.status != TraceStatus::Exited) continue;
        const TraceResult back = trace(body, sph, fwd.exit_point, -fwd.exit_velocity);
        if (back.status != TraceStatus::Exited) continue;
        CHECK(norm(back.exit_point - entry) < 1e-7);
        CHECK(norm(back.exit_velocity.vec() + kV1.vec()) < 1e-7);
        ++reversed;
    }
    CHECK(reversed > 1900);
}

TEST_CASE("ambient independence: sphere vs box leave v+ and the lateral shift unchanged") {
    const Body bodies[] = {make_two_dir_body(1.0, 1.0, 0.6), make_invisible_union(1.0, 1.0, 0.6)};
    const double sizes[] = {3.0, 4.0};
    for (int bi = 0; bi < 2; ++bi) {
        const AmbientBody sph = AmbientBody::sphere(sizes[bi]);
        const AmbientBody box = AmbientBody::box(sizes[bi]);
        for (const UnitVec3& v : {kV1, kV2}) {
            const CrossSection cs_s(sph, v);
            const CrossSection cs_b(box, v);
            for (std::uint64_t i = 0; i < 500; ++i) {
                SampleRng rng(31 + std::uint64_t(bi), i);
                const auto [u1, u2] = cs_s.sample_omega(rng);
                const Vec3 e_s = cs_s.lift_entry(u1, u2);
                const Vec3 e_b = cs_b.lift_entry(u1, u2);
                const TraceResult t_s = trace(bodies[bi], sph, e_s, v);
                const TraceResult t_b = trace(bodies[bi], box, e_b, v);
                if (t_s.status != TraceStatus::Exited || t_b.status != TraceStatus::Exited)
                    continue;
                CHECK(norm(t_s.exit_velocity.vec() - t_b.exit_velocity.vec()) < 1e-9);
                const Vec3 d_s = t_s.exit_point - e_s;
                const Vec3 d_b = t_b.exit_point - e_b;
                const Vec3 perp_s = d_s - dot(d_s, v.vec()) * v.vec();
                const Vec3 perp_b = d_b - dot(d_b, v.vec()) * v.vec();
                CHECK(norm(perp_s - perp_b) < 1e-9);
            }
        }
    }
}

TEST_CASE("bounce counts: 2 for the single body, 4 for the union, 0 for misses") {
    const Body two = make_two_dir_body(1.0, 1.0, 0.6);
    const Body uni = make_invisible_union(1.0, 1.0, 0.6);
    const AmbientBody sph4 = AmbientBody::sphere(4.0);
    for (std::uint64_t i = 0; i < 3000; ++i) {
        SampleRng rng(37, i);
        const double x0 = rng.uniform(-1.2, 1.2);
        const double z0 = rng.uniform(-1.2, 1.2);
        const Vec3 entry = sphere_entry_above(4.0, x0, z0);
        const double g = x0 * x0 - 0.25;
        const bool in_x = std::abs(x0) >= 0.6 && std::abs(x0) <= 1.0;
        const bool hits_two = in_x && std::abs(z0) < g;
        // The union also catches rays over the z-shifted copy pair at z ~ -h.
        const bool hits_uni = in_x && (std::abs(z0) < g || std::abs(z0 + 1.5) < g);
        // stay clear of trim edges where Degenerate is the right answer
        if (std::abs(std::abs(z0) - std::max(g, 0.0)) < 1e-3) continue;
        if (std::abs(std::abs(z0 + 1.5) - std::max(g, 0.0)) < 1e-3) continue;
        if (std::abs(std::abs(x0) - 0.6) < 1e-3 || std::abs(std::abs(x0) - 1.0) < 1e-3) continue;

        const TraceResult a = trace(two, sph4, entry, kV1);
        CHECK(a.status == TraceStatus::Exited);
        CHECK(a.bounces == (hits_two ? 2 : 0));

        const TraceResult b = trace(uni, sph4, entry, kV1);
        CHECK(b.status == TraceStatus::Exited);
        CHECK(b.bounces == (hits_uni ? 4 : 0));
    }
}
