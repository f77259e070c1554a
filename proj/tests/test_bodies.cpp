#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "billiards/bodies.hpp"
#include "billiards/rng.hpp"
#include "oracles.hpp"

using namespace billiards;

TEST_CASE("body spec: regimes, derived h, parameter validation") {
    const Body trap = make_two_dir_body(1.0, 1.0, 0.6);
    REQUIRE(trap.spec().has_value());
    CHECK(trap.spec()->regime == Regime::Trapezial);
    CHECK(trap.spec()->h == doctest::Approx(1.5).epsilon(1e-15));

    const Body tri = make_two_dir_body(1.0, 1.0, 0.4);
    CHECK(tri.spec()->regime == Regime::Triangular);

    CHECK_THROWS_AS(make_two_dir_body(1.0, 0.4, 0.1), InvalidParams);   // 2ab = 0.8 <= 1
    CHECK_THROWS_AS(make_two_dir_body(1.0, 1.0, 1.2), InvalidParams);   // gamma >= beta
    CHECK_THROWS_AS(make_two_dir_body(-1.0, 1.0, 0.1), InvalidParams);  // alpha <= 0
    CHECK_THROWS_AS(make_slab_2d_body(1.0, 1.0, 0.1, 0.0), InvalidParams);
}

TEST_CASE("two-dir body: membership examples") {
    const Body b = make_two_dir_body(1.0, 1.0, 0.6);
    CHECK(b.contains(Vec3{0.8, 0.0, 0.0}));
    CHECK(!b.contains(Vec3{0.5, 0.0, 0.0}));
    CHECK(!b.contains(Vec3{0.8, 0.5, 0.0}));  // 0.5 > g(0.8) = 0.39
    // Patch count: 4 sheets + 2 outer faces + 2 inner faces (trapezial).
    CHECK(b.patches().size() == 8);
    const Body tri = make_two_dir_body(1.0, 1.0, 0.4);
    CHECK(tri.patches().size() == 6);  // inner faces have empty trim, omitted
}

TEST_CASE("two-dir body: membership symmetric under sign flips and y<->z swap") {
    const Body b = make_two_dir_body(0.9, 1.1, 0.45);
    for (std::uint64_t i = 0; i < 20000; ++i) {
        SampleRng rng(3, i);
        const Vec3 p{rng.uniform(-1.3, 1.3), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        const bool in = b.contains(p);
        CHECK(b.contains(Vec3{-p.x, p.y, p.z}) == in);
        CHECK(b.contains(Vec3{p.x, -p.y, p.z}) == in);
        CHECK(b.contains(Vec3{p.x, p.y, -p.z}) == in);
        CHECK(b.contains(Vec3{p.x, p.z, p.y}) == in);
    }
}

TEST_CASE("slab body: membership and z extent") {
    const Body b = make_slab_2d_body(1.0, 1.0, 0.3, 1.0);
    CHECK(!b.contains(Vec3{0.9, 0.0, 0.6}));  // outside the slab thickness
    CHECK(b.contains(Vec3{0.9, 0.0, 0.4}));
    CHECK(!b.contains(Vec3{0.2, 0.0, 0.0}));  // inside the gap
}

TEST_CASE("invisible union: h, disjoint copies, single-ownership of points") {
    const Body u = make_invisible_union(1.0, 1.0, 0.6);
    CHECK(u.spec()->h == doctest::Approx(1.5).epsilon(1e-15));

    const Body base = make_two_dir_body(1.0, 1.0, 0.6);
    const double h = u.spec()->h;
    const Vec3 shifts[4] = {{0, 0, 0}, {0, -h, 0}, {0, 0, -h}, {0, -h, -h}};
    for (std::uint64_t i = 0; i < 20000; ++i) {
        SampleRng rng(5, i);
        const Vec3 p{rng.uniform(-1.2, 1.2), rng.uniform(-2.5, 1.0), rng.uniform(-2.5, 1.0)};
        int owners = 0;
        for (const Vec3& s : shifts)
            if (base.contains(p - s)) ++owners;
        CHECK(owners <= 1);
        CHECK(u.contains(p) == (owners == 1));
    }

    // Adjacent copies share exactly the touching plane: bbox gap is zero.
    const Aabb b0 = base.bbox();
    const Aabb b1 = translate_body(base, Vec3{0.0, -h, 0.0}).bbox();
    CHECK(b1.hi.y == doctest::Approx(b0.lo.y).epsilon(1e-15));
}

TEST_CASE("translate and quarter-turn rotation") {
    const Body b = make_two_dir_body(1.0, 1.0, 0.6);

    const Body same = translate_body(b, Vec3{0.0, 0.0, 0.0});
    CHECK(same.contains(Vec3{0.8, 0.0, 0.0}));
    CHECK(same.patches().size() == b.patches().size());
    for (std::size_t i = 0; i < b.patches().size(); ++i)
        CHECK(same.patches()[i] == b.patches()[i]);

    const Body moved = translate_body(b, Vec3{0.0, -1.5, 0.0});
    CHECK(moved.contains(Vec3{0.8, -1.5, 0.0}));
    CHECK(!moved.contains(Vec3{0.8, 0.0, 0.0}));

    // A y-sheet maps onto a z-sheet under the quarter turn about x.
    const Body rot = rotate_body_quarter_turn_x(moved);
    CHECK(rot.contains(Vec3{0.8, 0.0, -1.5}));
    int y_sheets = 0, z_sheets = 0;
    for (const Patch& p : rot.patches())
        if (p.kind == PatchKind::ParabolicCylinder)
            (p.height_axis == 1 ? y_sheets : z_sheets) += 1;
    CHECK(y_sheets == 2);
    CHECK(z_sheets == 2);
}

TEST_CASE("membership/patch parity consistency along random rays") {
    const Body bodies[] = {make_two_dir_body(1.0, 1.0, 0.6), make_two_dir_body(0.8, 1.2, 0.3),
                           make_slab_2d_body(1.0, 1.0, 0.3, 1.0)};
    for (const Body& body : bodies) {
        std::uint64_t checked = 0;
        for (std::uint64_t i = 0; i < 3000; ++i) {
            SampleRng rng(17, i);
            const double z = rng.uniform(-1.0, 1.0);
            const double phi = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
            const double r = std::sqrt(std::max(1.0 - z * z, 0.0));
            const Ray ray{Vec3{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0),
                               rng.uniform(-2.0, 2.0)},
                          UnitVec3::normalize(Vec3{r * std::cos(phi), r * std::sin(phi), z})};
            if (body.contains(ray.origin)) continue;

            std::vector<double> ts;
            bool degenerate = false;
            for (const Patch& p : body.patches()) {
                for (const Hit& h : intersect_patch(ray, p)) {
                    if (h.tangential || h.edge_distance < 1e-6) degenerate = true;
                    ts.push_back(h.t);
                }
            }
            if (degenerate) continue;
            std::sort(ts.begin(), ts.end());
            // Exclude rays where crossings nearly coincide (corner grazing).
            bool close = false;
            for (std::size_t k = 0; k + 1 < ts.size(); ++k)
                if (ts[k + 1] - ts[k] < 1e-5) close = true;
            if (close) continue;

            // Membership flips exactly at the crossing parity.
            for (std::size_t k = 0; k < ts.size(); ++k) {
                const double before = ts[k] - 1e-6;
                const double after = ts[k] + 1e-6;
                if (k > 0 && before < ts[k - 1]) continue;
                CHECK(body.contains(ray.at(before)) == (k % 2 == 1));
                CHECK(body.contains(ray.at(after)) == (k % 2 == 0));
            }
            ++checked;
        }
        CHECK(checked > 1000);
    }
}

TEST_CASE("body volume: empty body, exact box fixture, quadrature oracle") {
    CHECK(body_volume(Body::empty(), 1000, 1).value == 0.0);

    // Unit box fixture fills its own bounding box: estimate exactly 1.
    std::vector<Patch> faces;
    for (int axis = 0; axis < 3; ++axis) {
        for (double side : {0.0, 1.0}) {
            Vec3 point{0.5, 0.5, 0.5};
            axis_set(point, axis, side);
            Vec3 n;
            axis_set(n, axis, side > 0.5 ? 1.0 : -1.0);
            std::vector<TrimTerm> trim;
            for (int other = 0; other < 3; ++other)
                if (other != axis) trim.push_back(TrimTerm::abs_interval(other, 0.5, 0.0, 0.5));
            faces.push_back(Patch::plane(point, UnitVec3(n), trim));
        }
    }
    const Body box(faces,
                   [](const Vec3& p) {
                       return p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0 &&
                              p.z >= 0.0 && p.z <= 1.0;
                   },
                   Aabb{{0.0, 0.0, 0.0}, {1.0, 1.0, 1.0}}, std::nullopt);
    const VolumeEstimate ve = body_volume(box, 10000, 2);
    CHECK(ve.value == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(ve.stderr_ == doctest::Approx(0.0).epsilon(1e-15));

    // Monte Carlo volume against 1D quadrature of the cross-section area.
    for (double gamma : {0.6, 0.4}) {
        const Body b = make_two_dir_body(1.0, 1.0, gamma);
        const double x_lo = std::max(gamma, 0.5);
        const double exact = 2.0 * oracles::integrate(
                                       [](double x) {
                                           const double g = x * x - 0.25;
                                           return 4.0 * g * g;  // (2g)^2
                                       },
                                       x_lo, 1.0);
        const VolumeEstimate est = body_volume(b, 400000, 99);
        CHECK(std::abs(est.value - exact) < 3.0 * est.stderr_);
    }
}
