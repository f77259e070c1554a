#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "billiards/body_io.hpp"
#include "billiards/json_writer.hpp"
#include "billiards/mesh.hpp"
#include "billiards/svg.hpp"

using namespace billiards;

namespace {

std::filesystem::path temp_file(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "billiards_io_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("body file round-trips bit-exactly") {
    for (const Body& body :
         {make_two_dir_body(0.7312452871, 1.125, 0.6000000001),
          make_slab_2d_body(1.0, 1.0, 0.3, 1.0), make_invisible_union(1.0, 1.0, 0.6),
          make_sphere_body(0.725)}) {
        const std::string text = serialize_body(body);
        const Body parsed = parse_body(text);
        REQUIRE(parsed.patches().size() == body.patches().size());
        for (std::size_t i = 0; i < body.patches().size(); ++i)
            CHECK(parsed.patches()[i] == body.patches()[i]);
        CHECK(serialize_body(parsed) == text);
    }
}

TEST_CASE("parsed body membership: parity rule matches the constructed body") {
    const Body built = make_two_dir_body(1.0, 1.0, 0.6);
    const Body parsed = parse_body(serialize_body(built));
    // Bounding boxes derived from trims match the construction.
    CHECK(parsed.bbox().lo.x == doctest::Approx(built.bbox().lo.x).epsilon(1e-12));
    CHECK(parsed.bbox().hi.y == doctest::Approx(built.bbox().hi.y).epsilon(1e-12));
    for (const Vec3& p : {Vec3{0.8, 0.0, 0.0}, Vec3{0.5, 0.0, 0.0}, Vec3{0.8, 0.5, 0.0},
                          Vec3{-0.9, 0.2, -0.2}, Vec3{0.0, 0.0, 0.0}, Vec3{0.7, -0.1, 0.1}}) {
        CHECK(parsed.contains(p) == built.contains(p));
    }
}

TEST_CASE("body file parse errors carry context") {
    CHECK_THROWS_AS(parse_body("not a body file"), IoError);
    CHECK_THROWS_AS(parse_body("billiards-body v1\ntrim absint axis=x center=0 lo=0 hi=1\n"),
                    IoError);
    CHECK_THROWS_AS(parse_body("billiards-body v1\npatch paracyl arg=w height=y sign=1 "
                               "alpha=1 offset=0.25 acenter=0 hcenter=0\n"),
                    IoError);
    CHECK_THROWS_AS(load_body_file("/nonexistent/path/body.txt"), IoError);
}

TEST_CASE("json writer: fixed key order and 17 significant digits") {
    Json j = Json::object();
    j.set("value", 0.1).set("count", std::uint64_t(7)).set("name", "x");
    const std::string a = j.dump();
    CHECK(a.find("0.10000000000000001") != std::string::npos);
    CHECK(a.find("\"value\"") < a.find("\"count\""));
    Json k = Json::object();
    k.set("value", 0.1).set("count", std::uint64_t(7)).set("name", "x");
    CHECK(k.dump() == a);  // byte-identical for identical content
}

TEST_CASE("mesh: volumes match Monte Carlo membership within 1%") {
    for (const Body& body : {make_two_dir_body(1.0, 1.0, 0.6), make_two_dir_body(1.0, 1.0, 0.4),
                             make_invisible_union(1.0, 1.0, 0.6)}) {
        const TriMesh mesh = tessellate_body(body, 1e-4);
        const double mesh_vol = mesh_signed_volume(mesh);
        const VolumeEstimate mc = body_volume(body, 2000000, 55);
        CHECK(std::abs(mesh_vol - mc.value) <
              std::max(0.01 * mc.value, 3.0 * mc.stderr_ + 0.002 * mc.value));
    }
}

TEST_CASE("mesh: closed surfaces; shells count the disjoint solid pieces") {
    // One two-dir body is two disjoint curvilinear prisms: 2 shells.
    const TriMesh single = tessellate_body(make_two_dir_body(1.0, 1.0, 0.6), 1e-3);
    CHECK(mesh_is_closed(single));
    CHECK(mesh_shell_count(single) == 2);

    const TriMesh tri_regime = tessellate_body(make_two_dir_body(1.0, 1.0, 0.4), 1e-3);
    CHECK(mesh_is_closed(tri_regime));
    CHECK(mesh_shell_count(tri_regime) == 2);

    // The union holds four copies = eight pieces; copies touch along edges
    // (non-manifold contact lines), which must not merge shells.
    const TriMesh uni = tessellate_body(make_invisible_union(1.0, 1.0, 0.6), 1e-3);
    CHECK(mesh_is_closed(uni));
    CHECK(mesh_shell_count(uni) == 8);

    const TriMesh ball = tessellate_body(make_sphere_body(1.0), 1e-3);
    CHECK(mesh_is_closed(ball));
    CHECK(mesh_shell_count(ball) == 1);
}

TEST_CASE("mesh: halving the chordal tolerance refines the tessellation") {
    const Body body = make_two_dir_body(1.0, 1.0, 0.6);
    const std::size_t coarse = tessellate_body(body, 2e-3).triangles.size();
    const std::size_t fine = tessellate_body(body, 1e-3).triangles.size();
    CHECK(fine > coarse);
    CHECK_THROWS_AS(tessellate_body(body, 0.0), InvalidParams);
}

TEST_CASE("stl: binary round trip preserves the triangle list") {
    const Body body = make_two_dir_body(1.0, 1.0, 0.6);
    const TriMesh mesh = tessellate_body(body, 5e-3);
    const auto path = temp_file("roundtrip.stl");
    write_stl_binary(mesh, path.string());

    // 80-byte header + count + 50 bytes per triangle.
    CHECK(std::filesystem::file_size(path) == 84 + 50 * mesh.triangles.size());

    const TriMesh back = read_stl_binary(path.string());
    REQUIRE(back.triangles.size() == mesh.triangles.size());
    // float32 quantization: exact equality after one conversion cycle.
    for (std::size_t i = 0; i < 50 && i < mesh.triangles.size(); ++i) {
        CHECK(float(mesh.triangles[i].a.x) == float(back.triangles[i].a.x));
        CHECK(float(mesh.triangles[i].c.z) == float(back.triangles[i].c.z));
    }
    // Shell structure survives quantization.
    CHECK(mesh_is_closed(back));
    CHECK(mesh_shell_count(back) == 2);
}

TEST_CASE("svg: trajectory render contains the outline and the polyline") {
    const Body body = make_two_dir_body(1.0, 1.0, 0.6);
    const AmbientBody sph = AmbientBody::sphere(3.0);
    const std::vector<Vec3> polyline{{0.8, 2.88, 0.2}, {0.8, 0.39, 0.2}, {-0.8, -0.39, 0.2},
                                     {-0.8, -2.88, 0.2}};
    const std::string svg = render_trajectory_svg(body, sph, polyline, ProjectionPlane::XY, 128);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("<circle") != std::string::npos);   // ambient outline + markers
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(svg.find("<line") != std::string::npos);     // body cross-section contour
}
