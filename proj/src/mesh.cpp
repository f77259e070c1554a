#include "billiards/mesh.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <numeric>
#include <vector>

#include "billiards/errors.hpp"

namespace billiards {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Endpoint-exact interval sampling; all patches sharing an interval emit
// bit-identical boundary vertices.
double lerp_exact(double lo, double hi, std::uint32_t j, std::uint32_t n) {
    if (j == 0) return lo;
    if (j == n) return hi;
    return lo + (hi - lo) * (double(j) / double(n));
}

// Snap near-zero parabola values so sheets meeting at a tip collapse onto the
// exact same vertex.
double eval_parabola(double alpha, double offset, double u) {
    const double p = parabola_height(alpha, offset, u);
    return std::abs(p) <= 1e-12 * std::max(std::abs(offset), 1.0) ? 0.0 : p;
}

struct BranchList {
    // up to two [lo, hi] intervals
    std::array<std::pair<double, double>, 2> iv;
    int count = 0;
};

BranchList interval_branches(const AbsIntervalTrim& t) {
    BranchList b;
    if (t.lo > 0.0) {
        b.iv[b.count++] = {t.center - t.hi, t.center - t.lo};
        b.iv[b.count++] = {t.center + t.lo, t.center + t.hi};
    } else {
        b.iv[b.count++] = {t.center - t.hi, t.center + t.hi};
    }
    return b;
}

const AbsIntervalTrim* find_interval(const Patch& p, int axis) {
    for (const TrimTerm& t : p.trim)
        if (t.kind == TrimKind::AbsInterval && t.interval.axis == axis) return &t.interval;
    return nullptr;
}

const ParabolicTrim* find_parabolic(const Patch& p, int axis) {
    for (const TrimTerm& t : p.trim)
        if (t.kind == TrimKind::Parabolic && t.parabolic.bounded_axis == axis) return &t.parabolic;
    return nullptr;
}

struct GridEmitter {
    TriMesh& mesh;

    void quad(const Vec3& v00, const Vec3& v10, const Vec3& v11, const Vec3& v01,
              const Vec3& outward) {
        tri(v00, v10, v11, outward);
        tri(v00, v11, v01, outward);
    }

    void tri(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& outward) {
        const Vec3 n = cross(b - a, c - a);
        if (norm2(n) == 0.0) return;  // collapsed cell edge
        if (dot(n, outward) >= 0.0)
            mesh.triangles.push_back({a, b, c});
        else
            mesh.triangles.push_back({a, c, b});
    }
};

// Transverse bounds of a column: center +- halfwidth at u.
struct RowBounds {
    const AbsIntervalTrim* fixed = nullptr;
    const ParabolicTrim* parab = nullptr;

    double center() const { return fixed ? fixed->center : parab->bounded_center; }
    double halfwidth(double u) const {
        if (fixed) return fixed->hi;
        return std::max(eval_parabola(parab->alpha, parab->offset, u - parab->arg_center), 0.0);
    }
    double max_halfwidth(double u_lo, double u_hi) const {
        if (fixed) return fixed->hi;
        return std::max(halfwidth(u_lo), halfwidth(u_hi));
    }
};

std::uint32_t grid_count(double length, double step) {
    if (!(length > 0.0)) return 1;
    return std::uint32_t(std::clamp(std::ceil(length / step), 1.0, 4096.0));
}

// Tessellates one column-grid surface: u along `col_axis`, rows along
// `row_axis`, third coordinate given by `height(u)`. Row counts are fixed per
// body (not per patch) so that patches meeting along an edge always sample it
// with identical vertices.
void emit_grid(TriMesh& mesh, int col_axis, int row_axis, int height_axis,
               const std::pair<double, double>& uiv, const RowBounds& rows, std::uint32_t nu,
               std::uint32_t nw, const std::function<double(double)>& height,
               const std::function<Vec3(double)>& outward) {
    std::vector<double> us(nu + 1), hs(nu + 1), ws(nu + 1);
    for (std::uint32_t i = 0; i <= nu; ++i) {
        us[i] = lerp_exact(uiv.first, uiv.second, i, nu);
        hs[i] = height(us[i]);
        ws[i] = rows.halfwidth(us[i]);
    }
    const double rc = rows.center();

    auto vertex = [&](std::uint32_t i, std::uint32_t j) {
        Vec3 p;
        axis_set(p, col_axis, us[i]);
        axis_set(p, height_axis, hs[i]);
        axis_set(p, row_axis, lerp_exact(rc - ws[i], rc + ws[i], j, nw));
        return p;
    };

    GridEmitter emit{mesh};
    for (std::uint32_t i = 0; i < nu; ++i) {
        const Vec3 n_ref = outward(0.5 * (us[i] + us[i + 1]));
        for (std::uint32_t j = 0; j < nw; ++j) {
            emit.quad(vertex(i, j), vertex(i + 1, j), vertex(i + 1, j + 1), vertex(i, j + 1),
                      n_ref);
        }
    }
}

void tessellate_parabolic(TriMesh& mesh, const Patch& p, double step, std::uint32_t rows_n) {
    const int ua = p.arg_axis, ha = p.height_axis;
    const int ra = 3 - ua - ha;  // remaining axis
    const AbsIntervalTrim* uiv = find_interval(p, ua);
    if (!uiv) throw InvalidParams("mesh: parabolic patch without an interval trim on its argument");

    RowBounds rows;
    rows.parab = find_parabolic(p, ra);
    if (!rows.parab) rows.fixed = find_interval(p, ra);
    if (!rows.parab && !rows.fixed)
        throw InvalidParams("mesh: parabolic patch without a transverse bound");

    auto height = [&](double u) {
        return p.height_center + p.sign * eval_parabola(p.alpha, p.offset, u - p.arg_center);
    };
    auto outward = [&](double u) {
        Vec3 n;
        axis_set(n, ua, -2.0 * p.alpha * (u - p.arg_center));
        axis_set(n, ha, p.sign);
        return n;
    };

    const BranchList branches = interval_branches(*uiv);
    for (int b = 0; b < branches.count; ++b) {
        const std::uint32_t nu =
            grid_count(branches.iv[b].second - branches.iv[b].first, step);
        emit_grid(mesh, ua, ra, ha, branches.iv[b], rows, nu, rows_n, height, outward);
    }
}

void tessellate_plane(TriMesh& mesh, const Patch& p, double step, std::uint32_t rows_n) {
    const Vec3& n = p.plane_normal.vec();
    int k = -1;
    for (int a = 0; a < 3; ++a)
        if (std::abs(axis_get(n, a)) > 1.0 - 1e-12) k = a;
    if (k < 0) throw InvalidParams("mesh: only axis-aligned plane patches are tessellated");

    const int i1 = (k + 1) % 3, i2 = (k + 2) % 3;
    // Column axis: the argument of a parabolic row bound when present (the
    // column grid then pairs with the curved sheets' column grid).
    int col = i1, row = i2;
    bool curved_rows = false;
    if (const ParabolicTrim* pt = find_parabolic(p, i1); pt && pt->arg_axis == i2) {
        col = i2;
        row = i1;
        curved_rows = true;
    } else if (const ParabolicTrim* pt2 = find_parabolic(p, i2); pt2 && pt2->arg_axis == i1) {
        col = i1;
        row = i2;
        curved_rows = true;
    }

    const AbsIntervalTrim* civ = find_interval(p, col);
    if (!civ) throw InvalidParams("mesh: plane patch without an interval trim on its column axis");
    RowBounds rows;
    rows.parab = find_parabolic(p, row);
    if (!rows.parab) rows.fixed = find_interval(p, row);
    if (!rows.parab && !rows.fixed)
        throw InvalidParams("mesh: plane patch without a row bound");

    const double plane_h = axis_get(p.plane_point, k);
    auto height = [plane_h](double) { return plane_h; };
    auto outward = [&](double) { return n; };

    const BranchList branches = interval_branches(*civ);
    for (int b = 0; b < branches.count; ++b) {
        // Rectangular faces pair both of their axes with sheet row grids; caps
        // pair their column axis with the sheet column grid instead.
        const std::uint32_t nu =
            curved_rows ? grid_count(branches.iv[b].second - branches.iv[b].first, step)
                        : rows_n;
        emit_grid(mesh, col, row, k, branches.iv[b], rows, nu, rows_n, height, outward);
    }
}

void tessellate_sphere(TriMesh& mesh, const Patch& p, double tol) {
    const double r = p.radius;
    const double max_angle = 2.0 * std::acos(std::clamp(1.0 - tol / r, -1.0, 1.0));
    const std::uint32_t nt =
        std::uint32_t(std::clamp(std::ceil(kPi / std::max(max_angle, 1e-3)), 4.0, 2048.0));
    const std::uint32_t np = 2 * nt;

    // Rings precomputed so shared vertices are bit-identical; poles exact.
    std::vector<std::vector<Vec3>> rings(nt + 1);
    for (std::uint32_t i = 0; i <= nt; ++i) {
        if (i == 0) {
            rings[i] = {p.center + Vec3{0.0, 0.0, r}};
            continue;
        }
        if (i == nt) {
            rings[i] = {p.center + Vec3{0.0, 0.0, -r}};
            continue;
        }
        const double theta = kPi * double(i) / double(nt);
        const double st = std::sin(theta), ct = std::cos(theta);
        rings[i].reserve(np);
        for (std::uint32_t j = 0; j < np; ++j) {
            const double phi = 2.0 * kPi * double(j) / double(np);
            rings[i].push_back(p.center + r * Vec3{st * std::cos(phi), st * std::sin(phi), ct});
        }
    }

    GridEmitter emit{mesh};
    for (std::uint32_t i = 0; i < nt; ++i) {
        for (std::uint32_t j = 0; j < np; ++j) {
            const std::uint32_t jn = (j + 1) % np;
            const Vec3& a = rings[i][i == 0 ? 0 : j];
            const Vec3& b = rings[i][i == 0 ? 0 : jn];
            const Vec3& c = rings[i + 1][i + 1 == nt ? 0 : jn];
            const Vec3& d = rings[i + 1][i + 1 == nt ? 0 : j];
            const Vec3 outward = 0.25 * (a + b + c + d) - p.center;
            emit.quad(a, b, c, d, outward);
        }
    }
}

}  // namespace

TriMesh tessellate_body(const Body& body, double chordal_tol) {
    if (!(chordal_tol > 0.0)) throw InvalidParams("mesh: chordal tolerance must be positive");

    double alpha_max = 0.0;
    Aabb bb = Aabb::empty();
    for (const Patch& p : body.patches()) {
        if (p.kind == PatchKind::ParabolicCylinder) alpha_max = std::max(alpha_max, p.alpha);
        for (const TrimTerm& t : p.trim)
            if (t.kind == TrimKind::Parabolic) alpha_max = std::max(alpha_max, t.parabolic.alpha);
        bb.expand(p.bounds());
    }
    double step;
    if (alpha_max > 0.0) {
        step = 2.0 * std::sqrt(chordal_tol / alpha_max);
    } else {
        const Vec3 e = bb.valid() ? bb.extent() : Vec3{1.0, 1.0, 1.0};
        step = std::max({e.x, e.y, e.z, 1e-6}) / 8.0;
    }

    // One transverse row count for the whole body: patches meeting along an
    // edge must subdivide it identically or the mesh grows T-junctions.
    double row_extent = 0.0;
    for (const Patch& p : body.patches()) {
        if (p.kind == PatchKind::Sphere) continue;
        for (const TrimTerm& t : p.trim) {
            if (t.kind == TrimKind::AbsInterval && t.interval.axis != p.arg_axis)
                row_extent = std::max(row_extent, 2.0 * t.interval.hi);
            if (t.kind == TrimKind::Parabolic) {
                const AbsIntervalTrim* arg = find_interval(p, t.parabolic.arg_axis);
                if (arg) {
                    const double span = arg->hi + std::abs(arg->center - t.parabolic.arg_center);
                    row_extent = std::max(
                        row_extent,
                        2.0 * eval_parabola(t.parabolic.alpha, t.parabolic.offset, span));
                }
            }
        }
    }
    const std::uint32_t rows_n = grid_count(row_extent, step);

    TriMesh mesh;
    for (const Patch& p : body.patches()) {
        switch (p.kind) {
            case PatchKind::ParabolicCylinder: tessellate_parabolic(mesh, p, step, rows_n); break;
            case PatchKind::Plane: tessellate_plane(mesh, p, step, rows_n); break;
            case PatchKind::Sphere: tessellate_sphere(mesh, p, chordal_tol); break;
        }
    }
    return mesh;
}

namespace {

void put_u32(std::string& out, std::uint32_t v) {
    char b[4];
    std::memcpy(b, &v, 4);
    out.append(b, 4);
}

void put_f32(std::string& out, float v) {
    char b[4];
    std::memcpy(b, &v, 4);
    out.append(b, 4);
}

void put_vec(std::string& out, const Vec3& v) {
    put_f32(out, float(v.x));
    put_f32(out, float(v.y));
    put_f32(out, float(v.z));
}

}  // namespace

void write_stl_binary(const TriMesh& mesh, const std::string& path) {
    std::string out;
    out.reserve(84 + 50 * mesh.triangles.size());
    std::string header = "billiard-optics mesh";
    header.resize(80, '\0');
    out += header;
    put_u32(out, std::uint32_t(mesh.triangles.size()));
    for (const Triangle& t : mesh.triangles) {
        Vec3 n = cross(t.b - t.a, t.c - t.a);
        const double len = norm(n);
        if (len > 0.0) n = n / len;
        put_vec(out, n);
        put_vec(out, t.a);
        put_vec(out, t.b);
        put_vec(out, t.c);
        out.append(2, '\0');  // attribute byte count
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot write STL file: " + path);
    f.write(out.data(), std::streamsize(out.size()));
    if (!f) throw IoError("write failed: " + path);
}

TriMesh read_stl_binary(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open STL file: " + path);
    std::string data((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    if (data.size() < 84) throw IoError("STL too short: " + path);
    std::uint32_t count = 0;
    std::memcpy(&count, data.data() + 80, 4);
    if (data.size() < 84 + std::size_t(count) * 50) throw IoError("STL truncated: " + path);

    TriMesh mesh;
    mesh.triangles.reserve(count);
    const char* p = data.data() + 84;
    auto get_vec = [&](const char* q) {
        float v[3];
        std::memcpy(v, q, 12);
        return Vec3{v[0], v[1], v[2]};
    };
    for (std::uint32_t i = 0; i < count; ++i, p += 50)
        mesh.triangles.push_back({get_vec(p + 12), get_vec(p + 24), get_vec(p + 36)});
    return mesh;
}

double mesh_signed_volume(const TriMesh& mesh) {
    double six_v = 0.0;
    for (const Triangle& t : mesh.triangles) six_v += dot(t.a, cross(t.b, t.c));
    return six_v / 6.0;
}

namespace {

struct MeshTopology {
    std::vector<std::array<int, 3>> tri_verts;
    std::map<std::pair<int, int>, std::vector<int>> edge_tris;  // undirected
    std::map<std::pair<int, int>, int> directed_count;

    explicit MeshTopology(const TriMesh& mesh) {
        std::map<std::array<double, 3>, int> vertex_ids;
        auto id_of = [&](const Vec3& v) {
            const std::array<double, 3> key{v.x, v.y, v.z};
            auto [it, inserted] = vertex_ids.try_emplace(key, int(vertex_ids.size()));
            return it->second;
        };
        tri_verts.reserve(mesh.triangles.size());
        for (const Triangle& t : mesh.triangles) {
            const std::array<int, 3> ids{id_of(t.a), id_of(t.b), id_of(t.c)};
            const int tri = int(tri_verts.size());
            tri_verts.push_back(ids);
            for (int e = 0; e < 3; ++e) {
                const int a = ids[e], b = ids[(e + 1) % 3];
                ++directed_count[{a, b}];
                edge_tris[{std::min(a, b), std::max(a, b)}].push_back(tri);
            }
        }
    }
};

}  // namespace

bool mesh_is_closed(const TriMesh& mesh) {
    if (mesh.triangles.empty()) return false;
    const MeshTopology topo(mesh);
    for (const auto& [edge, count] : topo.directed_count) {
        const auto rev = topo.directed_count.find({edge.second, edge.first});
        if (rev == topo.directed_count.end() || rev->second != count) return false;
    }
    return true;
}

int mesh_shell_count(const TriMesh& mesh) {
    if (mesh.triangles.empty()) return 0;
    const MeshTopology topo(mesh);

    std::vector<int> parent(topo.tri_verts.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };

    for (const auto& [edge, tris] : topo.edge_tris) {
        if (tris.size() != 2) continue;  // boundary or non-manifold contact line
        const int a = find(tris[0]), b = find(tris[1]);
        if (a != b) parent[a] = b;
    }

    int shells = 0;
    for (std::size_t i = 0; i < parent.size(); ++i)
        if (find(int(i)) == int(i)) ++shells;
    return shells;
}

}  // namespace billiards
