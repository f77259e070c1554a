#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "billiards/bodies.hpp"

namespace billiards {

struct Triangle {
    Vec3 a, b, c;
};

struct TriMesh {
    std::vector<Triangle> triangles;
};

/// Tessellates all patches into a triangle mesh with outward orientation.
/// Curved surfaces are sampled so the chord-to-surface deviation stays below
/// chordal_tol. Grids on adjacent patches of the constructed bodies share
/// bit-identical boundary vertices, so the result is watertight per shell.
TriMesh tessellate_body(const Body& body, double chordal_tol = 1e-3);

/// Binary little-endian STL (80-byte header, 50 bytes per triangle).
void write_stl_binary(const TriMesh& mesh, const std::string& path);
TriMesh read_stl_binary(const std::string& path);

/// Divergence-theorem volume: sum of signed tetrahedra against the origin.
double mesh_signed_volume(const TriMesh& mesh);

/// Every directed edge is matched by its reverse (closed surface test).
bool mesh_is_closed(const TriMesh& mesh);

/// Connected shells under shared-manifold-edge adjacency. Edges with more
/// than two incident triangles (bodies touching along a line) do not connect.
int mesh_shell_count(const TriMesh& mesh);

}  // namespace billiards
