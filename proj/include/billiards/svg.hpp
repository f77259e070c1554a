#pragma once

#include <string>
#include <vector>

#include "billiards/ambient.hpp"
#include "billiards/bodies.hpp"

namespace billiards {

enum class ProjectionPlane { XY, XZ, YZ };

/// Renders a traced polyline projected on a coordinate plane, together with
/// the ambient outline and the body cross-section through the trajectory's
/// out-of-plane coordinate (marching-squares contour of the membership
/// predicate).
std::string render_trajectory_svg(const Body& body, const AmbientBody& ambient,
                                  const std::vector<Vec3>& polyline, ProjectionPlane plane,
                                  int grid = 256);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace billiards
