#pragma once

#include <string>

#include "billiards/bodies.hpp"

namespace billiards {

/// Serializes a body's patch list to the line-based body description format
/// (one `patch` record per patch, `trim` records attached below it). Floats
/// are printed with 17 significant digits so parse(serialize(b)) reproduces
/// every coordinate bit-exactly.
std::string serialize_body(const Body& body);

/// Parses the body description format. Membership for file-defined bodies is
/// ray-crossing parity against the patch list; the bounding box is derived
/// from the trims (throws InvalidParams when a patch is unbounded).
Body parse_body(const std::string& text);

Body load_body_file(const std::string& path);
void save_body_file(const Body& body, const std::string& path);

}  // namespace billiards
