#include "billiards/body_io.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "billiards/json_writer.hpp"

namespace billiards {

namespace {

const char* axis_name(int a) { return a == 0 ? "x" : (a == 1 ? "y" : "z"); }

int parse_axis(const std::string& s) {
    if (s == "x") return 0;
    if (s == "y") return 1;
    if (s == "z") return 2;
    throw IoError("body file: bad axis '" + s + "'");
}

double parse_number(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw IoError("body file: bad number '" + s + "'");
    return v;
}

// key=value tokens after the record tag
std::map<std::string, std::string> parse_fields(std::istringstream& in) {
    std::map<std::string, std::string> fields;
    std::string tok;
    while (in >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw IoError("body file: expected key=value, got '" + tok + "'");
        fields[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    return fields;
}

double field_num(const std::map<std::string, std::string>& f, const std::string& key) {
    const auto it = f.find(key);
    if (it == f.end()) throw IoError("body file: missing field '" + key + "'");
    return parse_number(it->second);
}

std::string field_str(const std::map<std::string, std::string>& f, const std::string& key) {
    const auto it = f.find(key);
    if (it == f.end()) throw IoError("body file: missing field '" + key + "'");
    return it->second;
}

void serialize_trim(std::ostringstream& out, const TrimTerm& t) {
    if (t.kind == TrimKind::AbsInterval) {
        out << "trim absint axis=" << axis_name(t.interval.axis)
            << " center=" << format_double(t.interval.center)
            << " lo=" << format_double(t.interval.lo) << " hi=" << format_double(t.interval.hi)
            << "\n";
    } else {
        out << "trim parab bounded=" << axis_name(t.parabolic.bounded_axis)
            << " bcenter=" << format_double(t.parabolic.bounded_center)
            << " arg=" << axis_name(t.parabolic.arg_axis)
            << " acenter=" << format_double(t.parabolic.arg_center)
            << " alpha=" << format_double(t.parabolic.alpha)
            << " offset=" << format_double(t.parabolic.offset) << "\n";
    }
}

}  // namespace

std::string serialize_body(const Body& body) {
    std::ostringstream out;
    out << "billiards-body v1\n";
    for (const Patch& p : body.patches()) {
        switch (p.kind) {
            case PatchKind::ParabolicCylinder:
                out << "patch paracyl arg=" << axis_name(p.arg_axis)
                    << " height=" << axis_name(p.height_axis)
                    << " sign=" << (p.sign > 0 ? "+1" : "-1")
                    << " alpha=" << format_double(p.alpha)
                    << " offset=" << format_double(p.offset)
                    << " acenter=" << format_double(p.arg_center)
                    << " hcenter=" << format_double(p.height_center) << "\n";
                break;
            case PatchKind::Plane:
                out << "patch plane px=" << format_double(p.plane_point.x)
                    << " py=" << format_double(p.plane_point.y)
                    << " pz=" << format_double(p.plane_point.z)
                    << " nx=" << format_double(p.plane_normal.x())
                    << " ny=" << format_double(p.plane_normal.y())
                    << " nz=" << format_double(p.plane_normal.z()) << "\n";
                break;
            case PatchKind::Sphere:
                out << "patch sphere cx=" << format_double(p.center.x)
                    << " cy=" << format_double(p.center.y)
                    << " cz=" << format_double(p.center.z)
                    << " radius=" << format_double(p.radius) << "\n";
                break;
        }
        for (const TrimTerm& t : p.trim) serialize_trim(out, t);
    }
    return out.str();
}

Body parse_body(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("billiards-body", 0) != 0)
        throw IoError("body file: missing 'billiards-body' header line");

    std::vector<Patch> patches;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag.empty() || tag[0] == '#') continue;
        if (tag == "patch") {
            std::string kind;
            ls >> kind;
            const auto f = parse_fields(ls);
            if (kind == "paracyl") {
                patches.push_back(Patch::parabolic_cylinder(
                    parse_axis(field_str(f, "arg")), parse_axis(field_str(f, "height")),
                    field_num(f, "sign"), field_num(f, "alpha"), field_num(f, "offset"),
                    field_num(f, "acenter"), field_num(f, "hcenter"), {}));
            } else if (kind == "plane") {
                patches.push_back(Patch::plane(
                    Vec3{field_num(f, "px"), field_num(f, "py"), field_num(f, "pz")},
                    UnitVec3::normalize(
                        Vec3{field_num(f, "nx"), field_num(f, "ny"), field_num(f, "nz")}),
                    {}));
            } else if (kind == "sphere") {
                patches.push_back(Patch::sphere(
                    Vec3{field_num(f, "cx"), field_num(f, "cy"), field_num(f, "cz")},
                    field_num(f, "radius")));
            } else {
                throw IoError("body file: unknown patch kind '" + kind + "'");
            }
        } else if (tag == "trim") {
            if (patches.empty()) throw IoError("body file: trim record before any patch");
            std::string kind;
            ls >> kind;
            const auto f = parse_fields(ls);
            if (kind == "absint") {
                patches.back().trim.push_back(
                    TrimTerm::abs_interval(parse_axis(field_str(f, "axis")),
                                           field_num(f, "center"), field_num(f, "lo"),
                                           field_num(f, "hi")));
            } else if (kind == "parab") {
                patches.back().trim.push_back(TrimTerm::parabola(
                    parse_axis(field_str(f, "bounded")), field_num(f, "bcenter"),
                    parse_axis(field_str(f, "arg")), field_num(f, "acenter"),
                    field_num(f, "alpha"), field_num(f, "offset")));
            } else {
                throw IoError("body file: unknown trim kind '" + kind + "'");
            }
        } else {
            throw IoError("body file: unknown record '" + tag + "'");
        }
    }
    if (patches.empty()) return Body::empty();

    Aabb bbox = Aabb::empty();
    for (const Patch& p : patches) bbox.expand(p.bounds());

    // Membership by ray-crossing parity against the patch list. Adequate for
    // closed patch sets; the direction is fixed and oblique to dodge the
    // axis-aligned carriers.
    auto patches_copy = patches;
    const UnitVec3 probe = UnitVec3::normalize(Vec3{0.5377, 0.8323, 0.1342});
    auto contains = [patches_copy, probe](const Vec3& p) {
        const Ray ray{p, probe};
        int crossings = 0;
        for (const Patch& patch : patches_copy) crossings += int(intersect_patch(ray, patch).size());
        return crossings % 2 == 1;
    };
    return Body(std::move(patches), contains, bbox, {});
}

Body load_body_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open body file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_body(buf.str());
}

void save_body_file(const Body& body, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write body file: " + path);
    out << serialize_body(body);
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace billiards
