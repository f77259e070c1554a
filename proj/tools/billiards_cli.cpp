// Command-line front end: construct bodies, trace single trajectories, run the
// Monte Carlo verdict/resistance/phase-volume audits, and export meshes.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "billiards/billiard.hpp"
#include "billiards/body_io.hpp"
#include "billiards/json_writer.hpp"
#include "billiards/mesh.hpp"
#include "billiards/metrics.hpp"
#include "billiards/svg.hpp"

namespace {

using namespace billiards;

struct CommonOptions {
    std::string body_kind = "two-dir";
    double alpha = 1.0;
    double beta = 1.0;
    double gamma = 0.6;
    double z_extent = 1.0;
    double sphere_radius = 1.0;
    std::string body_file;
    std::string ambient = "sphere";
    double ambient_size = 0.0;  // 0 = auto
    std::uint64_t samples = 100000;
    std::uint64_t seed = 1;
    int workers = 0;
    std::string out;
};

void add_common_options(CLI::App* cmd, CommonOptions& opt, bool with_sampling) {
    cmd->add_option("--body-kind", opt.body_kind,
                    "Body construction: two-dir | slab | union | sphere | none")
        ->check(CLI::IsMember({"two-dir", "slab", "union", "sphere", "none"}));
    cmd->add_option("--alpha", opt.alpha, "Parabola steepness (alpha > 0)");
    cmd->add_option("--beta", opt.beta, "Outer half-span in x (2*alpha*beta > 1)");
    cmd->add_option("--gamma", opt.gamma, "Inner gap half-span (0 <= gamma < beta)");
    cmd->add_option("--z-extent", opt.z_extent, "Slab thickness (slab bodies)");
    cmd->add_option("--radius", opt.sphere_radius, "Sphere body radius");
    cmd->add_option("--body-file", opt.body_file, "Load the body from a description file");
    cmd->add_option("--ambient", opt.ambient, "Ambient container shape")
        ->check(CLI::IsMember({"sphere", "box"}));
    cmd->add_option("--ambient-size", opt.ambient_size,
                    "Sphere radius / box half-extent (default: auto-fit)");
    if (with_sampling) {
        cmd->add_option("--samples", opt.samples, "Monte Carlo sample count");
        cmd->add_option("--seed", opt.seed, "Master RNG seed");
        cmd->add_option("--workers", opt.workers, "Worker threads (0 = hardware)");
    }
    cmd->add_option("--out", opt.out, "Output path (default: stdout/derived)");
}

Body build_body(const CommonOptions& opt) {
    if (!opt.body_file.empty()) return load_body_file(opt.body_file);
    if (opt.body_kind == "two-dir") return make_two_dir_body(opt.alpha, opt.beta, opt.gamma);
    if (opt.body_kind == "slab")
        return make_slab_2d_body(opt.alpha, opt.beta, opt.gamma, opt.z_extent);
    if (opt.body_kind == "union") return make_invisible_union(opt.alpha, opt.beta, opt.gamma);
    if (opt.body_kind == "sphere") return make_sphere_body(opt.sphere_radius);
    return Body::empty();
}

AmbientBody build_ambient(const CommonOptions& opt, const Body& body) {
    double size = opt.ambient_size;
    if (size <= 0.0) {
        double reach = 1.0;
        if (body.bbox().valid()) {
            const Aabb& b = body.bbox();
            for (int i = 0; i < 8; ++i) {
                const Vec3 corner{(i & 1) ? b.hi.x : b.lo.x, (i & 2) ? b.hi.y : b.lo.y,
                                  (i & 4) ? b.hi.z : b.lo.z};
                reach = std::max(reach,
                                 opt.ambient == "sphere"
                                     ? norm(corner)
                                     : std::max({std::abs(corner.x), std::abs(corner.y),
                                                 std::abs(corner.z)}));
            }
        }
        size = 1.5 * reach;
    }
    return opt.ambient == "sphere" ? AmbientBody::sphere(size) : AmbientBody::box(size);
}

UnitVec3 parse_direction(const std::string& s) {
    double x = 0.0, y = 0.0, z = 0.0;
    char c1 = 0, c2 = 0;
    std::istringstream in(s);
    if (!(in >> x >> c1 >> y >> c2 >> z) || c1 != ',' || c2 != ',')
        throw CLI::ValidationError("--dir expects 'x,y,z'");
    return UnitVec3::normalize(Vec3{x, y, z});
}

void emit_report(const Json& json, const std::string& out) {
    const std::string text = json.dump();
    if (out.empty()) {
        std::cout << text;
    } else {
        write_text_file(out, text);
    }
}

Json vec_json(const Vec3& v) {
    return Json::array().push(v.x).push(v.y).push(v.z);
}

Json estimate_json(double value, double stderr_) {
    return Json::object().set("value", value).set("stderr", stderr_);
}

const char* status_name(TraceStatus s) {
    switch (s) {
        case TraceStatus::Exited: return "Exited";
        case TraceStatus::Trapped: return "Trapped";
        default: return "Degenerate";
    }
}

Json verdict_json(const VerdictReport& r) {
    Json hist = Json::array();
    for (const auto& [bounces, count] : r.bounce_histogram)
        hist.push(Json::array().push(bounces).push(count));
    return Json::object()
        .set("direction", vec_json(r.direction.vec()))
        .set("samples", r.samples)
        .set("max_velocity_residual", r.max_velocity_residual)
        .set("max_perp_displacement", r.max_perp_displacement)
        .set("excluded_fraction", r.excluded_fraction)
        .set("excluded", r.excluded)
        .set("length_bound_violations", r.eq_length_violations)
        .set("bounce_histogram", std::move(hist));
}

// ---------------------------------------------------------------------------

int cmd_trace(const CommonOptions& opt, const std::string& dir_s, const std::string& entry_s,
              const std::string& offset_s, int max_bounces, const std::string& plane_s) {
    const Body body = build_body(opt);
    const AmbientBody ambient = build_ambient(opt, body);
    const UnitVec3 v = parse_direction(dir_s);

    Vec3 entry;
    if (!entry_s.empty()) {
        double x, y, z;
        char c1, c2;
        std::istringstream in(entry_s);
        if (!(in >> x >> c1 >> y >> c2 >> z) || c1 != ',' || c2 != ',')
            throw CLI::ValidationError("--entry expects 'x,y,z'");
        entry = {x, y, z};
    } else {
        double u1 = 0.0, u2 = 0.0;
        if (!offset_s.empty()) {
            char c;
            std::istringstream in(offset_s);
            if (!(in >> u1 >> c >> u2) || c != ',')
                throw CLI::ValidationError("--offset expects 'u1,u2'");
        }
        entry = cross_section(ambient, v).lift_entry(u1, u2);
    }

    TraceLimits limits;
    limits.max_bounces = max_bounces;
    limits.record_polyline = true;
    const TraceResult tr = trace(body, ambient, entry, v, limits);

    const std::string prefix = opt.out.empty() ? std::string("trace") : opt.out;

    std::ostringstream csv;
    csv << "# status=" << status_name(tr.status) << " bounces=" << tr.bounces
        << " path_length=" << format_double(tr.path_length) << "\n";
    csv << "x0,y0,z0,x1,y1,z1,segment_length\n";
    for (std::size_t i = 0; i + 1 < tr.polyline.size(); ++i) {
        const Vec3& a = tr.polyline[i];
        const Vec3& b = tr.polyline[i + 1];
        csv << format_double(a.x) << ',' << format_double(a.y) << ',' << format_double(a.z)
            << ',' << format_double(b.x) << ',' << format_double(b.y) << ','
            << format_double(b.z) << ',' << format_double(norm(b - a)) << "\n";
    }
    write_text_file(prefix + ".csv", csv.str());

    ProjectionPlane plane = ProjectionPlane::XY;
    if (plane_s == "xz") plane = ProjectionPlane::XZ;
    if (plane_s == "yz") plane = ProjectionPlane::YZ;
    write_text_file(prefix + ".svg", render_trajectory_svg(body, ambient, tr.polyline, plane));

    std::cout << "status=" << status_name(tr.status) << " bounces=" << tr.bounces
              << " path_length=" << format_double(tr.path_length) << "\n"
              << "wrote " << prefix << ".csv, " << prefix << ".svg\n";
    return tr.status == TraceStatus::Exited ? 0 : 1;
}

int cmd_verify(const CommonOptions& opt, const std::vector<std::string>& dirs, double threshold,
               const std::string& check) {
    const Body body = build_body(opt);
    const AmbientBody ambient = build_ambient(opt, body);

    Json out = Json::object();
    Json reports = Json::array();
    bool pass = true;
    for (const std::string& ds : dirs) {
        const UnitVec3 v = parse_direction(ds);
        const VerdictReport r = verify_direction(body, ambient, v, opt.samples, opt.seed,
                                                 opt.workers);
        bool ok = r.max_velocity_residual < threshold;
        if (check == "invisibility") ok = ok && r.max_perp_displacement < threshold;
        pass = pass && ok;
        reports.push(verdict_json(r).set("threshold", threshold).set("pass", ok));
    }
    out.set("check", check).set("reports", std::move(reports)).set("pass", pass);
    emit_report(out, opt.out);
    return pass ? 0 : 1;
}

int cmd_resistance(const CommonOptions& opt, const std::string& dir_s,
                   std::optional<double> threshold) {
    const Body body = build_body(opt);
    const AmbientBody ambient = build_ambient(opt, body);
    const UnitVec3 v = parse_direction(dir_s);
    const ResistanceReport r = resistance(body, ambient, v, opt.samples, opt.seed, opt.workers);

    bool pass = true;
    if (threshold) pass = r.magnitude < *threshold;
    Json out = Json::object()
                   .set("direction", vec_json(r.direction.vec()))
                   .set("samples", r.samples)
                   .set("force", vec_json(r.force))
                   .set("force_stderr", vec_json(r.force_stderr))
                   .set("magnitude", estimate_json(r.magnitude, r.magnitude_stderr))
                   .set("excluded_fraction", r.excluded_fraction)
                   .set("length_bound_violations", r.eq_length_violations)
                   .set("pass", pass);
    emit_report(out, opt.out);
    return pass ? 0 : 1;
}

int cmd_phase_volume(const CommonOptions& opt, double tolerance,
                     std::uint64_t volume_samples) {
    const Body body = build_body(opt);
    const AmbientBody ambient = build_ambient(opt, body);
    const PhaseVolumeReport r =
        phase_volume_audit(body, ambient, opt.samples, opt.seed, opt.workers, volume_samples);

    // Exit contract: the pointwise length bound holds, the reachable volume
    // stays below 4*pi*|C \ B| statistically, and for the empty body the
    // estimate reproduces 4*pi*|C| within `tolerance` relative error.
    const bool eq1_ok = r.eq_length_violations == 0;
    const double bound_sigma = std::sqrt(r.length_integral.stderr_ * r.length_integral.stderr_ +
                                         r.reachable_bound.stderr_ * r.reachable_bound.stderr_);
    const bool bound_ok =
        r.length_integral.value <= r.reachable_bound.value + 3.0 * bound_sigma;
    bool calibration_ok = true;
    if (body.is_empty())
        calibration_ok =
            std::abs(r.length_integral.value - r.empty_reference) <= tolerance * r.empty_reference;
    const bool pass = eq1_ok && bound_ok && calibration_ok;

    Json out = Json::object()
                   .set("samples", r.samples)
                   .set("length_integral", estimate_json(r.length_integral.value,
                                                         r.length_integral.stderr_))
                   .set("empty_reference", r.empty_reference)
                   .set("reachable_bound", estimate_json(r.reachable_bound.value,
                                                         r.reachable_bound.stderr_))
                   .set("displacement_integral",
                        estimate_json(r.displacement_integral.value,
                                      r.displacement_integral.stderr_))
                   .set("body_volume", estimate_json(r.body_volume.value, r.body_volume.stderr_))
                   .set("ambient_volume", r.ambient_volume)
                   .set("excluded_fraction", r.excluded_fraction)
                   .set("length_bound_violations", r.eq_length_violations)
                   .set("length_bound_ok", eq1_ok)
                   .set("reachable_bound_ok", bound_ok)
                   .set("calibration_ok", calibration_ok)
                   .set("pass", pass);
    emit_report(out, opt.out);
    return pass ? 0 : 1;
}

int cmd_export_mesh(const CommonOptions& opt, double tolerance) {
    const Body body = build_body(opt);
    const TriMesh mesh = tessellate_body(body, tolerance);
    const std::string path = opt.out.empty() ? std::string("body.stl") : opt.out;
    write_stl_binary(mesh, path);
    std::cout << "wrote " << path << " (" << mesh.triangles.size() << " triangles, volume "
              << format_double(mesh_signed_volume(mesh)) << ")\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Parabolic mirror billiards: construction, tracing, and flux audits"};
    app.require_subcommand(1);
    app.set_config("--config");

    CommonOptions opt;

    auto* trace_cmd = app.add_subcommand("trace", "Trace one trajectory to CSV + SVG");
    std::string dir_s = "0,-1,0";
    std::string entry_s, offset_s;
    int max_bounces = 64;
    std::string plane_s = "xy";
    add_common_options(trace_cmd, opt, false);
    trace_cmd->add_option("--dir", dir_s, "Initial direction x,y,z");
    trace_cmd->add_option("--entry", entry_s, "Entry point x,y,z on the ambient boundary");
    trace_cmd->add_option("--offset", offset_s, "Entry offsets u1,u2 in the shadow plane");
    trace_cmd->add_option("--max-bounces", max_bounces, "Trapped-orbit cutoff");
    trace_cmd->add_option("--plane", plane_s, "SVG projection plane")
        ->check(CLI::IsMember({"xy", "xz", "yz"}));

    auto* verify_cmd = app.add_subcommand("verify", "Velocity/displacement residual audit");
    std::vector<std::string> dirs;
    double threshold = 1e-8;
    std::string check = "invisibility";
    add_common_options(verify_cmd, opt, true);
    verify_cmd->add_option("--dir", dirs, "Direction x,y,z (repeatable)")->required();
    verify_cmd->add_option("--threshold", threshold, "Residual acceptance threshold");
    verify_cmd->add_option("--check", check, "Which residuals gate the exit code")
        ->check(CLI::IsMember({"resistance", "invisibility"}));

    auto* res_cmd = app.add_subcommand("resistance", "Momentum-transfer force estimate");
    std::string res_dir = "0,-1,0";
    double res_threshold = -1.0;
    add_common_options(res_cmd, opt, true);
    res_cmd->add_option("--dir", res_dir, "Flow direction x,y,z");
    res_cmd->add_option("--threshold", res_threshold, "Pass iff |R| < threshold");

    auto* pv_cmd = app.add_subcommand("phase-volume", "Flight-length phase-volume audit");
    double pv_tolerance = 0.01;
    std::uint64_t volume_samples = 1000000;
    add_common_options(pv_cmd, opt, true);
    pv_cmd->add_option("--tolerance", pv_tolerance,
                       "Relative tolerance for the empty-body calibration");
    pv_cmd->add_option("--volume-samples", volume_samples, "Body-volume Monte Carlo samples");

    auto* mesh_cmd = app.add_subcommand("export-mesh", "Tessellate the body to binary STL");
    double mesh_tolerance = 1e-3;
    add_common_options(mesh_cmd, opt, false);
    mesh_cmd->add_option("--tolerance", mesh_tolerance, "Chordal tolerance")
        ->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (trace_cmd->parsed())
            return cmd_trace(opt, dir_s, entry_s, offset_s, max_bounces, plane_s);
        if (verify_cmd->parsed()) return cmd_verify(opt, dirs, threshold, check);
        if (res_cmd->parsed())
            return cmd_resistance(opt, res_dir,
                                  res_threshold > 0.0 ? std::optional<double>(res_threshold)
                                                      : std::nullopt);
        if (pv_cmd->parsed()) return cmd_phase_volume(opt, pv_tolerance, volume_samples);
        if (mesh_cmd->parsed()) return cmd_export_mesh(opt, mesh_tolerance);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
