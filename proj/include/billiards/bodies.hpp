#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "billiards/geom.hpp"

namespace billiards {

enum class Regime { Triangular, Trapezial };
enum class BodyKind { Slab2D, TwoDir3D, InvisibleUnion };

/// Construction parameters of the parabolic mirror family. Valid parameters
/// satisfy alpha > 0, 2*alpha*beta > 1, 0 <= gamma < beta.
struct BodySpec {
    double alpha = 1.0;
    double beta = 1.0;
    double gamma = 0.0;
    BodyKind kind = BodyKind::TwoDir3D;

    // derived
    Regime regime = Regime::Triangular;
    double h = 0.0;          // rectilinear side length 2*(alpha*beta^2 - 1/(4 alpha))
    double z_extent = 0.0;   // Slab2D only

    static BodySpec validated(double alpha, double beta, double gamma, BodyKind kind,
                              double z_extent = 0.0);
};

/// Immutable mirror body: a list of oriented patches plus a point-membership
/// predicate consistent with them. Safe to share across threads.
class Body {
public:
    Body() = default;
    Body(std::vector<Patch> patches, std::function<bool(const Vec3&)> contains, Aabb bbox,
         std::optional<BodySpec> spec);

    static Body empty();

    const std::vector<Patch>& patches() const { return patches_; }
    bool contains(const Vec3& p) const { return contains_ ? contains_(p) : false; }
    const Aabb& bbox() const { return bbox_; }
    const std::optional<BodySpec>& spec() const { return spec_; }
    bool is_empty() const { return patches_.empty(); }

private:
    std::vector<Patch> patches_;
    std::function<bool(const Vec3&)> contains_;
    Aabb bbox_ = Aabb::empty();
    std::optional<BodySpec> spec_;
};

/// { |y|,|z| <= alpha x^2 - 1/(4 alpha), gamma <= |x| <= beta }: four parabolic
/// mirror sheets plus the square faces at |x| = beta (and at |x| = gamma in the
/// trapezial regime). Zero resistance along (0,-1,0) and (0,0,-1).
Body make_two_dir_body(double alpha, double beta, double gamma);

/// The planar figure { |y| <= alpha x^2 - 1/(4 alpha), gamma <= |x| <= beta }
/// extruded along z over [-z_extent/2, z_extent/2].
Body make_slab_2d_body(double alpha, double beta, double gamma, double z_extent);

/// Union of four copies of the two-direction body shifted by 0, h*(0,-1,0),
/// h*(0,0,-1) and their sum; invisible along both construction directions.
Body make_invisible_union(double alpha, double beta, double gamma);

/// Origin-centered sphere (resistance calibration fixture).
Body make_sphere_body(double radius);

Body translate_body(const Body& body, const Vec3& offset);

/// Rigid rotation by +pi/2 about the x axis: (x, y, z) -> (x, -z, y).
Body rotate_body_quarter_turn_x(const Body& body);

struct VolumeEstimate {
    double value = 0.0;
    double stderr_ = 0.0;
    std::uint64_t samples = 0;
};

/// Monte Carlo membership integration over the bounding box (unbiased).
VolumeEstimate body_volume(const Body& body, std::uint64_t n, std::uint64_t seed, int workers = 0);

}  // namespace billiards
