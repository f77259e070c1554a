#pragma once

#include <utility>

#include "billiards/ambient.hpp"
#include "billiards/rng.hpp"

namespace billiards {

/// One draw from the incoming flux measure d(mu-) = (-n(xi).v) dxi dv on the
/// in-states of the ambient boundary. The sampler is exact: positions uniform
/// by area, directions cosine-weighted about the inner normal, so every sample
/// carries the same weight (the total measure |bd C| * pi).
struct MuMinusSample {
    Vec3 point;
    UnitVec3 dir;
    double weight = 0.0;
};

/// Total mass of mu- : boundary area times pi.
double mu_minus_total(const AmbientBody& ambient);

MuMinusSample sample_mu_minus(const AmbientBody& ambient, SampleRng& rng);

enum class OmegaKind { Disk, Rect };

/// Fixed-direction decomposition of the ambient boundary: the shadow domain
/// Omega in the plane orthogonal to v, and the entry/exit support heights
/// f-(u1,u2) <= f+(u1,u2) along v. For the sphere Omega is a disk and
/// f+- = +-sqrt(R^2 - rho^2); for the box (axis-aligned v only) Omega is a
/// square with constant f+-.
class CrossSection {
public:
    CrossSection(const AmbientBody& ambient, const UnitVec3& v);

    const UnitVec3& direction() const { return v_; }
    const UnitVec3& e1() const { return e1_; }
    const UnitVec3& e2() const { return e2_; }
    OmegaKind omega_kind() const { return omega_; }

    double omega_area() const;
    bool omega_contains(double u1, double u2) const;

    /// Largest |u1| (and |u2|) over Omega, for binning.
    std::pair<double, double> omega_half_extent() const;

    double f_minus(double u1, double u2) const;
    double f_plus(double u1, double u2) const;

    /// Point of the entry sheet (n.v <= 0) at Omega-coordinates (u1, u2).
    Vec3 lift_entry(double u1, double u2) const;
    Vec3 lift_exit(double u1, double u2) const;

    /// Omega-coordinates of an arbitrary point.
    std::pair<double, double> project(const Vec3& p) const;

    /// Uniform draw from Omega (this is the induced measure (-n.v) dxi
    /// pushed to Omega coordinates).
    std::pair<double, double> sample_omega(SampleRng& rng) const;

private:
    UnitVec3 v_;
    UnitVec3 e1_;
    UnitVec3 e2_;
    OmegaKind omega_;
    double radius_ = 0.0;  // disk radius or square half-extent
};

CrossSection cross_section(const AmbientBody& ambient, const UnitVec3& v);

/// Entry point sampled from the induced measure on the entry sheet.
Vec3 sample_cross_section(const CrossSection& cs, SampleRng& rng);

}  // namespace billiards
