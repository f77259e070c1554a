#include "billiards/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace billiards {

namespace {

constexpr double kEqLengthTol = 1e-12;

bool violates_length_bound(const TraceResult& tr, const Vec3& entry) {
    return tr.status == TraceStatus::Exited &&
           tr.path_length < norm(tr.exit_point - entry) - kEqLengthTol;
}

struct VerdictBlock {
    double max_v = 0.0;
    double max_perp = 0.0;
    std::uint64_t excluded = 0;
    std::uint64_t eq1 = 0;
    std::map<int, std::uint64_t> histogram;
};

}  // namespace

VerdictReport verify_direction(const Body& body, const AmbientBody& ambient, const UnitVec3& v,
                               std::uint64_t n, std::uint64_t seed, int workers) {
    const CrossSection cs(ambient, v);
    std::vector<VerdictBlock> blocks(block_count(n));

    run_blocks(n, workers, [&](std::uint64_t block, std::uint64_t begin, std::uint64_t end) {
        VerdictBlock acc;
        for (std::uint64_t i = begin; i < end; ++i) {
            SampleRng rng(seed, i);
            const Vec3 entry = sample_cross_section(cs, rng);
            const TraceResult tr = trace(body, ambient, entry, v);
            if (tr.status != TraceStatus::Exited) {
                ++acc.excluded;
                continue;
            }
            if (violates_length_bound(tr, entry)) ++acc.eq1;
            const Vec3 d = tr.exit_point - entry;
            const Vec3 perp = d - dot(d, v.vec()) * v.vec();
            acc.max_v = std::max(acc.max_v, norm(tr.exit_velocity.vec() - v.vec()));
            acc.max_perp = std::max(acc.max_perp, norm(perp));
            ++acc.histogram[tr.bounces];
        }
        blocks[block] = std::move(acc);
    });

    VerdictReport report;
    report.direction = v;
    report.samples = n;
    for (const VerdictBlock& b : blocks) {
        report.max_velocity_residual = std::max(report.max_velocity_residual, b.max_v);
        report.max_perp_displacement = std::max(report.max_perp_displacement, b.max_perp);
        report.excluded += b.excluded;
        report.eq_length_violations += b.eq1;
        for (const auto& [k, c] : b.histogram) report.bounce_histogram[k] += c;
    }
    report.excluded_fraction = n ? double(report.excluded) / double(n) : 0.0;
    return report;
}

namespace {

struct ResistanceBlock {
    RunningStat comp[3];
    std::uint64_t excluded = 0;
    std::uint64_t eq1 = 0;
};

}  // namespace

ResistanceReport resistance(const Body& body, const AmbientBody& ambient, const UnitVec3& v,
                            std::uint64_t n, std::uint64_t seed, int workers) {
    const CrossSection cs(ambient, v);
    std::vector<ResistanceBlock> blocks(block_count(n));

    run_blocks(n, workers, [&](std::uint64_t block, std::uint64_t begin, std::uint64_t end) {
        ResistanceBlock acc;
        for (std::uint64_t i = begin; i < end; ++i) {
            SampleRng rng(seed, i);
            const Vec3 entry = sample_cross_section(cs, rng);
            const TraceResult tr = trace(body, ambient, entry, v);
            if (tr.status != TraceStatus::Exited) {
                ++acc.excluded;
                // Excluded rays are a null set; they contribute nothing here.
                acc.comp[0].add(0.0);
                acc.comp[1].add(0.0);
                acc.comp[2].add(0.0);
                continue;
            }
            if (violates_length_bound(tr, entry)) ++acc.eq1;
            const Vec3 dv = v.vec() - tr.exit_velocity.vec();
            acc.comp[0].add(dv.x);
            acc.comp[1].add(dv.y);
            acc.comp[2].add(dv.z);
        }
        blocks[block] = acc;
    });

    RunningStat comp[3];
    ResistanceReport report;
    report.direction = v;
    report.samples = n;
    for (const ResistanceBlock& b : blocks) {
        for (int k = 0; k < 3; ++k) comp[k].merge(b.comp[k]);
        report.excluded += b.excluded;
        report.eq_length_violations += b.eq1;
    }
    const double area = cs.omega_area();
    report.force = Vec3{comp[0].mean(), comp[1].mean(), comp[2].mean()} * area;
    report.force_stderr = Vec3{comp[0].stderr_of_mean(), comp[1].stderr_of_mean(),
                               comp[2].stderr_of_mean()} * area;
    report.magnitude = norm(report.force);
    report.magnitude_stderr = norm(report.force_stderr);
    report.excluded_fraction = n ? double(report.excluded) / double(n) : 0.0;
    return report;
}

namespace {

struct AuditBlock {
    RunningStat tau;
    RunningStat disp;
    std::uint64_t excluded = 0;
    std::uint64_t eq1 = 0;
};

}  // namespace

PhaseVolumeReport phase_volume_audit(const Body& body, const AmbientBody& ambient, std::uint64_t n,
                                     std::uint64_t seed, int workers,
                                     std::uint64_t volume_samples) {
    std::vector<AuditBlock> blocks(block_count(n));

    run_blocks(n, workers, [&](std::uint64_t block, std::uint64_t begin, std::uint64_t end) {
        AuditBlock acc;
        for (std::uint64_t i = begin; i < end; ++i) {
            SampleRng rng(seed, i);
            const MuMinusSample s = sample_mu_minus(ambient, rng);
            const TraceResult tr = trace(body, ambient, s.point, s.dir);
            if (tr.status != TraceStatus::Exited) {
                ++acc.excluded;
                continue;
            }
            if (violates_length_bound(tr, s.point)) ++acc.eq1;
            acc.tau.add(tr.path_length);
            acc.disp.add(norm(tr.exit_point - s.point));
        }
        blocks[block] = acc;
    });

    RunningStat tau, disp;
    PhaseVolumeReport report;
    report.samples = n;
    for (const AuditBlock& b : blocks) {
        tau.merge(b.tau);
        disp.merge(b.disp);
        report.excluded += b.excluded;
        report.eq_length_violations += b.eq1;
    }

    const double total = mu_minus_total(ambient);
    report.length_integral = {total * tau.mean(), total * tau.stderr_of_mean()};
    report.displacement_integral = {total * disp.mean(), total * disp.stderr_of_mean()};
    report.ambient_volume = ambient.volume();
    constexpr double kFourPi = 4.0 * 3.14159265358979323846;
    report.empty_reference = kFourPi * report.ambient_volume;

    const VolumeEstimate vol = body_volume(body, body.is_empty() ? 0 : volume_samples,
                                           seed ^ 0x5DEECE66DULL, workers);
    report.body_volume = {vol.value, vol.stderr_};
    report.reachable_bound = {kFourPi * (report.ambient_volume - vol.value),
                              kFourPi * vol.stderr_};
    report.excluded_fraction = n ? double(report.excluded) / double(n) : 0.0;
    return report;
}

namespace {

struct ExcessBlock {
    RunningStat w;
    std::uint64_t excluded = 0;
    std::uint64_t eq1 = 0;
};

}  // namespace

ExcessReport directional_length_excess(const Body& body, const AmbientBody& ambient,
                                       const UnitVec3& v, std::uint64_t n, std::uint64_t seed,
                                       int workers) {
    const CrossSection cs(ambient, v);
    std::vector<ExcessBlock> blocks(block_count(n));

    run_blocks(n, workers, [&](std::uint64_t block, std::uint64_t begin, std::uint64_t end) {
        ExcessBlock acc;
        for (std::uint64_t i = begin; i < end; ++i) {
            SampleRng rng(seed, i);
            const Vec3 entry = sample_cross_section(cs, rng);
            const TraceResult tr = trace(body, ambient, entry, v);
            if (tr.status != TraceStatus::Exited) {
                ++acc.excluded;
                continue;
            }
            if (violates_length_bound(tr, entry)) ++acc.eq1;
            const auto [exit0, tau0] = free_exit(ambient, entry, v);
            acc.w.add(tr.path_length - tau0);
        }
        blocks[block] = acc;
    });

    RunningStat w;
    ExcessReport report;
    report.direction = v;
    report.samples = n;
    for (const ExcessBlock& b : blocks) {
        w.merge(b.w);
        report.excluded += b.excluded;
        report.eq_length_violations += b.eq1;
    }
    const double area = cs.omega_area();
    report.excess = {area * w.mean(), area * w.stderr_of_mean()};
    report.excluded_fraction = n ? double(report.excluded) / double(n) : 0.0;
    return report;
}

namespace {

struct BinGrid {
    int bins;
    double half1, half2;

    int index(double u1, double u2) const {
        const int i = int((u1 + half1) / (2.0 * half1) * bins);
        const int j = int((u2 + half2) / (2.0 * half2) * bins);
        if (i < 0 || i >= bins || j < 0 || j >= bins) return -1;
        return i * bins + j;
    }
};

ChiSquareReport chi_square_from_counts(const CrossSection& cs, const BinGrid& grid,
                                       const std::vector<std::uint64_t>& counts,
                                       std::uint64_t excluded, std::uint64_t samples) {
    // Keep bins fully inside Omega so every kept bin has equal expected mass.
    std::vector<char> keep(counts.size(), 0);
    std::uint64_t used_bins = 0;
    for (int i = 0; i < grid.bins; ++i) {
        for (int j = 0; j < grid.bins; ++j) {
            const double lo1 = -grid.half1 + 2.0 * grid.half1 * i / grid.bins;
            const double hi1 = -grid.half1 + 2.0 * grid.half1 * (i + 1) / grid.bins;
            const double lo2 = -grid.half2 + 2.0 * grid.half2 * j / grid.bins;
            const double hi2 = -grid.half2 + 2.0 * grid.half2 * (j + 1) / grid.bins;
            const bool inside =
                cs.omega_contains(lo1, lo2) && cs.omega_contains(lo1, hi2) &&
                cs.omega_contains(hi1, lo2) && cs.omega_contains(hi1, hi2);
            if (inside) {
                keep[std::size_t(i) * grid.bins + j] = 1;
                ++used_bins;
            }
        }
    }

    std::uint64_t used_samples = 0;
    for (std::size_t k = 0; k < counts.size(); ++k)
        if (keep[k]) used_samples += counts[k];

    ChiSquareReport report;
    report.bins_used = used_bins;
    report.used_samples = used_samples;
    report.excluded_fraction = samples ? double(excluded) / double(samples) : 0.0;
    if (used_bins < 2 || used_samples == 0) return report;

    const double expected = double(used_samples) / double(used_bins);
    double chi2 = 0.0;
    for (std::size_t k = 0; k < counts.size(); ++k) {
        if (!keep[k]) continue;
        const double d = double(counts[k]) - expected;
        chi2 += d * d / expected;
    }
    report.chi2 = chi2;
    report.dof = used_bins - 1;
    report.p_value = chi_square_survival(chi2, double(report.dof));
    return report;
}

ChiSquareReport binned_uniformity(const AmbientBody& ambient, const UnitVec3& v, std::uint64_t n,
                                  std::uint64_t seed, int bins, int workers,
                                  const Body* body_for_sigma) {
    const CrossSection cs(ambient, v);
    const auto [h1, h2] = cs.omega_half_extent();
    const BinGrid grid{bins, h1, h2};

    const std::uint64_t nblocks = block_count(n);
    std::vector<std::vector<std::uint64_t>> block_counts(nblocks);
    std::vector<std::uint64_t> block_excluded(nblocks, 0);

    run_blocks(n, workers, [&](std::uint64_t block, std::uint64_t begin, std::uint64_t end) {
        std::vector<std::uint64_t> counts(std::size_t(bins) * bins, 0);
        std::uint64_t excluded = 0;
        for (std::uint64_t i = begin; i < end; ++i) {
            SampleRng rng(seed, i);
            const auto [u1, u2] = cs.sample_omega(rng);
            double p1 = u1, p2 = u2;
            if (body_for_sigma) {
                const Vec3 entry = cs.lift_entry(u1, u2);
                const TraceResult tr = trace(*body_for_sigma, ambient, entry, v);
                if (tr.status != TraceStatus::Exited) {
                    ++excluded;
                    continue;
                }
                std::tie(p1, p2) = cs.project(tr.exit_point);
            }
            const int idx = grid.index(p1, p2);
            if (idx >= 0) ++counts[std::size_t(idx)];
        }
        block_counts[block] = std::move(counts);
        block_excluded[block] = excluded;
    });

    std::vector<std::uint64_t> counts(std::size_t(bins) * bins, 0);
    std::uint64_t excluded = 0;
    for (std::uint64_t b = 0; b < nblocks; ++b) {
        excluded += block_excluded[b];
        for (std::size_t k = 0; k < counts.size(); ++k) counts[k] += block_counts[b][k];
    }
    return chi_square_from_counts(cs, grid, counts, excluded, n);
}

}  // namespace

ChiSquareReport sigma_pushforward_uniformity(const Body& body, const AmbientBody& ambient,
                                             const UnitVec3& v, std::uint64_t n,
                                             std::uint64_t seed, int bins_per_side, int workers) {
    return binned_uniformity(ambient, v, n, seed, bins_per_side, workers, &body);
}

ChiSquareReport entry_sampler_uniformity(const AmbientBody& ambient, const UnitVec3& v,
                                         std::uint64_t n, std::uint64_t seed, int bins_per_side,
                                         int workers) {
    return binned_uniformity(ambient, v, n, seed, bins_per_side, workers, nullptr);
}

}  // namespace billiards
