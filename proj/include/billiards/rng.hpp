#pragma once

#include <cstdint>
#include <utility>

namespace billiards {

/// Counter-based sample generator: the stream for sample i depends only on
/// (master seed, i), never on which worker thread draws it. This is what makes
/// Monte Carlo results reproducible independent of scheduling.
class SampleRng {
public:
    SampleRng(std::uint64_t seed, std::uint64_t index);

    std::uint64_t next_u64();

    /// Uniform double in [0, 1).
    double uniform01();

    /// Uniform double in [a, b).
    double uniform(double a, double b);

    /// Uniform point in the unit disk via Shirley's concentric map.
    std::pair<double, double> disk_concentric();

private:
    std::uint64_t state_;
};

}  // namespace billiards
