#pragma once

#include <cstdint>
#include <functional>

namespace billiards {

/// Mean / standard-error accumulator (count, sum, sum of squares).
struct RunningStat {
    std::uint64_t n = 0;
    double sum = 0.0;
    double sum_sq = 0.0;

    void add(double x) {
        ++n;
        sum += x;
        sum_sq += x * x;
    }
    void merge(const RunningStat& o) {
        n += o.n;
        sum += o.sum;
        sum_sq += o.sum_sq;
    }
    double mean() const { return n ? sum / double(n) : 0.0; }
    double variance() const;
    double stderr_of_mean() const;
};

/// Regularized upper incomplete gamma Q(a, x).
double gamma_q(double a, double x);

/// Survival function of the chi-square distribution with dof degrees of
/// freedom: P[X >= chi2].
double chi_square_survival(double chi2, double dof);

/// Runs fn(block_index, begin, end) over [0, n) split into fixed-size blocks,
/// distributed over `workers` threads (0 = hardware concurrency). Block
/// boundaries do not depend on the worker count, so per-block accumulations
/// merged in block order give results independent of scheduling.
void run_blocks(std::uint64_t n, int workers,
                const std::function<void(std::uint64_t block, std::uint64_t begin,
                                         std::uint64_t end)>& fn);

/// Fixed block size used by run_blocks.
inline constexpr std::uint64_t kBlockSize = 8192;

inline std::uint64_t block_count(std::uint64_t n) { return (n + kBlockSize - 1) / kBlockSize; }

}  // namespace billiards
