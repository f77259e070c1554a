#include "billiards/stats.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>
#include <vector>

namespace billiards {

double RunningStat::variance() const {
    if (n < 2) return 0.0;
    const double m = mean();
    const double v = (sum_sq - double(n) * m * m) / double(n - 1);
    return v > 0.0 ? v : 0.0;
}

double RunningStat::stderr_of_mean() const {
    if (n < 2) return 0.0;
    return std::sqrt(variance() / double(n));
}

namespace {

// Incomplete gamma, series representation for P(a, x).
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a, x), modified Lentz.
double gamma_q_cf(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -double(i) * (double(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gamma_q(double a, double x) {
    if (!(a > 0.0) || x < 0.0) return std::numeric_limits<double>::quiet_NaN();
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double chi_square_survival(double chi2, double dof) {
    return gamma_q(0.5 * dof, 0.5 * chi2);
}

void run_blocks(std::uint64_t n, int workers,
                const std::function<void(std::uint64_t, std::uint64_t, std::uint64_t)>& fn) {
    const std::uint64_t nblocks = block_count(n);
    if (nblocks == 0) return;
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    const unsigned nthreads =
        std::min<std::uint64_t>(workers > 0 ? unsigned(workers) : hw, nblocks);

    if (nthreads <= 1) {
        for (std::uint64_t b = 0; b < nblocks; ++b)
            fn(b, b * kBlockSize, std::min(n, (b + 1) * kBlockSize));
        return;
    }

    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::uint64_t b = next.fetch_add(1);
            if (b >= nblocks) return;
            fn(b, b * kBlockSize, std::min(n, (b + 1) * kBlockSize));
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (unsigned i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

}  // namespace billiards
