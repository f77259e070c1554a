#include "billiards/rng.hpp"

#include <cmath>

namespace billiards {

namespace {

inline std::uint64_t splitmix64(std::uint64_t& s) {
    std::uint64_t z = (s += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t mix(std::uint64_t v) {
    std::uint64_t s = v;
    return splitmix64(s);
}

}  // namespace

SampleRng::SampleRng(std::uint64_t seed, std::uint64_t index) {
    // Hash the (seed, index) pair so per-index streams are decorrelated.
    state_ = mix(seed ^ mix(index * 0xD1B54A32D192ED03ULL + 0x9E3779B97F4A7C15ULL));
    if (state_ == 0) state_ = 0x853C49E6748FEA9BULL;
}

std::uint64_t SampleRng::next_u64() { return splitmix64(state_); }

double SampleRng::uniform01() {
    return double(next_u64() >> 11) * 0x1.0p-53;
}

double SampleRng::uniform(double a, double b) { return a + (b - a) * uniform01(); }

std::pair<double, double> SampleRng::disk_concentric() {
    const double a = 2.0 * uniform01() - 1.0;
    const double b = 2.0 * uniform01() - 1.0;
    if (a == 0.0 && b == 0.0) return {0.0, 0.0};
    double r, phi;
    constexpr double pi_4 = 0.78539816339744830961;
    if (a * a > b * b) {
        r = a;
        phi = pi_4 * (b / a);
    } else {
        r = b;
        phi = 2.0 * pi_4 - pi_4 * (a / b);
    }
    return {r * std::cos(phi), r * std::sin(phi)};
}

}  // namespace billiards
