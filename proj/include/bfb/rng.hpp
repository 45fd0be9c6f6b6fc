#pragma once

#include <cstdint>
#include <random>

namespace bfb {

// Seeded generator with a fixed uniform mapping so checker verdicts do not
// depend on the standard library's distribution implementation.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : g_(seed) {}

    double uniform() {  // in [0, 1)
        return static_cast<double>(g_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Log-uniform magnitude with random sign; spans many scales so witness
    // searches can find violations that live near zero.
    double log_uniform_signed(double min_mag, double max_mag) {
        double e = uniform(std::log10(min_mag), std::log10(max_mag));
        double m = std::pow(10.0, e);
        return uniform() < 0.5 ? -m : m;
    }

    std::uint64_t next_u64() { return g_(); }

private:
    std::mt19937_64 g_;
};

}  // namespace bfb
