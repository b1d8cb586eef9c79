#ifndef SNTREE_RNG_HPP
#define SNTREE_RNG_HPP

#include <cstdint>

namespace snt {

// splitmix64: tiny seedable generator with a documented update rule, so
// streams are reproducible across platforms and compilers. All randomized
// operations in the library take a seed explicitly and derive their stream
// from it; nothing reads global state.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound), bound >= 1. Rejection keeps it exactly uniform.
    std::uint64_t below(std::uint64_t bound) {
        std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform in [lo, hi] inclusive.
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) {
        return lo + below(hi - lo + 1);
    }

    double unit_real() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Decorrelated child stream, e.g. one per dataset row; rows generated in
    // parallel see the same values as a serial run.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
        Rng mix(seed ^ (0x517cc1b727220a95ULL * (index + 1)));
        return mix.next();
    }

private:
    std::uint64_t state_;
};

}  // namespace snt

#endif
