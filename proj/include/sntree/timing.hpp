#ifndef SNTREE_TIMING_HPP
#define SNTREE_TIMING_HPP

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <vector>

namespace snt {

// Nanoseconds for one evaluation of fn, measured on a monotonic clock. Fast
// functions are looped until the sample is long enough to trust, then the
// total is divided by the iteration count.
template <class Fn>
double time_once_ns(Fn&& fn) {
    using clock = std::chrono::steady_clock;
    constexpr double kMinSample = 200000.0;  // 0.2 ms
    std::uint64_t iterations = 1;
    for (;;) {
        auto start = clock::now();
        for (std::uint64_t i = 0; i < iterations; ++i) fn();
        auto stop = clock::now();
        double ns = std::chrono::duration<double, std::nano>(stop - start).count();
        if (ns >= kMinSample || iterations >= (1ULL << 24))
            return ns / static_cast<double>(iterations);
        double scale = kMinSample / std::max(ns, 1.0);
        iterations = std::max(iterations * 2, static_cast<std::uint64_t>(
                                                  static_cast<double>(iterations) * scale * 1.2));
    }
}

template <class Fn>
double time_median_ns(Fn&& fn, int reps) {
    std::vector<double> samples;
    samples.reserve(reps);
    for (int r = 0; r < reps; ++r) samples.push_back(time_once_ns(fn));
    std::sort(samples.begin(), samples.end());
    return samples[samples.size() / 2];
}

// Keeps a computed value alive so the optimizer cannot drop the timed call.
inline void keep_alive(std::uint64_t value) {
    asm volatile("" : : "r"(value) : "memory");
}

}  // namespace snt

#endif
