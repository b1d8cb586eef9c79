// Compares the OpenMP-parallel kernels against their serial reference
// implementations: the exhaustive linear-DAG search and dataset generation.
// Both pairs must produce identical results; this binary reports timings.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sntree/approximation.hpp"
#include "sntree/predictor.hpp"
#include "sntree/tree.hpp"

namespace {

double seconds(std::chrono::steady_clock::time_point a, std::chrono::steady_clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

}  // namespace

int main() {
#ifdef _OPENMP
    int threads = omp_get_max_threads();
#else
    int threads = 1;
#endif
    std::printf("threads: %d\n", threads);
    std::printf("%-28s %12s %12s %9s\n", "kernel", "serial_s", "parallel_s", "speedup");

    {
        snt::Tree t = snt::build_worst_case_tree(2, 4);
        auto t0 = std::chrono::steady_clock::now();
        auto serial = snt::min_self_nested_distance_serial(t, 3, 6);
        auto t1 = std::chrono::steady_clock::now();
        auto parallel = snt::min_self_nested_distance(t, 3, 6);
        auto t2 = std::chrono::steady_clock::now();
        if (serial.first != parallel.first || !(serial.second == parallel.second)) {
            std::printf("min_self_nested_distance: serial and parallel results differ\n");
            return 1;
        }
        double s = seconds(t0, t1), p = seconds(t1, t2);
        std::printf("%-28s %12.3f %12.3f %9.2f\n", "min_self_nested_distance", s, p, s / p);
    }

    {
        auto t0 = std::chrono::steady_clock::now();
        auto serial = snt::generate_dataset_serial(48, 20, 120, 7);
        auto t1 = std::chrono::steady_clock::now();
        auto parallel = snt::generate_dataset(48, 20, 120, 7);
        auto t2 = std::chrono::steady_clock::now();
        for (std::size_t i = 0; i < serial.size(); ++i) {
            if (serial[i].delta_true != parallel[i].delta_true ||
                serial[i].features.values != parallel[i].features.values) {
                std::printf("generate_dataset: serial and parallel results differ\n");
                return 1;
            }
        }
        double s = seconds(t0, t1), p = seconds(t1, t2);
        std::printf("%-28s %12.3f %12.3f %9.2f\n", "generate_dataset", s, p, s / p);
    }
    return 0;
}
