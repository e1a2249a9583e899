// Benchmark: parallel window-cell kernels against the serial reference.
// Both paths must produce identical tables; timings are printed per kernel.

#include "dbga/parallel.hpp"
#include "dbga/resolve.hpp"

#include <chrono>
#include <cstdio>

using namespace dbga;

namespace {

double seconds(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    int repeats = argc > 1 ? std::atoi(argv[1]) : 1;
    Field f = field_rationals();
    auto A3 = path_algebra(f, {"1", "2", "3"}, {{"a", 0, 1, {0, 0}}, {"b", 1, 2, {0, 0}}});
    auto T = cy_completion(A3, CompletionMode::BigradedX);
    auto theta = cy_theta(A3);
    Window w(-6, 2, -4, 1);

    std::printf("%-34s %10s %10s %8s\n", "kernel", "serial", "parallel", "equal");
    double ts = 0, tp = 0;
    bool eq = true;

    for (int r = 0; r < repeats; ++r) {
        // fresh presentations so the basis caches start cold each round
        auto Ts = cy_completion(A3, CompletionMode::BigradedX);
        auto t0 = std::chrono::steady_clock::now();
        BidegreeTable a = algebra_cohomology_serial(*Ts, w);
        ts += seconds(t0);
        auto Tp = cy_completion(A3, CompletionMode::BigradedX);
        t0 = std::chrono::steady_clock::now();
        BidegreeTable b = algebra_cohomology(*Tp, w);
        tp += seconds(t0);
        eq = eq && a == b;
    }
    std::printf("%-34s %9.3fs %9.3fs %8s\n", "algebra cohomology (A3 completion)", ts, tp,
                eq ? "yes" : "NO");

    PerfectModule rho = minimize(restrict_along_augmentation(free_module(A3), T, theta));
    ts = tp = 0;
    eq = true;
    for (int r = 0; r < repeats; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        BidegreeTable a = hom_table_serial(rho, rho, w);
        ts += seconds(t0);
        t0 = std::chrono::steady_clock::now();
        BidegreeTable b = hom_table(rho, rho, w);
        tp += seconds(t0);
        eq = eq && a == b;
    }
    std::printf("%-34s %9.3fs %9.3fs %8s\n", "hom table (augmentation endos)", ts, tp,
                eq ? "yes" : "NO");
    return 0;
}
