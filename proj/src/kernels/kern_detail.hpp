#pragma once

#include "qeit/kernels.hpp"

#include <cmath>
#include <cstddef>

// Shared pieces of the reduction contract. Both backends accumulate into four
// (sum, compensation) lane pairs and finish through merge4_lanes, so the only
// thing a backend has to guarantee is that its main loop leaves the identical
// lane state behind.

namespace qeit::kern::detail {

inline void neumaier_step(double& s, double& c, double x) {
    const double t = s + x;
    if (std::fabs(s) >= std::fabs(x))
        c += (s - t) + x;
    else
        c += (x - t) + s;
    s = t;
}

// Tail elements (n not divisible by 4) land in lanes 0..n%4-1, one each,
// continuing the lane-ownership pattern of the main loop.
inline void tail_sum_into_lanes(double* s, double* c, const double* x,
                                std::size_t n4, std::size_t n) {
    for (std::size_t i = n4; i < n; ++i)
        neumaier_step(s[i - n4], c[i - n4], x[i]);
}

inline void tail_dot_into_lanes(double* s, double* c, const double* x, const double* y,
                                std::size_t n4, std::size_t n) {
    for (std::size_t i = n4; i < n; ++i)
        neumaier_step(s[i - n4], c[i - n4], x[i] * y[i]);
}

// Fixed merge order: lane sums 0,1,2,3 then lane compensations 0,1,2,3,
// all through the same compensated accumulator.
inline double merge4_lanes(const double* s, const double* c) {
    double total = 0.0, comp = 0.0;
    for (int l = 0; l < 4; ++l) neumaier_step(total, comp, s[l]);
    for (int l = 0; l < 4; ++l) neumaier_step(total, comp, c[l]);
    return total + comp;
}

struct KernOps {
    double (*reduce_sum)(const double*, std::size_t);
    double (*reduce_dot)(const double*, const double*, std::size_t);
    void (*axpy)(double, const double*, double*, std::size_t);
    void (*xpay)(const double*, double, const double*, double*, std::size_t);
    void (*scale)(double, double*, std::size_t);
    void (*dark_row)(double, double, const double*, double*, double*, double*, std::size_t);
    void (*ham_apply)(const HamView&, const double*, double*);
};

extern const KernOps scalar_ops;
#ifdef QEIT_HAVE_AVX2
extern const KernOps avx2_ops;
#endif

} // namespace qeit::kern::detail
