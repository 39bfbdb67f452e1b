#include "kern_detail.hpp"

#include <cmath>

// Scalar backend. The reduction loops below are the reference definition of
// the lane topology; the AVX2 backend reproduces them lane-for-lane.

namespace qeit::kern::detail {
namespace {

double s_reduce_sum(const double* x, std::size_t n) {
    double s[4] = {0, 0, 0, 0}, c[4] = {0, 0, 0, 0};
    const std::size_t n4 = n - n % 4;
    for (std::size_t i = 0; i < n4; i += 4)
        for (int l = 0; l < 4; ++l)
            neumaier_step(s[l], c[l], x[i + l]);
    tail_sum_into_lanes(s, c, x, n4, n);
    return merge4_lanes(s, c);
}

double s_reduce_dot(const double* x, const double* y, std::size_t n) {
    double s[4] = {0, 0, 0, 0}, c[4] = {0, 0, 0, 0};
    const std::size_t n4 = n - n % 4;
    for (std::size_t i = 0; i < n4; i += 4)
        for (int l = 0; l < 4; ++l)
            neumaier_step(s[l], c[l], x[i + l] * y[i + l]);
    tail_dot_into_lanes(s, c, x, y, n4, n);
    return merge4_lanes(s, c);
}

void s_axpy(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        y[i] += a * x[i];
}

void s_xpay(const double* x, double a, const double* y, double* z, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        z[i] = x[i] + a * y[i];
}

void s_scale(double a, double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        x[i] *= a;
}

void s_dark_row(double w1, double ddiff, const double* w2,
                double* a0, double* b0, double* c0, std::size_t n) {
    const double w1sq = w1 * w1;
    const double num = (2.0 * w1) * ddiff;
    for (std::size_t i = 0; i < n; ++i) {
        const double w2i = w2[i];
        const double wsq = w1sq + w2i * w2i;
        const double w = std::sqrt(wsq);
        a0[i] = -(w2i / w);
        c0[i] = w1 / w;
        b0[i] = (num * w2i) / (w * wsq);
    }
}

void s_ham_apply(const HamView& h, const double* x, double* y) {
    const int np1 = h.np1, np2 = h.np2;
    const double d1 = h.d1, d12 = h.d12;
    const double* c1 = h.c1;
    const double* c2 = h.c2;
    auto plane = [&](auto* base, int m, int n1) {
        return base + (std::size_t(m) * np1 + n1) * std::size_t(np2);
    };

    for (int n1 = 0; n1 < np1; ++n1) {
        // level 1 (ground): couples down to level 2 in the block one probe
        // photon lower; the n1 = 0 plane is dark.
        double* y0 = plane(y, 0, n1);
        if (n1 >= 1) {
            const double c1n = c1[n1];
            const double* x1m = plane(x, 1, n1 - 1);
            for (int k = 0; k < np2; ++k)
                y0[k] = -(c1n * x1m[k]);
        } else {
            for (int k = 0; k < np2; ++k)
                y0[k] = 0.0;
        }

        // level 2 (excited): diagonal d1, couples up to level 1 at n1+1 and
        // to level 3 at n2+1. The top probe plane loses the upward coupling
        // to the truncation edge.
        {
            double* y1 = plane(y, 1, n1);
            const double* x1 = plane(x, 1, n1);
            const double* x2 = plane(x, 2, n1);
            if (n1 + 1 < np1) {
                const double c1u = c1[n1 + 1];
                const double* x0u = plane(x, 0, n1 + 1);
                for (int k = 0; k + 1 < np2; ++k)
                    y1[k] = (d1 * x1[k] - c1u * x0u[k]) - c2[k + 1] * x2[k + 1];
                y1[np2 - 1] = d1 * x1[np2 - 1] - c1u * x0u[np2 - 1];
            } else {
                for (int k = 0; k + 1 < np2; ++k)
                    y1[k] = d1 * x1[k] - c2[k + 1] * x2[k + 1];
                y1[np2 - 1] = d1 * x1[np2 - 1];
            }
        }

        // level 3 (metastable): diagonal d1-d2, couples to level 2 at n2-1.
        {
            double* y2 = plane(y, 2, n1);
            const double* x2 = plane(x, 2, n1);
            const double* x1 = plane(x, 1, n1);
            y2[0] = d12 * x2[0];
            for (int k = 1; k < np2; ++k)
                y2[k] = d12 * x2[k] - c2[k] * x1[k - 1];
        }
    }
}

} // namespace

const KernOps scalar_ops = {
    s_reduce_sum, s_reduce_dot, s_axpy, s_xpay, s_scale, s_dark_row, s_ham_apply,
};

} // namespace qeit::kern::detail
