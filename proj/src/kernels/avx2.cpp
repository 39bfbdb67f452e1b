#ifdef QEIT_HAVE_AVX2

#include "kern_detail.hpp"

#include <immintrin.h>

// AVX2 backend. One ymm register carries the four virtual reduction lanes, so
// lane contents match the scalar backend bit-for-bit; tails and the final
// merge go through the shared helpers in kern_detail.hpp. Elementwise kernels
// keep the scalar operation order per element (mul then add/sub, no FMA), and
// vdivpd/vsqrtpd are correctly rounded, so those match bitwise as well.

namespace qeit::kern::detail {
namespace {

const __m256d kSignMask = _mm256_set1_pd(-0.0);

inline __m256d vabs(__m256d v) { return _mm256_andnot_pd(kSignMask, v); }
inline __m256d vneg(__m256d v) { return _mm256_xor_pd(v, kSignMask); }

// One compensated accumulation step across all four lanes. Matches
// neumaier_step including its NaN behaviour (_CMP_GE_OQ is false on NaN,
// like the scalar comparison).
inline void vneumaier(__m256d& vs, __m256d& vc, __m256d vx) {
    const __m256d t = _mm256_add_pd(vs, vx);
    const __m256d m = _mm256_cmp_pd(vabs(vs), vabs(vx), _CMP_GE_OQ);
    const __m256d e1 = _mm256_add_pd(_mm256_sub_pd(vs, t), vx);
    const __m256d e2 = _mm256_add_pd(_mm256_sub_pd(vx, t), vs);
    vc = _mm256_add_pd(vc, _mm256_blendv_pd(e2, e1, m));
    vs = t;
}

double v_reduce_sum(const double* x, std::size_t n) {
    __m256d vs = _mm256_setzero_pd(), vc = _mm256_setzero_pd();
    const std::size_t n4 = n - n % 4;
    for (std::size_t i = 0; i < n4; i += 4)
        vneumaier(vs, vc, _mm256_loadu_pd(x + i));
    double s[4], c[4];
    _mm256_storeu_pd(s, vs);
    _mm256_storeu_pd(c, vc);
    tail_sum_into_lanes(s, c, x, n4, n);
    return merge4_lanes(s, c);
}

double v_reduce_dot(const double* x, const double* y, std::size_t n) {
    __m256d vs = _mm256_setzero_pd(), vc = _mm256_setzero_pd();
    const std::size_t n4 = n - n % 4;
    for (std::size_t i = 0; i < n4; i += 4)
        vneumaier(vs, vc, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    double s[4], c[4];
    _mm256_storeu_pd(s, vs);
    _mm256_storeu_pd(c, vc);
    tail_dot_into_lanes(s, c, x, y, n4, n);
    return merge4_lanes(s, c);
}

void v_axpy(double a, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d r = _mm256_add_pd(_mm256_loadu_pd(y + i),
                                        _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
        _mm256_storeu_pd(y + i, r);
    }
    for (; i < n; ++i)
        y[i] += a * x[i];
}

void v_xpay(const double* x, double a, const double* y, double* z, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d r = _mm256_add_pd(_mm256_loadu_pd(x + i),
                                        _mm256_mul_pd(va, _mm256_loadu_pd(y + i)));
        _mm256_storeu_pd(z + i, r);
    }
    for (; i < n; ++i)
        z[i] = x[i] + a * y[i];
}

void v_scale(double a, double* x, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(x + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), va));
    for (; i < n; ++i)
        x[i] *= a;
}

void v_dark_row(double w1, double ddiff, const double* w2,
                double* a0, double* b0, double* c0, std::size_t n) {
    const double w1sq = w1 * w1;
    const double num = (2.0 * w1) * ddiff;
    const __m256d vw1sq = _mm256_set1_pd(w1sq);
    const __m256d vnum = _mm256_set1_pd(num);
    const __m256d vw1 = _mm256_set1_pd(w1);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vw2 = _mm256_loadu_pd(w2 + i);
        const __m256d vwsq = _mm256_add_pd(vw1sq, _mm256_mul_pd(vw2, vw2));
        const __m256d vw = _mm256_sqrt_pd(vwsq);
        _mm256_storeu_pd(a0 + i, vneg(_mm256_div_pd(vw2, vw)));
        _mm256_storeu_pd(c0 + i, _mm256_div_pd(vw1, vw));
        _mm256_storeu_pd(b0 + i, _mm256_div_pd(_mm256_mul_pd(vnum, vw2),
                                               _mm256_mul_pd(vw, vwsq)));
    }
    for (; i < n; ++i) {
        const double w2i = w2[i];
        const double wsq = w1sq + w2i * w2i;
        const double w = std::sqrt(wsq);
        a0[i] = -(w2i / w);
        c0[i] = w1 / w;
        b0[i] = (num * w2i) / (w * wsq);
    }
}

void v_ham_apply(const HamView& h, const double* x, double* y) {
    const int np1 = h.np1, np2 = h.np2;
    const double* c1 = h.c1;
    const double* c2 = h.c2;
    const __m256d vd1 = _mm256_set1_pd(h.d1);
    const __m256d vd12 = _mm256_set1_pd(h.d12);
    auto plane = [&](auto* base, int m, int n1) {
        return base + (std::size_t(m) * np1 + n1) * std::size_t(np2);
    };

    for (int n1 = 0; n1 < np1; ++n1) {
        double* y0 = plane(y, 0, n1);
        if (n1 >= 1) {
            const double c1n = c1[n1];
            const __m256d vc1n = _mm256_set1_pd(c1n);
            const double* x1m = plane(x, 1, n1 - 1);
            int k = 0;
            for (; k + 4 <= np2; k += 4)
                _mm256_storeu_pd(y0 + k, vneg(_mm256_mul_pd(vc1n, _mm256_loadu_pd(x1m + k))));
            for (; k < np2; ++k)
                y0[k] = -(c1n * x1m[k]);
        } else {
            for (int k = 0; k < np2; ++k)
                y0[k] = 0.0;
        }

        {
            double* y1 = plane(y, 1, n1);
            const double* x1 = plane(x, 1, n1);
            const double* x2 = plane(x, 2, n1);
            const int body = np2 - 1;
            if (n1 + 1 < np1) {
                const double c1u = c1[n1 + 1];
                const __m256d vc1u = _mm256_set1_pd(c1u);
                const double* x0u = plane(x, 0, n1 + 1);
                int k = 0;
                for (; k + 4 <= body; k += 4) {
                    const __m256d t = _mm256_sub_pd(
                        _mm256_mul_pd(vd1, _mm256_loadu_pd(x1 + k)),
                        _mm256_mul_pd(vc1u, _mm256_loadu_pd(x0u + k)));
                    const __m256d r = _mm256_sub_pd(
                        t, _mm256_mul_pd(_mm256_loadu_pd(c2 + k + 1),
                                         _mm256_loadu_pd(x2 + k + 1)));
                    _mm256_storeu_pd(y1 + k, r);
                }
                for (; k < body; ++k)
                    y1[k] = (h.d1 * x1[k] - c1u * x0u[k]) - c2[k + 1] * x2[k + 1];
                y1[np2 - 1] = h.d1 * x1[np2 - 1] - c1u * x0u[np2 - 1];
            } else {
                int k = 0;
                for (; k + 4 <= body; k += 4) {
                    const __m256d r = _mm256_sub_pd(
                        _mm256_mul_pd(vd1, _mm256_loadu_pd(x1 + k)),
                        _mm256_mul_pd(_mm256_loadu_pd(c2 + k + 1),
                                      _mm256_loadu_pd(x2 + k + 1)));
                    _mm256_storeu_pd(y1 + k, r);
                }
                for (; k < body; ++k)
                    y1[k] = h.d1 * x1[k] - c2[k + 1] * x2[k + 1];
                y1[np2 - 1] = h.d1 * x1[np2 - 1];
            }
        }

        {
            double* y2 = plane(y, 2, n1);
            const double* x2 = plane(x, 2, n1);
            const double* x1 = plane(x, 1, n1);
            y2[0] = h.d12 * x2[0];
            int k = 1;
            for (; k + 4 <= np2; k += 4) {
                const __m256d r = _mm256_sub_pd(
                    _mm256_mul_pd(vd12, _mm256_loadu_pd(x2 + k)),
                    _mm256_mul_pd(_mm256_loadu_pd(c2 + k),
                                  _mm256_loadu_pd(x1 + k - 1)));
                _mm256_storeu_pd(y2 + k, r);
            }
            for (; k < np2; ++k)
                y2[k] = h.d12 * x2[k] - c2[k] * x1[k - 1];
        }
    }
}

} // namespace

const KernOps avx2_ops = {
    v_reduce_sum, v_reduce_dot, v_axpy, v_xpay, v_scale, v_dark_row, v_ham_apply,
};

} // namespace qeit::kern::detail

#endif // QEIT_HAVE_AVX2
