#include "qeit/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qeit::oracle {

PolyFit polynomial_fit(const std::vector<double>& xs, const std::vector<double>& ys,
                       int degree) {
    if (degree < 0)
        throw std::invalid_argument("polynomial_fit: degree must be >= 0");
    const std::size_t m = xs.size();
    const std::size_t k = std::size_t(degree) + 1;
    if (ys.size() != m)
        throw std::invalid_argument("polynomial_fit: xs/ys length mismatch");
    if (m < k + 1)
        throw std::invalid_argument("polynomial_fit: need at least degree+2 points");
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (xs[i] == xs[j])
                throw std::invalid_argument("polynomial_fit: abscissae must be distinct");

    // Center and scale the abscissae to [-1,1]-ish before building the
    // Vandermonde matrix; the raw powers of physical |E|^2 values would
    // overflow the condition budget immediately.
    double xc = 0.0;
    for (double x : xs) xc += x;
    xc /= double(m);
    double xscale = 0.0;
    for (double x : xs) xscale = std::max(xscale, std::fabs(x - xc));
    if (xscale == 0.0)
        xscale = 1.0;

    // Householder QR on the design matrix, rhs transformed in lockstep.
    std::vector<double> a(m * k);
    for (std::size_t i = 0; i < m; ++i) {
        const double u = (xs[i] - xc) / xscale;
        double pw = 1.0;
        for (std::size_t j = 0; j < k; ++j) {
            a[i * k + j] = pw;
            pw *= u;
        }
    }
    std::vector<double> rhs = ys;

    for (std::size_t j = 0; j < k; ++j) {
        double nrm = 0.0;
        for (std::size_t i = j; i < m; ++i)
            nrm += a[i * k + j] * a[i * k + j];
        nrm = std::sqrt(nrm);
        if (nrm == 0.0)
            continue;
        const double alpha = a[j * k + j] >= 0.0 ? -nrm : nrm;
        std::vector<double> w(m - j);
        w[0] = a[j * k + j] - alpha;
        for (std::size_t i = j + 1; i < m; ++i)
            w[i - j] = a[i * k + j];
        double wn = 0.0;
        for (double x : w) wn += x * x;
        if (wn == 0.0)
            continue;

        for (std::size_t col = j; col < k; ++col) {
            double dot = 0.0;
            for (std::size_t i = j; i < m; ++i)
                dot += w[i - j] * a[i * k + col];
            const double f = 2.0 * dot / wn;
            for (std::size_t i = j; i < m; ++i)
                a[i * k + col] -= f * w[i - j];
        }
        double dot = 0.0;
        for (std::size_t i = j; i < m; ++i)
            dot += w[i - j] * rhs[i];
        const double f = 2.0 * dot / wn;
        for (std::size_t i = j; i < m; ++i)
            rhs[i] -= f * w[i - j];
    }

    PolyFit fit;
    double rmin = std::fabs(a[0]);
    double rmax = rmin;
    for (std::size_t j = 1; j < k; ++j) {
        const double d = std::fabs(a[j * k + j]);
        rmin = std::min(rmin, d);
        rmax = std::max(rmax, d);
    }
    fit.condition = rmin > 0.0 ? rmax / rmin : std::numeric_limits<double>::infinity();
    fit.ill_conditioned = !(fit.condition <= 1e10);

    std::vector<double> cu(k, 0.0);
    for (std::size_t jj = k; jj-- > 0;) {
        double s = rhs[jj];
        for (std::size_t col = jj + 1; col < k; ++col)
            s -= a[jj * k + col] * cu[col];
        const double d = a[jj * k + jj];
        cu[jj] = d != 0.0 ? s / d : 0.0;
    }

    double res2 = 0.0;
    for (std::size_t i = k; i < m; ++i)
        res2 += rhs[i] * rhs[i];
    fit.rms_residual = std::sqrt(res2 / double(m));

    // Undo the scaling (u = t/xscale) and the centering (t = x - xc):
    // first divide by xscale^j, then binomial-shift by -xc.
    double sc = 1.0;
    for (std::size_t j = 0; j < k; ++j) {
        cu[j] /= sc;
        sc *= xscale;
    }
    fit.coeffs.assign(k, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
        double binom = 1.0;   // C(j, l) * (-xc)^(j-l), built up from l = j
        double shift_pow = 1.0;
        for (std::size_t l = j + 1; l-- > 0;) {
            fit.coeffs[l] += cu[j] * binom * shift_pow;
            if (l > 0) {
                binom = binom * double(l) / double(j - l + 1);
                shift_pow *= -xc;
            }
        }
    }
    return fit;
}

} // namespace qeit::oracle
