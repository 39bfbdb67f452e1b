#include "qeit/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qeit::oracle {

namespace {

double offdiag_norm(const std::vector<double>& a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            s += a[i * n + j] * a[i * n + j];
    return std::sqrt(2.0 * s);
}

} // namespace

EigenResult jacobi_eigen(std::vector<double> a, std::size_t n) {
    if (n == 0 || a.size() != n * n)
        throw std::invalid_argument("jacobi_eigen: matrix size mismatch");

    std::vector<double> v(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        v[i * n + i] = 1.0;

    double fro = 0.0;
    for (double x : a) fro += x * x;
    fro = std::sqrt(fro);
    const double stop = 1e-14 * std::max(fro, 1e-300);

    for (int sweep = 0; sweep < 100 && offdiag_norm(a, n) > stop; ++sweep) {
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (apq == 0.0)
                    continue;
                const double app = a[p * n + p];
                const double aqq = a[q * n + q];
                const double tau = (aqq - app) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0)
                               / (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = a[q * n + p] = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (i == p || i == q)
                        continue;
                    const double aip = a[i * n + p];
                    const double aiq = a[i * n + q];
                    a[i * n + p] = a[p * n + i] = c * aip - s * aiq;
                    a[i * n + q] = a[q * n + i] = s * aip + c * aiq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vip = v[i * n + p];
                    const double viq = v[i * n + q];
                    v[i * n + p] = c * vip - s * viq;
                    v[i * n + q] = s * vip + c * viq;
                }
            }
        }
    }

    EigenResult r;
    r.n = n;
    r.values.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        r.values[i] = a[i * n + i];

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return r.values[i] < r.values[j]; });

    std::vector<double> sorted_vals(n);
    r.vectors.assign(n * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        sorted_vals[j] = r.values[order[j]];
        for (std::size_t i = 0; i < n; ++i)
            r.vectors[i * n + j] = v[i * n + order[j]];
    }
    r.values = std::move(sorted_vals);
    return r;
}

Block3Eigen dense_block_eigen(const Mat3& m) {
    double scale = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            scale = std::max(scale, std::fabs(m[i][j]));
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (std::fabs(m[i][j] - m[j][i]) > 1e-10 * std::max(scale, 1e-300))
                throw std::invalid_argument("dense_block_eigen: matrix is not symmetric");

    std::vector<double> flat(9);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            flat[i * 3 + j] = m[i][j];
    const EigenResult r = jacobi_eigen(std::move(flat), 3);

    Block3Eigen out;
    for (int i = 0; i < 3; ++i) {
        out.values[i] = r.values[i];
        for (int j = 0; j < 3; ++j)
            out.vectors[i][j] = r.vectors[i * 3 + j];
    }
    return out;
}

} // namespace qeit::oracle
