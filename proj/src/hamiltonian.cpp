#include "qeit/hamiltonian.hpp"

#include "qeit/dressed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace qeit {

namespace {

// Relative band around disc = 0 inside which the closed degenerate formulas
// are used instead of the trig path (whose angle becomes ill-conditioned).
constexpr double kDiscRelTol = 1e-14;

double disc_tolerance(const CubicIntermediates& ci) {
    const double qh = ci.q / 2.0;
    const double pt = ci.p / 3.0;
    const double scale = std::max(qh * qh, std::fabs(pt * pt * pt));
    return kDiscRelTol * std::max(scale, std::numeric_limits<double>::min());
}

} // namespace

Mat3 block_matrix(const SystemParams& p, const FockBlock& blk) {
    p.validate();
    blk.validate();
    const double a = p.g1 * std::sqrt(double(blk.n1));
    const double b = p.g2 * std::sqrt(double(blk.n2) + 1.0);
    return Mat3{{{0.0, -a, 0.0},
                 {-a, p.delta1, -b},
                 {0.0, -b, p.delta1 - p.delta2}}};
}

CubicIntermediates cubic_intermediates(const SystemParams& p, const FockBlock& blk) {
    p.validate();
    blk.validate();
    const double asq = p.g1 * p.g1 * double(blk.n1);
    const double bsq = p.g2 * p.g2 * (double(blk.n2) + 1.0);
    const double d1 = p.delta1;
    const double dd = p.delta1 - p.delta2;

    CubicIntermediates ci;
    ci.A = -(2.0 * d1 - p.delta2);          // -trace
    ci.B = d1 * dd - asq - bsq;             // sum of principal 2x2 minors
    ci.Ccoef = asq * dd;                    // -det
    ci.p = ci.B - ci.A * ci.A / 3.0;
    ci.q = ci.Ccoef - ci.A * ci.B / 3.0 + 2.0 * ci.A * ci.A * ci.A / 27.0;
    ci.discriminant = ci.q * ci.q / 4.0 + ci.p * ci.p * ci.p / 27.0;
    ci.degenerate = std::fabs(ci.discriminant) <= disc_tolerance(ci);
    return ci;
}

bool reality_condition(double p, double q) {
    return q * q / 4.0 + p * p * p / 27.0 < 0.0;
}

bool reality_condition(const CubicIntermediates& ci) {
    return ci.discriminant < 0.0;
}

std::array<double, 3> cardano_roots(const CubicIntermediates& ci) {
    const double tol = disc_tolerance(ci);
    const double shift = -ci.A / 3.0;

    if (ci.discriminant > tol)
        throw std::domain_error("complex-root regime: cubic discriminant is positive");

    if (std::fabs(ci.discriminant) <= tol) {
        // Repeated roots. p = q = 0 is a triple root; otherwise the double
        // root is -3q/(2p) and the simple root 3q/p.
        if (ci.p == 0.0)
            return {shift, shift, shift};
        const double y1 = 3.0 * ci.q / ci.p;
        const double y2 = -1.5 * ci.q / ci.p;
        return {y1 + shift, y2 + shift, y2 + shift};
    }

    // Three distinct real roots: p < 0 here, so the trig form is safe.
    const double m = 2.0 * std::sqrt(-ci.p / 3.0);
    double cosarg = (3.0 * ci.q) / (2.0 * ci.p) * std::sqrt(-3.0 / ci.p);
    cosarg = std::clamp(cosarg, -1.0, 1.0);
    const double phi = std::acos(cosarg) / 3.0;

    std::array<double, 3> roots;
    for (int k = 0; k < 3; ++k)
        roots[k] = m * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0) + shift;
    return roots;
}

EigenTriple exact_eigenvalues(const SystemParams& p, const FockBlock& blk) {
    const CubicIntermediates ci = cubic_intermediates(p, blk);
    const std::array<double, 3> roots = cardano_roots(ci);
    const EigenTriple guide = perturbative_eigenvalues(p, blk);

    // Assign branch labels by the permutation closest to the perturbative
    // triple. Branch order inside a permutation: (plus, zero, minus).
    static constexpr int perms[6][3] = {
        {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0},
    };
    const double target[3] = {guide.e_plus, guide.e_zero, guide.e_minus};

    int best = 0;
    double best_cost = std::numeric_limits<double>::infinity();
    for (int s = 0; s < 6; ++s) {
        double cost = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double d = roots[perms[s][i]] - target[i];
            cost += d * d;
        }
        if (cost < best_cost) {
            best_cost = cost;
            best = s;
        }
    }
    return {roots[perms[best][0]], roots[perms[best][1]], roots[perms[best][2]]};
}

} // namespace qeit
