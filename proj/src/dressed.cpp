#include "qeit/dressed.hpp"

#include "qeit/hamiltonian.hpp"

#include <cmath>

namespace qeit {

RabiPair rabi_frequencies(const SystemParams& p, const FockBlock& blk) {
    p.validate();
    return RabiPair::from_block(p, blk);
}

EigenTriple perturbative_eigenvalues(const SystemParams& p, const RabiPair& r) {
    const double w1s = r.omega1_rabi * r.omega1_rabi;
    const double w2s = r.omega2_rabi * r.omega2_rabi;
    const double wts = w1s + w2s;
    const double wt = std::sqrt(wts);
    const double common = (w1s + 2.0 * w2s) / (2.0 * wts) * p.delta1
                        - w2s / (2.0 * wts) * p.delta2;
    EigenTriple e;
    e.e_plus = common + wt / 2.0;
    e.e_minus = common - wt / 2.0;
    e.e_zero = (w1s / wts) * (p.delta1 - p.delta2);
    return e;
}

EigenTriple perturbative_eigenvalues(const SystemParams& p, const FockBlock& blk) {
    return perturbative_eigenvalues(p, RabiPair::from_block(p, blk));
}

DressedSet dressed_coefficients(const SystemParams& p, const RabiPair& r) {
    const double w1 = r.omega1_rabi, w2 = r.omega2_rabi;
    const double w1s = w1 * w1;
    const double w2s = w2 * w2;
    const double wts = w1s + w2s;
    const double wt = std::sqrt(wts);
    const double wt3 = wt * wts;
    const double d1 = p.delta1, d2 = p.delta2;
    const double sqrt2 = std::sqrt(2.0);

    // First-order detuning corrections. The bright branches share these with
    // alternating signs; the detuning enters the a and c components through
    // different Rabi combinations.
    const double ka1 = (w1s + 4.0 * w2s) * d1 / (2.0 * wt3);
    const double ka2 = 3.0 * w2s * d2 / (2.0 * wt3);
    const double kb1 = w1s * d1 / (2.0 * wt3);
    const double kb2 = w2s * d2 / (2.0 * wt3);
    const double kc1 = 3.0 * w1s * d1 / (2.0 * wt3);
    const double kc2 = (4.0 * w1s + w2s) * d2 / (2.0 * wt3);

    DressedSet set;
    set.plus = {Branch::plus,
                -(w1 / (sqrt2 * wt)) * (1.0 - ka1 + ka2),
                +(1.0 / sqrt2) * (1.0 + kb1 + kb2),
                -(w2 / (sqrt2 * wt)) * (1.0 + kc1 - kc2)};
    set.minus = {Branch::minus,
                 -(w1 / (sqrt2 * wt)) * (1.0 + ka1 - ka2),
                 -(1.0 / sqrt2) * (1.0 - kb1 - kb2),
                 -(w2 / (sqrt2 * wt)) * (1.0 - kc1 + kc2)};
    set.zero = {Branch::zero,
                -w2 / wt,
                2.0 * w1 * w2 * (d1 - d2) / wt3,
                w1 / wt};
    return set;
}

DressedSet dressed_coefficients(const SystemParams& p, const FockBlock& blk) {
    p.validate();
    return dressed_coefficients(p, RabiPair::from_block(p, blk));
}

DressedTriple dressed_coefficients(const SystemParams& p, const FockBlock& blk, Branch branch) {
    const DressedSet set = dressed_coefficients(p, blk);
    switch (branch) {
        case Branch::plus:  return set.plus;
        case Branch::zero:  return set.zero;
        case Branch::minus: return set.minus;
    }
    return set.zero;
}

double dark_state_residual(const SystemParams& p, const FockBlock& blk) {
    const Mat3 h = block_matrix(p, blk);
    const DressedTriple v = dressed_coefficients(p, blk, Branch::zero);
    const double e0 = perturbative_eigenvalues(p, blk).e_zero;
    const double vec[3] = {v.a, v.b, v.c};
    double r2 = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double ri = h[i][0] * vec[0] + h[i][1] * vec[1] + h[i][2] * vec[2]
                        - e0 * vec[i];
        r2 += ri * ri;
    }
    return std::sqrt(r2);
}

} // namespace qeit
