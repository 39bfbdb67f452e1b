#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qeit/dressed.hpp"
#include "qeit/hamiltonian.hpp"
#include "qeit/oracle.hpp"

#include <array>
#include <cmath>
#include <vector>

using namespace qeit;

namespace {

std::array<double, 3> as_vec(const DressedTriple& t) { return {t.a, t.b, t.c}; }

double eigen_residual(const Mat3& h, const DressedTriple& v, double e) {
    const auto x = as_vec(v);
    double r2 = 0.0;
    for (int i = 0; i < 3; ++i) {
        double hx = 0.0;
        for (int j = 0; j < 3; ++j)
            hx += h[i][j] * x[std::size_t(j)];
        const double d = hx - e * x[std::size_t(i)];
        r2 += d * d;
    }
    return std::sqrt(r2);
}

double dot(const DressedTriple& u, const DressedTriple& v) {
    return u.a * v.a + u.b * v.b + u.c * v.c;
}

// Largest |V^T V - I| entry over the dressed triple.
double gram_defect(const DressedSet& s) {
    const DressedTriple* v[3] = {&s.plus, &s.zero, &s.minus};
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const double g = dot(*v[i], *v[j]) - (i == j ? 1.0 : 0.0);
            worst = std::max(worst, std::abs(g));
        }
    return worst;
}

} // namespace

TEST_CASE("effective Rabi frequencies scale with the square-rooted photon numbers") {
    SystemParams p;
    p.g1 = 0.7;
    p.g2 = 2.1;
    const auto r = rabi_frequencies(p, {4, 8});
    CHECK(r.omega1_rabi == doctest::Approx(2.0 * 0.7 * 2.0).epsilon(1e-15));
    CHECK(r.omega2_rabi == doctest::Approx(2.0 * 2.1 * 3.0).epsilon(1e-15));
    CHECK(r.omega_total() ==
          doctest::Approx(std::hypot(r.omega1_rabi, r.omega2_rabi)).epsilon(1e-15));
}

TEST_CASE("at resonance the dressed triple is exact") {
    SystemParams p;
    p.g1 = 1.2;
    p.g2 = 0.9;
    const FockBlock blk{3, 1};
    const auto r = RabiPair::from_block(p, blk);
    const double wt = r.omega_total();

    const auto set = dressed_coefficients(p, blk);
    const auto e = perturbative_eigenvalues(p, blk);
    const Mat3 h = block_matrix(p, blk);

    // zero branch: the dark-state row, no excited component at all
    CHECK(set.zero.a == doctest::Approx(-r.omega2_rabi / wt).epsilon(1e-15));
    CHECK(set.zero.b == 0.0);
    CHECK(set.zero.c == doctest::Approx(r.omega1_rabi / wt).epsilon(1e-15));

    CHECK(eigen_residual(h, set.plus, e.e_plus) < 1e-14 * wt);
    CHECK(eigen_residual(h, set.zero, e.e_zero) < 1e-14 * wt);
    CHECK(eigen_residual(h, set.minus, e.e_minus) < 1e-14 * wt);

    CHECK(set.plus.norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(set.zero.norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(set.minus.norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gram_defect(set) < 1e-14);
}

TEST_CASE("branch accessor and set agree") {
    SystemParams p;
    p.delta1 = 0.05;
    p.delta2 = -0.02;
    const FockBlock blk{2, 3};
    const auto set = dressed_coefficients(p, blk);
    for (Branch b : {Branch::plus, Branch::zero, Branch::minus}) {
        const auto t = dressed_coefficients(p, blk, b);
        const auto& ref = b == Branch::plus ? set.plus
                        : b == Branch::zero ? set.zero
                                            : set.minus;
        CHECK(t.a == ref.a);
        CHECK(t.b == ref.b);
        CHECK(t.c == ref.c);
        CHECK(t.branch == b);
    }
}

TEST_CASE("first-order triple loses orthonormality only at second order") {
    SystemParams p;
    p.g1 = 1.0;
    p.g2 = 1.4;
    const FockBlock blk{2, 1};
    const double wt = RabiPair::from_block(p, blk).omega_total();

    auto defect_at = [&](double s) {
        SystemParams q = p;
        q.delta1 = 0.7 * s * wt;
        q.delta2 = -0.4 * s * wt;
        return gram_defect(dressed_coefficients(q, blk));
    };

    const double d1 = defect_at(5e-3);
    const double d2 = defect_at(1e-2);
    CHECK(d1 > 0.0);
    CHECK(d2 / d1 == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("eigenvector residual falls off quadratically in the detuning") {
    SystemParams p;
    p.g1 = 1.0;
    p.g2 = 1.3;
    const FockBlock blk{2, 1};
    const double wt = RabiPair::from_block(p, blk).omega_total();

    std::vector<double> log_s, log_r_plus, log_r_zero, log_r_minus;
    for (int k = 0; k < 7; ++k) {
        const double s = 1e-3 * std::pow(2.0, 0.5 * k);
        SystemParams q = p;
        q.delta1 = 0.7 * s * wt;
        q.delta2 = -0.4 * s * wt;
        const auto set = dressed_coefficients(q, blk);
        const auto e = perturbative_eigenvalues(q, blk);
        const Mat3 h = block_matrix(q, blk);

        log_s.push_back(std::log(s));
        log_r_plus.push_back(std::log(eigen_residual(h, set.plus, e.e_plus)));
        log_r_zero.push_back(std::log(eigen_residual(h, set.zero, e.e_zero)));
        log_r_minus.push_back(std::log(eigen_residual(h, set.minus, e.e_minus)));
    }

    CHECK(oracle::polynomial_fit(log_s, log_r_plus, 1).coeffs[1] >= 1.9);
    CHECK(oracle::polynomial_fit(log_s, log_r_zero, 1).coeffs[1] >= 1.9);
    CHECK(oracle::polynomial_fit(log_s, log_r_minus, 1).coeffs[1] >= 1.9);
}

TEST_CASE("dark state is exact on the whole two-photon resonance line") {
    SystemParams p;
    p.g1 = 0.8;
    p.g2 = 1.1;
    const FockBlock blk{5, 2};
    const double wt = RabiPair::from_block(p, blk).omega_total();

    for (double d : {0.0, 0.3, -1.7}) {
        p.delta1 = d;
        p.delta2 = d;
        CHECK(dark_state_residual(p, blk) < 1e-13 * wt);
        CHECK(dressed_coefficients(p, blk, Branch::zero).b == 0.0);
    }
}

TEST_CASE("dark residual grows quadratically off the resonance line") {
    SystemParams p;
    const FockBlock blk{1, 0};
    const double wt = RabiPair::from_block(p, blk).omega_total();

    auto resid_at = [&](double s) {
        SystemParams q = p;
        q.delta1 = s * wt;
        q.delta2 = -0.5 * s * wt;
        return dark_state_residual(q, blk);
    };
    const double r1 = resid_at(1e-2);
    const double r2 = resid_at(2e-2);
    CHECK(r1 > 0.0);
    CHECK(r2 / r1 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("excited admixture of the dark row is linear in the detuning difference") {
    SystemParams p;
    p.g1 = 1.1;
    p.g2 = 0.6;
    const FockBlock blk{3, 4};

    SystemParams q1 = p;
    q1.delta1 = 4e-3;
    q1.delta2 = 1e-3;
    SystemParams q2 = p;
    q2.delta1 = 8e-3;
    q2.delta2 = 2e-3;

    const double b1 = dressed_coefficients(q1, blk, Branch::zero).b;
    const double b2 = dressed_coefficients(q2, blk, Branch::zero).b;
    CHECK(b1 != 0.0);
    CHECK(b2 / b1 == doctest::Approx(2.0).epsilon(1e-12));
}
