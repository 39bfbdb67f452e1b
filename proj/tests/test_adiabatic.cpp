#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qeit/adiabatic.hpp"
#include "qeit/dressed.hpp"
#include "qeit/field.hpp"
#include "qeit/oracle.hpp"

#include <cmath>
#include <complex>
#include <vector>

using namespace qeit;
using std::complex;

namespace {

SystemParams detuned_params() {
    SystemParams p;
    p.g1 = 1.0;
    p.g2 = 1.3;
    p.delta1 = 0.3;
    p.delta2 = -0.2;
    p.omega1 = 1.0;
    p.omega2 = 1.7;
    return p;
}

double block_norm_sq(const AdiabaticState& s) {
    double n = 0.0;
    for (const auto& z : s.block_amp)
        n += std::norm(z);
    return n;
}

} // namespace

TEST_CASE("a single-photon Fock block carries exactly the dark dressed triple") {
    SystemParams p = detuned_params();
    const auto field = FieldSpec::product({{0.0, 0.0}, {1.0, 0.0}}, {{1.0, 0.0}});
    const auto s = adiabatic_state(p, field, 0.0);

    REQUIRE(s.dim1 == 2);
    REQUIRE(s.dim2 == 1);
    CHECK(std::abs(s.block_amp[s.idx(0, 0)]) == 0.0);
    CHECK(std::abs(s.block_amp[s.idx(1, 0)] - complex<double>{1.0, 0.0}) < 1e-15);

    const auto dark = dressed_coefficients(p, FockBlock{1, 0}, Branch::zero);
    const std::size_t i = s.idx(1, 0);
    CHECK(s.a0[i] == dark.a);
    CHECK(s.b0[i] == dark.b);
    CHECK(s.c0[i] == dark.c);

    // flattened onto the bare grid: the three components land on
    // |1,1,0>, |2,0,0> and |3,0,1>
    const auto psi = s.flatten(2, 2);
    CHECK(psi[2].real() == doctest::Approx(dark.a).epsilon(1e-15));
    CHECK(psi[4].real() == doctest::Approx(dark.b).epsilon(1e-15));
    CHECK(psi[9].real() == doctest::Approx(dark.c).epsilon(1e-15));
    double rest = 0.0;
    for (std::size_t k = 0; k < psi.size(); ++k)
        if (k != 2 && k != 4 && k != 9)
            rest += std::norm(psi[k]);
    CHECK(rest == 0.0);
}

TEST_CASE("block phase rates differ between frames by the photon carriers") {
    SystemParams p = detuned_params();
    const auto field = FieldSpec::coherent(1.2, 1.6);
    const auto lab = adiabatic_state(p, field, 0.0, Frame::lab);
    const auto rot = adiabatic_state(p, field, 0.0, Frame::interaction);

    REQUIRE(lab.dim1 == rot.dim1);
    REQUIRE(lab.dim2 == rot.dim2);
    for (std::size_t n1 = 0; n1 < lab.dim1; ++n1)
        for (std::size_t n2 = 0; n2 < lab.dim2; ++n2) {
            const std::size_t i = lab.idx(n1, n2);
            const double carrier = p.omega1 * double(n1) + p.omega2 * double(n2);
            CHECK(lab.e0[i] - rot.e0[i] ==
                  doctest::Approx(carrier).epsilon(1e-14));
        }
}

TEST_CASE("the dark-manifold norm does not depend on time") {
    SystemParams p = detuned_params();
    const auto field = FieldSpec::coherent(1.2, 1.6);
    const double n0 = block_norm_sq(adiabatic_state(p, field, 0.0));
    const double n5 = block_norm_sq(adiabatic_state(p, field, 5.0));
    CHECK(n5 == doctest::Approx(n0).epsilon(1e-14));
    // populations are time independent as well, each block only rotates
    const auto r0 = reduced_density_matrix(p, field, 0.0);
    const auto r5 = reduced_density_matrix(p, field, 5.0);
    for (int m = 0; m < 3; ++m)
        CHECK(r5.at(m, m).real() == doctest::Approx(r0.at(m, m).real()).epsilon(1e-12));
}

TEST_CASE("reduced density matrix equals the brute-force partial trace") {
    SystemParams p = detuned_params();
    const auto field = FieldSpec::coherent(1.2, 1.6);
    const double t = 0.37;

    const auto s = adiabatic_state(p, field, t);
    const auto rho = reduced_density_matrix(s);
    const auto psi = s.flatten();  // (dim1, dim2 + 1) grid, loses nothing
    const auto ref = oracle::partial_trace_atom(psi, int(s.dim1), int(s.dim2) + 1);

    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(std::abs(rho.at(i, j) - ref[std::size_t(i) * 3 + j]) < 1e-12);

    CHECK(rho.hermiticity_defect() < 1e-12);
    // The first-order branch vector has squared norm exactly 1 + b0^2, so the
    // atomic trace sits above the captured field mass by exactly rho22.
    CHECK(rho.trace_real() ==
          doctest::Approx(1.0 - s.tail_mass + rho.at(1, 1).real()).epsilon(1e-12));

    // the convenience overload builds the same lab-frame state
    const auto rho2 = reduced_density_matrix(p, field, t);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(std::abs(rho2.at(i, j) - rho.at(i, j)) == 0.0);
}

TEST_CASE("on two-photon resonance the excited level stays empty") {
    SystemParams p = detuned_params();
    p.delta1 = 0.2;
    p.delta2 = 0.2;
    const auto rho = reduced_density_matrix(p, FieldSpec::coherent(1.5, 2.0), 0.8);

    CHECK(rho.at(1, 1) == complex<double>{0.0, 0.0});
    CHECK(rho.at(0, 1) == complex<double>{0.0, 0.0});
    CHECK(rho.at(2, 1) == complex<double>{0.0, 0.0});
    // the ground/metastable sector still holds all the population
    CHECK(rho.at(0, 0).real() + rho.at(2, 2).real() ==
          doctest::Approx(rho.trace_real()).epsilon(1e-14));
}

TEST_CASE("optical coherences are linear in the detuning difference") {
    SystemParams p;
    p.g1 = 1.0;
    p.g2 = 1.0;
    p.delta1 = 1e-3;
    p.delta2 = 0.0;

    const auto one = coherences_timeseries(p, 1.5, 1.5, 0.0);
    p.delta1 = 2e-3;
    const auto two = coherences_timeseries(p, 1.5, 1.5, 0.0);

    CHECK(one.rho21.real() != 0.0);
    CHECK(two.rho21.real() / one.rho21.real() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(two.rho23.real() / one.rho23.real() == doctest::Approx(2.0).epsilon(1e-12));
    // real at t = 0: every term carries zero phase
    CHECK(one.rho21.imag() == 0.0);
    CHECK(one.rho23.imag() == 0.0);
}

TEST_CASE("frozen-Rabi closed form converges onto the literal sum as nbar grows") {
    SystemParams p;
    p.g1 = 1.0;
    p.g2 = 1.0;
    p.delta1 = 1e-3;
    p.delta2 = 0.0;

    const double nbars[3] = {100.0, 316.0, 1000.0};
    double dev21[3], dev23[3];
    for (int k = 0; k < 3; ++k) {
        const double nb = nbars[k];
        const auto sum = coherences_timeseries(p, std::sqrt(nb), std::sqrt(nb), 0.0);
        const auto closed = large_n_coherences(p, nb, nb);
        dev21[k] = std::abs(sum.rho21.real() - closed.rho21) / std::abs(closed.rho21);
        dev23[k] = std::abs(sum.rho23.real() - closed.rho23) / std::abs(closed.rho23);
    }

    CHECK(dev21[0] < 0.02);
    CHECK(dev21[2] < 0.005);
    CHECK(dev21[1] < dev21[0]);
    CHECK(dev21[2] < dev21[1]);
    CHECK(dev23[0] < 0.02);
    CHECK(dev23[2] < 0.005);
    CHECK(dev23[1] < dev23[0]);
    CHECK(dev23[2] < dev23[1]);

    // pinned reference point at nbar = 100, from an independent evaluation of
    // the double sum
    const auto sum100 = coherences_timeseries(p, 10.0, 10.0, 0.0);
    CHECK(sum100.rho21.real() ==
          doctest::Approx(-2.493742128148248e-05).epsilon(1e-9).scale(0.0));
    // and the closed form is literally -2 W1 W2^2 dd / W^4 at the means
    const double w1 = 2.0 * 10.0, w2sq = 4.0 * 101.0;
    const double wsq = w1 * w1 + w2sq;
    const double expect = -2.0 * w1 * w2sq * 1e-3 / (wsq * wsq);
    CHECK(large_n_coherences(p, 100.0, 100.0).rho21 ==
          doctest::Approx(expect).epsilon(1e-13).scale(0.0));
}

TEST_CASE("photon-spread scales behind the frozen-Rabi error") {
    const auto s = rabi_spread_estimate(100.0);
    CHECK(s.relative_spread == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(s.second_order_scale == doctest::Approx(0.00125).epsilon(1e-15));
    CHECK_THROWS_AS((void)rabi_spread_estimate(0.0), std::invalid_argument);
}

TEST_CASE("probe states without adjacent-number coherence give a null signal") {
    SystemParams p;
    p.delta1 = 1e-3;

    // Fock probe
    const auto fock = FieldSpec::product(
        {{0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}},
        {{0.6, 0.0}, {0.0, 0.8}});
    CHECK(std::abs(nonclassical_coherence(p, fock)) < 1e-14);

    // superposition with a photon-number gap of two
    const double r = 1.0 / std::sqrt(2.0);
    const auto gapped = FieldSpec::product(
        {{r, 0.0}, {0.0, 0.0}, {r, 0.0}}, {{1.0, 0.0}});
    CHECK(std::abs(nonclassical_coherence(p, gapped)) < 1e-14);
}

TEST_CASE("a coherent-amplitude product recovers the classical coherence") {
    SystemParams p;
    p.delta1 = 1e-3;

    auto column = [](double amp) {
        const auto a = coherent_amplitudes(amp, 0.0, -1, 0);
        std::vector<complex<double>> c(a.dim1);
        for (std::size_t n = 0; n < a.dim1; ++n)
            c[n] = a.at(n, 0);
        return c;
    };
    const auto field = FieldSpec::product(column(10.0), column(10.0));
    const double got = nonclassical_coherence(p, field).real();
    const double closed = large_n_coherences(p, 100.0, 100.0).rho21;
    CHECK(got / closed == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("degenerate inputs are rejected with a reason") {
    SystemParams p;
    CHECK_THROWS_WITH_AS((void)coherences_timeseries(p, 1.0, 0.0, 0.0),
                         doctest::Contains("coupling vacuum"), std::invalid_argument);
    CHECK_THROWS_AS((void)large_n_coherences(p, 0.5, 100.0), std::invalid_argument);
    CHECK_THROWS_AS((void)nonclassical_coherence(p, FieldSpec::coherent(1.0, 1.0)),
                    std::invalid_argument);
    const auto bad = FieldSpec::product({{0.5, 0.0}, {0.5, 0.0}}, {{1.0, 0.0}});
    CHECK_THROWS_AS((void)nonclassical_coherence(p, bad), std::invalid_argument);
}

TEST_CASE("level planes keep the extra coupling-photon column") {
    SystemParams p = detuned_params();
    const auto s = adiabatic_state(p, FieldSpec::coherent(1.0, 1.2), 0.0);
    const auto d = d_coefficients(s);

    CHECK(d.dim1 == s.dim1);
    CHECK(d.dim2 == s.dim2 + 1);

    // d3(m1, m2) comes from block (m1+1, m2-1)
    const std::size_t m1 = 2, m2 = 3;
    const std::size_t j = s.idx(m1 + 1, m2 - 1);
    const auto expect = s.block_amp[j] * s.c0[j];
    CHECK(std::abs(d.d3[m1 * d.dim2 + m2] - expect) < 1e-15);

    // the top column m2 = dim2 is populated for level 3 only
    bool any = false;
    for (std::size_t k1 = 0; k1 + 1 < d.dim1; ++k1)
        any = any || std::abs(d.d3[k1 * d.dim2 + (d.dim2 - 1)]) > 0.0;
    CHECK(any);
    for (std::size_t k1 = 0; k1 < d.dim1; ++k1) {
        CHECK(std::abs(d.d1[k1 * d.dim2 + (d.dim2 - 1)]) == 0.0);
        CHECK(std::abs(d.d2[k1 * d.dim2 + (d.dim2 - 1)]) == 0.0);
    }
}
