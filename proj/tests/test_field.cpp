#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qeit/field.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

using namespace qeit;
using std::complex;

namespace {

double sum_sq(const JointAmplitudes& a) {
    double s = 0.0;
    for (const auto& z : a.c)
        s += std::norm(z);
    return s;
}

// Poisson weight by direct log evaluation, independent of the library path.
double poisson(double mean, int n) {
    if (mean == 0.0)
        return n == 0 ? 1.0 : 0.0;
    return std::exp(-mean + n * std::log(mean) - std::lgamma(double(n) + 1.0));
}

} // namespace

TEST_CASE("vacuum field occupies the single (0,0) amplitude") {
    const auto a = materialize(FieldSpec::coherent(0.0, 0.0));
    CHECK(a.at(0, 0).real() == doctest::Approx(1.0).epsilon(1e-15));
    double rest = 0.0;
    for (std::size_t n1 = 0; n1 < a.dim1; ++n1)
        for (std::size_t n2 = 0; n2 < a.dim2; ++n2)
            if (n1 + n2 > 0)
                rest += std::norm(a.at(n1, n2));
    CHECK(rest == 0.0);
    CHECK(a.tail_mass < 1e-15);
    CHECK(!a.tail_warning);
}

TEST_CASE("coherent grid carries Poisson product weights") {
    const auto a = coherent_amplitudes(2.0, 3.0, 40, 50);
    CHECK(a.dim1 == 41);
    CHECK(a.dim2 == 51);
    CHECK(sum_sq(a) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(a.tail_mass < 1e-12);

    for (int n1 : {0, 1, 4, 11}) {
        for (int n2 : {0, 2, 9, 17}) {
            const double expect = poisson(4.0, n1) * poisson(9.0, n2);
            CHECK(std::norm(a.at(std::size_t(n1), std::size_t(n2))) ==
                  doctest::Approx(expect).epsilon(1e-12));
        }
    }
}

TEST_CASE("negative coherent amplitude alternates sign with the photon number") {
    const auto a = coherent_amplitudes(-2.0, 0.0, 12, 0);
    const auto b = coherent_amplitudes(2.0, 0.0, 12, 0);
    for (std::size_t n = 0; n <= 12; ++n) {
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        CHECK(a.at(n, 0).real() ==
              doctest::Approx(sign * b.at(n, 0).real()).epsilon(1e-14));
        CHECK(a.at(n, 0).imag() == 0.0);
    }
}

TEST_CASE("log-space evaluation survives a mean photon number of ten thousand") {
    const auto a = coherent_amplitudes(100.0, 0.0, -1, 0);
    REQUIRE(a.dim1 > 10000);
    for (const auto& z : a.c)
        CHECK(std::isfinite(z.real()));
    CHECK(sum_sq(a) == doctest::Approx(1.0).epsilon(1e-9));
    // peak weight ~ 1/sqrt(2 pi nbar), Stirling correction is ~1e-5 relative
    CHECK(std::norm(a.at(10000, 0)) ==
          doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi * 1e4))
              .epsilon(1e-4)
              .scale(0.0));
}

TEST_CASE("automatic truncation follows the Poisson tail rule") {
    CHECK(default_truncation(2.25) == 21);
    CHECK(default_truncation(4.0) == 27);
    CHECK(default_truncation(0.0) == 10);
    CHECK_THROWS_AS((void)default_truncation(-0.5), std::invalid_argument);

    const auto a = materialize(FieldSpec::coherent(1.5, 2.0));
    CHECK(a.dim1 == 22);
    CHECK(a.dim2 == 28);
}

TEST_CASE("product fields are checked and renormalized exactly") {
    const auto good = materialize(FieldSpec::product(
        {{0.6, 0.0}, {0.0, 0.8}}, {{1.0, 0.0}}));
    CHECK(good.dim1 == 2);
    CHECK(good.dim2 == 1);
    CHECK(good.at(0, 0).real() == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(good.at(1, 0).imag() == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(sum_sq(good) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(good.tail_mass == 0.0);

    CHECK_THROWS_WITH_AS(
        (void)materialize(FieldSpec::product({{0.5, 0.0}, {0.5, 0.0}}, {{1.0, 0.0}})),
        doctest::Contains("probe"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        (void)materialize(FieldSpec::product({{1.0, 0.0}}, {{0.3, 0.0}})),
        doctest::Contains("coupling"), std::invalid_argument);
    CHECK_THROWS_AS((void)FieldSpec::product({}, {{1.0, 0.0}}), std::invalid_argument);
}

TEST_CASE("joint fields validate their shape and norm") {
    const double h = 0.5;
    const auto good = materialize(FieldSpec::joint(
        2, 2, {{h, 0.0}, {0.0, h}, {-h, 0.0}, {0.0, -h}}));
    CHECK(good.dim1 == 2);
    CHECK(good.dim2 == 2);
    CHECK(sum_sq(good) == doctest::Approx(1.0).epsilon(1e-15));

    CHECK_THROWS_AS((void)FieldSpec::joint(2, 2, {{1.0, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS((void)materialize(FieldSpec::joint(1, 2, {{0.4, 0.0}, {0.4, 0.0}})),
                    std::invalid_argument);
}

TEST_CASE("weight distribution reports the mean photon numbers") {
    const auto a = coherent_amplitudes(1.5, 2.0, 30, 40);
    const auto w = weight_distribution(a);
    CHECK(w.dim1 == a.dim1);
    CHECK(w.dim2 == a.dim2);
    CHECK(w.nbar_alpha == doctest::Approx(2.25).epsilon(1e-9));
    CHECK(w.nbar_beta == doctest::Approx(4.0).epsilon(1e-9));
    double total = 0.0;
    for (double v : w.p)
        total += v;
    CHECK(total == doctest::Approx(1.0 - a.tail_mass).epsilon(1e-12));
}

TEST_CASE("undersized truncation is reported through the tail mass") {
    const auto a = coherent_amplitudes(3.0, 0.0, 4, 0);  // nbar 9, cut at 4
    CHECK(a.tail_mass > 0.9);
    CHECK(a.tail_warning);
}
