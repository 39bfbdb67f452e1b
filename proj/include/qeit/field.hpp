#pragma once

#include <complex>
#include <cstddef>
#include <variant>
#include <vector>

namespace qeit {

// ----------------------------------------------------------------------------
// two-mode field specifications
// ----------------------------------------------------------------------------

// Coherent amplitudes per mode; photon distributions are Poissonian with
// means alpha^2 and beta^2.
struct CoherentKind {
    double alpha = 0.0;
    double beta = 0.0;
};

// Arbitrary product state: separately normalized amplitude arrays over the
// photon number of each mode.
struct ProductKind {
    std::vector<std::complex<double>> c1;
    std::vector<std::complex<double>> c2;
};

// Fully general joint amplitudes, c[n1*dim2 + n2].
struct JointKind {
    std::size_t dim1 = 0;
    std::size_t dim2 = 0;
    std::vector<std::complex<double>> c;
};

// trunc < 0 means "choose automatically": the Poisson-tail rule for coherent
// fields, the array length for explicit amplitude arrays.
struct FieldSpec {
    std::variant<CoherentKind, ProductKind, JointKind> kind;
    int trunc1 = -1;
    int trunc2 = -1;

    static FieldSpec coherent(double alpha, double beta, int trunc1 = -1, int trunc2 = -1);
    static FieldSpec product(std::vector<std::complex<double>> c1,
                             std::vector<std::complex<double>> c2);
    static FieldSpec joint(std::size_t dim1, std::size_t dim2,
                           std::vector<std::complex<double>> c);
};

// Truncation cutoff ceil(nbar + 10 sqrt(nbar+1)); Poisson tail mass beyond it
// is below 1e-12, negligible against every tolerance in the test suite.
int default_truncation(double nbar);

// ----------------------------------------------------------------------------
// materialized amplitudes
// ----------------------------------------------------------------------------

struct JointAmplitudes {
    std::size_t dim1 = 0;   // n1 grid size (trunc1 + 1)
    std::size_t dim2 = 0;
    std::vector<std::complex<double>> c;
    double tail_mass = 0.0;      // 1 - sum |c|^2
    bool tail_warning = false;   // tail_mass > 1e-6

    const std::complex<double>& at(std::size_t n1, std::size_t n2) const {
        return c[n1 * dim2 + n2];
    }
    std::complex<double>& at(std::size_t n1, std::size_t n2) {
        return c[n1 * dim2 + n2];
    }
};

// Joint coherent amplitudes C(n1,n2) = e^{-(a^2+b^2)/2} a^n1 b^n2 /
// sqrt(n1! n2!), evaluated in log space so large mean photon numbers do not
// overflow. Negative amplitudes carry their sign through odd powers.
JointAmplitudes coherent_amplitudes(double alpha, double beta, int trunc1, int trunc2);

// Resolve any FieldSpec to a concrete amplitude grid. Explicit amplitude
// arrays must be normalized within 1e-6 (they are renormalized exactly after
// the check); coherent fields report their truncation tail instead.
JointAmplitudes materialize(const FieldSpec& f);

// Poisson product weights P(n1,n2) = |C(n1,n2)|^2 for a materialized field.
struct WeightDistribution {
    std::size_t dim1 = 0, dim2 = 0;
    std::vector<double> p;
    double nbar_alpha = 0.0;
    double nbar_beta = 0.0;
};

WeightDistribution weight_distribution(const JointAmplitudes& amps);

} // namespace qeit
