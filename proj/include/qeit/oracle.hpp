#pragma once

#include "qeit/kernels.hpp"
#include "qeit/types.hpp"

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

// Brute-force verification machinery. Nothing in this namespace calls the
// closed-form eigenvalue or perturbative expressions: eigenvalues come from
// iterative Jacobi rotations, states from direct integration of the
// Schroedinger equation on the truncated Fock grid. Analytic targets (where
// needed) are passed in by the caller, keeping the two routes independent.

namespace qeit::oracle {

// ---------------------------------------------------------------------------
// dense symmetric eigensolver
// ---------------------------------------------------------------------------

struct EigenResult {
    std::size_t n = 0;
    std::vector<double> values;    // ascending
    std::vector<double> vectors;   // row-major; column j = eigenvector j
};

// Cyclic Jacobi on a symmetric matrix (row-major, destroyed internally).
// Converges to off-diagonal Frobenius norm < 1e-14 of the matrix scale.
EigenResult jacobi_eigen(std::vector<double> a, std::size_t n);

struct Block3Eigen {
    std::array<double, 3> values;  // ascending
    Mat3 vectors;                  // vectors[i][j] = component i of eigenvector j
};

// Eigensystem of one 3x3 block. Rejects matrices whose symmetry defect
// exceeds 1e-10 of the element scale.
Block3Eigen dense_block_eigen(const Mat3& m);

// ---------------------------------------------------------------------------
// polynomial least squares
// ---------------------------------------------------------------------------

struct PolyFit {
    std::vector<double> coeffs;    // in original x units, degree ascending
    double condition = 0.0;        // R-diagonal ratio of the scaled problem
    bool ill_conditioned = false;  // condition > 1e10
    double rms_residual = 0.0;
};

// Least-squares polynomial fit with centered and scaled abscissae
// (Householder QR). Requires len >= degree + 2 and pairwise-distinct xs.
PolyFit polynomial_fit(const std::vector<double>& xs, const std::vector<double>& ys,
                       int degree);

// ---------------------------------------------------------------------------
// truncated Fock-grid Hamiltonian
// ---------------------------------------------------------------------------

// Full interaction-picture Hamiltonian on the product basis |m> x |n1> x |n2>,
// m in {1,2,3}, n1 <= n1max, n2 <= n2max, in the flat layout of kern::HamView.
// Couplings can be rescaled in [0,1] for ramping.
class TruncatedHamiltonian {
public:
    TruncatedHamiltonian(const SystemParams& p, int n1max, int n2max);

    int np1() const { return np1_; }
    int np2() const { return np2_; }
    std::size_t dim() const { return std::size_t(3) * np1_ * np2_; }

    void set_scales(double scale_g1, double scale_g2);
    double scale_g1() const { return s1_; }
    double scale_g2() const { return s2_; }

    kern::HamView view() const;
    void apply(const double* x, double* y) const;   // real plane, y = H x
    void apply(const std::complex<double>* x, std::complex<double>* y) const;

    // Dense row-major form, built column-by-column through apply so the two
    // representations cannot drift apart. Guarded to dim <= 2000.
    std::vector<double> to_dense() const;
    double hermiticity_defect() const;              // max |H - H^T| over to_dense

    // The 3x3 invariant block anchored at |1,n1,n2>, with scales applied.
    Mat3 block_of(const FockBlock& blk) const;

private:
    int np1_, np2_;
    double d1_, d12_;
    double s1_ = 1.0, s2_ = 1.0;
    std::vector<double> c1_base_, c2_base_;  // g*sqrt(k) tables, unscaled
    std::vector<double> c1_, c2_;            // scaled copies handed to kernels
};

// Checks the dimension cap (default 20000 basis states) and preconditions.
TruncatedHamiltonian build_truncated_hamiltonian(const SystemParams& p,
                                                 int n1max, int n2max,
                                                 double scale_g1 = 1.0,
                                                 double scale_g2 = 1.0,
                                                 std::size_t dim_cap = 20000);

// ---------------------------------------------------------------------------
// ramped evolution
// ---------------------------------------------------------------------------

double smoothstep_quintic(double u);   // 10u^3 - 15u^4 + 6u^5, clamped to [0,1]

// Turn-on schedule for the two couplings. Each coupling rises from 0 to 1
// over [t_on, t_on + rise] along the quintic smoothstep and holds afterwards.
struct RampProfile {
    double t_total = 0.0;
    double t_on_g2 = 0.0;
    double rise_g2 = 0.0;
    double t_on_g1 = 0.0;
    double rise_g1 = 0.0;

    // Coupling field first (t_on_g2 < t_on_g1): the ordering that prepares
    // the dark state. "reversed" swaps the two turn-ons as a diagnostic.
    static RampProfile counterintuitive(double t_total);
    static RampProfile reversed(double t_total);

    double scale_g1(double t) const;
    double scale_g2(double t) const;
};

struct RampResult {
    std::vector<std::complex<double>> state;  // flat (m,n1,n2) layout
    double fidelity = -1.0;                   // |<target|state>|^2, -1 if no target given
    double norm_drift = 0.0;                  // max |norm(t)/norm(0) - 1|
    std::size_t steps = 0;
    double dt = 0.0;
};

// Fixed-step RK4 integration of i d|psi>/dt = H(t)|psi> from psi0 over the
// ramp schedule. dt <= 0 selects the default step 0.05/Omega_max. If target
// is non-null the squared overlap with the final state is reported; the
// caller supplies the analytic state so this module stays independent of the
// closed-form expressions. Norm drift beyond 1e-6 throws (step too large).
RampResult evolve_ramped(const SystemParams& p, int n1max, int n2max,
                         const RampProfile& ramp, double dt,
                         const std::vector<std::complex<double>>& psi0,
                         const std::vector<std::complex<double>>* target = nullptr);

// ---------------------------------------------------------------------------
// state utilities
// ---------------------------------------------------------------------------

std::complex<double> overlap(const std::vector<std::complex<double>>& a,
                             const std::vector<std::complex<double>>& b);

// rho[m*3+m'] = sum_{n1,n2} psi(m,n1,n2) conj(psi(m',n1,n2))
std::array<std::complex<double>, 9>
partial_trace_atom(const std::vector<std::complex<double>>& psi, int np1, int np2);

} // namespace qeit::oracle
