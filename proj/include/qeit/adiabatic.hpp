#pragma once

#include "qeit/field.hpp"
#include "qeit/types.hpp"

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace qeit {

// Whether block phases carry the photon energies omega1*n1 + omega2*n2 or
// only the dressed shift. The interaction frame is what a rotating-frame
// integrator sees; observables built from phase differences between adjacent
// blocks differ between the frames only by the constant carrier offset.
enum class Frame { lab, interaction };

// Amplitude map over the dark eigenstate of every (n1, n2) block: the state
// reached when the couplings are ramped on slowly, coupling mode first. Rows
// with n1 = 0 degenerate to the bare ground level (b0 = c0 = 0).
struct AdiabaticState {
    std::size_t dim1 = 0;    // photon grid, n1 in [0, dim1)
    std::size_t dim2 = 0;
    std::vector<std::complex<double>> block_amp;  // C(n1,n2) e^{-i e0 t}
    std::vector<double> a0, b0, c0;               // dark components per block
    std::vector<double> e0;                       // phase rate per block, rad/s
    double tail_mass = 0.0;
    bool tail_warning = false;

    std::size_t idx(std::size_t n1, std::size_t n2) const { return n1 * dim2 + n2; }

    // Expand onto the bare atom x Fock grid with element (m*np1 + n1)*np2 + n2,
    // the layout the brute-force evolution uses. Components that fall outside
    // the grid are dropped.
    std::vector<std::complex<double>> flatten(std::size_t np1, std::size_t np2) const;
    // Smallest grid that loses nothing: (dim1, dim2 + 1).
    std::vector<std::complex<double>> flatten() const { return flatten(dim1, dim2 + 1); }
};

AdiabaticState adiabatic_state(const SystemParams& p, const FieldSpec& field, double t,
                               Frame frame = Frame::lab);

// Per-level field-space amplitude planes: d1(m1,m2), d2(m1,m2), d3(m1,m2) are
// the amplitudes of |1,m1,m2>, |2,m1,m2>, |3,m1,m2> in the flattened state.
// The grid is dim1 x (dim2 + 1) so the level-3 plane keeps its top row.
struct DCoefficients {
    std::size_t dim1 = 0;
    std::size_t dim2 = 0;
    std::vector<std::complex<double>> d1, d2, d3;
};

DCoefficients d_coefficients(const AdiabaticState& s);

struct AtomDensityMatrix {
    std::array<std::complex<double>, 9> rho{};

    std::complex<double> at(int i, int j) const { return rho[std::size_t(i) * 3 + j]; }
    double trace_real() const { return (rho[0] + rho[4] + rho[8]).real(); }
    double hermiticity_defect() const;
};

// Atomic reduced density matrix: nine pairwise plane reductions in a fixed
// deterministic order with compensated accumulation.
AtomDensityMatrix reduced_density_matrix(const AdiabaticState& s);
AtomDensityMatrix reduced_density_matrix(const SystemParams& p, const FieldSpec& field, double t);

// The two optical coherences as literal double sums over the photon
// distribution, with the adjacent-block amplitude factors and phase
// differences written out.
struct CoherencePair {
    std::complex<double> rho21;
    std::complex<double> rho23;
    double tail_mass = 0.0;
};

CoherencePair coherences_timeseries(const SystemParams& p, double alpha, double beta, double t);

// Closed-form coherences with the Rabi frequencies frozen at their mean
// photon numbers; the Fourier-component (t = 0) form, real by construction.
struct LargeNCoherences {
    double rho21 = 0.0;  // abar0 * bbar0
    double rho23 = 0.0;  // cbar0 * bbar0
};

LargeNCoherences large_n_coherences(const SystemParams& p, double nbar_alpha, double nbar_beta);

// Relative photon-number spread 1/sqrt(nbar) and the second-order Rabi
// expansion scale 1/(8 nbar) that bounds the frozen-Rabi error.
struct RabiSpread {
    double relative_spread = 0.0;
    double second_order_scale = 0.0;
};

RabiSpread rabi_spread_estimate(double nbar);

// Probe coherence for an arbitrary product-form field: sum of
// c1(n1+1) c1*(n1) |c2(n2)|^2 a0(n1,n2) b0(n1,n2). Exactly zero whenever the
// probe array has no adjacent-photon-number coherence (Fock states, gapped
// superpositions), whatever the photon statistics look like.
std::complex<double> nonclassical_coherence(const SystemParams& p, const FieldSpec& field);

} // namespace qeit
