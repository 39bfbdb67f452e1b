#pragma once

#include "qeit/types.hpp"

namespace qeit {

// Effective Rabi frequencies of one block: omega1_rabi = 2 g1 sqrt(n1),
// omega2_rabi = 2 g2 sqrt(n2+1).
RabiPair rabi_frequencies(const SystemParams& p, const FockBlock& blk);

// Block eigenvalues to first order in the detunings:
//   E(+-) = (W1^2 + 2 W2^2)/(2 W^2) * delta1 - W2^2/(2 W^2) * delta2 +- W/2
//   E(0)  = (W1^2 / W^2) * (delta1 - delta2)
// with W^2 = W1^2 + W2^2. Exact when delta1 = delta2 = 0; the zero branch is
// exact on the whole two-photon resonance line delta1 = delta2.
EigenTriple perturbative_eigenvalues(const SystemParams& p, const RabiPair& r);
EigenTriple perturbative_eigenvalues(const SystemParams& p, const FockBlock& blk);

// Dressed eigenvectors to first order in the detunings, components in the
// block basis (|1,n1,n2>, |2,n1-1,n2>, |3,n1-1,n2+1>). The zero branch is the
// dark state: no excited-level component at two-photon resonance. The bright
// branches carry the detuning corrections in the unique combination that
// keeps the triple first-order orthonormal (Gram defect O(delta^2)).
DressedTriple dressed_coefficients(const SystemParams& p, const FockBlock& blk, Branch branch);
DressedSet dressed_coefficients(const SystemParams& p, const RabiPair& r);
DressedSet dressed_coefficients(const SystemParams& p, const FockBlock& blk);

// || H v0 - E0 v0 ||_2 for the zero-branch triple as returned (E0 from the
// perturbative expression), in rad/s. Vanishes to rounding whenever
// delta1 = delta2, since the dark state is then exact with eigenvalue zero.
double dark_state_residual(const SystemParams& p, const FockBlock& blk);

} // namespace qeit
