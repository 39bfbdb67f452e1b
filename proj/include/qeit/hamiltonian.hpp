#pragma once

#include "qeit/types.hpp"

#include <array>

namespace qeit {

// Interaction-picture Hamiltonian restricted to the invariant block spanned by
// |1,n1,n2>, |2,n1-1,n2>, |3,n1-1,n2+1>, in units of rad/s:
//
//   [ 0        -g1*sqrt(n1)      0              ]
//   [ -g1*sqrt(n1)   delta1      -g2*sqrt(n2+1) ]
//   [ 0        -g2*sqrt(n2+1)    delta1-delta2  ]
Mat3 block_matrix(const SystemParams& p, const FockBlock& blk);

// Characteristic-polynomial data for the block: monic cubic coefficients,
// the depressed form, and the discriminant q^2/4 + p^3/27.
CubicIntermediates cubic_intermediates(const SystemParams& p, const FockBlock& blk);

// True iff q^2/4 + p^3/27 is strictly negative, i.e. three distinct real
// roots. Physical blocks always satisfy this: the depressed-cubic p is
// bounded above by -(g1^2 n1 + g2^2 (n2+1)).
bool reality_condition(double p, double q);
bool reality_condition(const CubicIntermediates& ci);

// Roots of the cubic by the trigonometric method, unordered. Degenerate
// discriminants (|disc| within a relative tolerance of zero) fall back to the
// closed double/triple-root formulas. A discriminant positive beyond the
// tolerance throws std::domain_error: that means complex roots, which cannot
// happen for a Hermitian block and signals a bad input.
std::array<double, 3> cardano_roots(const CubicIntermediates& ci);

// Exact block eigenvalues labelled by dressed branch. Labels are assigned by
// matching the three roots against the perturbative triple (all six
// permutations, minimal total squared distance).
EigenTriple exact_eigenvalues(const SystemParams& p, const FockBlock& blk);

} // namespace qeit
