#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace qeit {

// ----------------------------------------------------------------------------
// system parameters
// ----------------------------------------------------------------------------

// Three-level ladder: |1> ground, |2> excited, |3> metastable. The probe field
// (mode 1) drives 1<->2, the coupling field (mode 2) drives 2<->3. Detunings
// follow the atom-minus-laser convention, so positive delta means the laser is
// tuned below the atomic line.
struct SystemParams {
    double g1 = 1.0;            // probe vacuum Rabi coupling, rad/s
    double g2 = 1.0;            // coupling-mode vacuum Rabi coupling, rad/s
    double delta1 = 0.0;        // probe detuning, rad/s
    double delta2 = 0.0;        // coupling detuning, rad/s
    double omega1 = 1.0;        // probe carrier frequency, rad/s
    double omega2 = 1.0;        // coupling carrier frequency, rad/s
    double mu12 = 1.0;          // 1<->2 dipole moment, C*m
    double mu32 = 1.0;          // 3<->2 dipole moment, C*m
    double atom_density = 1.0;  // atoms per m^3
    double mode_volume = 1.0;   // quantization volume, m^3

    // Throws std::invalid_argument naming the offending field. Detunings may
    // take either sign; everything else must be strictly positive.
    void validate() const {
        auto positive = [](double v, const char* name) {
            if (!(v > 0.0) || !std::isfinite(v))
                throw std::invalid_argument(std::string(name) + " must be positive and finite");
        };
        positive(g1, "g1");
        positive(g2, "g2");
        positive(omega1, "omega1");
        positive(omega2, "omega2");
        positive(mu12, "mu12");
        positive(mu32, "mu32");
        positive(atom_density, "atom_density");
        positive(mode_volume, "mode_volume");
        if (!std::isfinite(delta1)) throw std::invalid_argument("delta1 must be finite");
        if (!std::isfinite(delta2)) throw std::invalid_argument("delta2 must be finite");
    }
};

// ----------------------------------------------------------------------------
// Fock-block bookkeeping
// ----------------------------------------------------------------------------

// Excitation-number block spanned by |1,n1,n2>, |2,n1-1,n2>, |3,n1-1,n2+1>.
// n1 >= 1 so the shifted kets exist; n1 = 0 blocks are uncoupled.
struct FockBlock {
    int n1 = 1;
    int n2 = 0;

    void validate() const {
        if (n1 < 1) throw std::invalid_argument("n1 must be >= 1");
        if (n2 < 0) throw std::invalid_argument("n2 must be >= 0");
    }
};

using Mat3 = std::array<std::array<double, 3>, 3>;

// ----------------------------------------------------------------------------
// eigenstructure
// ----------------------------------------------------------------------------

enum class Branch { plus, zero, minus };

inline const char* branch_name(Branch b) {
    switch (b) {
        case Branch::plus:  return "plus";
        case Branch::zero:  return "zero";
        case Branch::minus: return "minus";
    }
    return "?";
}

// Exact or perturbative block eigenvalues, labelled by dressed branch.
struct EigenTriple {
    double e_plus = 0.0;
    double e_zero = 0.0;
    double e_minus = 0.0;

    double sum() const { return e_plus + e_zero + e_minus; }
    double by_branch(Branch b) const {
        switch (b) {
            case Branch::plus:  return e_plus;
            case Branch::zero:  return e_zero;
            case Branch::minus: return e_minus;
        }
        return 0.0;
    }
};

// Characteristic-cubic data, exposed so callers can inspect the discriminant
// regime that picked the solution path. Monic cubic lambda^3 + A lambda^2 +
// B lambda + Ccoef; depressed form y^3 + p y + q.
struct CubicIntermediates {
    double A = 0.0;      // rad/s
    double B = 0.0;      // rad^2/s^2
    double Ccoef = 0.0;  // rad^3/s^3
    double p = 0.0;
    double q = 0.0;
    double discriminant = 0.0;   // q^2/4 + p^3/27
    bool degenerate = false;     // |discriminant| within tolerance of zero
};

// Effective Rabi frequencies for one block: omega1_rabi = 2 g1 sqrt(n1),
// omega2_rabi = 2 g2 sqrt(n2+1).
struct RabiPair {
    double omega1_rabi = 0.0;
    double omega2_rabi = 0.0;

    double omega_total() const {
        return std::sqrt(omega1_rabi * omega1_rabi + omega2_rabi * omega2_rabi);
    }

    static RabiPair from_block(const SystemParams& p, const FockBlock& blk) {
        blk.validate();
        return {2.0 * p.g1 * std::sqrt(double(blk.n1)),
                2.0 * p.g2 * std::sqrt(double(blk.n2) + 1.0)};
    }
    static RabiPair from_values(double omega1_rabi, double omega2_rabi) {
        return {omega1_rabi, omega2_rabi};
    }
};

// One dressed eigenvector in the bare block basis (components along
// |1,n1,n2>, |2,n1-1,n2>, |3,n1-1,n2+1>).
struct DressedTriple {
    Branch branch = Branch::zero;
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;

    double norm() const { return std::sqrt(a * a + b * b + c * c); }
};

struct DressedSet {
    DressedTriple plus;
    DressedTriple zero;
    DressedTriple minus;
};

} // namespace qeit
