#pragma once

#include "qeit/types.hpp"

#include <complex>
#include <string>
#include <string_view>
#include <vector>

namespace qeit {

// ----------------------------------------------------------------------------
// experiment presets
// ----------------------------------------------------------------------------

struct ExperimentPreset {
    std::string name;
    double I1 = 0.0;      // probe intensity, W/m^2
    double I2 = 0.0;      // coupling intensity, W/m^2
    double delta1 = 0.0;  // rad/s
    double delta2 = 0.0;  // rad/s
    double lambda1 = 0.0; // m
    double lambda2 = 0.0; // m
    double v_probe_group_observed = 0.0;  // m/s
    double dipole_ratio = 1.0;            // mu12 / mu32
};

const ExperimentPreset& hau1999();
const std::vector<ExperimentPreset>& all_presets();
const ExperimentPreset* find_preset(std::string_view name);  // nullptr if unknown

// How mean Rabi frequencies are obtained from beam intensities. The published
// 1020 m/s coupling-pulse figure needs the bare intensity ratio
// W1^2/W2^2 = I1/I2; keeping the dipole factors from W^2 = 2 mu^2 I/(eps0 c
// hbar^2) gives 680 m/s instead. Both readings are first-class.
enum class RabiConversion { paper, strict };

const char* rabi_conversion_name(RabiConversion mode);

// W = sqrt(2 mu^2 I / (eps0 c hbar^2)), the conversion every preset goes
// through exactly once.
double rabi_from_intensity(double mu, double intensity);
double intensity_from_rabi(double mu, double omega_rabi);

// Mean Rabi pair for a preset: W2 always from the strict conversion with
// mu32; W1 either scaled by sqrt(I1/I2) (paper) or converted with mu12
// (strict).
RabiPair rabi_pair_from_preset(const SystemParams& p, const ExperimentPreset& e,
                               RabiConversion mode);

// Reconstruct microscopic parameters that reproduce a preset's observables:
// carrier frequencies from the wavelengths, densities from the inferred
// zero-probe group velocity, couplings from the chosen dipole moment and
// quantization volume (both drop out of every closed-form observable).
SystemParams preset_to_params(const ExperimentPreset& e, RabiConversion mode,
                              double mu32 = 2.0e-29, double mode_volume = 1.0e-9);

// ----------------------------------------------------------------------------
// macroscopic response
// ----------------------------------------------------------------------------

// P = N (mu12 rho21 + mu32 rho23) + c.c., real by construction.
double polarization(const SystemParams& p, std::complex<double> rho21,
                    std::complex<double> rho23);

// Fourier components of the mean field, E(omega_i) = sqrt(hbar omega_i /
// (2 eps0 V)) * amplitude.
struct FieldFourier {
    double e1 = 0.0;  // V/m
    double e2 = 0.0;
};

FieldFourier field_fourier(double alpha, double beta, const SystemParams& p);

// Probe susceptibility, full form: -4 N mu12^2 W2^2 (d1-d2) / (hbar eps0 W^4).
// Real; vanishes on the two-photon resonance line.
double susceptibility_probe(const SystemParams& p, const RabiPair& r);

// Weak-probe limit and its resonance derivatives. Frequency derivatives are
// in the laser frequency, which runs opposite to the detuning.
struct LinearSusceptibility {
    double chi1 = 0.0;
    double dchi_domega1 = 0.0;      // s/rad, positive: normal dispersion
    double d2chi_domega1sq = 0.0;   // zero at this order
};

LinearSusceptibility susceptibility_probe_linear(const SystemParams& p, const RabiPair& r);

// Coupling-mode susceptibility, +4 N mu32^2 W1^2 (d1-d2) / (hbar eps0 W^4),
// and its weak-probe limit +4 N mu32^2 W1^2 (d1-d2) / (hbar eps0 W2^4).
double susceptibility_coupling(const SystemParams& p, const RabiPair& r);
double susceptibility_coupling_linear(const SystemParams& p, const RabiPair& r);

struct GroupVelocity {
    double v = 0.0;   // m/s
    double v0 = 0.0;  // zero-probe (resp. strong-coupling) baseline, m/s
};

// v = v0 (W1^2+W2^2)^2 / W2^4 with v0 = hbar c eps0 W2^2 / (2 omega1 mu12^2 N).
GroupVelocity group_velocity_probe(const SystemParams& p, const RabiPair& r);

// v = v0 (W1^2+W2^2)^2 / W1^4 with v0 = v0_probe * (W1^2/W2^2) * (omega1/omega2)
// * (mu12/mu32)^2; with intensity-ratio Rabi pairs this is exactly the printed
// v0_probe * omega1 I1 mu12^2 / (omega2 I2 mu32^2). Throws when W1 = 0: no
// coupling-pulse group delay is defined without a probe.
GroupVelocity group_velocity_coupling(const SystemParams& p, const RabiPair& r);

// Dispersive index changes (lambda/2pi) (d1-d2) / v.
double index_change_probe(const SystemParams& p, double v_probe);
double index_change_coupling(const SystemParams& p, double v_coupling);

// The closed coupling-mode form chi_coupling / 2, equal to
// index_change_coupling whenever v comes from the same Rabi pair.
double index_change_coupling_explicit(const SystemParams& p, const RabiPair& r);

// ----------------------------------------------------------------------------
// preset-level response bundle
// ----------------------------------------------------------------------------

struct OpticalResponse {
    double chi_probe = 0.0;
    double chi_coupling = 0.0;
    double dchi_domega1 = 0.0;       // s/rad
    double v_probe_group = 0.0;      // m/s
    double v0_probe = 0.0;
    double v_coupling_group = 0.0;   // m/s, under `mode`
    double v0_coupling = 0.0;
    double dn_probe = 0.0;
    double dn_coupling = 0.0;
    double rabi_ratio_sq = 0.0;      // W1^2 / W2^2 under `mode`
    RabiConversion mode = RabiConversion::paper;
    // Both coupling-velocity readings, whatever `mode` says.
    double v_coupling_group_paper = 0.0;
    double v_coupling_group_strict = 0.0;
};

// Closed-form response chain anchored at the preset's observed probe group
// velocity: v0 = v_obs / (1+r)^2, then everything else follows from the
// printed formulas.
OpticalResponse response_from_preset(const ExperimentPreset& e,
                                     RabiConversion mode = RabiConversion::paper);

} // namespace qeit
