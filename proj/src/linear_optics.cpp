#include "qeit/linear_optics.hpp"

#include "qeit/constants.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qeit {

namespace {

void check_preset(const ExperimentPreset& e) {
    auto positive = [&](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument("preset " + e.name + ": " + name +
                                        " must be positive and finite");
    };
    positive(e.I1, "I1");
    positive(e.I2, "I2");
    positive(e.lambda1, "lambda1");
    positive(e.lambda2, "lambda2");
    positive(e.v_probe_group_observed, "v_probe_group_observed");
    positive(e.dipole_ratio, "dipole_ratio");
    if (!std::isfinite(e.delta1) || !std::isfinite(e.delta2))
        throw std::invalid_argument("preset " + e.name + ": detunings must be finite");
}

void check_rabi(const RabiPair& r, bool need_w1) {
    if (!(r.omega2_rabi > 0.0) || !std::isfinite(r.omega2_rabi))
        throw std::invalid_argument("omega2_rabi must be positive and finite");
    if (r.omega1_rabi < 0.0 || !std::isfinite(r.omega1_rabi))
        throw std::invalid_argument("omega1_rabi must be non-negative and finite");
    if (need_w1 && r.omega1_rabi == 0.0)
        throw std::invalid_argument("no coupling-pulse group delay defined for a zero probe");
}

double ratio_for_mode(const ExperimentPreset& e, RabiConversion mode) {
    const double r = e.I1 / e.I2;
    return mode == RabiConversion::strict ? r * e.dipole_ratio * e.dipole_ratio : r;
}

} // namespace

const ExperimentPreset& hau1999() {
    static const ExperimentPreset e{
        "hau1999",
        10.0,       // 1 mW/cm^2 probe
        400.0,      // 40 mW/cm^2 coupling
        1.3e6,      // rad/s
        0.0,
        589.0e-9,
        589.0e-9,
        17.0,       // m/s, the headline slow-light figure
        1.22,
    };
    return e;
}

const std::vector<ExperimentPreset>& all_presets() {
    static const std::vector<ExperimentPreset> table{hau1999()};
    return table;
}

const ExperimentPreset* find_preset(std::string_view name) {
    for (const ExperimentPreset& e : all_presets())
        if (e.name == name)
            return &e;
    return nullptr;
}

const char* rabi_conversion_name(RabiConversion mode) {
    return mode == RabiConversion::paper ? "paper" : "strict";
}

double rabi_from_intensity(double mu, double intensity) {
    if (!(mu > 0.0) || !(intensity >= 0.0))
        throw std::invalid_argument("rabi_from_intensity: mu > 0 and intensity >= 0 required");
    return std::sqrt(2.0 * mu * mu * intensity / (eps0 * c_light * hbar * hbar));
}

double intensity_from_rabi(double mu, double omega_rabi) {
    if (!(mu > 0.0) || !(omega_rabi >= 0.0))
        throw std::invalid_argument("intensity_from_rabi: mu > 0 and omega_rabi >= 0 required");
    return omega_rabi * omega_rabi * eps0 * c_light * hbar * hbar / (2.0 * mu * mu);
}

RabiPair rabi_pair_from_preset(const SystemParams& p, const ExperimentPreset& e,
                               RabiConversion mode) {
    check_preset(e);
    const double w2 = rabi_from_intensity(p.mu32, e.I2);
    const double w1 = mode == RabiConversion::paper ? w2 * std::sqrt(e.I1 / e.I2)
                                                    : rabi_from_intensity(p.mu12, e.I1);
    return RabiPair::from_values(w1, w2);
}

SystemParams preset_to_params(const ExperimentPreset& e, RabiConversion mode, double mu32,
                              double mode_volume) {
    check_preset(e);
    if (!(mu32 > 0.0) || !(mode_volume > 0.0))
        throw std::invalid_argument("preset_to_params: mu32 and mode_volume must be positive");

    SystemParams p;
    p.omega1 = 2.0 * std::numbers::pi * c_light / e.lambda1;
    p.omega2 = 2.0 * std::numbers::pi * c_light / e.lambda2;
    p.mu32 = mu32;
    p.mu12 = e.dipole_ratio * mu32;
    p.delta1 = e.delta1;
    p.delta2 = e.delta2;
    p.mode_volume = mode_volume;

    const double r = ratio_for_mode(e, mode);
    const double v0p = e.v_probe_group_observed / ((1.0 + r) * (1.0 + r));
    p.atom_density = mu32 * mu32 * e.I2 / (hbar * p.omega1 * p.mu12 * p.mu12 * v0p);

    p.g1 = p.mu12 * std::sqrt(p.omega1 / (2.0 * eps0 * hbar * mode_volume));
    p.g2 = p.mu32 * std::sqrt(p.omega2 / (2.0 * eps0 * hbar * mode_volume));
    p.validate();
    return p;
}

double polarization(const SystemParams& p, std::complex<double> rho21,
                    std::complex<double> rho23) {
    p.validate();
    return 2.0 * p.atom_density * (p.mu12 * rho21.real() + p.mu32 * rho23.real());
}

FieldFourier field_fourier(double alpha, double beta, const SystemParams& p) {
    p.validate();
    const double common = 1.0 / (2.0 * eps0 * p.mode_volume);
    return {std::sqrt(hbar * p.omega1 * common) * alpha,
            std::sqrt(hbar * p.omega2 * common) * beta};
}

double susceptibility_probe(const SystemParams& p, const RabiPair& r) {
    p.validate();
    check_rabi(r, false);
    const double w1sq = r.omega1_rabi * r.omega1_rabi;
    const double w2sq = r.omega2_rabi * r.omega2_rabi;
    const double wsq = w1sq + w2sq;
    return -4.0 * p.atom_density * p.mu12 * p.mu12 * w2sq * (p.delta1 - p.delta2) /
           (hbar * eps0 * wsq * wsq);
}

LinearSusceptibility susceptibility_probe_linear(const SystemParams& p, const RabiPair& r) {
    p.validate();
    check_rabi(r, false);
    const double w2sq = r.omega2_rabi * r.omega2_rabi;
    const double scale = 4.0 * p.atom_density * p.mu12 * p.mu12 / (hbar * eps0 * w2sq);
    return {-scale * (p.delta1 - p.delta2), scale, 0.0};
}

double susceptibility_coupling(const SystemParams& p, const RabiPair& r) {
    p.validate();
    check_rabi(r, false);
    const double w1sq = r.omega1_rabi * r.omega1_rabi;
    const double w2sq = r.omega2_rabi * r.omega2_rabi;
    const double wsq = w1sq + w2sq;
    return 4.0 * p.atom_density * p.mu32 * p.mu32 * w1sq * (p.delta1 - p.delta2) /
           (hbar * eps0 * wsq * wsq);
}

double susceptibility_coupling_linear(const SystemParams& p, const RabiPair& r) {
    p.validate();
    check_rabi(r, false);
    const double w1sq = r.omega1_rabi * r.omega1_rabi;
    const double w2sq = r.omega2_rabi * r.omega2_rabi;
    return 4.0 * p.atom_density * p.mu32 * p.mu32 * w1sq * (p.delta1 - p.delta2) /
           (hbar * eps0 * w2sq * w2sq);
}

GroupVelocity group_velocity_probe(const SystemParams& p, const RabiPair& r) {
    p.validate();
    check_rabi(r, false);
    const double w1sq = r.omega1_rabi * r.omega1_rabi;
    const double w2sq = r.omega2_rabi * r.omega2_rabi;
    const double wsq = w1sq + w2sq;
    const double v0 = hbar * c_light * eps0 * w2sq /
                      (2.0 * p.omega1 * p.mu12 * p.mu12 * p.atom_density);
    return {v0 * (wsq * wsq) / (w2sq * w2sq), v0};
}

GroupVelocity group_velocity_coupling(const SystemParams& p, const RabiPair& r) {
    p.validate();
    check_rabi(r, true);
    const double w1sq = r.omega1_rabi * r.omega1_rabi;
    const double w2sq = r.omega2_rabi * r.omega2_rabi;
    const double wsq = w1sq + w2sq;
    const double v0p = hbar * c_light * eps0 * w2sq /
                       (2.0 * p.omega1 * p.mu12 * p.mu12 * p.atom_density);
    const double dip = p.mu12 / p.mu32;
    const double v0 = v0p * (w1sq / w2sq) * (p.omega1 / p.omega2) * dip * dip;
    return {v0 * (wsq * wsq) / (w1sq * w1sq), v0};
}

double index_change_probe(const SystemParams& p, double v_probe) {
    p.validate();
    if (!(v_probe > 0.0))
        throw std::invalid_argument("index_change_probe: group velocity must be positive");
    return (c_light / p.omega1) * (p.delta1 - p.delta2) / v_probe;
}

double index_change_coupling(const SystemParams& p, double v_coupling) {
    p.validate();
    if (!(v_coupling > 0.0))
        throw std::invalid_argument("index_change_coupling: group velocity must be positive");
    return (c_light / p.omega2) * (p.delta1 - p.delta2) / v_coupling;
}

double index_change_coupling_explicit(const SystemParams& p, const RabiPair& r) {
    return susceptibility_coupling(p, r) / 2.0;
}

OpticalResponse response_from_preset(const ExperimentPreset& e, RabiConversion mode) {
    check_preset(e);
    const double pi = std::numbers::pi;
    const double ddiff = e.delta1 - e.delta2;
    const double omega_ratio = e.lambda2 / e.lambda1;  // omega1/omega2
    const double dip_sq = e.dipole_ratio * e.dipole_ratio;

    // v0_cg (1+r)^2 / r^2 collapses to v_obs (omega1/omega2) d^2 / r, and the
    // mode only decides whether the dipole factor survives in r.
    auto coupling_velocity = [&](RabiConversion m) {
        return e.v_probe_group_observed * omega_ratio * dip_sq *
               (m == RabiConversion::strict ? 1.0 / dip_sq : 1.0) * (e.I2 / e.I1);
    };

    OpticalResponse out;
    out.mode = mode;
    out.rabi_ratio_sq = ratio_for_mode(e, mode);
    const double onepr = 1.0 + out.rabi_ratio_sq;

    out.v0_probe = e.v_probe_group_observed / (onepr * onepr);
    out.v_probe_group = out.v0_probe * onepr * onepr;

    out.chi_probe = -e.lambda1 * ddiff / (pi * out.v_probe_group);
    out.dchi_domega1 = e.lambda1 / (pi * out.v_probe_group);
    out.dn_probe = (e.lambda1 / (2.0 * pi)) * ddiff / out.v_probe_group;

    out.v_coupling_group_paper = coupling_velocity(RabiConversion::paper);
    out.v_coupling_group_strict = coupling_velocity(RabiConversion::strict);
    out.v_coupling_group = mode == RabiConversion::paper ? out.v_coupling_group_paper
                                                         : out.v_coupling_group_strict;
    out.v0_coupling = out.v0_probe * out.rabi_ratio_sq * omega_ratio * dip_sq;

    out.chi_coupling = e.lambda2 * ddiff / (pi * out.v_coupling_group);
    out.dn_coupling = (e.lambda2 / (2.0 * pi)) * ddiff / out.v_coupling_group;
    return out;
}

} // namespace qeit
