// Acceptance gate. Thirteen independent checks, one line of output each:
//
//   PASS criterion N: <what was measured>
//   FAIL criterion N: <what was measured and how it missed>
//
// Tolerances are pinned here, in code. A failing criterion stays red; the
// detail line and any trailing notes say exactly what the arithmetic gave.
// Exit status is 0 iff every selected criterion passes. --criterion N runs a
// single one; the default runs all thirteen.

#include "qeit/adiabatic.hpp"
#include "qeit/dressed.hpp"
#include "qeit/field.hpp"
#include "qeit/hamiltonian.hpp"
#include "qeit/linear_optics.hpp"
#include "qeit/nonlinear_optics.hpp"
#include "qeit/types.hpp"
#include "qeit/verify.hpp"

#include "json.hpp"

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

using nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
    std::vector<std::string> notes;
};

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct CliRun {
    int exit_code = -1;
    double seconds = 0.0;
    ordered_json record;
};

CliRun run_cli(const std::string& args) {
    static int counter = 0;
    const std::string out_path = "/tmp/qeit_acceptance_" + std::to_string(counter++);
    const std::string cmd =
        QEIT_CLI_PATH " " + args + " >" + out_path + " 2>/dev/null";

    CliRun r;
    const auto t0 = Clock::now();
    const int status = std::system(cmd.c_str());
    r.seconds = seconds_since(t0);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;

    std::ifstream f(out_path);
    if (r.exit_code == 0 && f)
        f >> r.record;
    std::remove(out_path.c_str());
    return r;
}

double out_value(const CliRun& r, const char* name) {
    return r.record.at("outputs").at(name).at("value").get<double>();
}

bool within_rel(double value, double reference, double tol) {
    return std::fabs(value / reference - 1.0) <= tol;
}

// ---------------------------------------------------------------------------

Outcome criterion_1() {
    const CliRun r = run_cli("nonlinear --preset hau1999 --no-timestamp");
    if (r.exit_code != 0)
        return {false, fmt("CLI exited with code %d", r.exit_code), {}};

    const double n2 = out_value(r, "n2");
    const double off = n2 / 1.9e-7 - 1.0;
    const bool ok = std::fabs(off) <= 0.03 && r.seconds < 1.0;
    return {ok,
            fmt("Kerr coefficient n2 = %.6e m^2/V^2, %+.2f%% against 1.9e-7 "
                "(band 3%%), CLI wall time %.3f s (limit 1 s)",
                n2, 100.0 * off, r.seconds),
            {}};
}

Outcome criterion_2() {
    const CliRun r = run_cli("nonlinear --preset hau1999 --no-timestamp");
    if (r.exit_code != 0)
        return {false, fmt("CLI exited with code %d", r.exit_code), {}};

    const double n4 = out_value(r, "n4");
    const double n6 = out_value(r, "n6");
    const double n2i = out_value(r, "n2_intensity");
    const double n4i = out_value(r, "n4_intensity");
    const double n6i = out_value(r, "n6_intensity");

    const bool ok = within_rel(n4, -3.8e-12, 0.03) && within_rel(n6, 6.7e-17, 0.03) &&
                    within_rel(n2i, 0.36, 0.05) && within_rel(n4i, -13.0, 0.05) &&
                    within_rel(n6i, 4.5e2, 0.05);
    return {ok,
            fmt("n4 = %.4e (3%% of -3.8e-12), n6 = %.4e (3%% of 6.7e-17); "
                "practical units %.4f cm^2/W, %.3f cm^4/W^2, %.1f cm^6/W^3 "
                "(5%% of 0.36, -13.0, 450)",
                n4, n6, n2i, n4i, n6i),
            {}};
}

Outcome criterion_3() {
    const CliRun r = run_cli("nonlinear --preset hau1999 --no-timestamp");
    if (r.exit_code != 0)
        return {false, fmt("CLI exited with code %d", r.exit_code), {}};

    // |n4/n6| sits exactly on the factor-3 boundary (0.030 W/cm^2 against
    // 1e-2), so the band carries an epsilon for the representation error.
    const double f24 = std::fabs(out_value(r, "ratio_n2_n4_intensity")) / 1e-2;
    const double f46 = std::fabs(out_value(r, "ratio_n4_n6_intensity")) / 1e-2;
    auto within_factor3 = [](double f) {
        return f <= 3.0 + 1e-9 && f >= 1.0 / 3.0 - 1e-9;
    };

    const bool ok = within_factor3(f24) && within_factor3(f46);
    return {ok,
            fmt("|n2/n4| = %.4f e-2 W/cm^2, |n4/n6| = %.4f e-2 W/cm^2; both "
                "within a factor 3 of 1e-2",
                f24, f46),
            {}};
}

Outcome criterion_4() {
    const CliRun r = run_cli("response --preset hau1999 --no-timestamp");
    if (r.exit_code != 0)
        return {false, fmt("CLI exited with code %d", r.exit_code), {}};

    const double vp = out_value(r, "v_coupling_group_paper");
    const double vs = out_value(r, "v_coupling_group_strict");
    const std::string flag =
        r.record.at("provenance").at("rabi_from_intensity").get<std::string>();

    const bool ok = within_rel(vp, 1020.0, 0.02) && within_rel(vs, 680.0, 0.02) &&
                    !flag.empty();
    return {ok,
            fmt("coupling-pulse group velocity %.3f m/s (2%% of 1020) under the "
                "intensity-ratio reading; dipole-weighted reading %.1f m/s "
                "emitted alongside, interpretation flag '%s'",
                vp, vs, flag.c_str()),
            {}};
}

Outcome criterion_5() {
    const qeit::ExperimentPreset& e = qeit::hau1999();
    const auto resp = qeit::response_from_preset(e, qeit::RabiConversion::paper);

    const double expected =
        e.lambda1 * (e.delta1 - e.delta2) / (2.0 * std::numbers::pi * 17.0);
    const double sig6 = std::fabs(resp.dn_probe / expected - 1.0);
    const double vs_published = std::fabs(resp.dn_probe / 8.2e-3 - 1.0);
    const double order = resp.dn_coupling / 2.1e-4;

    const bool ok = sig6 < 5e-7 && vs_published <= 0.15 && order >= 0.1 && order <= 10.0;
    return {ok,
            fmt("probe index change %.9e: matches lambda1*(d1-d2)/(2 pi 17) to "
                "%.1e (6 significant digits), %.1f%% from the quoted 8.2e-3 "
                "(band 15%%); coupling index change %.4e is %.2fx the quoted "
                "2.1e-4 (order band 0.1..10)",
                resp.dn_probe, sig6, 100.0 * vs_published, resp.dn_coupling, order),
            {}};
}

Outcome criterion_6() {
    const auto t0 = Clock::now();
    const auto s = qeit::verify::suite_eigen(1000, 12345);
    const double secs = seconds_since(t0);

    const double worst = s.checks.at(0).observed;
    const double worst_sum = s.checks.at(1).observed;
    const bool ok = s.pass && secs < 5.0;
    return {ok,
            fmt("1000 seeded random blocks: closed-form roots vs dense "
                "eigensolver max rel err %.2e (bound 1e-9), root sum vs trace "
                "%.2e (bound 1e-12), %.2f s (limit 5 s)",
                worst, worst_sum, secs),
            {}};
}

Outcome criterion_7() {
    const auto s = qeit::verify::suite_perturbation();
    return {s.pass,
            fmt("first-order energy error scales with log-log slopes %.3f / "
                "%.3f / %.3f per branch under joint detuning scaling (floor 1.9)",
                s.checks.at(0).observed, s.checks.at(1).observed,
                s.checks.at(2).observed),
            {}};
}

Outcome criterion_8() {
    const qeit::ExperimentPreset& e = qeit::hau1999();
    qeit::SystemParams p = qeit::preset_to_params(e, qeit::RabiConversion::paper);
    p.delta1 = 0.0;
    p.delta2 = 0.0;
    const qeit::RabiPair rabi =
        qeit::rabi_pair_from_preset(p, e, qeit::RabiConversion::paper);

    const double chi_p = qeit::susceptibility_probe(p, rabi);
    const double chi_c = qeit::susceptibility_coupling(p, rabi);

    const auto state = qeit::adiabatic_state(p, qeit::FieldSpec::coherent(1.5, 2.0), 0.0);
    const double rho22 = qeit::reduced_density_matrix(state).at(1, 1).real();

    double worst_resid = 0.0;
    for (const qeit::FockBlock blk : {qeit::FockBlock{1, 0}, qeit::FockBlock{3, 2},
                                      qeit::FockBlock{7, 5}}) {
        const double w = qeit::RabiPair::from_block(p, blk).omega_total();
        worst_resid = std::max(worst_resid, qeit::dark_state_residual(p, blk) / w);
    }

    // Detuning is atom minus laser here, so normal dispersion means the
    // susceptibility grows with the laser frequency. Cross-check the closed
    // derivative against a finite difference taken in the laser frequency.
    const auto lin = qeit::susceptibility_probe_linear(p, rabi);
    const double h = 1e3;
    qeit::SystemParams up = p, down = p;
    up.delta1 = -h;
    down.delta1 = h;
    const double fd = (qeit::susceptibility_probe(up, rabi) -
                       qeit::susceptibility_probe(down, rabi)) /
                      (2.0 * h);

    const bool ok = chi_p == 0.0 && chi_c == 0.0 && rho22 == 0.0 &&
                    worst_resid < 1e-12 && lin.dchi_domega1 > 0.0 && fd > 0.0 &&
                    std::fabs(fd / lin.dchi_domega1 - 1.0) < 0.1;
    return {ok,
            fmt("on two-photon resonance: chi_probe = %g, chi_coupling = %g, "
                "rho22 = %g, dark residual %.1e of the Rabi scale (bound 1e-12); "
                "dispersion slope in laser frequency %.3e s/rad, finite "
                "difference %.3e, both positive",
                chi_p + 0.0, chi_c + 0.0, rho22 + 0.0, worst_resid,
                lin.dchi_domega1, fd),
            {}};
}

Outcome criterion_9() {
    qeit::SystemParams p;  // g1 = g2 = 1
    p.delta1 = 1e-3;

    const double nbars[3] = {100.0, 316.0, 1000.0};
    double dev[3] = {};
    for (int i = 0; i < 3; ++i) {
        const double amp = std::sqrt(nbars[i]);
        const auto sum = qeit::coherences_timeseries(p, amp, amp, 0.0);
        const auto closed = qeit::large_n_coherences(p, nbars[i], nbars[i]);
        dev[i] = std::fabs(sum.rho21.real() / closed.rho21 - 1.0);
    }

    const bool ok =
        dev[0] < 0.02 && dev[2] < 0.005 && dev[1] < dev[0] && dev[2] < dev[1];
    return {ok,
            fmt("full photon-number sum vs frozen-Rabi closed form: deviation "
                "%.4f%% / %.4f%% / %.4f%% at mean numbers 100 / 316 / 1000 "
                "(bands 2%% and 0.5%%, monotone decreasing)",
                100.0 * dev[0], 100.0 * dev[1], 100.0 * dev[2]),
            {}};
}

Outcome criterion_10() {
    const qeit::SystemParams p;  // resonance, unit couplings

    const auto fock = qeit::FieldSpec::product(
        {{0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}, {{0.6, 0.0}, {0.8, 0.0}});
    const double r = 1.0 / std::sqrt(2.0);
    const auto gapped =
        qeit::FieldSpec::product({{r, 0.0}, {0.0, 0.0}, {r, 0.0}}, {{1.0, 0.0}});

    const double mag_fock = std::abs(qeit::nonclassical_coherence(p, fock));
    const double mag_gapped = std::abs(qeit::nonclassical_coherence(p, gapped));

    const bool ok = mag_fock < 1e-14 && mag_gapped < 1e-14;
    return {ok,
            fmt("probe coherence magnitude %.2e for a number state and %.2e for "
                "a gapped superposition (bound 1e-14): no adjacent-number "
                "products, no mean field",
                mag_fock, mag_gapped),
            {}};
}

Outcome criterion_11() {
    const qeit::SystemParams p =
        qeit::preset_to_params(qeit::hau1999(), qeit::RabiConversion::paper);
    const qeit::SeriesAudit a = qeit::series_audit(p, qeit::hau1999().I2);

    const bool ok3 = std::fabs(a.ratio3 - 1.0) <= 0.01;
    const bool ok7 = std::fabs(a.ratio7 - 1.0) <= 0.02;
    const double printed_over_fitted = a.chi5_printed / a.chi5_fitted;
    const bool ok5 = printed_over_fitted >= 3.9 && printed_over_fitted <= 4.1;

    Outcome o;
    o.pass = ok3 && ok7 && ok5;
    o.detail = fmt(
        "third order fitted/printed = %.9f (band 1%%), seventh order %.6f "
        "(band 2%%); fifth order printed/fitted = %.7f misses the required "
        "4.0 +- 0.1",
        a.ratio3, a.ratio7, printed_over_fitted);
    if (!ok5) {
        o.notes.push_back(fmt(
            "note: the printed fifth-order coefficient (%.16e) equals the "
            "1/(1+x)^2 expansion value (%.16e) to 15 significant digits, so no "
            "factor-4 separation exists in the arithmetic",
            a.chi5_printed, a.chi5_expansion));
        o.notes.push_back(
            "note: the 3.9..4.1 band encodes an inconsistency in the published "
            "fifth-order number; a faithful implementation cannot satisfy it, "
            "and the series_audit record reports both routes side by side");
    }
    return o;
}

Outcome criterion_12() {
    const auto t0 = Clock::now();
    const auto s = qeit::verify::suite_ramp(qeit::verify::RampOrdering::correct);
    const double secs = seconds_since(t0);

    const double fidelity = s.checks.at(0).observed;
    const bool ok = s.pass && secs < 60.0;
    return {ok,
            fmt("counterintuitive ramp on a 12x12 photon grid reaches squared "
                "overlap %.6f with the dark-state target (floor 0.99) in %.1f s "
                "(limit 60 s)",
                fidelity, secs),
            {}};
}

Outcome criterion_13() {
    const auto s = qeit::verify::suite_trace(12345);
    return {s.pass,
            fmt("coefficient-assembled atomic density matrix vs brute-force "
                "partial trace: max elementwise difference %.2e across the "
                "tested field specs (bound 1e-12)",
                s.checks.at(0).observed),
            {}};
}

} // namespace

int main(int argc, char** argv) {
    int selected = 0;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--criterion" && i + 1 < argc) {
            selected = std::atoi(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
            return 2;
        }
    }
    if (selected < 0 || selected > 13) {
        std::fprintf(stderr, "criterion must be between 1 and 13\n");
        return 2;
    }

    Outcome (*criteria[13])() = {
        criterion_1, criterion_2,  criterion_3,  criterion_4,  criterion_5,
        criterion_6, criterion_7,  criterion_8,  criterion_9,  criterion_10,
        criterion_11, criterion_12, criterion_13};

    bool all_pass = true;
    for (int k = 1; k <= 13; ++k) {
        if (selected != 0 && k != selected)
            continue;
        const Outcome o = criteria[k - 1]();
        std::printf("%s criterion %d: %s\n", o.pass ? "PASS" : "FAIL", k,
                    o.detail.c_str());
        for (const auto& note : o.notes)
            std::printf("  %s\n", note.c_str());
        all_pass = all_pass && o.pass;
    }
    return all_pass ? 0 : 1;
}
