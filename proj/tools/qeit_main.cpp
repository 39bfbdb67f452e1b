// Command-line front end. Every subcommand resolves its inputs to SI, runs the
// closed-form pipelines, and emits one self-describing result record: inputs
// echo, outputs keyed by quantity with explicit units, provenance (constants
// table, interpretation flags, seed), and timing. With --no-timestamp the
// volatile fields (timestamp, elapsed time) are omitted, making the output
// byte-identical across runs of the same configuration.
//
// Exit codes: 0 success, 1 verification/invariant failure, 2 input validation
// failure (the diagnostic names the offending field).

#include "qeit/adiabatic.hpp"
#include "qeit/constants.hpp"
#include "qeit/dressed.hpp"
#include "qeit/field.hpp"
#include "qeit/hamiltonian.hpp"
#include "qeit/kernels.hpp"
#include "qeit/linear_optics.hpp"
#include "qeit/nonlinear_optics.hpp"
#include "qeit/oracle.hpp"
#include "qeit/types.hpp"
#include "qeit/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

using nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------------------
// record plumbing
// ---------------------------------------------------------------------------

struct GlobalOpts {
    std::string format = "json";
    std::string out_path;
    long long seed = 12345;
    bool no_timestamp = false;
    std::string rabi = "paper";

    qeit::RabiConversion mode() const {
        return rabi == "strict" ? qeit::RabiConversion::strict
                                : qeit::RabiConversion::paper;
    }
};

std::string iso_timestamp_utc() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void add_out(ordered_json& outputs, const std::string& name, const ordered_json& value,
             const char* unit) {
    outputs[name] = ordered_json{{"value", value}, {"unit", unit}};
}

ordered_json make_record(const char* command, ordered_json inputs, ordered_json outputs,
                         const GlobalOpts& g, double elapsed_ms) {
    ordered_json rec;
    rec["command"] = command;
    rec["inputs"] = std::move(inputs);
    rec["outputs"] = std::move(outputs);
    ordered_json prov;
    prov["constants_version"] = qeit::constants_version;
    prov["rabi_from_intensity"] = g.rabi;
    prov["kernel_backend"] = qeit::kern::backend_name(qeit::kern::active_backend());
    prov["seed"] = g.seed;
    if (!g.no_timestamp)
        prov["timestamp"] = iso_timestamp_utc();
    rec["provenance"] = std::move(prov);
    if (!g.no_timestamp)
        rec["timing"] = ordered_json{{"elapsed_ms", elapsed_ms}};
    return rec;
}

std::string csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_cell(const ordered_json& v) {
    if (v.is_number())
        return csv_number(v.get<double>());
    if (v.is_boolean())
        return v.get<bool>() ? "true" : "false";
    if (v.is_string())
        return v.get<std::string>();
    return v.dump();
}

// Scalar outputs as "quantity,value,unit" rows; one level of nesting is
// flattened with a dotted prefix.
std::string csv_from_outputs(const ordered_json& outputs) {
    std::string text = "quantity,value,unit\n";
    auto row = [&text](const std::string& name, const ordered_json& entry) {
        text += name + "," + csv_cell(entry.at("value")) + "," +
                entry.at("unit").get<std::string>() + "\n";
    };
    for (const auto& [name, entry] : outputs.items()) {
        if (entry.contains("value")) {
            row(name, entry);
        } else {
            for (const auto& [sub, subentry] : entry.items())
                row(name + "." + sub, subentry);
        }
    }
    return text;
}

int emit(const GlobalOpts& g, const ordered_json& record, const std::string& csv_text) {
    const std::string body =
        g.format == "csv" ? csv_text : record.dump(2) + "\n";
    if (g.out_path.empty()) {
        std::cout << body;
    } else {
        std::ofstream f(g.out_path, std::ios::binary);
        if (!f)
            throw std::invalid_argument("out: cannot open '" + g.out_path + "' for writing");
        f << body;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// unit-suffixed numbers
// ---------------------------------------------------------------------------

// "400" or "400 W/m^2" -> 400 W/m^2; "40mW/cm2" -> 400 W/m^2.
double parse_intensity(const std::string& text, const char* field) {
    const char* s = text.c_str();
    char* end = nullptr;
    const double value = std::strtod(s, &end);
    if (end == s || !std::isfinite(value))
        throw std::invalid_argument(std::string(field) + ": cannot parse '" + text + "'");
    std::string suffix(end);
    std::erase_if(suffix, [](unsigned char ch) { return std::isspace(ch) || ch == '^'; });
    if (suffix.empty() || suffix == "W/m2")
        return value;
    if (suffix == "mW/cm2")
        return value * 10.0;  // 1 mW/cm^2 = 10 W/m^2
    throw std::invalid_argument(std::string(field) + ": unknown intensity unit '" +
                                std::string(end) + "' (use W/m^2 or mW/cm^2)");
}

// "589nm" -> 589e-9 m; "5.89e-7" or "5.89e-7 m" -> as given, meters.
double parse_wavelength(const std::string& text, const char* field) {
    const char* s = text.c_str();
    char* end = nullptr;
    const double value = std::strtod(s, &end);
    if (end == s || !std::isfinite(value))
        throw std::invalid_argument(std::string(field) + ": cannot parse '" + text + "'");
    std::string suffix(end);
    std::erase_if(suffix, [](unsigned char ch) { return std::isspace(ch); });
    if (suffix.empty() || suffix == "m")
        return value;
    if (suffix == "nm")
        return value * 1e-9;
    throw std::invalid_argument(std::string(field) + ": unknown wavelength unit '" +
                                std::string(end) + "' (use m or nm)");
}

struct SweepGrid {
    double start = 0.0;
    double stop = 0.0;
    int count = 0;

    double at(int i) const {
        return count < 2 ? start
                         : start + (stop - start) * double(i) / double(count - 1);
    }
};

SweepGrid parse_sweep(const std::string& text, const char* field) {
    SweepGrid g;
    char trailing = 0;
    const int got = std::sscanf(text.c_str(), "%lf:%lf:%d%c", &g.start, &g.stop,
                                &g.count, &trailing);
    if (got != 3 || g.count < 2 || !std::isfinite(g.start) || !std::isfinite(g.stop))
        throw std::invalid_argument(std::string(field) +
                                    ": expected 'start:stop:count' with count >= 2");
    return g;
}

// ---------------------------------------------------------------------------
// preset resolution shared by response and nonlinear
// ---------------------------------------------------------------------------

struct PresetFlags {
    std::string preset;
    std::string i1, i2;
    std::string lambda1, lambda2;
    double delta1 = 0.0, delta2 = 0.0;
    double v_observed = 0.0;
    double dipole_ratio = 0.0;
    CLI::Option* opt_preset = nullptr;
    CLI::Option* opt_i1 = nullptr;
    CLI::Option* opt_i2 = nullptr;
    CLI::Option* opt_l1 = nullptr;
    CLI::Option* opt_l2 = nullptr;
    CLI::Option* opt_d1 = nullptr;
    CLI::Option* opt_d2 = nullptr;
    CLI::Option* opt_v = nullptr;
    CLI::Option* opt_ratio = nullptr;

    void attach(CLI::App* cmd) {
        opt_preset = cmd->add_option("--preset", preset, "Named experiment preset");
        opt_i1 = cmd->add_option("--I1", i1, "Probe intensity (W/m^2, or mW/cm^2 suffix)");
        opt_i2 = cmd->add_option("--I2", i2, "Coupling intensity (W/m^2, or mW/cm^2 suffix)");
        opt_d1 = cmd->add_option("--delta1", delta1, "Probe detuning, rad/s");
        opt_d2 = cmd->add_option("--delta2", delta2, "Coupling detuning, rad/s");
        opt_l1 = cmd->add_option("--lambda1", lambda1, "Probe wavelength (m, or nm suffix)");
        opt_l2 = cmd->add_option("--lambda2", lambda2, "Coupling wavelength (m, or nm suffix)");
        opt_v = cmd->add_option("--v-observed", v_observed,
                                "Observed probe group velocity, m/s");
        opt_ratio = cmd->add_option("--dipole-ratio", dipole_ratio,
                                    "Dipole moment ratio mu12/mu32");
    }

    qeit::ExperimentPreset resolve() const {
        qeit::ExperimentPreset e;
        if (*opt_preset) {
            const auto* found = qeit::find_preset(preset);
            if (!found)
                throw std::invalid_argument("preset: unknown preset '" + preset + "'");
            e = *found;
        } else {
            e.name = "custom";
            auto require = [](const CLI::Option* o, const char* field) {
                if (!*o)
                    throw std::invalid_argument(
                        std::string(field) + " is required when no --preset is given");
            };
            require(opt_i1, "I1");
            require(opt_i2, "I2");
            require(opt_l1, "lambda1");
            require(opt_l2, "lambda2");
            require(opt_v, "v-observed");
            require(opt_ratio, "dipole-ratio");
        }
        if (*opt_i1) e.I1 = parse_intensity(i1, "I1");
        if (*opt_i2) e.I2 = parse_intensity(i2, "I2");
        if (*opt_l1) e.lambda1 = parse_wavelength(lambda1, "lambda1");
        if (*opt_l2) e.lambda2 = parse_wavelength(lambda2, "lambda2");
        if (*opt_d1) e.delta1 = delta1;
        if (*opt_d2) e.delta2 = delta2;
        if (*opt_v) e.v_probe_group_observed = v_observed;
        if (*opt_ratio) e.dipole_ratio = dipole_ratio;
        return e;
    }
};

ordered_json preset_inputs(const qeit::ExperimentPreset& e) {
    ordered_json in;
    in["name"] = e.name;
    in["I1_W_per_m2"] = e.I1;
    in["I2_W_per_m2"] = e.I2;
    in["delta1_rad_per_s"] = e.delta1;
    in["delta2_rad_per_s"] = e.delta2;
    in["lambda1_m"] = e.lambda1;
    in["lambda2_m"] = e.lambda2;
    in["v_probe_group_observed_m_per_s"] = e.v_probe_group_observed;
    in["dipole_ratio"] = e.dipole_ratio;
    return in;
}

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// ---------------------------------------------------------------------------
// eigen
// ---------------------------------------------------------------------------

struct EigenOpts {
    double g1 = 1.0, g2 = 1.0;
    double delta1 = 0.0, delta2 = 0.0;
    int n1 = 1, n2 = 0;
    std::string sweep_delta1;
};

int cmd_eigen(const GlobalOpts& g, const EigenOpts& o) {
    const auto t0 = Clock::now();

    qeit::SystemParams p;
    p.g1 = o.g1;
    p.g2 = o.g2;
    p.delta1 = o.delta1;
    p.delta2 = o.delta2;
    p.validate();
    const qeit::FockBlock blk{o.n1, o.n2};
    blk.validate();

    ordered_json inputs;
    inputs["g1_rad_per_s"] = p.g1;
    inputs["g2_rad_per_s"] = p.g2;
    inputs["delta1_rad_per_s"] = p.delta1;
    inputs["delta2_rad_per_s"] = p.delta2;
    inputs["n1"] = blk.n1;
    inputs["n2"] = blk.n2;

    if (!o.sweep_delta1.empty()) {
        const SweepGrid grid = parse_sweep(o.sweep_delta1, "sweep-delta1");
        inputs["sweep_delta1"] = o.sweep_delta1;

        const std::vector<std::string> columns = {
            "delta1 [rad/s]",        "e_plus [rad/s]",
            "e_zero [rad/s]",        "e_minus [rad/s]",
            "e_plus_perturbative [rad/s]", "e_zero_perturbative [rad/s]",
            "e_minus_perturbative [rad/s]"};
        std::vector<std::vector<double>> rows;
        rows.reserve(grid.count);
        for (int i = 0; i < grid.count; ++i) {
            qeit::SystemParams ps = p;
            ps.delta1 = grid.at(i);
            const auto ex = qeit::exact_eigenvalues(ps, blk);
            const auto pe = qeit::perturbative_eigenvalues(ps, blk);
            rows.push_back({ps.delta1, ex.e_plus, ex.e_zero, ex.e_minus, pe.e_plus,
                            pe.e_zero, pe.e_minus});
        }

        ordered_json outputs;
        ordered_json sweep;
        sweep["columns"] = columns;
        sweep["rows"] = rows;
        outputs["sweep"] = std::move(sweep);

        std::string csv;
        for (std::size_t c = 0; c < columns.size(); ++c)
            csv += (c ? "," : "") + columns[c];
        csv += "\n";
        for (const auto& r : rows) {
            for (std::size_t c = 0; c < r.size(); ++c)
                csv += (c ? "," : "") + csv_number(r[c]);
            csv += "\n";
        }
        return emit(g, make_record("eigen", std::move(inputs), std::move(outputs), g,
                                   ms_since(t0)),
                    csv);
    }

    const auto ci = qeit::cubic_intermediates(p, blk);
    const auto exact = qeit::exact_eigenvalues(p, blk);
    const auto pert = qeit::perturbative_eigenvalues(p, blk);

    ordered_json outputs;
    add_out(outputs, "e_plus", exact.e_plus, "rad/s");
    add_out(outputs, "e_zero", exact.e_zero, "rad/s");
    add_out(outputs, "e_minus", exact.e_minus, "rad/s");
    add_out(outputs, "e_plus_perturbative", pert.e_plus, "rad/s");
    add_out(outputs, "e_zero_perturbative", pert.e_zero, "rad/s");
    add_out(outputs, "e_minus_perturbative", pert.e_minus, "rad/s");
    add_out(outputs, "diff_plus", exact.e_plus - pert.e_plus, "rad/s");
    add_out(outputs, "diff_zero", exact.e_zero - pert.e_zero, "rad/s");
    add_out(outputs, "diff_minus", exact.e_minus - pert.e_minus, "rad/s");
    add_out(outputs, "cubic_discriminant", ci.discriminant, "rad^6/s^6");
    add_out(outputs, "three_real_roots", qeit::reality_condition(ci), "boolean");

    const auto rec =
        make_record("eigen", std::move(inputs), std::move(outputs), g, ms_since(t0));
    return emit(g, rec, csv_from_outputs(rec.at("outputs")));
}

// ---------------------------------------------------------------------------
// response
// ---------------------------------------------------------------------------

int cmd_response(const GlobalOpts& g, const PresetFlags& pf) {
    const auto t0 = Clock::now();
    const qeit::ExperimentPreset e = pf.resolve();
    const auto r = qeit::response_from_preset(e, g.mode());

    ordered_json outputs;
    add_out(outputs, "chi_probe", r.chi_probe, "dimensionless");
    add_out(outputs, "chi_coupling", r.chi_coupling, "dimensionless");
    add_out(outputs, "dchi_probe_domega1", r.dchi_domega1, "s/rad");
    add_out(outputs, "v_probe_group", r.v_probe_group, "m/s");
    add_out(outputs, "v0_probe", r.v0_probe, "m/s");
    add_out(outputs, "v_coupling_group", r.v_coupling_group, "m/s");
    add_out(outputs, "v0_coupling", r.v0_coupling, "m/s");
    add_out(outputs, "v_coupling_group_paper", r.v_coupling_group_paper, "m/s");
    add_out(outputs, "v_coupling_group_strict", r.v_coupling_group_strict, "m/s");
    add_out(outputs, "dn_probe", r.dn_probe, "dimensionless");
    add_out(outputs, "dn_coupling", r.dn_coupling, "dimensionless");
    add_out(outputs, "rabi_ratio_sq", r.rabi_ratio_sq, "dimensionless");

    auto rec = make_record("response", preset_inputs(e), std::move(outputs), g,
                           ms_since(t0));
    if (e.delta1 == e.delta2)
        rec["banner"] =
            "two-photon resonance: the medium is transparent to the probe "
            "(linear susceptibility and index shifts vanish identically)";
    return emit(g, rec, csv_from_outputs(rec.at("outputs")));
}

// ---------------------------------------------------------------------------
// nonlinear
// ---------------------------------------------------------------------------

struct NonlinearOpts {
    int audit_points = 16;
    double audit_xmax = 0.002;
};

int cmd_nonlinear(const GlobalOpts& g, const PresetFlags& pf, const NonlinearOpts& o) {
    const auto t0 = Clock::now();
    const qeit::ExperimentPreset e = pf.resolve();

    // The closed chain is anchored at the observed group velocity, the same
    // number the headline index coefficients are quoted against.
    const auto nc = qeit::n_coefficients_closed(e, e.v_probe_group_observed);
    const auto ratios = qeit::coefficient_ratios(e);
    const auto params = qeit::preset_to_params(e, g.mode());
    const auto audit = qeit::series_audit(params, e.I2, o.audit_points, o.audit_xmax);

    ordered_json outputs;
    add_out(outputs, "n0", nc.n0, "dimensionless");
    add_out(outputs, "n2", nc.n2, "m^2/V^2");
    add_out(outputs, "n4", nc.n4, "m^4/V^4");
    add_out(outputs, "n6", nc.n6, "m^6/V^6");
    add_out(outputs, "n2_intensity", nc.n2_I, "cm^2/W");
    add_out(outputs, "n4_intensity", nc.n4_I, "cm^4/W^2");
    add_out(outputs, "n6_intensity", nc.n6_I, "cm^6/W^3");
    add_out(outputs, "ratio_n2_n4", ratios.ratio_24_field, "V^2/m^2");
    add_out(outputs, "ratio_n4_n6", ratios.ratio_46_field, "V^2/m^2");
    add_out(outputs, "ratio_n2_n4_intensity", ratios.ratio_24_intensity, "W/cm^2");
    add_out(outputs, "ratio_n4_n6_intensity", ratios.ratio_46_intensity, "W/cm^2");

    ordered_json a;
    add_out(a, "chi1_printed", audit.printed.chi1, "dimensionless");
    add_out(a, "chi3_printed", audit.printed.chi3, "m^2/V^2");
    add_out(a, "chi5_printed", audit.printed.chi5, "m^4/V^4");
    add_out(a, "chi7_printed", audit.printed.chi7, "m^6/V^6");
    add_out(a, "chi1_fitted", audit.chi1_fitted, "dimensionless");
    add_out(a, "chi3_fitted", audit.chi3_fitted, "m^2/V^2");
    add_out(a, "chi5_fitted", audit.chi5_fitted, "m^4/V^4");
    add_out(a, "chi7_fitted", audit.chi7_fitted, "m^6/V^6");
    add_out(a, "ratio3_fitted_over_printed", audit.ratio3, "dimensionless");
    add_out(a, "ratio5_fitted_over_printed", audit.ratio5, "dimensionless");
    add_out(a, "ratio7_fitted_over_printed", audit.ratio7, "dimensionless");
    add_out(a, "chi5_expansion", audit.chi5_expansion, "m^4/V^4");
    add_out(a, "x_max", audit.x_max, "dimensionless");
    add_out(a, "points", audit.points, "count");
    add_out(a, "fit_condition", audit.fit_condition, "dimensionless");
    add_out(a, "fit_rms_residual", audit.fit_rms_residual, "dimensionless");
    add_out(a, "n0_linearization_gap", audit.n0_linearization_gap, "dimensionless");
    outputs["series_audit"] = std::move(a);

    const auto rec = make_record("nonlinear", preset_inputs(e), std::move(outputs), g,
                                 ms_since(t0));
    return emit(g, rec, csv_from_outputs(rec.at("outputs")));
}

// ---------------------------------------------------------------------------
// state
// ---------------------------------------------------------------------------

struct StateOpts {
    double g1 = 1.0, g2 = 1.0;
    double delta1 = 0.0, delta2 = 0.0;
    double omega1 = 1.0, omega2 = 1.0;
    double alpha = 0.0, beta = 0.0;
    int trunc1 = -1, trunc2 = -1;
    double t = 0.0;
    std::string amplitudes_path;
    CLI::Option* opt_alpha = nullptr;
    CLI::Option* opt_beta = nullptr;
    CLI::Option* opt_file = nullptr;
};

std::vector<std::complex<double>> parse_amplitude_array(const ordered_json& j,
                                                        const char* field) {
    if (!j.is_array() || j.empty())
        throw std::invalid_argument(std::string(field) +
                                    ": expected a non-empty array of [re, im] pairs");
    std::vector<std::complex<double>> out;
    out.reserve(j.size());
    for (const auto& entry : j) {
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
            !entry[1].is_number())
            throw std::invalid_argument(std::string(field) +
                                        ": each amplitude must be a [re, im] pair");
        out.emplace_back(entry[0].get<double>(), entry[1].get<double>());
    }
    return out;
}

int cmd_state(const GlobalOpts& g, const StateOpts& o) {
    const auto t0 = Clock::now();

    qeit::SystemParams p;
    p.g1 = o.g1;
    p.g2 = o.g2;
    p.delta1 = o.delta1;
    p.delta2 = o.delta2;
    p.omega1 = o.omega1;
    p.omega2 = o.omega2;
    p.validate();

    const bool coherent_given = o.opt_alpha->count() > 0 || o.opt_beta->count() > 0;
    const bool file_given = o.opt_file->count() > 0;
    if (coherent_given == file_given)
        throw std::invalid_argument(
            "field: give either --alpha/--beta or --amplitudes, not both or neither");

    ordered_json inputs;
    inputs["g1_rad_per_s"] = p.g1;
    inputs["g2_rad_per_s"] = p.g2;
    inputs["delta1_rad_per_s"] = p.delta1;
    inputs["delta2_rad_per_s"] = p.delta2;
    inputs["omega1_rad_per_s"] = p.omega1;
    inputs["omega2_rad_per_s"] = p.omega2;
    inputs["t_s"] = o.t;

    qeit::FieldSpec field = qeit::FieldSpec::coherent(0.0, 0.0);
    if (coherent_given) {
        field = qeit::FieldSpec::coherent(o.alpha, o.beta, o.trunc1, o.trunc2);
        inputs["alpha"] = o.alpha;
        inputs["beta"] = o.beta;
        inputs["trunc1"] = o.trunc1;
        inputs["trunc2"] = o.trunc2;
    } else {
        std::ifstream f(o.amplitudes_path);
        if (!f)
            throw std::invalid_argument("amplitudes: cannot open '" + o.amplitudes_path +
                                        "'");
        ordered_json doc;
        try {
            f >> doc;
        } catch (const std::exception& ex) {
            throw std::invalid_argument(std::string("amplitudes: invalid JSON: ") +
                                        ex.what());
        }
        if (!doc.contains("probe") || !doc.contains("coupling"))
            throw std::invalid_argument(
                "amplitudes: file must contain \"probe\" and \"coupling\" arrays");
        auto c1 = parse_amplitude_array(doc["probe"], "amplitudes.probe");
        auto c2 = parse_amplitude_array(doc["coupling"], "amplitudes.coupling");
        inputs["amplitudes_file"] = o.amplitudes_path;
        inputs["probe_levels"] = c1.size();
        inputs["coupling_levels"] = c2.size();
        field = qeit::FieldSpec::product(std::move(c1), std::move(c2));
    }

    const auto state = qeit::adiabatic_state(p, field, o.t);
    const auto rho = qeit::reduced_density_matrix(state);

    ordered_json outputs;
    add_out(outputs, "rho11", rho.at(0, 0).real(), "dimensionless");
    add_out(outputs, "rho22", rho.at(1, 1).real(), "dimensionless");
    add_out(outputs, "rho33", rho.at(2, 2).real(), "dimensionless");
    add_out(outputs, "rho21_re", rho.at(1, 0).real(), "dimensionless");
    add_out(outputs, "rho21_im", rho.at(1, 0).imag(), "dimensionless");
    add_out(outputs, "rho23_re", rho.at(1, 2).real(), "dimensionless");
    add_out(outputs, "rho23_im", rho.at(1, 2).imag(), "dimensionless");
    add_out(outputs, "rho31_re", rho.at(2, 0).real(), "dimensionless");
    add_out(outputs, "rho31_im", rho.at(2, 0).imag(), "dimensionless");
    add_out(outputs, "atom_trace", rho.trace_real(), "dimensionless");
    add_out(outputs, "tail_mass", state.tail_mass, "dimensionless");

    if (coherent_given) {
        const auto coh = qeit::coherences_timeseries(p, o.alpha, o.beta, o.t);
        add_out(outputs, "rho21_sum_re", coh.rho21.real(), "dimensionless");
        add_out(outputs, "rho21_sum_im", coh.rho21.imag(), "dimensionless");
        add_out(outputs, "rho23_sum_re", coh.rho23.real(), "dimensionless");
        add_out(outputs, "rho23_sum_im", coh.rho23.imag(), "dimensionless");

        const double nbar_alpha = o.alpha * o.alpha;
        const double nbar_beta = o.beta * o.beta;
        if (nbar_alpha >= 1.0) {
            const auto big = qeit::large_n_coherences(p, nbar_alpha, nbar_beta);
            const auto spread = qeit::rabi_spread_estimate(nbar_alpha);
            add_out(outputs, "rho21_large_n", big.rho21, "dimensionless");
            add_out(outputs, "rho23_large_n", big.rho23, "dimensionless");
            add_out(outputs, "rabi_relative_spread", spread.relative_spread,
                    "dimensionless");
            add_out(outputs, "rabi_second_order_scale", spread.second_order_scale,
                    "dimensionless");
        }
    } else {
        const auto nc = qeit::nonclassical_coherence(p, field);
        add_out(outputs, "rho21_nonclassical_re", nc.real(), "dimensionless");
        add_out(outputs, "rho21_nonclassical_im", nc.imag(), "dimensionless");
    }

    const auto rec =
        make_record("state", std::move(inputs), std::move(outputs), g, ms_since(t0));
    return emit(g, rec, csv_from_outputs(rec.at("outputs")));
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyOpts {
    std::string suite = "all";
    int trials = 1000;
    std::string ordering = "correct";
};

int cmd_verify(const GlobalOpts& g, const VerifyOpts& o) {
    const auto t0 = Clock::now();
    using namespace qeit::verify;

    const RampOrdering ord = o.ordering == "reversed" ? RampOrdering::reversed
                                                      : RampOrdering::correct;
    std::vector<SuiteResult> results;
    if (o.suite == "all" || o.suite == "eigen")
        results.push_back(suite_eigen(o.trials, std::uint64_t(g.seed)));
    if (o.suite == "all" || o.suite == "perturbation")
        results.push_back(suite_perturbation());
    if (o.suite == "all" || o.suite == "ramp")
        results.push_back(suite_ramp(ord));
    if (o.suite == "all" || o.suite == "trace")
        results.push_back(suite_trace(std::uint64_t(g.seed)));

    ordered_json inputs;
    inputs["suite"] = o.suite;
    inputs["trials"] = o.trials;
    inputs["ordering"] = o.ordering;

    bool all_pass = true;
    ordered_json suites = ordered_json::array();
    std::string csv = "suite,check,pass,observed,bound\n";
    for (const auto& s : results) {
        ordered_json js;
        js["suite"] = s.suite;
        js["pass"] = s.pass;
        ordered_json checks = ordered_json::array();
        for (const auto& c : s.checks) {
            ordered_json jc;
            jc["name"] = c.name;
            jc["pass"] = c.pass;
            jc["hard"] = c.hard;
            jc["observed"] = c.observed;
            jc["bound"] = c.bound;
            jc["detail"] = c.detail;
            checks.push_back(std::move(jc));
            csv += s.suite + "," + c.name + "," + (c.pass ? "true" : "false") + "," +
                   csv_number(c.observed) + "," + csv_number(c.bound) + "\n";
            if (c.hard && !c.pass)
                std::cerr << "FAIL " << s.suite << "." << c.name << ": observed "
                          << c.observed << ", bound " << c.bound << "\n";
        }
        js["checks"] = std::move(checks);
        suites.push_back(std::move(js));
        all_pass = all_pass && s.pass;
    }

    ordered_json outputs;
    outputs["all_pass"] = all_pass;
    outputs["suites"] = std::move(suites);

    ordered_json rec;
    rec["command"] = "verify";
    rec["inputs"] = std::move(inputs);
    rec["outputs"] = std::move(outputs);
    ordered_json prov;
    prov["constants_version"] = qeit::constants_version;
    prov["rabi_from_intensity"] = g.rabi;
    prov["kernel_backend"] = qeit::kern::backend_name(qeit::kern::active_backend());
    prov["seed"] = g.seed;
    if (!g.no_timestamp)
        prov["timestamp"] = iso_timestamp_utc();
    rec["provenance"] = std::move(prov);
    if (!g.no_timestamp)
        rec["timing"] = ordered_json{{"elapsed_ms", ms_since(t0)}};

    emit(g, rec, csv);
    return all_pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// presets
// ---------------------------------------------------------------------------

int cmd_presets(const GlobalOpts& g) {
    const auto t0 = Clock::now();

    ordered_json list = ordered_json::array();
    std::string csv =
        "name,I1 [W/m^2],I2 [W/m^2],delta1 [rad/s],delta2 [rad/s],lambda1 [m],"
        "lambda2 [m],v_probe_group_observed [m/s],dipole_ratio [dimensionless]\n";
    for (const auto& e : qeit::all_presets()) {
        list.push_back(preset_inputs(e));
        csv += e.name + "," + csv_number(e.I1) + "," + csv_number(e.I2) + "," +
               csv_number(e.delta1) + "," + csv_number(e.delta2) + "," +
               csv_number(e.lambda1) + "," + csv_number(e.lambda2) + "," +
               csv_number(e.v_probe_group_observed) + "," +
               csv_number(e.dipole_ratio) + "\n";
    }

    ordered_json outputs;
    outputs["presets"] = std::move(list);
    return emit(g, make_record("presets", ordered_json::object(), std::move(outputs), g,
                               ms_since(t0)),
                csv);
}

} // namespace

// ---------------------------------------------------------------------------

int main(int argc, char** argv) {
    CLI::App app{"Dressed-state optics of a three-level medium with two quantized fields"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--format", g.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_option("--out", g.out_path, "Write the record to a file instead of stdout");
    app.add_option("--seed", g.seed, "Seed for randomized verification")
        ->capture_default_str();
    app.add_flag("--no-timestamp", g.no_timestamp,
                 "Omit volatile fields (timestamp, timing) for reproducible output");
    app.add_option("--rabi-from-intensity", g.rabi,
                   "How beam intensities become Rabi frequencies: bare intensity "
                   "ratio (paper) or dipole-weighted conversion (strict)")
        ->check(CLI::IsMember({"paper", "strict"}))
        ->capture_default_str();

    auto* sub_eigen = app.add_subcommand(
        "eigen", "Block eigenvalues: exact roots and the first-order forms");
    sub_eigen->fallthrough();
    EigenOpts eo;
    sub_eigen->add_option("--g1", eo.g1, "Probe vacuum coupling, rad/s")
        ->capture_default_str();
    sub_eigen->add_option("--g2", eo.g2, "Coupling-mode vacuum coupling, rad/s")
        ->capture_default_str();
    sub_eigen->add_option("--delta1", eo.delta1, "Probe detuning, rad/s")
        ->capture_default_str();
    sub_eigen->add_option("--delta2", eo.delta2, "Coupling detuning, rad/s")
        ->capture_default_str();
    sub_eigen->add_option("--n1", eo.n1, "Probe photon number (>= 1)")
        ->capture_default_str();
    sub_eigen->add_option("--n2", eo.n2, "Coupling photon number (>= 0)")
        ->capture_default_str();
    sub_eigen->add_option("--sweep-delta1", eo.sweep_delta1,
                          "Sweep delta1 over 'start:stop:count'");

    auto* sub_response = app.add_subcommand(
        "response", "Linear optical response: susceptibilities, group velocities, "
                    "index shifts");
    sub_response->fallthrough();
    PresetFlags rpf;
    rpf.attach(sub_response);

    auto* sub_nonlinear = app.add_subcommand(
        "nonlinear", "Intensity-dependent refraction: index coefficients, ratios, "
                     "series audit");
    sub_nonlinear->fallthrough();
    PresetFlags npf;
    npf.attach(sub_nonlinear);
    NonlinearOpts no;
    sub_nonlinear->add_option("--audit-points", no.audit_points,
                              "Grid points for the series audit")
        ->capture_default_str();
    sub_nonlinear->add_option("--audit-xmax", no.audit_xmax,
                              "Largest Rabi-ratio squared sampled by the audit")
        ->capture_default_str();

    auto* sub_state = app.add_subcommand(
        "state", "Adiabatic dark state: atomic density matrix and coherences");
    sub_state->fallthrough();
    StateOpts so;
    sub_state->add_option("--g1", so.g1, "Probe vacuum coupling, rad/s")
        ->capture_default_str();
    sub_state->add_option("--g2", so.g2, "Coupling-mode vacuum coupling, rad/s")
        ->capture_default_str();
    sub_state->add_option("--delta1", so.delta1, "Probe detuning, rad/s")
        ->capture_default_str();
    sub_state->add_option("--delta2", so.delta2, "Coupling detuning, rad/s")
        ->capture_default_str();
    sub_state->add_option("--omega1", so.omega1, "Probe carrier frequency, rad/s")
        ->capture_default_str();
    sub_state->add_option("--omega2", so.omega2, "Coupling carrier frequency, rad/s")
        ->capture_default_str();
    so.opt_alpha = sub_state->add_option("--alpha", so.alpha, "Probe coherent amplitude");
    so.opt_beta = sub_state->add_option("--beta", so.beta, "Coupling coherent amplitude");
    sub_state->add_option("--trunc1", so.trunc1, "Probe photon cutoff (-1 = automatic)")
        ->capture_default_str();
    sub_state->add_option("--trunc2", so.trunc2,
                          "Coupling photon cutoff (-1 = automatic)")
        ->capture_default_str();
    sub_state->add_option("--t", so.t, "Evolution time, s")->capture_default_str();
    so.opt_file = sub_state->add_option(
        "--amplitudes", so.amplitudes_path,
        "JSON file with \"probe\" and \"coupling\" amplitude arrays of [re, im] pairs");

    auto* sub_verify = app.add_subcommand(
        "verify", "Cross-checks against the brute-force oracle");
    sub_verify->fallthrough();
    VerifyOpts vo;
    sub_verify->add_option("--suite", vo.suite, "Which suite to run")
        ->check(CLI::IsMember({"all", "eigen", "perturbation", "ramp", "trace"}))
        ->capture_default_str();
    sub_verify->add_option("--trials", vo.trials, "Random blocks for the eigen suite")
        ->capture_default_str();
    sub_verify->add_option("--ordering", vo.ordering, "Ramp turn-on ordering")
        ->check(CLI::IsMember({"correct", "reversed"}))
        ->capture_default_str();

    auto* sub_presets =
        app.add_subcommand("presets", "List the built-in experiment presets");
    sub_presets->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sub_eigen->parsed())
            return cmd_eigen(g, eo);
        if (sub_response->parsed())
            return cmd_response(g, rpf);
        if (sub_nonlinear->parsed())
            return cmd_nonlinear(g, npf, no);
        if (sub_state->parsed())
            return cmd_state(g, so);
        if (sub_verify->parsed())
            return cmd_verify(g, vo);
        if (sub_presets->parsed())
            return cmd_presets(g);
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
