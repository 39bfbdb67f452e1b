#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qeit::verify {

// One asserted property: observed value against its bound, a `pass` verdict,
// and a sentence of context for the failure report.
struct CheckResult {
    std::string name;
    bool pass = false;
    bool hard = true;  // informational checks never fail a suite
    double observed = 0.0;
    double bound = 0.0;
    std::string detail;
};

struct SuiteResult {
    std::string suite;
    bool pass = true;
    std::vector<CheckResult> checks;

    void add(CheckResult c) {
        if (c.hard && !c.pass)
            pass = false;
        checks.push_back(std::move(c));
    }
};

// Cardano roots against the iterative Jacobi eigensolver over seeded random
// blocks; reports the worst relative disagreement.
SuiteResult suite_eigen(int trials, std::uint64_t seed);

// Log-log order of |E_pert - E_exact| under joint detuning scaling, per
// branch, over a three-octave sweep.
SuiteResult suite_perturbation();

enum class RampOrdering { correct, reversed };

// Ramped Schrodinger evolution against the analytic dark-superposition
// target. The reversed ordering is reported as a diagnostic, not a failure.
SuiteResult suite_ramp(RampOrdering ordering = RampOrdering::correct);

// Density-matrix assembly against the brute-force partial trace over a set
// of field specifications.
SuiteResult suite_trace(std::uint64_t seed);

// All four, in the fixed order eigen, perturbation, ramp, trace.
std::vector<SuiteResult> run_all(int eigen_trials, std::uint64_t seed);

} // namespace qeit::verify
