#pragma once

#include "qeit/linear_optics.hpp"
#include "qeit/types.hpp"

namespace qeit {

// Susceptibility expansion in powers of the probe field intensity |E|^2.
struct ChiSeries {
    double chi1 = 0.0;  // dimensionless
    double chi3 = 0.0;  // m^2/V^2
    double chi5 = 0.0;  // m^4/V^4
    double chi7 = 0.0;  // m^6/V^6
};

// The printed closed forms, with the coupling Rabi frequency folded into the
// beam intensity I2. Signs alternate with sign(delta1 - delta2).
ChiSeries chi_series_printed(const SystemParams& p, double I2);

struct NonlinearCoefficients {
    double n0 = 1.0;
    double n2 = 0.0;   // m^2/V^2
    double n4 = 0.0;   // m^4/V^4
    double n6 = 0.0;   // m^6/V^6
    double n2_I = 0.0; // cm^2/W
    double n4_I = 0.0; // cm^4/W^2
    double n6_I = 0.0; // cm^6/W^3
};

// Refractive-index expansion from a susceptibility series: n0 = 1 + chi1 as
// printed, then the sqrt-expansion compositions for n2, n4, n6.
NonlinearCoefficients n_coefficients_from_chi(const ChiSeries& chi);

// Closed forms anchored at the zero-probe group velocity:
// n2 = 2 eps0 c (d1-d2) lambda1 / (pi I2 v0), n4 = -3 eps0 c n2 / I2,
// n6 = -8 eps0 c n4 / (3 I2).
NonlinearCoefficients n_coefficients_closed(const ExperimentPreset& e, double v0_probe);

// Field-referenced coefficient -> intensity-referenced practical unit:
// divide by (2 eps0 c)^(k/2), convert meters to centimeters. k in {2, 4, 6}.
double unit_convert_intensity(double nk, int k);

struct CoefficientRatios {
    double ratio_24_field = 0.0;      // n2/n4, V^2/m^2
    double ratio_46_field = 0.0;      // n4/n6, V^2/m^2
    double ratio_24_intensity = 0.0;  // W/cm^2
    double ratio_46_intensity = 0.0;  // W/cm^2
};

// Both ratios collapse to pure I2 expressions; detuning and density cancel.
CoefficientRatios coefficient_ratios(const ExperimentPreset& e);

// Numerical check of the printed series against the exact susceptibility:
// evaluate the full form on a grid of |E|^2, fit a cubic, compare each
// coefficient with its printed value.
struct SeriesAudit {
    ChiSeries printed;
    double chi1_fitted = 0.0;
    double chi3_fitted = 0.0;
    double chi5_fitted = 0.0;
    double chi7_fitted = 0.0;
    double ratio3 = 0.0;  // fitted / printed
    double ratio5 = 0.0;
    double ratio7 = 0.0;
    // The two fifth-order routes side by side: the printed closed form and
    // the value forced by the 1/(1+x)^2 expansion (coefficient +3 on x^2).
    double chi5_printed = 0.0;
    double chi5_expansion = 0.0;
    double x_max = 0.0;       // largest W1^2/W2^2 sampled
    int points = 0;
    double fit_condition = 0.0;
    double fit_rms_residual = 0.0;
    // (1 + chi1) - sqrt(1 + chi1), the error of the printed n0 convention.
    double n0_linearization_gap = 0.0;
};

SeriesAudit series_audit(const SystemParams& p, double I2, int fit_points = 16,
                         double x_max = 0.002);

} // namespace qeit
