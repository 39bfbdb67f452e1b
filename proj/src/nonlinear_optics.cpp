#include "qeit/nonlinear_optics.hpp"

#include "qeit/constants.hpp"
#include "qeit/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace qeit {

ChiSeries chi_series_printed(const SystemParams& p, double I2) {
    p.validate();
    if (!(I2 > 0.0))
        throw std::invalid_argument("chi_series_printed: I2 must be positive");

    const double ddiff = p.delta1 - p.delta2;
    const double mu12sq = p.mu12 * p.mu12;
    const double mu32sq = p.mu32 * p.mu32;
    const double N = p.atom_density;
    const double w2sq = 2.0 * mu32sq * I2 / (eps0 * c_light * hbar * hbar);

    ChiSeries s;
    s.chi1 = -4.0 * N * mu12sq * ddiff / (hbar * eps0 * w2sq);
    s.chi3 = 8.0 * hbar * eps0 * c_light * c_light * mu12sq * mu12sq * N * ddiff /
             (mu32sq * mu32sq * I2 * I2);
    s.chi5 = -24.0 * hbar * eps0 * eps0 * std::pow(c_light, 3) * std::pow(mu12sq, 3) * N *
             ddiff / (std::pow(mu32sq, 3) * std::pow(I2, 3));
    s.chi7 = (192.0 / 3.0) * hbar * std::pow(eps0, 3) * std::pow(c_light, 4) *
             std::pow(mu12sq, 4) * N * ddiff / (std::pow(mu32sq, 4) * std::pow(I2, 4));
    return s;
}

namespace {

void fill_intensity_forms(NonlinearCoefficients& n) {
    n.n2_I = unit_convert_intensity(n.n2, 2);
    n.n4_I = unit_convert_intensity(n.n4, 4);
    n.n6_I = unit_convert_intensity(n.n6, 6);
}

} // namespace

NonlinearCoefficients n_coefficients_from_chi(const ChiSeries& chi) {
    if (!(std::fabs(chi.chi1) < 0.5))
        throw std::invalid_argument(
            "n_coefficients_from_chi: |chi1| must be below 0.5 for the expansion");

    NonlinearCoefficients n;
    n.n0 = 1.0 + chi.chi1;
    const double n0 = n.n0;
    n.n2 = chi.chi3 / (2.0 * n0);
    n.n4 = chi.chi5 / (2.0 * n0) - chi.chi3 * chi.chi3 / (8.0 * std::pow(n0, 3));
    n.n6 = chi.chi7 / (2.0 * n0) - chi.chi3 * chi.chi5 / (4.0 * std::pow(n0, 3)) +
           std::pow(chi.chi3, 3) / (16.0 * std::pow(n0, 5));
    fill_intensity_forms(n);
    return n;
}

NonlinearCoefficients n_coefficients_closed(const ExperimentPreset& e, double v0_probe) {
    if (!(v0_probe > 0.0))
        throw std::invalid_argument("n_coefficients_closed: v0_probe must be positive");
    if (!(e.I2 > 0.0) || !(e.lambda1 > 0.0))
        throw std::invalid_argument("n_coefficients_closed: preset must supply I2 and lambda1");

    const double ddiff = e.delta1 - e.delta2;
    NonlinearCoefficients n;
    n.n0 = 1.0 - e.lambda1 * ddiff / (std::numbers::pi * v0_probe);
    n.n2 = 2.0 * eps0 * c_light * ddiff * e.lambda1 / (std::numbers::pi * e.I2 * v0_probe);
    n.n4 = -3.0 * eps0 * c_light * n.n2 / e.I2;
    n.n6 = -8.0 * eps0 * c_light * n.n4 / (3.0 * e.I2);
    fill_intensity_forms(n);
    return n;
}

double unit_convert_intensity(double nk, int k) {
    const double half = 2.0 * eps0 * c_light;
    switch (k) {
        case 2: return nk / half * 1e4;
        case 4: return nk / (half * half) * 1e8;
        case 6: return nk / (half * half * half) * 1e12;
        default: throw std::invalid_argument("unit_convert_intensity: order must be 2, 4 or 6");
    }
}

CoefficientRatios coefficient_ratios(const ExperimentPreset& e) {
    if (!(e.I2 > 0.0))
        throw std::invalid_argument("coefficient_ratios: I2 must be positive");
    CoefficientRatios r;
    r.ratio_24_field = -e.I2 / (3.0 * eps0 * c_light);
    r.ratio_46_field = -3.0 * e.I2 / (8.0 * eps0 * c_light);
    const double to_intensity = 2.0 * eps0 * c_light * 1e-4;
    r.ratio_24_intensity = r.ratio_24_field * to_intensity;
    r.ratio_46_intensity = r.ratio_46_field * to_intensity;
    return r;
}

SeriesAudit series_audit(const SystemParams& p, double I2, int fit_points, double x_max) {
    p.validate();
    if (!(I2 > 0.0))
        throw std::invalid_argument("series_audit: I2 must be positive");
    if (fit_points < 8)
        throw std::invalid_argument("series_audit: at least 8 fit points required");
    if (!(x_max > 0.0) || x_max > 0.05)
        throw std::invalid_argument("series_audit: x_max must lie in (0, 0.05]");

    const double mu12sq = p.mu12 * p.mu12;
    const double mu32sq = p.mu32 * p.mu32;
    const double w2sq = 2.0 * mu32sq * I2 / (eps0 * c_light * hbar * hbar);
    const double ddiff = p.delta1 - p.delta2;
    const double chi1 = -4.0 * p.atom_density * mu12sq * ddiff / (hbar * eps0 * w2sq);

    // x = W1^2/W2^2 maps to |E|^2 through x = 4 mu12^2 |E|^2 / (hbar^2 W2^2).
    const double x_per_esq = 4.0 * mu12sq / (hbar * hbar * w2sq);

    std::vector<double> esq(std::size_t(fit_points), 0.0);
    std::vector<double> chi(std::size_t(fit_points), 0.0);
    for (int j = 0; j < fit_points; ++j) {
        const double x = x_max * double(j + 1) / double(fit_points);
        esq[std::size_t(j)] = x / x_per_esq;
        const double onepx = 1.0 + x;
        chi[std::size_t(j)] = chi1 / (onepx * onepx);
    }

    const oracle::PolyFit fit = oracle::polynomial_fit(esq, chi, 3);
    if (fit.ill_conditioned)
        throw std::runtime_error("series_audit: fit is ill-conditioned, shrink fit interval");

    SeriesAudit a;
    a.printed = chi_series_printed(p, I2);
    a.chi1_fitted = fit.coeffs[0];
    a.chi3_fitted = fit.coeffs[1];
    a.chi5_fitted = fit.coeffs[2];
    a.chi7_fitted = fit.coeffs[3];
    a.ratio3 = a.chi3_fitted / a.printed.chi3;
    a.ratio5 = a.chi5_fitted / a.printed.chi5;
    a.ratio7 = a.chi7_fitted / a.printed.chi7;
    a.chi5_printed = a.printed.chi5;
    a.chi5_expansion = 3.0 * chi1 * x_per_esq * x_per_esq;
    a.x_max = x_max;
    a.points = fit_points;
    a.fit_condition = fit.condition;
    a.fit_rms_residual = fit.rms_residual;
    a.n0_linearization_gap = (1.0 + chi1) - std::sqrt(1.0 + chi1);
    return a;
}

} // namespace qeit
