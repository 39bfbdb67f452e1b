#include "qeit/adiabatic.hpp"

#include "qeit/dressed.hpp"
#include "qeit/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace qeit {

AdiabaticState adiabatic_state(const SystemParams& p, const FieldSpec& field, double t,
                               Frame frame) {
    p.validate();
    const JointAmplitudes amps = materialize(field);

    AdiabaticState s;
    s.dim1 = amps.dim1;
    s.dim2 = amps.dim2;
    s.tail_mass = amps.tail_mass;
    s.tail_warning = amps.tail_warning;

    const std::size_t n = s.dim1 * s.dim2;
    s.block_amp.resize(n);
    s.a0.resize(n);
    s.b0.resize(n);
    s.c0.resize(n);
    s.e0.resize(n);

    // The coupling Rabi row is the same for every n1.
    std::vector<double> w2(s.dim2);
    for (std::size_t n2 = 0; n2 < s.dim2; ++n2)
        w2[n2] = 2.0 * p.g2 * std::sqrt(double(n2) + 1.0);

    const double ddiff = p.delta1 - p.delta2;
    for (std::size_t n1 = 0; n1 < s.dim1; ++n1) {
        const double w1 = 2.0 * p.g1 * std::sqrt(double(n1));
        const std::size_t row = n1 * s.dim2;
        kern::dark_row(w1, ddiff, w2.data(), s.a0.data() + row, s.b0.data() + row,
                       s.c0.data() + row, s.dim2);
        for (std::size_t n2 = 0; n2 < s.dim2; ++n2) {
            const double wsq = w1 * w1 + w2[n2] * w2[n2];
            double e = (w1 * w1 / wsq) * ddiff;
            if (frame == Frame::lab)
                e += p.omega1 * double(n1) + p.omega2 * double(n2);
            s.e0[row + n2] = e;
            s.block_amp[row + n2] = amps.at(n1, n2) * std::polar(1.0, -e * t);
        }
    }
    return s;
}

std::vector<std::complex<double>> AdiabaticState::flatten(std::size_t np1,
                                                          std::size_t np2) const {
    std::vector<std::complex<double>> psi(3 * np1 * np2);
    auto put = [&](std::size_t m, std::size_t k1, std::size_t k2,
                   const std::complex<double>& v) {
        if (k1 < np1 && k2 < np2)
            psi[(m * np1 + k1) * np2 + k2] = v;
    };
    for (std::size_t n1 = 0; n1 < dim1; ++n1)
        for (std::size_t n2 = 0; n2 < dim2; ++n2) {
            const std::size_t i = idx(n1, n2);
            const std::complex<double>& amp = block_amp[i];
            put(0, n1, n2, amp * a0[i]);
            if (n1 >= 1) {
                put(1, n1 - 1, n2, amp * b0[i]);
                put(2, n1 - 1, n2 + 1, amp * c0[i]);
            }
        }
    return psi;
}

DCoefficients d_coefficients(const AdiabaticState& s) {
    DCoefficients d;
    d.dim1 = s.dim1;
    d.dim2 = s.dim2 + 1;
    const std::size_t n = d.dim1 * d.dim2;
    d.d1.assign(n, 0.0);
    d.d2.assign(n, 0.0);
    d.d3.assign(n, 0.0);
    for (std::size_t m1 = 0; m1 < d.dim1; ++m1)
        for (std::size_t m2 = 0; m2 < d.dim2; ++m2) {
            const std::size_t k = m1 * d.dim2 + m2;
            if (m2 < s.dim2) {
                const std::size_t i = s.idx(m1, m2);
                d.d1[k] = s.block_amp[i] * s.a0[i];
                if (m1 + 1 < s.dim1) {
                    const std::size_t j = s.idx(m1 + 1, m2);
                    d.d2[k] = s.block_amp[j] * s.b0[j];
                }
            }
            if (m2 >= 1 && m1 + 1 < s.dim1) {
                const std::size_t j = s.idx(m1 + 1, m2 - 1);
                d.d3[k] = s.block_amp[j] * s.c0[j];
            }
        }
    return d;
}

double AtomDensityMatrix::hermiticity_defect() const {
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            worst = std::max(worst, std::abs(at(i, j) - std::conj(at(j, i))));
    return worst;
}

AtomDensityMatrix reduced_density_matrix(const AdiabaticState& s) {
    const DCoefficients d = d_coefficients(s);
    const std::size_t n = d.dim1 * d.dim2;

    std::array<std::vector<double>, 3> re, im;
    const std::vector<std::complex<double>>* planes[3] = {&d.d1, &d.d2, &d.d3};
    for (int m = 0; m < 3; ++m) {
        re[m].resize(n);
        im[m].resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            re[m][k] = (*planes[m])[k].real();
            im[m][k] = (*planes[m])[k].imag();
        }
    }

    AtomDensityMatrix rho;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j <= i; ++j) {
            const double rr = kern::reduce_dot(re[i].data(), re[j].data(), n);
            const double ii = kern::reduce_dot(im[i].data(), im[j].data(), n);
            const double ir = kern::reduce_dot(im[i].data(), re[j].data(), n);
            const double ri = kern::reduce_dot(re[i].data(), im[j].data(), n);
            const std::complex<double> v(rr + ii, ir - ri);
            rho.rho[std::size_t(i) * 3 + j] = v;
            if (i != j)
                rho.rho[std::size_t(j) * 3 + i] = std::conj(v);
        }
    return rho;
}

AtomDensityMatrix reduced_density_matrix(const SystemParams& p, const FieldSpec& field,
                                         double t) {
    return reduced_density_matrix(adiabatic_state(p, field, t));
}

namespace {

// zero-branch dressed components of one block, printed-form normalization
struct DarkPoint {
    double a0, b0, c0, e0;
};

DarkPoint dark_point(double w1, double w2, double ddiff) {
    DarkPoint d;
    const double wsq = w1 * w1 + w2 * w2;
    const double w = std::sqrt(wsq);
    d.a0 = -(w2 / w);
    d.b0 = (2.0 * w1) * ddiff * w2 / (w * wsq);
    d.c0 = w1 / w;
    d.e0 = (w1 * w1 / wsq) * ddiff;
    return d;
}

} // namespace

CoherencePair coherences_timeseries(const SystemParams& p, double alpha, double beta,
                                    double t) {
    p.validate();
    if (beta == 0.0)
        throw std::invalid_argument(
            "coherences_timeseries: coupling vacuum (beta = 0), rho23 is singular as written");

    const JointAmplitudes amps = coherent_amplitudes(alpha, beta, -1, -1);
    const WeightDistribution wd = weight_distribution(amps);
    const double ddiff = p.delta1 - p.delta2;

    const std::size_t n = wd.dim1 * wd.dim2;
    std::vector<double> re21(n), im21(n), re23(n), im23(n);

    for (std::size_t n1 = 0; n1 < wd.dim1; ++n1) {
        const double w1_here = 2.0 * p.g1 * std::sqrt(double(n1));
        const double w1_up = 2.0 * p.g1 * std::sqrt(double(n1) + 1.0);
        for (std::size_t n2 = 0; n2 < wd.dim2; ++n2) {
            const std::size_t k = n1 * wd.dim2 + n2;
            const double pw = wd.p[k];
            const double w2_here = 2.0 * p.g2 * std::sqrt(double(n2) + 1.0);

            const DarkPoint here = dark_point(w1_here, w2_here, ddiff);
            const DarkPoint up = dark_point(w1_up, w2_here, ddiff);

            // probe coherence: blocks (n1,n2) and (n1+1,n2)
            {
                const double mag = pw * here.a0 * up.b0 * alpha / std::sqrt(double(n1) + 1.0);
                const double phase = (-p.omega1 + here.e0 - up.e0) * t;
                re21[k] = mag * std::cos(phase);
                im21[k] = mag * std::sin(phase);
            }

            // coupling coherence: blocks (n1+1,n2) and (n1+1,n2-1)
            if (n2 >= 1) {
                const double w2_dn = 2.0 * p.g2 * std::sqrt(double(n2));
                const DarkPoint dn = dark_point(w1_up, w2_dn, ddiff);
                const double mag = pw * up.b0 * dn.c0 * std::sqrt(double(n2)) * alpha * alpha /
                                   ((double(n1) + 1.0) * beta);
                const double phase = (-p.omega2 + dn.e0 - up.e0) * t;
                re23[k] = mag * std::cos(phase);
                im23[k] = mag * std::sin(phase);
            } else {
                re23[k] = 0.0;
                im23[k] = 0.0;
            }
        }
    }

    CoherencePair out;
    out.rho21 = {kern::reduce_sum(re21.data(), n), kern::reduce_sum(im21.data(), n)};
    out.rho23 = {kern::reduce_sum(re23.data(), n), kern::reduce_sum(im23.data(), n)};
    out.tail_mass = amps.tail_mass;
    return out;
}

LargeNCoherences large_n_coherences(const SystemParams& p, double nbar_alpha,
                                    double nbar_beta) {
    p.validate();
    if (nbar_alpha < 1.0 || nbar_beta < 1.0)
        throw std::invalid_argument("large_n_coherences: mean photon numbers must be >= 1");
    const RabiPair r = RabiPair::from_values(2.0 * p.g1 * std::sqrt(nbar_alpha),
                                             2.0 * p.g2 * std::sqrt(nbar_beta + 1.0));
    const DressedTriple bar = dressed_coefficients(p, r).zero;
    return {bar.a * bar.b, bar.c * bar.b};
}

RabiSpread rabi_spread_estimate(double nbar) {
    if (!(nbar > 0.0))
        throw std::invalid_argument("rabi_spread_estimate: nbar must be > 0");
    return {1.0 / std::sqrt(nbar), 1.0 / (8.0 * nbar)};
}

std::complex<double> nonclassical_coherence(const SystemParams& p, const FieldSpec& field) {
    p.validate();
    const auto* prod = std::get_if<ProductKind>(&field.kind);
    if (!prod)
        throw std::invalid_argument(
            "nonclassical_coherence: field must be in product form (separate probe and "
            "coupling amplitude arrays)");
    if (prod->c1.empty() || prod->c2.empty())
        throw std::invalid_argument("nonclassical_coherence: amplitude arrays must be non-empty");

    auto normalized = [](std::vector<std::complex<double>> v, const char* which) {
        double n2 = 0.0;
        for (const auto& z : v)
            n2 += std::norm(z);
        if (std::fabs(n2 - 1.0) > 1e-6)
            throw std::invalid_argument(std::string("nonclassical_coherence: ") + which +
                                        " amplitudes are not normalized");
        const double inv = 1.0 / std::sqrt(n2);
        for (auto& z : v)
            z *= inv;
        return v;
    };
    const std::vector<std::complex<double>> c1 = normalized(prod->c1, "probe");
    const std::vector<std::complex<double>> c2 = normalized(prod->c2, "coupling");

    const double ddiff = p.delta1 - p.delta2;
    const std::size_t pairs = c1.size() - 1;
    if (pairs == 0)
        return 0.0;

    const std::size_t n = pairs * c2.size();
    std::vector<double> re(n), im(n);
    for (std::size_t n1 = 0; n1 + 1 < c1.size(); ++n1) {
        const double w1 = 2.0 * p.g1 * std::sqrt(double(n1));
        for (std::size_t n2 = 0; n2 < c2.size(); ++n2) {
            const std::size_t k = n1 * c2.size() + n2;
            const double w2 = 2.0 * p.g2 * std::sqrt(double(n2) + 1.0);
            const DarkPoint d = dark_point(w1, w2, ddiff);
            const std::complex<double> term =
                c1[n1 + 1] * std::conj(c1[n1]) * std::norm(c2[n2]) * (d.a0 * d.b0);
            re[k] = term.real();
            im[k] = term.imag();
        }
    }
    return {kern::reduce_sum(re.data(), n), kern::reduce_sum(im.data(), n)};
}

} // namespace qeit
