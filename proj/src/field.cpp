#include "qeit/field.hpp"

#include "qeit/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace qeit {

FieldSpec FieldSpec::coherent(double alpha, double beta, int trunc1, int trunc2) {
    FieldSpec f;
    f.kind = CoherentKind{alpha, beta};
    f.trunc1 = trunc1;
    f.trunc2 = trunc2;
    return f;
}

FieldSpec FieldSpec::product(std::vector<std::complex<double>> c1,
                             std::vector<std::complex<double>> c2) {
    if (c1.empty() || c2.empty())
        throw std::invalid_argument("product field: amplitude arrays must be non-empty");
    FieldSpec f;
    f.trunc1 = int(c1.size()) - 1;
    f.trunc2 = int(c2.size()) - 1;
    f.kind = ProductKind{std::move(c1), std::move(c2)};
    return f;
}

FieldSpec FieldSpec::joint(std::size_t dim1, std::size_t dim2,
                           std::vector<std::complex<double>> c) {
    if (dim1 == 0 || dim2 == 0 || c.size() != dim1 * dim2)
        throw std::invalid_argument("joint field: amplitude matrix shape mismatch");
    FieldSpec f;
    f.trunc1 = int(dim1) - 1;
    f.trunc2 = int(dim2) - 1;
    f.kind = JointKind{dim1, dim2, std::move(c)};
    return f;
}

int default_truncation(double nbar) {
    if (nbar < 0.0)
        throw std::invalid_argument("default_truncation: nbar must be >= 0");
    return int(std::ceil(nbar + 10.0 * std::sqrt(nbar + 1.0)));
}

namespace {

// log-space Poisson amplitude ladder for one mode: |amp|, sign from odd
// powers of a negative argument.
std::vector<double> coherent_mode(double a, int trunc) {
    const double asq = a * a;
    const double la = a != 0.0 ? std::log(std::fabs(a)) : 0.0;
    std::vector<double> c(std::size_t(trunc) + 1, 0.0);
    for (int n = 0; n <= trunc; ++n) {
        if (a == 0.0) {
            c[n] = n == 0 ? 1.0 : 0.0;
            continue;
        }
        const double lg = -0.5 * asq + double(n) * la - 0.5 * std::lgamma(double(n) + 1.0);
        double amp = std::exp(lg);
        if (a < 0.0 && (n % 2) == 1)
            amp = -amp;
        c[n] = amp;
    }
    return c;
}

double norm_sq(const std::vector<std::complex<double>>& v) {
    double s = 0.0;
    for (const auto& z : v)
        s += std::norm(z);
    return s;
}

} // namespace

JointAmplitudes coherent_amplitudes(double alpha, double beta, int trunc1, int trunc2) {
    if (trunc1 < 0)
        trunc1 = default_truncation(alpha * alpha);
    if (trunc2 < 0)
        trunc2 = default_truncation(beta * beta);

    const std::vector<double> c1 = coherent_mode(alpha, trunc1);
    const std::vector<double> c2 = coherent_mode(beta, trunc2);

    JointAmplitudes out;
    out.dim1 = std::size_t(trunc1) + 1;
    out.dim2 = std::size_t(trunc2) + 1;
    out.c.resize(out.dim1 * out.dim2);
    std::vector<double> psq(out.dim1 * out.dim2);
    for (std::size_t i = 0; i < out.dim1; ++i)
        for (std::size_t j = 0; j < out.dim2; ++j) {
            const double a = c1[i] * c2[j];
            out.c[i * out.dim2 + j] = a;
            psq[i * out.dim2 + j] = a * a;
        }
    out.tail_mass = 1.0 - kern::reduce_sum(psq.data(), psq.size());
    out.tail_warning = out.tail_mass > 1e-6;
    return out;
}

JointAmplitudes materialize(const FieldSpec& f) {
    if (const auto* coh = std::get_if<CoherentKind>(&f.kind))
        return coherent_amplitudes(coh->alpha, coh->beta, f.trunc1, f.trunc2);

    auto check_and_scale = [](std::vector<std::complex<double>>& v, const char* which) {
        const double n2 = norm_sq(v);
        if (std::fabs(n2 - 1.0) > 1e-6)
            throw std::invalid_argument(std::string(which) +
                                        " amplitudes are not normalized (|norm^2 - 1| > 1e-6)");
        const double inv = 1.0 / std::sqrt(n2);
        for (auto& z : v)
            z *= inv;
    };

    JointAmplitudes out;
    if (const auto* prod = std::get_if<ProductKind>(&f.kind)) {
        std::vector<std::complex<double>> c1 = prod->c1;
        std::vector<std::complex<double>> c2 = prod->c2;
        if (c1.empty() || c2.empty())
            throw std::invalid_argument("product field: amplitude arrays must be non-empty");
        check_and_scale(c1, "probe");
        check_and_scale(c2, "coupling");
        out.dim1 = c1.size();
        out.dim2 = c2.size();
        out.c.resize(out.dim1 * out.dim2);
        for (std::size_t i = 0; i < out.dim1; ++i)
            for (std::size_t j = 0; j < out.dim2; ++j)
                out.c[i * out.dim2 + j] = c1[i] * c2[j];
        return out;
    }

    const auto& joint = std::get<JointKind>(f.kind);
    std::vector<std::complex<double>> c = joint.c;
    if (joint.dim1 == 0 || joint.dim2 == 0 || c.size() != joint.dim1 * joint.dim2)
        throw std::invalid_argument("joint field: amplitude matrix shape mismatch");
    check_and_scale(c, "joint");
    out.dim1 = joint.dim1;
    out.dim2 = joint.dim2;
    out.c = std::move(c);
    return out;
}

WeightDistribution weight_distribution(const JointAmplitudes& amps) {
    WeightDistribution w;
    w.dim1 = amps.dim1;
    w.dim2 = amps.dim2;
    w.p.resize(amps.c.size());
    double n1 = 0.0, n2 = 0.0;
    for (std::size_t i = 0; i < amps.dim1; ++i)
        for (std::size_t j = 0; j < amps.dim2; ++j) {
            const double pij = std::norm(amps.at(i, j));
            w.p[i * amps.dim2 + j] = pij;
            n1 += double(i) * pij;
            n2 += double(j) * pij;
        }
    w.nbar_alpha = n1;
    w.nbar_beta = n2;
    return w;
}

} // namespace qeit
