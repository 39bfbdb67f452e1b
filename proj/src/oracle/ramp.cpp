#include "qeit/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace qeit::oracle {

double smoothstep_quintic(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    return u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}

RampProfile RampProfile::counterintuitive(double t_total) {
    RampProfile r;
    r.t_total = t_total;
    r.t_on_g2 = 0.0;
    r.rise_g2 = 0.40 * t_total;
    r.t_on_g1 = 0.45 * t_total;
    r.rise_g1 = 0.40 * t_total;
    return r;
}

RampProfile RampProfile::reversed(double t_total) {
    RampProfile r = counterintuitive(t_total);
    std::swap(r.t_on_g1, r.t_on_g2);
    std::swap(r.rise_g1, r.rise_g2);
    return r;
}

double RampProfile::scale_g1(double t) const {
    return rise_g1 > 0.0 ? smoothstep_quintic((t - t_on_g1) / rise_g1)
                         : (t >= t_on_g1 ? 1.0 : 0.0);
}

double RampProfile::scale_g2(double t) const {
    return rise_g2 > 0.0 ? smoothstep_quintic((t - t_on_g2) / rise_g2)
                         : (t >= t_on_g2 ? 1.0 : 0.0);
}

namespace {

void derivative(TruncatedHamiltonian& h, double s1, double s2,
                const double* xu, const double* xv, double* du, double* dv,
                std::size_t n) {
    h.set_scales(s1, s2);
    kern::ham_apply(h.view(), xv, du);   // d(Re)/dt = +H Im
    kern::ham_apply(h.view(), xu, dv);   // d(Im)/dt = -H Re
    kern::scale(-1.0, dv, n);
}

} // namespace

RampResult evolve_ramped(const SystemParams& p, int n1max, int n2max,
                         const RampProfile& ramp, double dt,
                         const std::vector<std::complex<double>>& psi0,
                         const std::vector<std::complex<double>>* target) {
    TruncatedHamiltonian h = build_truncated_hamiltonian(p, n1max, n2max, 1.0, 1.0);
    const std::size_t n = h.dim();
    if (psi0.size() != n)
        throw std::invalid_argument("evolve_ramped: psi0 dimension mismatch");
    if (!(ramp.t_total > 0.0))
        throw std::invalid_argument("evolve_ramped: t_total must be positive");

    // Step bound: the stiffest frequency present is the fully-on top-of-grid
    // Rabi scale. The default step keeps Omega_max * dt at 0.05.
    const double omega_max =
        2.0 * std::sqrt(p.g1 * p.g1 * double(n1max) + p.g2 * p.g2 * (double(n2max) + 1.0));
    const double dt_cap = 0.05 / omega_max;
    if (dt <= 0.0)
        dt = dt_cap;
    else if (dt > dt_cap * (1.0 + 1e-12))
        throw std::invalid_argument("evolve_ramped: dt too large for the Rabi scale");

    const std::size_t steps = std::size_t(std::ceil(ramp.t_total / dt));
    const double hstep = ramp.t_total / double(steps);

    std::vector<double> u(n), v(n), ku(n), kv(n), su(n), sv(n), au(n), av(n);
    for (std::size_t i = 0; i < n; ++i) {
        u[i] = psi0[i].real();
        v[i] = psi0[i].imag();
    }
    const double norm0 = kern::reduce_nrm2sq(u.data(), n) + kern::reduce_nrm2sq(v.data(), n);
    if (!(norm0 > 0.0))
        throw std::invalid_argument("evolve_ramped: psi0 has zero norm");

    double max_drift = 0.0;
    auto check_norm = [&]() {
        const double nn = kern::reduce_nrm2sq(u.data(), n) + kern::reduce_nrm2sq(v.data(), n);
        const double drift = std::fabs(nn / norm0 - 1.0);
        max_drift = std::max(max_drift, drift);
        if (drift > 1e-6)
            throw std::runtime_error("evolve_ramped: norm drift exceeds 1e-6, reduce dt");
    };

    for (std::size_t step = 0; step < steps; ++step) {
        const double t = double(step) * hstep;
        const double th = t + 0.5 * hstep;
        const double tf = t + hstep;

        derivative(h, ramp.scale_g1(t), ramp.scale_g2(t), u.data(), v.data(),
                   ku.data(), kv.data(), n);
        au = ku;
        av = kv;
        kern::xpay(u.data(), 0.5 * hstep, ku.data(), su.data(), n);
        kern::xpay(v.data(), 0.5 * hstep, kv.data(), sv.data(), n);

        derivative(h, ramp.scale_g1(th), ramp.scale_g2(th), su.data(), sv.data(),
                   ku.data(), kv.data(), n);
        kern::axpy(2.0, ku.data(), au.data(), n);
        kern::axpy(2.0, kv.data(), av.data(), n);
        kern::xpay(u.data(), 0.5 * hstep, ku.data(), su.data(), n);
        kern::xpay(v.data(), 0.5 * hstep, kv.data(), sv.data(), n);

        derivative(h, ramp.scale_g1(th), ramp.scale_g2(th), su.data(), sv.data(),
                   ku.data(), kv.data(), n);
        kern::axpy(2.0, ku.data(), au.data(), n);
        kern::axpy(2.0, kv.data(), av.data(), n);
        kern::xpay(u.data(), hstep, ku.data(), su.data(), n);
        kern::xpay(v.data(), hstep, kv.data(), sv.data(), n);

        derivative(h, ramp.scale_g1(tf), ramp.scale_g2(tf), su.data(), sv.data(),
                   ku.data(), kv.data(), n);
        kern::axpy(1.0, ku.data(), au.data(), n);
        kern::axpy(1.0, kv.data(), av.data(), n);

        kern::axpy(hstep / 6.0, au.data(), u.data(), n);
        kern::axpy(hstep / 6.0, av.data(), v.data(), n);

        if ((step & 255u) == 255u)
            check_norm();
    }
    check_norm();

    RampResult r;
    r.steps = steps;
    r.dt = hstep;
    r.norm_drift = max_drift;
    r.state.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        r.state[i] = {u[i], v[i]};
    if (target != nullptr)
        r.fidelity = std::norm(overlap(*target, r.state));
    return r;
}

std::complex<double> overlap(const std::vector<std::complex<double>>& a,
                             const std::vector<std::complex<double>>& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("overlap: dimension mismatch");
    const std::size_t n = a.size();
    std::vector<double> ar(n), ai(n), br(n), bi(n);
    for (std::size_t i = 0; i < n; ++i) {
        ar[i] = a[i].real();
        ai[i] = a[i].imag();
        br[i] = b[i].real();
        bi[i] = b[i].imag();
    }
    const double re = kern::reduce_dot(ar.data(), br.data(), n)
                    + kern::reduce_dot(ai.data(), bi.data(), n);
    const double im = kern::reduce_dot(ar.data(), bi.data(), n)
                    - kern::reduce_dot(ai.data(), br.data(), n);
    return {re, im};
}

std::array<std::complex<double>, 9>
partial_trace_atom(const std::vector<std::complex<double>>& psi, int np1, int np2) {
    const std::size_t plane = std::size_t(np1) * np2;
    if (psi.size() != 3 * plane)
        throw std::invalid_argument("partial_trace_atom: dimension mismatch");
    std::array<std::complex<double>, 9> rho{};
    for (int m = 0; m < 3; ++m)
        for (int mp = 0; mp < 3; ++mp) {
            std::complex<double> s = 0.0;
            for (std::size_t k = 0; k < plane; ++k)
                s += psi[m * plane + k] * std::conj(psi[mp * plane + k]);
            rho[m * 3 + mp] = s;
        }
    return rho;
}

} // namespace qeit::oracle
