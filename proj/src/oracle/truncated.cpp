#include "qeit/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace qeit::oracle {

TruncatedHamiltonian::TruncatedHamiltonian(const SystemParams& p, int n1max, int n2max)
    : np1_(n1max + 1),
      np2_(n2max + 1),
      d1_(p.delta1),
      d12_(p.delta1 - p.delta2) {
    if (n1max < 0 || n2max < 0)
        throw std::invalid_argument("truncation bounds must be >= 0");
    p.validate();
    c1_base_.resize(np1_);
    c2_base_.resize(np2_);
    for (int k = 0; k < np1_; ++k)
        c1_base_[k] = p.g1 * std::sqrt(double(k));
    for (int k = 0; k < np2_; ++k)
        c2_base_[k] = p.g2 * std::sqrt(double(k));
    c1_ = c1_base_;
    c2_ = c2_base_;
}

void TruncatedHamiltonian::set_scales(double scale_g1, double scale_g2) {
    if (!(scale_g1 >= 0.0 && scale_g1 <= 1.0) || !(scale_g2 >= 0.0 && scale_g2 <= 1.0))
        throw std::invalid_argument("coupling scales must lie in [0, 1]");
    s1_ = scale_g1;
    s2_ = scale_g2;
    for (int k = 0; k < np1_; ++k)
        c1_[k] = scale_g1 * c1_base_[k];
    for (int k = 0; k < np2_; ++k)
        c2_[k] = scale_g2 * c2_base_[k];
}

kern::HamView TruncatedHamiltonian::view() const {
    return kern::HamView{np1_, np2_, d1_, d12_, c1_.data(), c2_.data()};
}

void TruncatedHamiltonian::apply(const double* x, double* y) const {
    kern::ham_apply(view(), x, y);
}

void TruncatedHamiltonian::apply(const std::complex<double>* x,
                                 std::complex<double>* y) const {
    const std::size_t d = dim();
    std::vector<double> re(d), im(d), ore(d), oim(d);
    for (std::size_t i = 0; i < d; ++i) {
        re[i] = x[i].real();
        im[i] = x[i].imag();
    }
    kern::ham_apply(view(), re.data(), ore.data());
    kern::ham_apply(view(), im.data(), oim.data());
    for (std::size_t i = 0; i < d; ++i)
        y[i] = {ore[i], oim[i]};
}

std::vector<double> TruncatedHamiltonian::to_dense() const {
    const std::size_t d = dim();
    if (d > 2000)
        throw std::length_error("to_dense: dimension too large for a dense form");
    std::vector<double> dense(d * d);
    std::vector<double> e(d, 0.0), col(d);
    for (std::size_t j = 0; j < d; ++j) {
        e[j] = 1.0;
        apply(e.data(), col.data());
        e[j] = 0.0;
        for (std::size_t i = 0; i < d; ++i)
            dense[i * d + j] = col[i];
    }
    return dense;
}

double TruncatedHamiltonian::hermiticity_defect() const {
    const std::vector<double> dense = to_dense();
    const std::size_t d = dim();
    double defect = 0.0;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
            defect = std::max(defect, std::fabs(dense[i * d + j] - dense[j * d + i]));
    return defect;
}

Mat3 TruncatedHamiltonian::block_of(const FockBlock& blk) const {
    blk.validate();
    if (blk.n1 >= np1_ || blk.n2 + 1 >= np2_)
        throw std::out_of_range("block_of: block exceeds truncation");
    const double a = c1_[blk.n1];
    const double b = c2_[blk.n2 + 1];
    return Mat3{{{0.0, -a, 0.0},
                 {-a, d1_, -b},
                 {0.0, -b, d12_}}};
}

TruncatedHamiltonian build_truncated_hamiltonian(const SystemParams& p,
                                                 int n1max, int n2max,
                                                 double scale_g1, double scale_g2,
                                                 std::size_t dim_cap) {
    if (scale_g1 < 0.0 || scale_g1 > 1.0)
        throw std::invalid_argument("scale_g1 must lie in [0,1]");
    if (scale_g2 < 0.0 || scale_g2 > 1.0)
        throw std::invalid_argument("scale_g2 must lie in [0,1]");
    if (n1max < 0 || n2max < 0)
        throw std::invalid_argument("truncation bounds must be >= 0");
    const std::size_t d = std::size_t(3) * (n1max + 1) * (n2max + 1);
    if (d > dim_cap)
        throw std::length_error("truncated Hamiltonian dimension exceeds cap");
    TruncatedHamiltonian h(p, n1max, n2max);
    h.set_scales(scale_g1, scale_g2);
    return h;
}

} // namespace qeit::oracle
