#include "kern_detail.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace qeit::kern {

namespace detail {
namespace {

bool cpu_has_avx2() {
#if defined(QEIT_HAVE_AVX2) && defined(__GNUC__)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

const KernOps* ops_for(Backend b) {
    switch (b) {
        case Backend::scalar:
            return &scalar_ops;
        case Backend::avx2:
#ifdef QEIT_HAVE_AVX2
            return &avx2_ops;
#else
            return nullptr;
#endif
    }
    return nullptr;
}

Backend resolve_initial() {
    if (const char* env = std::getenv("QEIT_KERNELS")) {
        const std::string v(env);
        if (v == "scalar") return Backend::scalar;
        if (v == "avx2") {
            if (!cpu_has_avx2())
                throw std::runtime_error("QEIT_KERNELS=avx2 but AVX2 is unavailable");
            return Backend::avx2;
        }
        throw std::runtime_error("QEIT_KERNELS must be 'scalar' or 'avx2', got '" + v + "'");
    }
    return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
}

struct Active {
    Backend backend;
    const KernOps* ops;
    Active() : backend(resolve_initial()), ops(ops_for(backend)) {}
};

Active& active() {
    static Active a;
    return a;
}

} // namespace
} // namespace detail

const char* backend_name(Backend b) {
    return b == Backend::scalar ? "scalar" : "avx2";
}

bool backend_available(Backend b) {
    if (b == Backend::scalar) return true;
    return detail::cpu_has_avx2();
}

Backend active_backend() {
    return detail::active().backend;
}

void set_backend(Backend b) {
    if (!backend_available(b))
        throw std::runtime_error(std::string("kernel backend unavailable: ") + backend_name(b));
    detail::active().backend = b;
    detail::active().ops = detail::ops_for(b);
}

double reduce_sum(const double* x, std::size_t n) {
    return detail::active().ops->reduce_sum(x, n);
}

double reduce_dot(const double* x, const double* y, std::size_t n) {
    return detail::active().ops->reduce_dot(x, y, n);
}

double reduce_nrm2sq(const double* x, std::size_t n) {
    return detail::active().ops->reduce_dot(x, x, n);
}

void axpy(double a, const double* x, double* y, std::size_t n) {
    detail::active().ops->axpy(a, x, y, n);
}

void xpay(const double* x, double a, const double* y, double* z, std::size_t n) {
    detail::active().ops->xpay(x, a, y, z, n);
}

void scale(double a, double* x, std::size_t n) {
    detail::active().ops->scale(a, x, n);
}

void dark_row(double w1, double ddiff, const double* w2,
              double* a0, double* b0, double* c0, std::size_t n) {
    detail::active().ops->dark_row(w1, ddiff, w2, a0, b0, c0, n);
}

void ham_apply(const HamView& h, const double* x, double* y) {
    detail::active().ops->ham_apply(h, x, y);
}

} // namespace qeit::kern
