#pragma once

#include <cstddef>

// Numeric hot loops, in scalar and AVX2 flavours selected at runtime.
//
// Both flavours execute the identical floating-point operation sequence.
// Reductions run over four virtual lanes (lane l owns elements l, l+4, l+8,
// ...), each lane Neumaier-compensated, with a fixed lane-merge order at the
// end. The AVX2 build maps the four virtual lanes onto one ymm register; the
// scalar build keeps them in a 4-element array. Elementwise kernels use the
// same mul/add ordering in both (fused multiply-add is never emitted: the
// translation units are compiled with -ffp-contract=off and the vector paths
// avoid FMA intrinsics). Division and square root are correctly rounded on
// both paths. Net effect: results are bit-identical across backends, which
// the test suite asserts.

namespace qeit::kern {

enum class Backend { scalar, avx2 };

const char* backend_name(Backend b);
bool backend_available(Backend b);

// Active backend: best available by default, overridable with the
// QEIT_KERNELS environment variable (values "scalar" or "avx2", read once)
// or programmatically. set_backend throws std::runtime_error if the request
// is not available on this machine.
Backend active_backend();
void set_backend(Backend b);

// ---------------------------------------------------------------------------
// reductions
// ---------------------------------------------------------------------------

double reduce_sum(const double* x, std::size_t n);
double reduce_dot(const double* x, const double* y, std::size_t n);
double reduce_nrm2sq(const double* x, std::size_t n);

// ---------------------------------------------------------------------------
// elementwise updates
// ---------------------------------------------------------------------------

void axpy(double a, const double* x, double* y, std::size_t n);          // y += a*x
void xpay(const double* x, double a, const double* y, double* z, std::size_t n); // z = x + a*y
void scale(double a, double* x, std::size_t n);                          // x *= a

// ---------------------------------------------------------------------------
// dark-coefficient row fill
// ---------------------------------------------------------------------------

// For fixed probe Rabi frequency w1 and a row of coupling Rabi frequencies
// w2[i], fill the zero-branch dressed coefficients
//   a0 = -w2/W,  b0 = 2*w1*w2*ddiff / W^3,  c0 = w1/W,  W = sqrt(w1^2+w2^2).
// ddiff is delta1 - delta2.
void dark_row(double w1, double ddiff, const double* w2,
              double* a0, double* b0, double* c0, std::size_t n);

// ---------------------------------------------------------------------------
// truncated-Hamiltonian apply
// ---------------------------------------------------------------------------

// Flat layout for a real wavefunction plane over atom level m in {0,1,2} and
// photon numbers n1 in [0,np1), n2 in [0,np2):
//   index(m, n1, n2) = (m*np1 + n1)*np2 + n2.
// c1 has np1 entries, c1[k] = scale1*g1*sqrt(k); c2 has np2 entries,
// c2[k] = scale2*g2*sqrt(k). d1 and d12 are the level-2 and level-3 diagonal
// detunings. The matrix is real symmetric, so the same apply serves both the
// real and imaginary planes of a complex state.
struct HamView {
    int np1 = 0;
    int np2 = 0;
    double d1 = 0.0;
    double d12 = 0.0;
    const double* c1 = nullptr;
    const double* c2 = nullptr;

    std::size_t dim() const { return std::size_t(3) * np1 * np2; }
};

void ham_apply(const HamView& h, const double* x, double* y);

} // namespace qeit::kern
