#include "entscope/kernels.hpp"

namespace entscope::kernels {
namespace {

// Reference kernels. Accumulation order is plain left-to-right; the SIMD
// variants are allowed to reassociate and are tested against these within
// round-off.

cd cdot_scalar(const cd* a, const cd* b, std::size_t n) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real();
    const double ai = a[i].imag();
    const double br = b[i].real();
    const double bi = b[i].imag();
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

double norm_sq_scalar(const cd* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    s += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  }
  return s;
}

double max_abs_sq_scalar(const cd* a, std::size_t n, std::size_t* argmax) {
  double best = -1.0;
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
    if (s > best) {
      best = s;
      best_i = i;
    }
  }
  if (argmax != nullptr) *argmax = best_i;
  return n == 0 ? 0.0 : best;
}

void scale_scalar(cd* a, std::size_t n, cd alpha) {
  for (std::size_t i = 0; i < n; ++i) a[i] *= alpha;
}

void axpy_scalar(cd* y, const cd* x, std::size_t n, cd alpha) {
  const double cr = alpha.real();
  const double ci = alpha.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real();
    const double xi = x[i].imag();
    y[i] += cd{xr * cr - xi * ci, xr * ci + xi * cr};
  }
}

const KernelTable kScalarTable{
    "scalar", cdot_scalar, norm_sq_scalar, max_abs_sq_scalar, scale_scalar,
    axpy_scalar,
};

}  // namespace

const KernelTable& scalar_table() { return kScalarTable; }

}  // namespace entscope::kernels
