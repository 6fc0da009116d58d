#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace entscope::kernels {

using cd = std::complex<double>;

/// One implementation of the hot complex-vector primitives. The scalar table
/// is the reference; SIMD tables must agree with it within round-off and are
/// equivalence-tested against it.
struct KernelTable {
  const char* name;
  // sum_i conj(a[i]) * b[i]
  cd (*cdot)(const cd* a, const cd* b, std::size_t n);
  // sum_i |a[i]|^2
  double (*norm_sq)(const cd* a, std::size_t n);
  // max_i |a[i]|^2; *argmax = first index attaining it
  double (*max_abs_sq)(const cd* a, std::size_t n, std::size_t* argmax);
  // a[i] *= alpha
  void (*scale)(cd* a, std::size_t n, cd alpha);
  // y[i] += alpha * x[i]
  void (*axpy)(cd* y, const cd* x, std::size_t n, cd alpha);
};

const KernelTable& scalar_table();
const KernelTable* avx2_table();  // nullptr if not compiled in or unsupported
const KernelTable* neon_table();

/// Table selected once at startup: best supported SIMD variant, overridable
/// with ENTSCOPE_KERNEL=scalar|avx2|neon (falls back with a stderr note).
const KernelTable& active();

/// Every table usable on this machine (for equivalence tests).
std::vector<const KernelTable*> available_tables();

inline cd cdot(const cd* a, const cd* b, std::size_t n) {
  return active().cdot(a, b, n);
}
inline double norm_sq(const cd* a, std::size_t n) {
  return active().norm_sq(a, n);
}
inline double max_abs_sq(const cd* a, std::size_t n, std::size_t* argmax) {
  return active().max_abs_sq(a, n, argmax);
}
inline void scale(cd* a, std::size_t n, cd alpha) {
  active().scale(a, n, alpha);
}
inline void axpy(cd* y, const cd* x, std::size_t n, cd alpha) {
  active().axpy(y, x, n, alpha);
}

}  // namespace entscope::kernels
