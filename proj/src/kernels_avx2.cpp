#include "entscope/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

namespace entscope::kernels {
namespace {

// Interleaved complex<double>: one __m256d holds two complex values
// [re0, im0, re1, im1].

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline __m256d swap_pairs(__m256d v) { return _mm256_permute_pd(v, 0b0101); }

cd cdot_avx2(const cd* a, const cd* b, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  __m256d acc_rr = _mm256_setzero_pd();  // lanes [ar*br, ai*bi, ...]
  __m256d acc_ri = _mm256_setzero_pd();  // lanes [ar*bi, ai*br, ...]
  __m256d acc_rr2 = _mm256_setzero_pd();
  __m256d acc_ri2 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d va0 = _mm256_loadu_pd(pa + 2 * i);
    __m256d vb0 = _mm256_loadu_pd(pb + 2 * i);
    __m256d va1 = _mm256_loadu_pd(pa + 2 * i + 4);
    __m256d vb1 = _mm256_loadu_pd(pb + 2 * i + 4);
    acc_rr = _mm256_fmadd_pd(va0, vb0, acc_rr);
    acc_ri = _mm256_fmadd_pd(va0, swap_pairs(vb0), acc_ri);
    acc_rr2 = _mm256_fmadd_pd(va1, vb1, acc_rr2);
    acc_ri2 = _mm256_fmadd_pd(va1, swap_pairs(vb1), acc_ri2);
  }
  for (; i + 2 <= n; i += 2) {
    __m256d va = _mm256_loadu_pd(pa + 2 * i);
    __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    acc_rr = _mm256_fmadd_pd(va, vb, acc_rr);
    acc_ri = _mm256_fmadd_pd(va, swap_pairs(vb), acc_ri);
  }
  acc_rr = _mm256_add_pd(acc_rr, acc_rr2);
  acc_ri = _mm256_add_pd(acc_ri, acc_ri2);
  // im lanes alternate +/-: flip the sign of the odd lanes and sum.
  const __m256d sign_odd = _mm256_castsi256_pd(_mm256_set_epi64x(
      0x8000000000000000LL, 0, 0x8000000000000000LL, 0));
  double re = hsum(acc_rr);
  double im = hsum(_mm256_xor_pd(acc_ri, sign_odd));
  for (; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

double norm_sq_avx2(const cd* a, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v0 = _mm256_loadu_pd(pa + 2 * i);
    __m256d v1 = _mm256_loadu_pd(pa + 2 * i + 4);
    acc0 = _mm256_fmadd_pd(v0, v0, acc0);
    acc1 = _mm256_fmadd_pd(v1, v1, acc1);
  }
  for (; i + 2 <= n; i += 2) {
    __m256d v = _mm256_loadu_pd(pa + 2 * i);
    acc0 = _mm256_fmadd_pd(v, v, acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) {
    s += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  }
  return s;
}

// Per-block SIMD maximum, then a scalar rescan of the winning block only.
// The per-element value is re*re + im*im with the same IEEE ops in both
// passes (the TU is compiled with -ffp-contract=off), so the rescan
// reproduces the SIMD block maximum exactly and keeps the first-index
// tie rule of the scalar reference.
double max_abs_sq_avx2(const cd* a, std::size_t n, std::size_t* argmax) {
  constexpr std::size_t kBlock = 1024;
  const double* pa = reinterpret_cast<const double*>(a);
  double best = -1.0;
  std::size_t best_i = 0;
  for (std::size_t b0 = 0; b0 < n; b0 += kBlock) {
    const std::size_t b1 = (b0 + kBlock < n) ? b0 + kBlock : n;
    __m256d vmax = _mm256_set1_pd(-1.0);
    std::size_t i = b0;
    for (; i + 2 <= b1; i += 2) {
      __m256d v = _mm256_loadu_pd(pa + 2 * i);
      __m256d sq = _mm256_mul_pd(v, v);
      vmax = _mm256_max_pd(vmax, _mm256_hadd_pd(sq, sq));
    }
    __m128d m2 = _mm_max_pd(_mm256_castpd256_pd128(vmax),
                            _mm256_extractf128_pd(vmax, 1));
    double bm = _mm_cvtsd_f64(_mm_max_sd(m2, _mm_unpackhi_pd(m2, m2)));
    for (; i < b1; ++i) {
      const double s = a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
      if (s > bm) bm = s;
    }
    if (bm > best) {
      double lb = -1.0;
      std::size_t li = b0;
      for (std::size_t j = b0; j < b1; ++j) {
        const double s =
            a[j].real() * a[j].real() + a[j].imag() * a[j].imag();
        if (s > lb) {
          lb = s;
          li = j;
        }
      }
      best = lb;
      best_i = li;
    }
  }
  if (argmax != nullptr) *argmax = best_i;
  return n == 0 ? 0.0 : best;
}

void scale_avx2(cd* a, std::size_t n, cd alpha) {
  double* pa = reinterpret_cast<double*>(a);
  const __m256d vr = _mm256_set1_pd(alpha.real());
  const __m256d vi = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d v = _mm256_loadu_pd(pa + 2 * i);
    __m256d t = _mm256_mul_pd(swap_pairs(v), vi);
    _mm256_storeu_pd(pa + 2 * i, _mm256_fmaddsub_pd(v, vr, t));
  }
  for (; i < n; ++i) a[i] *= alpha;
}

void axpy_avx2(cd* y, const cd* x, std::size_t n, cd alpha) {
  double* py = reinterpret_cast<double*>(y);
  const double* px = reinterpret_cast<const double*>(x);
  const __m256d vr = _mm256_set1_pd(alpha.real());
  const __m256d vi = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(px + 2 * i);
    __m256d vy = _mm256_loadu_pd(py + 2 * i);
    __m256d t = _mm256_mul_pd(swap_pairs(vx), vi);
    __m256d prod = _mm256_fmaddsub_pd(vx, vr, t);
    _mm256_storeu_pd(py + 2 * i, _mm256_add_pd(vy, prod));
  }
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] += cd{xr * alpha.real() - xi * alpha.imag(),
               xr * alpha.imag() + xi * alpha.real()};
  }
}

const KernelTable kAvx2Table{
    "avx2", cdot_avx2, norm_sq_avx2, max_abs_sq_avx2, scale_avx2, axpy_avx2,
};

}  // namespace

const KernelTable* avx2_table() {
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
    return &kAvx2Table;
  }
  return nullptr;
}

}  // namespace entscope::kernels

#endif  // x86
