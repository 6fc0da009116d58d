#include "entscope/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

namespace entscope::kernels {
namespace {

// One float64x2_t holds a single complex value [re, im].

cd cdot_neon(const cd* a, const cd* b, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  float64x2_t acc_rr0 = vdupq_n_f64(0.0);  // [ar*br, ai*bi]
  float64x2_t acc_ri0 = vdupq_n_f64(0.0);  // [ar*bi, ai*br]
  float64x2_t acc_rr1 = vdupq_n_f64(0.0);
  float64x2_t acc_ri1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t va0 = vld1q_f64(pa + 2 * i);
    float64x2_t vb0 = vld1q_f64(pb + 2 * i);
    float64x2_t va1 = vld1q_f64(pa + 2 * i + 2);
    float64x2_t vb1 = vld1q_f64(pb + 2 * i + 2);
    acc_rr0 = vfmaq_f64(acc_rr0, va0, vb0);
    acc_ri0 = vfmaq_f64(acc_ri0, va0, vextq_f64(vb0, vb0, 1));
    acc_rr1 = vfmaq_f64(acc_rr1, va1, vb1);
    acc_ri1 = vfmaq_f64(acc_ri1, va1, vextq_f64(vb1, vb1, 1));
  }
  acc_rr0 = vaddq_f64(acc_rr0, acc_rr1);
  acc_ri0 = vaddq_f64(acc_ri0, acc_ri1);
  double re = vaddvq_f64(acc_rr0);
  double im = vgetq_lane_f64(acc_ri0, 0) - vgetq_lane_f64(acc_ri0, 1);
  for (; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

double norm_sq_neon(const cd* a, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t v0 = vld1q_f64(pa + 2 * i);
    float64x2_t v1 = vld1q_f64(pa + 2 * i + 2);
    acc0 = vfmaq_f64(acc0, v0, v0);
    acc1 = vfmaq_f64(acc1, v1, v1);
  }
  double s = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) {
    s += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  }
  return s;
}

double max_abs_sq_neon(const cd* a, std::size_t n, std::size_t* argmax) {
  constexpr std::size_t kBlock = 1024;
  const double* pa = reinterpret_cast<const double*>(a);
  double best = -1.0;
  std::size_t best_i = 0;
  for (std::size_t b0 = 0; b0 < n; b0 += kBlock) {
    const std::size_t b1 = (b0 + kBlock < n) ? b0 + kBlock : n;
    float64x2_t vmax = vdupq_n_f64(-1.0);
    std::size_t i = b0;
    for (; i + 2 <= b1; i += 2) {
      float64x2_t v0 = vld1q_f64(pa + 2 * i);
      float64x2_t v1 = vld1q_f64(pa + 2 * i + 2);
      // [ |a_i|^2, |a_{i+1}|^2 ]
      float64x2_t s = vpaddq_f64(vmulq_f64(v0, v0), vmulq_f64(v1, v1));
      vmax = vmaxq_f64(vmax, s);
    }
    double bm = vmaxvq_f64(vmax);
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

void scale_neon(cd* a, std::size_t n, cd alpha) {
  double* pa = reinterpret_cast<double*>(a);
  const float64x2_t sign = {-1.0, 1.0};
  for (std::size_t i = 0; i < n; ++i) {
    float64x2_t v = vld1q_f64(pa + 2 * i);
    float64x2_t t1 = vmulq_n_f64(v, alpha.real());
    float64x2_t t2 = vmulq_n_f64(vextq_f64(v, v, 1), alpha.imag());
    vst1q_f64(pa + 2 * i, vfmaq_f64(t1, t2, sign));
  }
}

void axpy_neon(cd* y, const cd* x, std::size_t n, cd alpha) {
  double* py = reinterpret_cast<double*>(y);
  const double* px = reinterpret_cast<const double*>(x);
  const float64x2_t sign = {-1.0, 1.0};
  for (std::size_t i = 0; i < n; ++i) {
    float64x2_t vx = vld1q_f64(px + 2 * i);
    float64x2_t vy = vld1q_f64(py + 2 * i);
    float64x2_t t1 = vmulq_n_f64(vx, alpha.real());
    float64x2_t t2 = vmulq_n_f64(vextq_f64(vx, vx, 1), alpha.imag());
    vst1q_f64(py + 2 * i, vaddq_f64(vy, vfmaq_f64(t1, t2, sign)));
  }
}

const KernelTable kNeonTable{
    "neon", cdot_neon, norm_sq_neon, max_abs_sq_neon, scale_neon, axpy_neon,
};

}  // namespace

const KernelTable* neon_table() { return &kNeonTable; }

}  // namespace entscope::kernels

#endif  // __aarch64__
