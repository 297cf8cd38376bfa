#include <arm_neon.h>

#include "nehari/kernels.hpp"

namespace nehari::kernels::neon {

double dot(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  double s = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double dot3(const double* a, const double* b, const double* c, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    acc = vfmaq_f64(acc, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)),
                    vld1q_f64(c + i));
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) s += a[i] * b[i] * c[i];
  return s;
}

void matvec(const double* A, const double* x, double* y, std::size_t rows,
            std::size_t cols) {
  for (std::size_t i = 0; i < rows; ++i) y[i] = dot(A + i * cols, x, cols);
}

void hadamard(const double* a, const double* b, double* y, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(y + i, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  for (; i < n; ++i) y[i] = a[i] * b[i];
}

}  // namespace nehari::kernels::neon
