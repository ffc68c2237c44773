#include <arm_neon.h>

#include <cmath>

#include "sattl/kernels.hpp"

namespace sattl::kernels::detail {

namespace {

double dot(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + j), vld1q_f64(b + j));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + j + 2), vld1q_f64(b + j + 2));
  }
  double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; j < n; ++j) acc += a[j] * b[j];
  return acc;
}

void gemv(const double* w, const double* x, const double* b, double* y, std::size_t rows, std::size_t cols) {
  for (std::size_t i = 0; i < rows; ++i) {
    const double acc = dot(w + i * cols, x, cols);
    y[i] = b ? acc + b[i] : acc;
  }
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) vst1q_f64(y + j, vfmaq_f64(vld1q_f64(y + j), va, vld1q_f64(x + j)));
  for (; j < n; ++j) y[j] += a * x[j];
}

void gemv_t_acc(const double* w, const double* dy, double* dx, std::size_t rows, std::size_t cols) {
  for (std::size_t i = 0; i < rows; ++i) axpy(dy[i], w + i * cols, dx, cols);
}

void ger_acc(const double* dy, const double* x, double* dw, std::size_t rows, std::size_t cols) {
  for (std::size_t i = 0; i < rows; ++i) {
    if (dy[i] == 0.0) continue;
    axpy(dy[i], x, dw + i * cols, cols);
  }
}

void rmsprop(double* p, const double* g, double* sq, std::size_t n, double lr, double decay, double eps) {
  const float64x2_t vd = vdupq_n_f64(decay);
  const float64x2_t vd1 = vdupq_n_f64(1.0 - decay);
  const float64x2_t vlr = vdupq_n_f64(lr);
  const float64x2_t veps = vdupq_n_f64(eps);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t vg = vld1q_f64(g + i);
    const float64x2_t vs = vaddq_f64(vmulq_f64(vd, vld1q_f64(sq + i)), vmulq_f64(vd1, vmulq_f64(vg, vg)));
    vst1q_f64(sq + i, vs);
    const float64x2_t step = vdivq_f64(vmulq_f64(vlr, vg), vaddq_f64(vsqrtq_f64(vs), veps));
    vst1q_f64(p + i, vsubq_f64(vld1q_f64(p + i), step));
  }
  for (; i < n; ++i) {
    sq[i] = decay * sq[i] + (1.0 - decay) * g[i] * g[i];
    p[i] -= lr * g[i] / (std::sqrt(sq[i]) + eps);
  }
}

}  // namespace

const DenseKernels kNeon{gemv, gemv_t_acc, ger_acc, dot, rmsprop, axpy};

}  // namespace sattl::kernels::detail
