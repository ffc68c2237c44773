// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include <cmath>

#include "sattl/kernels.hpp"

namespace sattl::kernels::detail {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 8 <= n; j += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + j), _mm256_loadu_pd(b + j), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + j + 4), _mm256_loadu_pd(b + j + 4), acc1);
  }
  for (; j + 4 <= n; j += 4) acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + j), _mm256_loadu_pd(b + j), acc0);
  double acc = hsum(_mm256_add_pd(acc0, acc1));
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
  const __m256d va = _mm256_set1_pd(a);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4)
    _mm256_storeu_pd(y + j, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + j), _mm256_loadu_pd(y + j)));
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
  const __m256d vd = _mm256_set1_pd(decay);
  const __m256d vd1 = _mm256_set1_pd(1.0 - decay);
  const __m256d vlr = _mm256_set1_pd(lr);
  const __m256d veps = _mm256_set1_pd(eps);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vg = _mm256_loadu_pd(g + i);
    const __m256d vs = _mm256_add_pd(_mm256_mul_pd(vd, _mm256_loadu_pd(sq + i)), _mm256_mul_pd(vd1, _mm256_mul_pd(vg, vg)));
    _mm256_storeu_pd(sq + i, vs);
    const __m256d step = _mm256_div_pd(_mm256_mul_pd(vlr, vg), _mm256_add_pd(_mm256_sqrt_pd(vs), veps));
    _mm256_storeu_pd(p + i, _mm256_sub_pd(_mm256_loadu_pd(p + i), step));
  }
  for (; i < n; ++i) {
    sq[i] = decay * sq[i] + (1.0 - decay) * g[i] * g[i];
    p[i] -= lr * g[i] / (std::sqrt(sq[i]) + eps);
  }
}

}  // namespace

const DenseKernels kAvx2{gemv, gemv_t_acc, ger_acc, dot, rmsprop, axpy};

}  // namespace sattl::kernels::detail
