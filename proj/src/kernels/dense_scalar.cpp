#include <cmath>

#include "sattl/kernels.hpp"

namespace sattl::kernels::detail {

namespace {

void gemv(const double* w, const double* x, const double* b, double* y, std::size_t rows, std::size_t cols) {
  for (std::size_t i = 0; i < rows; ++i) {
    const double* row = w + i * cols;
    double acc = 0.0;
    for (std::size_t j = 0; j < cols; ++j) acc += row[j] * x[j];
    y[i] = b ? acc + b[i] : acc;
  }
}

void gemv_t_acc(const double* w, const double* dy, double* dx, std::size_t rows, std::size_t cols) {
  for (std::size_t i = 0; i < rows; ++i) {
    const double g = dy[i];
    const double* row = w + i * cols;
    for (std::size_t j = 0; j < cols; ++j) dx[j] += row[j] * g;
  }
}

void ger_acc(const double* dy, const double* x, double* dw, std::size_t rows, std::size_t cols) {
  for (std::size_t i = 0; i < rows; ++i) {
    const double g = dy[i];
    if (g == 0.0) continue;
    double* row = dw + i * cols;
    for (std::size_t j = 0; j < cols; ++j) row[j] += g * x[j];
  }
}

double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void rmsprop(double* p, const double* g, double* sq, std::size_t n, double lr, double decay, double eps) {
  for (std::size_t i = 0; i < n; ++i) {
    sq[i] = decay * sq[i] + (1.0 - decay) * g[i] * g[i];
    p[i] -= lr * g[i] / (std::sqrt(sq[i]) + eps);
  }
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

}  // namespace

const DenseKernels kScalar{gemv, gemv_t_acc, ger_acc, dot, rmsprop, axpy};

}  // namespace sattl::kernels::detail
