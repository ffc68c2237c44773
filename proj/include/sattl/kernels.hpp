#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace sattl::kernels {

enum class Backend : unsigned char { Scalar, Avx2, Neon };
const char* backend_name(Backend b) noexcept;

// Row-major dense primitives over doubles. All sizes are element counts.
struct DenseKernels {
  // y = W x (+ b when b != nullptr); W is rows x cols.
  void (*gemv)(const double* w, const double* x, const double* b, double* y, std::size_t rows, std::size_t cols);
  // dx += W^T dy
  void (*gemv_t_acc)(const double* w, const double* dy, double* dx, std::size_t rows, std::size_t cols);
  // dW += dy x^T
  void (*ger_acc)(const double* dy, const double* x, double* dw, std::size_t rows, std::size_t cols);
  double (*dot)(const double* a, const double* b, std::size_t n);
  // sq = decay*sq + (1-decay)*g^2;  p -= lr * g / (sqrt(sq) + eps)
  void (*rmsprop)(double* p, const double* g, double* sq, std::size_t n, double lr, double decay, double eps);
  // y += a x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
};

/// True when the backend was compiled in and the CPU supports it.
bool available(Backend b) noexcept;

/// Kernel table for a specific backend; throws std::invalid_argument when
/// it is not available.
const DenseKernels& table(Backend b);

/// The dispatched backend: the best available one, unless overridden by
/// select() or the SATTL_KERNELS environment variable (scalar|avx2|neon).
Backend active_backend() noexcept;
const DenseKernels& active();
void select(Backend b);
Backend parse_backend(std::string_view name);

// Span front-ends over the active table.
void gemv(std::span<const double> w, std::span<const double> x, std::span<const double> b, std::span<double> y);
void gemv_t_acc(std::span<const double> w, std::span<const double> dy, std::span<double> dx);
void ger_acc(std::span<const double> dy, std::span<const double> x, std::span<double> dw);
double dot(std::span<const double> a, std::span<const double> b);

namespace detail {
extern const DenseKernels kScalar;
#if defined(SATTL_HAVE_AVX2_TU)
extern const DenseKernels kAvx2;
#endif
#if defined(SATTL_HAVE_NEON_TU)
extern const DenseKernels kNeon;
#endif
}  // namespace detail

}  // namespace sattl::kernels
