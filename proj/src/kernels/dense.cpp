#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "sattl/errors.hpp"
#include "sattl/kernels.hpp"

namespace sattl::kernels {

const char* backend_name(Backend b) noexcept {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    case Backend::Neon: return "neon";
  }
  return "?";
}

Backend parse_backend(std::string_view name) {
  if (name == "scalar") return Backend::Scalar;
  if (name == "avx2") return Backend::Avx2;
  if (name == "neon") return Backend::Neon;
  throw ConfigError("unknown kernel backend '" + std::string(name) + "'");
}

bool available(Backend b) noexcept {
  switch (b) {
    case Backend::Scalar:
      return true;
    case Backend::Avx2:
#if defined(SATTL_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Backend::Neon:
#if defined(SATTL_HAVE_NEON_TU)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const DenseKernels& table(Backend b) {
  if (!available(b)) throw std::invalid_argument(std::string("kernel backend not available: ") + backend_name(b));
  switch (b) {
#if defined(SATTL_HAVE_AVX2_TU)
    case Backend::Avx2: return detail::kAvx2;
#endif
#if defined(SATTL_HAVE_NEON_TU)
    case Backend::Neon: return detail::kNeon;
#endif
    default: return detail::kScalar;
  }
}

namespace {

Backend initial_backend() {
  if (const char* env = std::getenv("SATTL_KERNELS")) {
    const Backend b = parse_backend(env);
    if (available(b)) return b;
  }
  if (available(Backend::Avx2)) return Backend::Avx2;
  if (available(Backend::Neon)) return Backend::Neon;
  return Backend::Scalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> b{initial_backend()};
  return b;
}

}  // namespace

Backend active_backend() noexcept { return current().load(std::memory_order_relaxed); }
const DenseKernels& active() { return table(active_backend()); }

void select(Backend b) {
  (void)table(b);
  current().store(b, std::memory_order_relaxed);
}

void gemv(std::span<const double> w, std::span<const double> x, std::span<const double> b, std::span<double> y) {
  if (w.size() != y.size() * x.size() || (!b.empty() && b.size() != y.size()))
    throw DimensionMismatch("gemv: W is " + std::to_string(w.size()) + " for y " + std::to_string(y.size()) +
                            " and x " + std::to_string(x.size()));
  active().gemv(w.data(), x.data(), b.empty() ? nullptr : b.data(), y.data(), y.size(), x.size());
}

void gemv_t_acc(std::span<const double> w, std::span<const double> dy, std::span<double> dx) {
  if (w.size() != dy.size() * dx.size()) throw DimensionMismatch("gemv_t_acc: shape mismatch");
  active().gemv_t_acc(w.data(), dy.data(), dx.data(), dy.size(), dx.size());
}

void ger_acc(std::span<const double> dy, std::span<const double> x, std::span<double> dw) {
  if (dw.size() != dy.size() * x.size()) throw DimensionMismatch("ger_acc: shape mismatch");
  active().ger_acc(dy.data(), x.data(), dw.data(), dy.size(), x.size());
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot: length mismatch");
  return active().dot(a.data(), b.data(), a.size());
}

}  // namespace sattl::kernels
