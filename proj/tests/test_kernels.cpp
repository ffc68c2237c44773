#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "sattl/errors.hpp"
#include "sattl/kernels.hpp"

using namespace sattl;
using namespace sattl::kernels;

namespace {

std::vector<double> noise(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

// Accumulation order differs between backends; allow a few ulps relative to the size.
void close(const std::vector<double>& a, const std::vector<double>& b, std::size_t terms) {
  REQUIRE(a.size() == b.size());
  const double tol = 1e-14 * static_cast<double>(terms + 1);
  for (std::size_t i = 0; i < a.size(); ++i) REQUIRE(std::abs(a[i] - b[i]) <= tol * (1.0 + std::abs(a[i])));
}

void compare(const DenseKernels& ref, const DenseKernels& simd) {
  std::mt19937_64 rng(5);
  for (std::size_t rows : {1u, 3u, 4u, 7u, 16u, 33u}) {
    for (std::size_t cols : {1u, 2u, 5u, 8u, 13u, 64u, 67u}) {
      const auto w = noise(rows * cols, rng), x = noise(cols, rng), b = noise(rows, rng), dy = noise(rows, rng);
      std::vector<double> y1(rows), y2(rows);
      ref.gemv(w.data(), x.data(), b.data(), y1.data(), rows, cols);
      simd.gemv(w.data(), x.data(), b.data(), y2.data(), rows, cols);
      close(y1, y2, cols);
      ref.gemv(w.data(), x.data(), nullptr, y1.data(), rows, cols);
      simd.gemv(w.data(), x.data(), nullptr, y2.data(), rows, cols);
      close(y1, y2, cols);

      auto dx1 = noise(cols, rng), dx2 = dx1;
      ref.gemv_t_acc(w.data(), dy.data(), dx1.data(), rows, cols);
      simd.gemv_t_acc(w.data(), dy.data(), dx2.data(), rows, cols);
      close(dx1, dx2, rows);

      auto dw1 = noise(rows * cols, rng), dw2 = dw1;
      ref.ger_acc(dy.data(), x.data(), dw1.data(), rows, cols);
      simd.ger_acc(dy.data(), x.data(), dw2.data(), rows, cols);
      close(dw1, dw2, 1);

      const double d1 = ref.dot(w.data(), w.data(), rows * cols), d2 = simd.dot(w.data(), w.data(), rows * cols);
      REQUIRE(std::abs(d1 - d2) <= 1e-14 * static_cast<double>(rows * cols) * (1.0 + d1));

      auto p1 = noise(cols, rng), p2 = p1, sq1 = noise(cols, rng), sq2 = sq1;
      for (auto& s : sq1) s = std::abs(s);
      sq2 = sq1;
      ref.rmsprop(p1.data(), x.data(), sq1.data(), cols, 1e-3, 0.99, 1e-5);
      simd.rmsprop(p2.data(), x.data(), sq2.data(), cols, 1e-3, 0.99, 1e-5);
      close(p1, p2, 1);
      close(sq1, sq2, 1);

      auto a1 = noise(cols, rng), a2 = a1;
      ref.axpy(0.37, x.data(), a1.data(), cols);
      simd.axpy(0.37, x.data(), a2.data(), cols);
      close(a1, a2, 1);
    }
  }
}

}  // namespace

TEST_CASE("scalar kernels compute the textbook results") {
  const auto& k = table(Backend::Scalar);
  const std::vector<double> w{1, 2, 3, 4, 5, 6}, x{1, 0, -1}, b{10, 20};
  std::vector<double> y(2);
  k.gemv(w.data(), x.data(), b.data(), y.data(), 2, 3);
  CHECK(y == std::vector<double>{8, 18});
  std::vector<double> dx(3, 0.0);
  const std::vector<double> dy{1, -1};
  k.gemv_t_acc(w.data(), dy.data(), dx.data(), 2, 3);
  CHECK(dx == std::vector<double>{-3, -3, -3});
  std::vector<double> dw(6, 0.0);
  k.ger_acc(dy.data(), x.data(), dw.data(), 2, 3);
  CHECK(dw == std::vector<double>{1, 0, -1, -1, 0, 1});
  CHECK(k.dot(w.data(), w.data(), 6) == 91.0);
}

TEST_CASE("simd backends agree with scalar") {
  bool any = false;
  for (auto b : {Backend::Avx2, Backend::Neon}) {
    if (!available(b)) continue;
    any = true;
    INFO(backend_name(b));
    compare(table(Backend::Scalar), table(b));
  }
  if (!any) MESSAGE("no SIMD backend on this host; scalar only");
}

TEST_CASE("span front-ends check shapes") {
  std::vector<double> w(6), x(3), y(2), b(1);
  CHECK_THROWS_AS(gemv(w, x, b, y), DimensionMismatch);
  CHECK_THROWS_AS(gemv(w, std::vector<double>(4), {}, y), DimensionMismatch);
  CHECK_THROWS_AS(dot(x, y), DimensionMismatch);
  CHECK_THROWS_AS(ger_acc(y, x, std::span<double>(w.data(), 5)), DimensionMismatch);
}

TEST_CASE("backend selection") {
  const auto before = active_backend();
  select(Backend::Scalar);
  CHECK(active_backend() == Backend::Scalar);
  CHECK(&active() == &table(Backend::Scalar));
  if (!available(Backend::Neon)) CHECK_THROWS(select(Backend::Neon));
  CHECK_THROWS_AS(parse_backend("sse9"), ConfigError);
  CHECK(parse_backend("avx2") == Backend::Avx2);
  select(before);
}
