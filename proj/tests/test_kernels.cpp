#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "vortexlab/kernels.hpp"

using namespace vx;
using namespace vx::kernels;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::vector<cplx> rand_buffer(std::size_t size, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<cplx> v(size);
  for (auto& x : v) x = cplx(g(rng), g(rng));
  return v;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("symbols") {
  const int n = 8;
  auto sx = symbol_dx(n), sy = symbol_dy(n), sl = symbol_laplace(n), sb = symbol_dbar(n), sd = symbol_del(n);
  // kx = 1 row, ky = 0
  CHECK(std::abs(sx[1 * n + 0] - cplx(0, kTwoPi)) < 1e-14);
  CHECK(std::abs(sy[0 * n + 1] - cplx(0, kTwoPi)) < 1e-14);
  // kx = -1 sits at index n - 1
  CHECK(std::abs(sx[(n - 1) * n] - cplx(0, -kTwoPi)) < 1e-14);
  CHECK(sx[(n / 2) * n] == cplx(0));
  CHECK(sy[n / 2] == cplx(0));
  CHECK(std::abs(sl[2 * n + 3] + kTwoPi * kTwoPi * 13) < 1e-9);
  for (std::size_t i = 0; i < sx.size(); ++i) {
    CHECK(std::abs(sb[i] - 0.5 * (sx[i] + cplx(0, 1) * sy[i])) < 1e-14);
    CHECK(std::abs(sd[i] - 0.5 * (sx[i] - cplx(0, 1) * sy[i])) < 1e-14);
  }
}

TEST_CASE("OpenMP spectral kernel matches the serial reference") {
  for (int n : {8, 32, 64}) {
    const int block = 6;
    auto in = rand_buffer(std::size_t(n) * n * block, 11);
    std::vector<cplx> a(in.size()), b(in.size());
    auto sym = symbol_laplace(n);
    spectral_apply(in.data(), a.data(), n, block, sym, Exec::serial);
    spectral_apply(in.data(), b.data(), n, block, sym, Exec::parallel);
    CHECK(max_diff(a, b) == 0.0);
  }
}

TEST_CASE("spectral identity symbol round trips") {
  const int n = 16;
  auto in = rand_buffer(std::size_t(n) * n, 3);
  std::vector<cplx> out(in.size());
  std::vector<cplx> one(in.size(), 1.0);
  spectral_apply(in.data(), out.data(), n, 1, one, Exec::serial);
  CHECK(max_diff(in, out) < 1e-14);
}

TEST_CASE("OpenMP pointwise kernels match the serial reference") {
  const int points = 1000, r = 3, k = 2, m = 4;
  auto a = rand_buffer(std::size_t(points) * r * k, 1), b = rand_buffer(std::size_t(points) * k * m, 2);
  std::vector<cplx> c1(std::size_t(points) * r * m), c2(c1.size());
  pointwise_matmul(a.data(), b.data(), c1.data(), points, r, k, m, Exec::serial);
  pointwise_matmul(a.data(), b.data(), c2.data(), points, r, k, m, Exec::parallel);
  CHECK(max_diff(c1, c2) == 0.0);
  // oracle: plain triple loop at one point
  const int p = 417;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < m; ++j) {
      cplx s = 0;
      for (int l = 0; l < k; ++l) s += a[p * r * k + i * k + l] * b[p * k * m + l * m + j];
      CHECK(std::abs(s - c1[p * r * m + i * m + j]) < 1e-14);
    }

  // adjoint sandwich against Eigen
  const int ra = 2, rb = 3;
  auto ha = rand_buffer(std::size_t(points) * ra * ra, 4), hb = rand_buffer(std::size_t(points) * rb * rb, 5);
  auto f = rand_buffer(std::size_t(points) * rb * ra, 6);
  std::vector<cplx> o1(std::size_t(points) * ra * rb), o2(o1.size());
  pointwise_adjoint(ha.data(), f.data(), hb.data(), o1.data(), points, ra, rb, Exec::serial);
  pointwise_adjoint(ha.data(), f.data(), hb.data(), o2.data(), points, ra, rb, Exec::parallel);
  CHECK(max_diff(o1, o2) == 0.0);
  MatC A = Eigen::Map<MatC>(ha.data() + p * ra * ra, ra, ra);
  MatC B = Eigen::Map<MatC>(hb.data() + p * rb * rb, rb, rb);
  MatC F = Eigen::Map<MatC>(f.data() + p * rb * ra, rb, ra);
  MatC expect = A.inverse() * F.adjoint() * B;
  MatC got = Eigen::Map<MatC>(o1.data() + p * ra * rb, ra, rb);
  CHECK((expect - got).norm() < 1e-12);
}

TEST_CASE("default exec switch") {
  Exec old = default_exec();
  set_default_exec(Exec::serial);
  CHECK(default_exec() == Exec::serial);
  set_default_exec(old);
  CHECK(thread_count() >= 1);
}
