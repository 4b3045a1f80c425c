#include "vortexlab/kernels.hpp"

#include <cstdlib>
#include <map>
#include <mutex>

#include <fftw3.h>
#include <omp.h>

namespace vx::kernels {

namespace {

Exec g_exec = Exec::parallel;

struct Plans {
  fftw_plan fwd = nullptr, bwd = nullptr;
};

// FFTW planning is not thread safe, execution with new arrays is.
std::mutex g_plan_mutex;
std::map<int, Plans> g_plans;

Plans plans_for(int n) {
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto it = g_plans.find(n);
  if (it != g_plans.end()) return it->second;
  auto* a = fftw_alloc_complex(std::size_t(n) * n);
  auto* b = fftw_alloc_complex(std::size_t(n) * n);
  Plans p;
  p.fwd = fftw_plan_dft_2d(n, n, a, b, FFTW_FORWARD, FFTW_ESTIMATE);
  p.bwd = fftw_plan_dft_2d(n, n, a, b, FFTW_BACKWARD, FFTW_ESTIMATE);
  fftw_free(a);
  fftw_free(b);
  g_plans[n] = p;
  return p;
}

int wavenumber(int i, int n) { return i <= n / 2 ? i : i - n; }

template <class F>
std::vector<cplx> make_symbol(int n, F f) {
  std::vector<cplx> s(std::size_t(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s[std::size_t(i) * n + j] = f(wavenumber(i, n), wavenumber(j, n));
  return s;
}

void transform_one(const Plans& pl, int n, const cplx* in, cplx* out, int block, int e,
                   const std::vector<cplx>& symbol, fftw_complex* buf, fftw_complex* spec) {
  const int np = n * n;
  for (int p = 0; p < np; ++p) {
    buf[p][0] = in[std::size_t(p) * block + e].real();
    buf[p][1] = in[std::size_t(p) * block + e].imag();
  }
  fftw_execute_dft(pl.fwd, buf, spec);
  const double scale = 1.0 / np;
  for (int p = 0; p < np; ++p) {
    cplx v(spec[p][0], spec[p][1]);
    v *= symbol[p] * scale;
    spec[p][0] = v.real();
    spec[p][1] = v.imag();
  }
  fftw_execute_dft(pl.bwd, spec, buf);
  for (int p = 0; p < np; ++p) out[std::size_t(p) * block + e] = cplx(buf[p][0], buf[p][1]);
}

}  // namespace

Exec default_exec() { return g_exec; }
void set_default_exec(Exec e) { g_exec = e; }

int thread_count() { return omp_get_max_threads(); }

constexpr double kTwoPi = 6.283185307179586476925286766559;

// first derivatives drop the Nyquist row so real fields stay real
std::vector<cplx> symbol_dx(int n) {
  return make_symbol(n, [n](int kx, int) {
    return kx == n / 2 ? cplx(0) : cplx(0, kTwoPi * kx);
  });
}

std::vector<cplx> symbol_dy(int n) {
  return make_symbol(n, [n](int, int ky) {
    return ky == n / 2 ? cplx(0) : cplx(0, kTwoPi * ky);
  });
}

std::vector<cplx> symbol_dbar(int n) {
  auto sx = symbol_dx(n), sy = symbol_dy(n);
  for (std::size_t i = 0; i < sx.size(); ++i) sx[i] = 0.5 * (sx[i] + cplx(0, 1) * sy[i]);
  return sx;
}

std::vector<cplx> symbol_del(int n) {
  auto sx = symbol_dx(n), sy = symbol_dy(n);
  for (std::size_t i = 0; i < sx.size(); ++i) sx[i] = 0.5 * (sx[i] - cplx(0, 1) * sy[i]);
  return sx;
}

std::vector<cplx> symbol_laplace(int n) {
  return make_symbol(n, [](int kx, int ky) {
    return cplx(-kTwoPi * kTwoPi * (double(kx) * kx + double(ky) * ky), 0);
  });
}

void spectral_apply(const cplx* in, cplx* out, int n, int block, const std::vector<cplx>& symbol,
                    Exec ex) {
  const Plans pl = plans_for(n);
  const std::size_t np = std::size_t(n) * n;
  if (ex == Exec::serial) {
    auto* buf = fftw_alloc_complex(np);
    auto* spec = fftw_alloc_complex(np);
    for (int e = 0; e < block; ++e) transform_one(pl, n, in, out, block, e, symbol, buf, spec);
    fftw_free(buf);
    fftw_free(spec);
    return;
  }
#pragma omp parallel
  {
    auto* buf = fftw_alloc_complex(np);
    auto* spec = fftw_alloc_complex(np);
#pragma omp for schedule(static)
    for (int e = 0; e < block; ++e) transform_one(pl, n, in, out, block, e, symbol, buf, spec);
    fftw_free(buf);
    fftw_free(spec);
  }
}

void pointwise_matmul(const cplx* a, const cplx* b, cplx* c, int points, int r, int k, int m,
                      Exec ex) {
  auto body = [&](int p) {
    CMapC A(a + std::size_t(p) * r * k, r, k);
    CMapC B(b + std::size_t(p) * k * m, k, m);
    MapC C(c + std::size_t(p) * r * m, r, m);
    C.noalias() = A * B;
  };
  if (ex == Exec::serial) {
    for (int p = 0; p < points; ++p) body(p);
    return;
  }
#pragma omp parallel for schedule(static)
  for (int p = 0; p < points; ++p) body(p);
}

void pointwise_adjoint(const cplx* a, const cplx* f, const cplx* b, cplx* out, int points,
                       int ra, int rb, Exec ex) {
  auto body = [&](int p) {
    CMapC A(a + std::size_t(p) * ra * ra, ra, ra);
    CMapC Fm(f + std::size_t(p) * rb * ra, rb, ra);
    CMapC B(b + std::size_t(p) * rb * rb, rb, rb);
    MapC O(out + std::size_t(p) * ra * rb, ra, rb);
    O.noalias() = A.partialPivLu().solve(Fm.adjoint() * B);
  };
  if (ex == Exec::serial) {
    for (int p = 0; p < points; ++p) body(p);
    return;
  }
#pragma omp parallel for schedule(static)
  for (int p = 0; p < points; ++p) body(p);
}

}  // namespace vx::kernels
