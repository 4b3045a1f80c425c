#ifndef VORTEXLAB_KERNELS_HPP
#define VORTEXLAB_KERNELS_HPP

#include <vector>

#include "vortexlab/field.hpp"

// Grid kernels in two flavours.  The serial versions are the reference the
// tests compare against; the OpenMP versions are what the library uses.
namespace vx::kernels {

enum class Exec { serial, parallel };

Exec default_exec();
void set_default_exec(Exec e);
int thread_count();

// Fourier multiplier symbol, indexed like the grid (kx major).
std::vector<cplx> symbol_dx(int n);
std::vector<cplx> symbol_dy(int n);
std::vector<cplx> symbol_dbar(int n);
std::vector<cplx> symbol_del(int n);
std::vector<cplx> symbol_laplace(int n);

// out[p][e] = IFFT(symbol * FFT(in[.][e]))[p] for each entry e of the block
void spectral_apply(const cplx* in, cplx* out, int n, int block, const std::vector<cplx>& symbol,
                    Exec ex);

// c[p] = a[p] * b[p] with a: r x k, b: k x m
void pointwise_matmul(const cplx* a, const cplx* b, cplx* c, int points, int r, int k, int m,
                      Exec ex);

// out[p] = a[p]^{-1} f[p]^dagger b[p], the adjoint sandwich used for f*
void pointwise_adjoint(const cplx* a, const cplx* f, const cplx* b, cplx* out, int points,
                       int ra, int rb, Exec ex);

}  // namespace vx::kernels

#endif
