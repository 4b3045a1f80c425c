#ifndef VORTEXLAB_P1_HPP
#define VORTEXLAB_P1_HPP

#include <functional>
#include <utility>
#include <vector>

#include "vortexlab/field.hpp"

namespace vx {

enum class Chart { z, w };

// One closed unit disk of P^1.  weights already include the Fubini-Study
// density, so sum(weights) over both charts is 1.
struct P1Chart {
  Chart chart_id = Chart::z;
  std::vector<cplx> points;
  std::vector<double> weights;
};

using P1Pair = std::pair<P1Chart, P1Chart>;

P1Pair p1_quadrature(int n_radial, int n_angular);

// Gauss-Legendre nodes/weights on [-1, 1]
void gauss_legendre(int m, std::vector<double>& x, std::vector<double>& w);

// (1/pi)(1+|c|^2)^-2, same formula in both charts
double fs_density(cplx c);

double integrate_p1(const P1Pair& q, const std::function<double(Chart, cplx)>& f);

// the other chart coordinate, w = 1/z
cplx chart_transition(cplx c);

// h^(n)(e_n, e_n) in either chart, h^(-1)(e_z, e_z) = 1 + |z|^2
double line_metric(int n, cplx c);

// e_{n,w} = z^n e_{n,z}
cplx frame_transition(int n, cplx z);

}  // namespace vx

#endif
