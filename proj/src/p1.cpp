#include "vortexlab/p1.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace vx {

constexpr double kPi = 3.14159265358979323846264338327950288;

// Golub-Welsch: nodes are eigenvalues of the Jacobi matrix
void gauss_legendre(int m, std::vector<double>& x, std::vector<double>& w) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
  for (int k = 1; k < m; ++k) {
    double b = k / std::sqrt(4.0 * k * k - 1.0);
    J(k, k - 1) = J(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  x.resize(m);
  w.resize(m);
  for (int k = 0; k < m; ++k) {
    x[k] = es.eigenvalues()(k);
    double v = es.eigenvectors()(0, k);
    w[k] = 2.0 * v * v;
  }
}

double fs_density(cplx c) {
  double s = 1.0 + std::norm(c);
  return 1.0 / (kPi * s * s);
}

P1Pair p1_quadrature(int n_radial, int n_angular) {
  if (n_radial < 8 || n_angular < 8) throw std::invalid_argument("P1 quadrature resolution must be >= 8");
  std::vector<double> gx, gw;
  gauss_legendre(n_radial, gx, gw);
  auto make = [&](Chart id) {
    P1Chart c;
    c.chart_id = id;
    for (int i = 0; i < n_radial; ++i) {
      double r = 0.5 * (gx[i] + 1.0);
      double wr = 0.5 * gw[i];
      for (int k = 0; k < n_angular; ++k) {
        double t = 2.0 * kPi * (k + 0.5) / n_angular;
        cplx p = std::polar(r, t);
        c.points.push_back(p);
        c.weights.push_back(wr * r * (2.0 * kPi / n_angular) * fs_density(p));
      }
    }
    return c;
  };
  return {make(Chart::z), make(Chart::w)};
}

double integrate_p1(const P1Pair& q, const std::function<double(Chart, cplx)>& f) {
  double s = 0;
  for (const P1Chart* c : {&q.first, &q.second})
    for (std::size_t i = 0; i < c->points.size(); ++i) s += c->weights[i] * f(c->chart_id, c->points[i]);
  return s;
}

cplx chart_transition(cplx c) { return 1.0 / c; }

double line_metric(int n, cplx c) { return std::pow(1.0 + std::norm(c), -n); }

cplx frame_transition(int n, cplx z) {
  cplx r = 1.0;
  for (int k = 0; k < std::abs(n); ++k) r *= z;
  return n >= 0 ? r : 1.0 / r;
}

}  // namespace vx
