#include "vortexlab/random_fields.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace vx {

constexpr double kTwoPi = 6.283185307179586476925286766559;

MatC random_matrix(int rows, int cols, std::mt19937_64& rng, double amplitude) {
  std::normal_distribution<double> g(0.0, amplitude);
  MatC m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      double re = g(rng);
      double im = g(rng);
      m(r, c) = cplx(re, im);
    }
  return m;
}

Field random_smooth_field(int n, int rows, int cols, std::mt19937_64& rng, int modes,
                          double amplitude, Form form) {
  Field f(n, rows, cols, form);
  const double norm = amplitude / (2 * modes + 1);
  for (int kx = -modes; kx <= modes; ++kx)
    for (int ky = -modes; ky <= modes; ++ky) {
      MatC c = random_matrix(rows, cols, rng, norm);
      for (int p = 0; p < f.points(); ++p) {
        double ph = kTwoPi * (kx * (p / n) + ky * (p % n)) / n;
        f.mat(p) += c * std::polar(1.0, ph);
      }
    }
  return f;
}

Field random_skew_hermitian(int n, int rank, std::mt19937_64& rng, int modes, double amplitude) {
  Field f = random_smooth_field(n, rank, rank, rng, modes, amplitude);
  for (int p = 0; p < f.points(); ++p) f.mat(p) = (0.5 * (f.mat(p) - f.mat(p).adjoint())).eval();
  return f;
}

Field random_hermitian(int n, int rank, std::mt19937_64& rng, int modes, double amplitude) {
  Field f = random_smooth_field(n, rank, rank, rng, modes, amplitude);
  for (int p = 0; p < f.points(); ++p) f.mat(p) = (0.5 * (f.mat(p) + f.mat(p).adjoint())).eval();
  return f;
}

Field field_exp(const Field& a) {
  Field out(a.n(), a.rows(), a.cols(), a.form());
  for (int p = 0; p < a.points(); ++p) out.mat(p) = MatC(a.mat(p)).exp();
  return out;
}

Field random_metric(int n, const std::vector<int>& degrees, std::mt19937_64& rng, int modes,
                    double amplitude) {
  const int r = int(degrees.size());
  Field s = random_hermitian(n, r, rng, modes, amplitude);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (degrees[i] != degrees[j])
        for (int p = 0; p < s.points(); ++p) s(p, i, j) = 0;
  Field h = field_exp(s);
  for (int p = 0; p < h.points(); ++p) h.mat(p) = (0.5 * (h.mat(p) + h.mat(p).adjoint())).eval();
  return h;
}

}  // namespace vx
