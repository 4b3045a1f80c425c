#ifndef VORTEXLAB_RANDOM_FIELDS_HPP
#define VORTEXLAB_RANDOM_FIELDS_HPP

#include <random>

#include "vortexlab/field.hpp"

namespace vx {

// band-limited random field with Fourier modes |kx|, |ky| <= modes
Field random_smooth_field(int n, int rows, int cols, std::mt19937_64& rng, int modes = 2,
                          double amplitude = 1.0, Form form = Form::function);
Field random_skew_hermitian(int n, int rank, std::mt19937_64& rng, int modes = 2, double amplitude = 1.0);
Field random_hermitian(int n, int rank, std::mt19937_64& rng, int modes = 2, double amplitude = 1.0);
// exp of a random Hermitian field, block diagonal by the given degree classes
Field random_metric(int n, const std::vector<int>& degrees, std::mt19937_64& rng, int modes = 2,
                    double amplitude = 0.3);
// pointwise matrix exponential
Field field_exp(const Field& a);

MatC random_matrix(int rows, int cols, std::mt19937_64& rng, double amplitude = 1.0);

}  // namespace vx

#endif
