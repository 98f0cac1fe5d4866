#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "framelab/frequency_set.hpp"
#include "framelab/measure.hpp"

namespace test {

/// Integer lattice Z^d cut to [-M, M]^d, exact coordinates.
framelab::FrequencySet int_box(std::size_t d, int M);

/// Plain double-loop transform, no compensation. Used as an oracle for mu_hat.
std::complex<double> naive_hat(const framelab::QuadratureMeasure& m, std::span<const double> t);

/// Extreme squared singular values from the Hermitian eigenvalues of the
/// smaller Gram matrix, computed without touching the library's frame code.
struct GramBounds {
  double lo;
  double hi;
};
GramBounds gram_bounds(const framelab::QuadratureMeasure& m, std::span<const double> freqs);

}  // namespace test
