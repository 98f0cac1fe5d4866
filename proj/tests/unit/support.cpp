#include "support.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "framelab/rational.hpp"

namespace test {

framelab::FrequencySet int_box(std::size_t d, int M) {
  std::vector<framelab::Rational> rows;
  std::vector<int> idx(d, -M);
  while (true) {
    for (int v : idx) rows.emplace_back(v);
    std::size_t a = d;
    while (a > 0) {
      --a;
      if (++idx[a] <= M) break;
      idx[a] = -M;
      if (a == 0) return framelab::FrequencySet(d, std::move(rows));
    }
  }
}

std::complex<double> naive_hat(const framelab::QuadratureMeasure& m, std::span<const double> t) {
  std::complex<double> acc = 0.0;
  for (std::size_t j = 0; j < m.size(); ++j) {
    double phase = 0.0;
    for (std::size_t a = 0; a < m.dim(); ++a) phase += t[a] * m.point(j)[a];
    acc += m.weight(j) * std::polar(1.0, -2.0 * std::numbers::pi * phase);
  }
  return acc;
}

GramBounds gram_bounds(const framelab::QuadratureMeasure& m, std::span<const double> freqs) {
  const std::size_t d = m.dim();
  const std::size_t L = freqs.size() / d;
  const std::size_t N = m.size();
  // Frequency-side Gram G[l,k] = sum_j w_j e^{-2 pi i <lambda_l - lambda_k, x_j>}.
  // Point-side Gram H[i,j] = sqrt(w_i w_j) sum_l e^{2 pi i <lambda_l, x_i - x_j>}.
  Eigen::MatrixXcd G;
  if (L <= N) {
    G.resize(static_cast<Eigen::Index>(L), static_cast<Eigen::Index>(L));
    std::vector<double> diff(d);
    for (std::size_t l = 0; l < L; ++l)
      for (std::size_t k = 0; k < L; ++k) {
        for (std::size_t a = 0; a < d; ++a) diff[a] = freqs[l * d + a] - freqs[k * d + a];
        G(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(k)) = naive_hat(m, diff);
      }
  } else {
    G.resize(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) {
        std::complex<double> s = 0.0;
        for (std::size_t l = 0; l < L; ++l) {
          double phase = 0.0;
          for (std::size_t a = 0; a < d; ++a) phase += freqs[l * d + a] * (m.point(i)[a] - m.point(j)[a]);
          s += std::polar(1.0, 2.0 * std::numbers::pi * phase);
        }
        G(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            std::sqrt(m.weight(i) * m.weight(j)) * s;
      }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G, Eigen::EigenvaluesOnly);
  return {es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff()};
}

}  // namespace test
