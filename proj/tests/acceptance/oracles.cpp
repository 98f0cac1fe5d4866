#include "oracles.hpp"

#include <cmath>
#include <numbers>

namespace oracle {

using std::numbers::pi;

void gauss_legendre(int n, double a, double b, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = 0.5 * (a + b) - 0.5 * (b - a) * z;
    w[i] = (b - a) / ((1.0 - z * z) * dp * dp);
  }
}

namespace {

double sinc2(double t) {
  if (t == 0.0) return 1.0;
  const double s = std::sin(pi * t) / (pi * t);
  return s * s;
}

}  // namespace

double segment_wiener(double alpha, double r) {
  // Integrate piecewise over unit intervals so each panel sees one lobe.
  std::vector<double> x, w;
  double total = 0.0;
  const int panels = static_cast<int>(std::ceil(r));
  for (int p = 0; p < panels; ++p) {
    const double a = p, b = std::min(r, p + 1.0);
    gauss_legendre(40, a, b, x, w);
    for (std::size_t i = 0; i < x.size(); ++i) total += w[i] * sinc2(x[i]) * 2.0 * std::sqrt(r * r - x[i] * x[i]);
  }
  return 2.0 * total * std::pow(r, alpha - 2.0);
}

double segment_wiener_alpha1(double r) { return segment_wiener(1.0, r); }

CapTransform::CapTransform(double radius, int n_nodes) {
  const double theta_max = 2.0 * std::asin(radius / 2.0);
  gauss_legendre(n_nodes, 0.0, theta_max, theta_, w_);
  for (std::size_t i = 0; i < theta_.size(); ++i) {
    const double chord = 2.0 * std::sin(theta_[i] / 2.0);
    const double s = chord / radius;
    const double bump = s < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - s * s)) : 0.0;
    w_[i] *= bump * std::sin(theta_[i]) * 2.0 * pi;
  }
}

std::complex<double> CapTransform::operator()(double s_perp, double s_z) const {
  std::complex<double> acc = 0.0;
  for (std::size_t i = 0; i < theta_.size(); ++i) {
    const double j0 = std::cyl_bessel_j(0.0, 2.0 * pi * s_perp * std::sin(theta_[i]));
    acc += w_[i] * j0 * std::polar(1.0, -2.0 * pi * s_z * std::cos(theta_[i]));
  }
  return acc;
}

}  // namespace oracle
