#pragma once

#include <complex>
#include <vector>

namespace oracle {

/// Gauss-Legendre nodes and weights on [a, b].
void gauss_legendre(int n, double a, double b, std::vector<double>& x, std::vector<double>& w);

/// r^-1 * int_{|t| < r} |sinc(t1)|^2 dt over the disc of radius r in R^2,
/// i.e. the normalised Wiener average of the unit segment at alpha = 1.
double segment_wiener_alpha1(double r);

/// Same integrand with the r^(alpha-2) normalisation for general alpha.
double segment_wiener(double alpha, double r);

/// Fourier transform of bump(|x - e3| / radius) * surface measure on S^2 at s.
/// The window is symmetric about the pole, so the azimuthal integral is
/// 2 pi J0(2 pi |s_perp| sin theta) and one polar integral remains.
class CapTransform {
 public:
  CapTransform(double radius, int n_nodes);
  std::complex<double> operator()(double s_perp, double s_z) const;

 private:
  std::vector<double> theta_, w_;
};

}  // namespace oracle
