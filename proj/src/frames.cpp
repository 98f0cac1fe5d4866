#include "framelab/frames.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "framelab/error.hpp"
#include "framelab/fourier.hpp"
#include "framelab/parallel.hpp"
#include "framelab/summation.hpp"

namespace framelab {
namespace {

constexpr double kRankRatio = 1e-12;

struct Ritz {
  double value = 0.0;
  Eigen::VectorXcd vector;
  std::size_t iterations = 0;
  bool converged = false;
};

// Largest eigenpair of a Hermitian operator by Lanczos with full
// reorthogonalization, started from the normalized all-ones vector.
template <class Apply>
Ritz lanczos_top(Eigen::Index n, Apply apply, double tol, std::size_t max_iter) {
  const std::size_t limit = std::min<std::size_t>(static_cast<std::size_t>(n), max_iter);
  std::vector<Eigen::VectorXcd> basis;
  std::vector<double> alpha, beta;
  basis.push_back(Eigen::VectorXcd::Ones(n) / std::sqrt(static_cast<double>(n)));

  Ritz out;
  for (std::size_t k = 0;; ++k) {
    Eigen::VectorXcd w = apply(basis[k]);
    const double a = basis[k].dot(w).real();
    w -= a * basis[k];
    if (k > 0) w -= beta[k - 1] * basis[k - 1];
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& v : basis) w -= v * v.dot(w);
    const double b = w.norm();
    alpha.push_back(a);

    Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), static_cast<Eigen::Index>(alpha.size()));
    Eigen::VectorXd sub = beta.empty() ? Eigen::VectorXd()
                                       : Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(
                                             beta.data(), static_cast<Eigen::Index>(beta.size())));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
    tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    const Eigen::Index top = diag.size() - 1;
    const double theta = tri.eigenvalues()(top);
    const double estimate = b * std::abs(tri.eigenvectors()(top, top));
    const bool small = estimate <= tol * std::abs(theta);
    const bool exhausted = b <= 1e-14 * std::max(1.0, std::abs(theta)) || k + 1 >= limit;
    if (small || exhausted) {
      out.value = theta;
      out.vector = Eigen::VectorXcd::Zero(n);
      for (std::size_t i = 0; i < basis.size(); ++i)
        out.vector += tri.eigenvectors()(static_cast<Eigen::Index>(i), top) * basis[i];
      out.vector.normalize();
      out.iterations = k + 1;
      out.converged = small || b <= 1e-14 * std::max(1.0, std::abs(theta)) ||
                      k + 1 >= static_cast<std::size_t>(n);
      return out;
    }
    beta.push_back(b);
    basis.push_back(w / b);
  }
}

std::size_t row_count(std::span<const double> freqs, std::size_t d) {
  if (freqs.size() % d != 0) throw DimensionMismatch("frequency rows do not match measure dimension");
  return freqs.size() / d;
}

void finish(FrameBounds& fb) {
  if (fb.lower_A < kRankRatio * fb.upper_B) {
    fb.lower_A = 0.0;
    fb.rank_deficient = true;
  }
}

// One-sided Jacobi after a column-pivoted QR. Eigen 3.4's BDCSVD returned a
// wrong smallest singular value on some wide complex matrices (e.g. 42 x 320).
FrameBounds dense_bounds(const Eigen::MatrixXcd& C) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(C);
  const auto& sv = svd.singularValues();
  FrameBounds fb;
  fb.upper_B = sv(0) * sv(0);
  fb.lower_A = sv(sv.size() - 1) * sv(sv.size() - 1);
  fb.method = FrameMethod::dense_svd;
  return fb;
}

FrameBounds iterative_bounds(const Eigen::MatrixXcd& C, const FrameOptions& opts, bool need_lower) {
  const bool wide = C.rows() <= C.cols();
  const Eigen::MatrixXcd H = wide ? Eigen::MatrixXcd(C * C.adjoint()) : Eigen::MatrixXcd(C.adjoint() * C);
  const Eigen::Index n = H.rows();

  FrameBounds fb;
  fb.method = FrameMethod::iterative_extremal;
  Ritz top = lanczos_top(n, [&](const Eigen::VectorXcd& x) -> Eigen::VectorXcd { return H * x; },
                         opts.tolerance, opts.max_iterations);
  fb.upper_B = (top.vector.adjoint() * H * top.vector)(0, 0).real();
  fb.residual = (H * top.vector - fb.upper_B * top.vector).norm() / fb.upper_B;
  fb.iterations = top.iterations;
  fb.converged = top.converged;
  if (!need_lower) return fb;

  if (static_cast<std::size_t>(n) > opts.max_inverse_dim)
    throw InvalidArgument("iterative lower bound needs a Gram matrix of dimension <= " +
                          std::to_string(opts.max_inverse_dim) + " (got " + std::to_string(n) +
                          "); use dense_svd");
  const double shift = -1e-6 * fb.upper_B;
  Eigen::MatrixXcd shifted = H;
  shifted.diagonal().array() -= shift;
  Eigen::LLT<Eigen::MatrixXcd> llt(shifted);
  if (llt.info() != Eigen::Success) throw ConvergenceError("shifted Gram matrix is not positive definite");
  Ritz bottom = lanczos_top(n, [&](const Eigen::VectorXcd& x) -> Eigen::VectorXcd { return llt.solve(x); },
                            opts.tolerance, opts.max_iterations);
  fb.lower_A = std::max(0.0, (bottom.vector.adjoint() * H * bottom.vector)(0, 0).real());
  fb.residual = std::max(fb.residual, (H * bottom.vector - fb.lower_A * bottom.vector).norm() / fb.upper_B);
  fb.iterations += bottom.iterations;
  fb.converged = fb.converged && bottom.converged;
  return fb;
}

FrameBounds section_bounds(const QuadratureMeasure& m, const Eigen::MatrixXcd& C,
                           const FrequencySet& section) {
  if (section.dim() != m.dim()) throw DimensionMismatch("section frequencies have the wrong dimension");
  if (section.empty()) throw InvalidArgument("section must be nonempty");
  const Eigen::MatrixXcd T = analysis_matrix(m, section.coords());
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(T.adjoint());
  const Eigen::Index r = qr.rank();
  const Eigen::MatrixXcd Q = Eigen::MatrixXcd(qr.householderQ()).leftCols(r);
  FrameBounds fb = dense_bounds(C * Q);
  fb.section_dim = static_cast<std::size_t>(r);
  return fb;
}

FrameBounds compute(const QuadratureMeasure& m, std::span<const double> freqs,
                    const FrameOptions& opts, bool need_lower) {
  const std::size_t n_freqs = row_count(freqs, m.dim());
  if (n_freqs < 1) throw InvalidArgument("frame_bounds: frequency set is empty");
  const Eigen::MatrixXcd C = analysis_matrix(m, freqs);
  FrameBounds fb;
  if (opts.section) {
    fb = section_bounds(m, C, *opts.section);
  } else if (opts.method == FrameMethod::dense_svd) {
    fb = dense_bounds(C);
  } else {
    fb = iterative_bounds(C, opts, need_lower);
  }
  fb.n_points = m.size();
  fb.n_freqs = n_freqs;
  if (need_lower) finish(fb);
  const AliasingReport alias = aliasing_guard(m, freqs);
  fb.aliasing_warning = alias.warning;
  fb.aliasing_detail = alias.detail;
  return fb;
}

}  // namespace

std::string to_string(FrameMethod m) {
  return m == FrameMethod::dense_svd ? "dense_svd" : "iterative_extremal";
}

FrameMethod parse_frame_method(const std::string& s) {
  if (s == "dense_svd") return FrameMethod::dense_svd;
  if (s == "iterative_extremal") return FrameMethod::iterative_extremal;
  throw InvalidArgument("unknown frame method '" + s + "'");
}

Eigen::MatrixXcd analysis_matrix(const QuadratureMeasure& m, std::span<const double> freqs) {
  const std::size_t d = m.dim();
  const std::size_t rows = row_count(freqs, d);
  const std::size_t cols = m.size();
  Eigen::MatrixXcd C(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  std::vector<double> root(cols);
  for (std::size_t j = 0; j < cols; ++j) root[j] = std::sqrt(m.weight(j));
  parallel_for(rows, [&](std::size_t l) {
    const double* lam = freqs.data() + l * d;
    for (std::size_t j = 0; j < cols; ++j) {
      auto x = m.point(j);
      double p = 0.0;
      for (std::size_t a = 0; a < d; ++a) p += lam[a] * x[a];
      p -= std::nearbyint(p);
      const double angle = -2.0 * std::numbers::pi * p;
      C(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(j)) =
          root[j] * std::complex<double>(std::cos(angle), std::sin(angle));
    }
  });
  return C;
}

AliasingReport aliasing_guard(const QuadratureMeasure& m, std::span<const double> freqs) {
  const std::size_t d = m.dim();
  const std::size_t rows = row_count(freqs, d);
  AliasingReport report;
  if (rows == 0) return report;
  std::ostringstream detail;
  for (std::size_t a = 0; a < d; ++a) {
    std::set<double> values;
    for (std::size_t j = 0; j < m.size(); ++j) values.insert(m.point(j)[a]);
    if (values.size() < 2) continue;
    double h = std::numeric_limits<double>::infinity();
    for (auto it = std::next(values.begin()); it != values.end(); ++it) h = std::min(h, *it - *std::prev(it));
    double lo = freqs[a], hi = freqs[a];
    for (std::size_t l = 0; l < rows; ++l) {
      lo = std::min(lo, freqs[l * d + a]);
      hi = std::max(hi, freqs[l * d + a]);
    }
    const double limit = 1.0 / h;
    if (hi - lo >= limit * (1.0 - 1e-12)) {
      report.warning = true;
      detail << "axis " << a << ": frequency extent " << (hi - lo) << " >= 1/h = " << limit << "; ";
    }
  }
  report.detail = detail.str();
  return report;
}

FrameBounds frame_bounds(const QuadratureMeasure& m, const FrequencySet& lam, const FrameOptions& opts) {
  if (lam.dim() != m.dim())
    throw DimensionMismatch("frame_bounds: frequency dimension " + std::to_string(lam.dim()) +
                            " differs from measure dimension " + std::to_string(m.dim()));
  return compute(m, lam.coords(), opts, true);
}

FrameBounds frame_bounds(const QuadratureMeasure& m, std::span<const double> freqs, const FrameOptions& opts) {
  return compute(m, freqs, opts, true);
}

double bessel_constant(const QuadratureMeasure& m, const FrequencySet& lam, const FrameOptions& opts) {
  if (lam.dim() != m.dim()) throw DimensionMismatch("bessel_constant: dimension mismatch");
  FrameOptions o = opts;
  o.section.reset();
  return compute(m, lam.coords(), o, false).upper_B;
}

BesselSup bessel_sup_check(const QuadratureMeasure& m, const FrequencySet& lam,
                           std::span<const double> t_grid) {
  const std::size_t d = m.dim();
  if (lam.dim() != d) throw DimensionMismatch("bessel_sup_check: dimension mismatch");
  const std::size_t n_t = row_count(t_grid, d);
  if (n_t == 0) throw InvalidArgument("bessel_sup_check: empty t grid");
  std::vector<double> sums(n_t);
  parallel_for(n_t, [&](std::size_t i) {
    std::vector<double> shifted(d);
    CompensatedSum acc;
    for (std::size_t l = 0; l < lam.size(); ++l) {
      auto f = lam.freq(l);
      for (std::size_t a = 0; a < d; ++a) shifted[a] = t_grid[i * d + a] - f[a];
      acc.add(std::norm(mu_hat(m, shifted)));
    }
    sums[i] = acc.value();
  });
  BesselSup out;
  out.argmax_index = static_cast<std::size_t>(std::max_element(sums.begin(), sums.end()) - sums.begin());
  out.sup_value = sums[out.argmax_index];
  out.argmax_t.assign(t_grid.begin() + static_cast<std::ptrdiff_t>(out.argmax_index * d),
                      t_grid.begin() + static_cast<std::ptrdiff_t>((out.argmax_index + 1) * d));
  return out;
}

}  // namespace framelab
