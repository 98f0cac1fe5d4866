#pragma once

#include <cstddef>
#include <vector>

#include "framelab/frequency_set.hpp"
#include "framelab/rational.hpp"

namespace framelab {

/// (delta Z)^k x {0}^{d-k}, truncated to multi-indices with |m|_inf <= M.
/// Rows are enumerated with the last lattice axis varying fastest.
FrequencySet lattice_frame(const Rational& delta, std::size_t k, std::size_t d, std::size_t M);

/// {(n, 2^|n|) : |n| <= M} in R^2, ordered by n. Requires M <= 50.
FrequencySet exotic_onb(std::size_t M);

/// Cartesian product lam x gam in R^{dim(lam)+dim(gam)}, gam index varying fastest.
FrequencySet product_frame(const FrequencySet& lam, const FrequencySet& gam);

/// Rows of `a` that do not occur in `b` (same dimension), order of `a` kept.
FrequencySet set_difference(const FrequencySet& a, const FrequencySet& b);

/// Smallest integer strictly greater than 2B/A.
std::size_t min_merge_q(double A, double B);

/// Inputs of the merge construction. A_*, B_* are the frame bounds the
/// caller asserts for the cores on their respective measures.
struct MergeInput {
  FrequencySet U_core;
  double A_U = 1.0;
  double B_U = 1.0;
  FrequencySet V_core;
  double A_V = 1.0;
  double B_V = 1.0;
  FrequencySet V_pool;
  FrequencySet U_pool;
  std::size_t q = 0;
};

/// Allocation of pool frequencies to core frequencies. All four sets are
/// stored sorted lexicographically; F[i] lists indices into V_pool assigned
/// to U_core row i, G[j] indices into U_pool assigned to V_core row j.
struct MergePlan {
  std::size_t q = 0;
  FrequencySet U_core{1};
  FrequencySet V_core{1};
  FrequencySet V_pool{1};
  FrequencySet U_pool{1};
  std::vector<std::vector<std::size_t>> F;
  std::vector<std::vector<std::size_t>> G;

  /// Throws InvalidArgument describing the first violated invariant:
  /// |F(u)| = |G(v)| = q, each family pairwise disjoint, indices in range,
  /// and the two halves of the merged set disjoint.
  void validate() const;
  /// Short stable identifier derived from the plan contents.
  std::string plan_id() const;
};

struct MergeResult {
  FrequencySet lambda;
  MergePlan plan;
  std::size_t n_mu = 0;  ///< rows of `lambda` coming from Lambda_mu (they come first)
  double lower_bound = 0.0;  ///< (q/2)A - B with A = min(A_U, A_V), B = max(B_U, B_V)
  double upper_bound = 0.0;  ///< 2(q+1)B
};

/// Builds Lambda_mu = {(u, v) : v in F(u)} and Lambda_nu = {(u, v) : u in G(v)}
/// using round-robin allocation over the lexicographically sorted pools.
/// Rejects q <= 2B/A, pools that are too small, and pools that meet their cores.
MergeResult merge_frames(const MergeInput& in);

}  // namespace framelab
