#include "framelab/construct.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "framelab/error.hpp"
#include "framelab/hash.hpp"

namespace framelab {
namespace {

constexpr std::size_t kMaxExoticM = 50;

bool row_equal(const FrequencySet& a, std::size_t i, const FrequencySet& b, std::size_t j) {
  if (a.is_exact() && b.is_exact()) {
    auto x = a.exact_freq(i), y = b.exact_freq(j);
    return std::equal(x.begin(), x.end(), y.begin());
  }
  auto x = a.freq(i), y = b.freq(j);
  return std::equal(x.begin(), x.end(), y.begin());
}

bool contains(const FrequencySet& s, const FrequencySet& t, std::size_t j) {
  for (std::size_t i = 0; i < s.size(); ++i)
    if (row_equal(s, i, t, j)) return true;
  return false;
}

// Concatenates row i of a and row j of b, exactly when both sets are exact.
void append_pair(const FrequencySet& a, std::size_t i, const FrequencySet& b, std::size_t j,
                 bool exact, std::vector<Rational>& er, std::vector<double>& dr) {
  if (exact) {
    auto x = a.exact_freq(i), y = b.exact_freq(j);
    er.insert(er.end(), x.begin(), x.end());
    er.insert(er.end(), y.begin(), y.end());
  } else {
    auto x = a.freq(i), y = b.freq(j);
    dr.insert(dr.end(), x.begin(), x.end());
    dr.insert(dr.end(), y.begin(), y.end());
  }
}

void write_rows(std::ostream& os, const FrequencySet& s) {
  os << s.dim() << ':' << s.size() << ':';
  if (s.is_exact()) {
    for (const auto& r : s.exact_coords()) os << r.to_string() << ',';
  } else {
    os.precision(17);
    for (double x : s.coords()) os << x << ',';
  }
  os << ';';
}

}  // namespace

FrequencySet lattice_frame(const Rational& delta, std::size_t k, std::size_t d, std::size_t M) {
  if (!(delta > Rational(0))) throw InvalidArgument("lattice_frame: delta must be > 0");
  if (k < 1 || k > d) throw InvalidArgument("lattice_frame: need 1 <= k <= d");
  const std::size_t side = 2 * M + 1;
  std::size_t count = 1;
  for (std::size_t a = 0; a < k; ++a) {
    if (count > (std::size_t{1} << 26) / side)
      throw InvalidArgument("lattice_frame: too many frequencies");
    count *= side;
  }
  std::vector<Rational> exact;
  exact.reserve(count * d);
  std::vector<std::size_t> idx(k, 0);
  const auto m0 = static_cast<std::int64_t>(M);
  for (std::size_t n = 0; n < count; ++n) {
    for (std::size_t a = 0; a < k; ++a)
      exact.push_back(delta * Rational(static_cast<std::int64_t>(idx[a]) - m0));
    for (std::size_t a = k; a < d; ++a) exact.emplace_back(0);
    for (std::size_t a = k; a-- > 0;) {
      if (++idx[a] < side) break;
      idx[a] = 0;
    }
  }
  Generator g;
  g.kind = Generator::Kind::lattice;
  g.delta = delta;
  g.k = k;
  g.d = d;
  g.M = M;
  return FrequencySet(d, std::move(exact), g, g.tag());
}

FrequencySet exotic_onb(std::size_t M) {
  if (M > kMaxExoticM)
    throw InvalidArgument("exotic_onb: M above " + std::to_string(kMaxExoticM) +
                          " is not exactly representable");
  std::vector<Rational> exact;
  exact.reserve(2 * (2 * M + 1));
  const auto m = static_cast<std::int64_t>(M);
  for (std::int64_t n = -m; n <= m; ++n) {
    exact.emplace_back(n);
    exact.emplace_back(std::int64_t{1} << (n < 0 ? -n : n));
  }
  Generator g;
  g.kind = Generator::Kind::exotic;
  g.M = M;
  return FrequencySet(2, std::move(exact), g, g.tag());
}

FrequencySet product_frame(const FrequencySet& lam, const FrequencySet& gam) {
  const std::size_t d = lam.dim() + gam.dim();
  const bool exact = lam.is_exact() && gam.is_exact();
  std::vector<Rational> er;
  std::vector<double> dr;
  for (std::size_t i = 0; i < lam.size(); ++i)
    for (std::size_t j = 0; j < gam.size(); ++j) append_pair(lam, i, gam, j, exact, er, dr);
  Generator g;
  g.kind = Generator::Kind::product;
  const std::string label = "product(" + lam.label() + "," + gam.label() + ")";
  if (exact) return FrequencySet(d, std::move(er), g, label);
  return FrequencySet(d, std::move(dr), g, label);
}

FrequencySet set_difference(const FrequencySet& a, const FrequencySet& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("set_difference: dimensions differ");
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!contains(b, a, i)) keep.push_back(i);
  if (a.is_exact()) {
    std::vector<Rational> er;
    for (std::size_t i : keep) {
      auto x = a.exact_freq(i);
      er.insert(er.end(), x.begin(), x.end());
    }
    return FrequencySet(a.dim(), std::move(er), Generator{}, a.label());
  }
  std::vector<double> dr;
  for (std::size_t i : keep) {
    auto x = a.freq(i);
    dr.insert(dr.end(), x.begin(), x.end());
  }
  return FrequencySet(a.dim(), std::move(dr), Generator{}, a.label());
}

std::size_t min_merge_q(double A, double B) {
  if (!(A > 0.0) || !(B >= A)) throw InvalidArgument("min_merge_q: need 0 < A <= B");
  const double ratio = 2.0 * B / A;
  auto q = static_cast<std::size_t>(std::floor(ratio)) + 1;
  // guard against floor() landing one below an exact integer ratio
  while (static_cast<double>(q) * A <= 2.0 * B) ++q;
  return q;
}

void MergePlan::validate() const {
  if (q < 1) throw InvalidArgument("merge plan: q must be >= 1");
  if (F.size() != U_core.size()) throw InvalidArgument("merge plan: F has wrong number of entries");
  if (G.size() != V_core.size()) throw InvalidArgument("merge plan: G has wrong number of entries");
  auto check_family = [this](const std::vector<std::vector<std::size_t>>& fam, std::size_t pool,
                             const char* name) {
    std::set<std::size_t> used;
    for (std::size_t i = 0; i < fam.size(); ++i) {
      if (fam[i].size() != q)
        throw InvalidArgument(std::string("merge plan: ") + name + "(" + std::to_string(i) +
                              ") does not have exactly q elements");
      for (std::size_t j : fam[i]) {
        if (j >= pool) throw InvalidArgument(std::string("merge plan: ") + name + " index out of range");
        if (!used.insert(j).second)
          throw InvalidArgument(std::string("merge plan: ") + name + " subsets are not disjoint");
      }
    }
  };
  check_family(F, V_pool.size(), "F");
  check_family(G, U_pool.size(), "G");
  // (u, v) in both halves needs u in U_core and in U_pool, and v in V_pool and in V_core
  for (std::size_t i = 0; i < U_core.size(); ++i)
    for (std::size_t v : F[i])
      for (std::size_t j = 0; j < V_core.size(); ++j)
        if (row_equal(V_pool, v, V_core, j))
          for (std::size_t u : G[j])
            if (row_equal(U_pool, u, U_core, i))
              throw InvalidArgument("merge plan: Lambda_mu and Lambda_nu intersect");
}

std::string MergePlan::plan_id() const {
  std::ostringstream os;
  os << "q=" << q << ';';
  write_rows(os, U_core);
  write_rows(os, V_core);
  write_rows(os, V_pool);
  write_rows(os, U_pool);
  for (const auto& f : F) {
    for (auto j : f) os << j << ',';
    os << '|';
  }
  for (const auto& g : G) {
    for (auto j : g) os << j << ',';
    os << '|';
  }
  return sha256_hex(os.str()).substr(0, 12);
}

MergeResult merge_frames(const MergeInput& in) {
  if (in.U_pool.dim() != in.U_core.dim() || in.V_pool.dim() != in.V_core.dim())
    throw DimensionMismatch("merge_frames: pool and core dimensions differ");
  if (in.U_core.empty() || in.V_core.empty()) throw InvalidArgument("merge_frames: empty core");
  const double A = std::min(in.A_U, in.A_V);
  const double B = std::max(in.B_U, in.B_V);
  if (!(A > 0.0) || !(in.B_U >= in.A_U) || !(in.B_V >= in.A_V))
    throw InvalidArgument("merge_frames: frame bounds must satisfy 0 < A <= B");
  if (!(static_cast<double>(in.q) * A > 2.0 * B))
    throw InvalidArgument("merge_frames: q = " + std::to_string(in.q) +
                          " does not exceed 2B/A; smallest admissible q is " +
                          std::to_string(min_merge_q(A, B)));
  if (in.V_pool.size() < in.q * in.U_core.size())
    throw InvalidArgument("merge_frames: V_pool has " + std::to_string(in.V_pool.size()) +
                          " elements, needs q*|U_core| = " + std::to_string(in.q * in.U_core.size()));
  if (in.U_pool.size() < in.q * in.V_core.size())
    throw InvalidArgument("merge_frames: U_pool has " + std::to_string(in.U_pool.size()) +
                          " elements, needs q*|V_core| = " + std::to_string(in.q * in.V_core.size()));
  for (std::size_t j = 0; j < in.U_pool.size(); ++j)
    if (contains(in.U_core, in.U_pool, j)) throw InvalidArgument("merge_frames: U_pool meets U_core");
  for (std::size_t j = 0; j < in.V_pool.size(); ++j)
    if (contains(in.V_core, in.V_pool, j)) throw InvalidArgument("merge_frames: V_pool meets V_core");

  MergePlan plan;
  plan.q = in.q;
  plan.U_core = in.U_core.sorted();
  plan.V_core = in.V_core.sorted();
  plan.V_pool = in.V_pool.sorted();
  plan.U_pool = in.U_pool.sorted();
  const std::size_t nu = plan.U_core.size(), nv = plan.V_core.size();
  plan.F.assign(nu, {});
  plan.G.assign(nv, {});
  for (std::size_t i = 0; i < nu; ++i)
    for (std::size_t r = 0; r < in.q; ++r) plan.F[i].push_back(i + r * nu);
  for (std::size_t j = 0; j < nv; ++j)
    for (std::size_t r = 0; r < in.q; ++r) plan.G[j].push_back(j + r * nv);
  plan.validate();

  const std::size_t d = plan.U_core.dim() + plan.V_core.dim();
  const bool exact = plan.U_core.is_exact() && plan.V_core.is_exact() && plan.U_pool.is_exact() &&
                     plan.V_pool.is_exact();
  std::vector<Rational> er;
  std::vector<double> dr;
  for (std::size_t i = 0; i < nu; ++i)
    for (std::size_t v : plan.F[i]) append_pair(plan.U_core, i, plan.V_pool, v, exact, er, dr);
  for (std::size_t j = 0; j < nv; ++j)
    for (std::size_t u : plan.G[j]) append_pair(plan.U_pool, u, plan.V_core, j, exact, er, dr);

  Generator g;
  g.kind = Generator::Kind::merged;
  g.q = in.q;
  g.plan_id = plan.plan_id();
  MergeResult out{exact ? FrequencySet(d, std::move(er), g, g.tag())
                        : FrequencySet(d, std::move(dr), g, g.tag()),
                  std::move(plan), nu * in.q, 0.0, 0.0};
  out.lower_bound = 0.5 * static_cast<double>(in.q) * A - B;
  out.upper_bound = 2.0 * static_cast<double>(in.q + 1) * B;
  return out;
}

}  // namespace framelab
