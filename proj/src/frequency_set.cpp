#include "framelab/frequency_set.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "framelab/error.hpp"

namespace framelab {
namespace {

std::vector<double> to_doubles(const std::vector<Rational>& exact) {
  std::vector<double> out(exact.size());
  std::transform(exact.begin(), exact.end(), out.begin(), [](const Rational& r) { return r.to_double(); });
  return out;
}

std::size_t parse_size(const std::string& s) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    throw FormatError("bad integer in generator tag: '" + s + "'");
  }
  if (pos != s.size() || s.empty() || s.front() == '-')
    throw FormatError("bad integer in generator tag: '" + s + "'");
  return static_cast<std::size_t>(v);
}

std::vector<std::string> split_args(const std::string& tag, const std::string& head) {
  if (tag.size() < head.size() + 2 || tag.compare(0, head.size() + 1, head + "(") != 0 ||
      tag.back() != ')')
    throw FormatError("malformed generator tag: '" + tag + "'");
  std::vector<std::string> args;
  std::stringstream ss(tag.substr(head.size() + 1, tag.size() - head.size() - 2));
  std::string item;
  while (std::getline(ss, item, ',')) args.push_back(item);
  return args;
}

}  // namespace

std::string Generator::tag() const {
  switch (kind) {
    case Kind::explicit_set:
      return "explicit";
    case Kind::lattice:
      return "lattice(" + delta.to_string() + "," + std::to_string(k) + "," + std::to_string(d) +
             "," + std::to_string(M) + ")";
    case Kind::merged:
      return "merged(" + std::to_string(q) + "," + plan_id + ")";
    case Kind::product:
      return "product";
    case Kind::exotic:
      return "exotic(" + std::to_string(M) + ")";
  }
  return "explicit";
}

Generator Generator::parse(const std::string& tag) {
  Generator g;
  if (tag == "explicit") return g;
  if (tag == "product") {
    g.kind = Kind::product;
    return g;
  }
  if (tag.starts_with("lattice(")) {
    auto a = split_args(tag, "lattice");
    if (a.size() != 4) throw FormatError("lattice tag needs 4 arguments: '" + tag + "'");
    g.kind = Kind::lattice;
    g.delta = Rational::parse(a[0]);
    g.k = parse_size(a[1]);
    g.d = parse_size(a[2]);
    g.M = parse_size(a[3]);
    return g;
  }
  if (tag.starts_with("merged(")) {
    auto a = split_args(tag, "merged");
    if (a.size() != 2) throw FormatError("merged tag needs 2 arguments: '" + tag + "'");
    g.kind = Kind::merged;
    g.q = parse_size(a[0]);
    g.plan_id = a[1];
    return g;
  }
  if (tag.starts_with("exotic(")) {
    auto a = split_args(tag, "exotic");
    if (a.size() != 1) throw FormatError("exotic tag needs 1 argument: '" + tag + "'");
    g.kind = Kind::exotic;
    g.M = parse_size(a[0]);
    return g;
  }
  throw FormatError("unknown generator tag: '" + tag + "'");
}

FrequencySet::FrequencySet(std::size_t dim) : dim_(dim) {
  if (dim_ < 1) throw InvalidArgument("frequency set dimension must be >= 1");
}

FrequencySet::FrequencySet(std::size_t dim, std::vector<double> coords, Generator gen,
                           std::string label)
    : dim_(dim), coords_(std::move(coords)), gen_(std::move(gen)), label_(std::move(label)) {
  if (dim_ < 1) throw InvalidArgument("frequency set dimension must be >= 1");
  if (coords_.size() % dim_ != 0)
    throw InvalidArgument("frequency coordinates are not a multiple of the dimension");
  for (double x : coords_)
    if (!std::isfinite(x)) throw InvalidArgument("non-finite frequency coordinate");
  check_distinct();
}

FrequencySet::FrequencySet(std::size_t dim, std::vector<Rational> exact, Generator gen,
                           std::string label)
    : dim_(dim), coords_(to_doubles(exact)), exact_(std::move(exact)), gen_(std::move(gen)),
      label_(std::move(label)) {
  if (dim_ < 1) throw InvalidArgument("frequency set dimension must be >= 1");
  if (coords_.size() % dim_ != 0)
    throw InvalidArgument("frequency coordinates are not a multiple of the dimension");
  check_distinct();
}

namespace {

std::vector<std::size_t> lex_order(std::size_t n, std::size_t dim, const std::vector<double>& c,
                                   const std::optional<std::vector<Rational>>& e) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  if (e) {
    const auto& x = *e;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return std::lexicographical_compare(x.begin() + a * dim, x.begin() + (a + 1) * dim,
                                          x.begin() + b * dim, x.begin() + (b + 1) * dim);
    });
  } else {
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return std::lexicographical_compare(c.begin() + a * dim, c.begin() + (a + 1) * dim,
                                          c.begin() + b * dim, c.begin() + (b + 1) * dim);
    });
  }
  return idx;
}

}  // namespace

void FrequencySet::check_distinct() const {
  const std::size_t n = size();
  auto idx = lex_order(n, dim_, coords_, exact_);
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t a = idx[i - 1], b = idx[i];
    bool equal;
    if (exact_)
      equal = std::equal(exact_->begin() + a * dim_, exact_->begin() + (a + 1) * dim_,
                         exact_->begin() + b * dim_);
    else
      equal = std::equal(coords_.begin() + a * dim_, coords_.begin() + (a + 1) * dim_,
                         coords_.begin() + b * dim_);
    if (equal)
      throw InvalidArgument("duplicate frequency at rows " + std::to_string(std::min(a, b)) +
                            " and " + std::to_string(std::max(a, b)));
  }
}

FrequencySet FrequencySet::permuted(std::span<const std::size_t> order) const {
  if (order.size() != size()) throw InvalidArgument("permutation length differs from set size");
  std::vector<double> c;
  c.reserve(coords_.size());
  std::optional<std::vector<Rational>> e;
  if (exact_) e.emplace().reserve(coords_.size());
  for (std::size_t i : order) {
    if (i >= size()) throw InvalidArgument("permutation index out of range");
    c.insert(c.end(), coords_.begin() + i * dim_, coords_.begin() + (i + 1) * dim_);
    if (e) e->insert(e->end(), exact_->begin() + i * dim_, exact_->begin() + (i + 1) * dim_);
  }
  // the row count is preserved and duplicates are re-detected, so a
  // non-permutation `order` is rejected here
  if (e) return FrequencySet(dim_, std::move(*e), gen_, label_);
  return FrequencySet(dim_, std::move(c), gen_, label_);
}

FrequencySet FrequencySet::sorted() const {
  auto idx = lex_order(size(), dim_, coords_, exact_);
  return permuted(idx);
}

bool FrequencySet::same_rows(const FrequencySet& other) const {
  if (dim_ != other.dim_ || coords_.size() != other.coords_.size()) return false;
  if (exact_ && other.exact_) return *exact_ == *other.exact_;
  return coords_ == other.coords_;
}

}  // namespace framelab
