#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "framelab/rational.hpp"

namespace framelab {

/// How a frequency set was produced. Serialized as a short tag such as
/// "lattice(1/2,1,2,32)", "merged(3,1f0c9a7e22b4)", "exotic(16)".
struct Generator {
  enum class Kind { explicit_set, lattice, merged, product, exotic };

  Kind kind = Kind::explicit_set;
  Rational delta{1};
  std::size_t k = 0;
  std::size_t d = 0;
  std::size_t M = 0;
  std::size_t q = 0;
  std::string plan_id;

  std::string tag() const;
  static Generator parse(const std::string& tag);
  friend bool operator==(const Generator&, const Generator&) = default;
};

/// Finite set of frequencies in R^dim. Duplicates are rejected at construction.
///
/// Sets built from rational data keep the exact coordinates alongside the
/// doubles; duplicate detection then compares the rationals.
class FrequencySet {
 public:
  FrequencySet(std::size_t dim, std::vector<double> coords, Generator gen = {},
               std::string label = {});
  FrequencySet(std::size_t dim, std::vector<Rational> exact, Generator gen = {},
               std::string label = {});
  /// Empty set in R^dim.
  explicit FrequencySet(std::size_t dim);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  bool empty() const { return coords_.empty(); }
  std::span<const double> freq(std::size_t i) const { return {coords_.data() + i * dim_, dim_}; }
  std::span<const double> coords() const { return coords_; }
  bool is_exact() const { return exact_.has_value(); }
  /// Exact coordinates, row-major; only valid when is_exact().
  std::span<const Rational> exact_coords() const { return *exact_; }
  std::span<const Rational> exact_freq(std::size_t i) const {
    return {exact_->data() + i * dim_, dim_};
  }
  const Generator& generator() const { return gen_; }
  const std::string& label() const { return label_; }

  /// Copy whose rows are sorted lexicographically (exact order when available).
  FrequencySet sorted() const;
  /// Copy with rows reordered by `order` (a permutation of 0..size-1).
  FrequencySet permuted(std::span<const std::size_t> order) const;
  /// True if `other` has the same dimension and the same rows in the same order.
  bool same_rows(const FrequencySet& other) const;

 private:
  void check_distinct() const;

  std::size_t dim_;
  std::vector<double> coords_;
  std::optional<std::vector<Rational>> exact_;
  Generator gen_;
  std::string label_;
};

}  // namespace framelab
