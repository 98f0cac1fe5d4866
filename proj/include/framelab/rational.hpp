#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace framelab {

/// Exact rational number with 64-bit numerator and positive denominator,
/// always stored in lowest terms. Arithmetic throws on overflow.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  bool is_integer() const { return den_ == 1; }

  /// "p" for integers, "p/q" otherwise.
  std::string to_string() const;

  /// Accepts "p", "p/q", or a plain decimal such as "-0.125" (converted exactly).
  static Rational parse(std::string_view text);

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  Rational operator-() const;

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace framelab
