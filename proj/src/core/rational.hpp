#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>

#include "core/errors.hpp"

namespace circw {

// Exact nonnegative rational, stored reduced. All exponent and threshold
// comparisons in this project go through this type; no floating point is
// involved in any verdict.
class Rational {
 public:
  constexpr Rational() = default;

  Rational(std::int64_t num, std::int64_t den) {
    if (den <= 0 || num < 0) fail(Errc::argument, "rational must be nonnegative with positive denominator");
    std::int64_t g = std::gcd(num, den);
    num_ = g ? num / g : 0;
    den_ = g ? den / g : 1;
  }

  static Rational integer(std::int64_t n) { return Rational(n, 1); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_integer() const { return den_ == 1; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Accepts "7/3" and "2"; anything else (notably decimals like "3.25")
  // is rejected so thresholds stay exact.
  static std::optional<Rational> parse(std::string_view s) {
    auto digits = [](std::string_view t) {
      if (t.empty() || t.size() > 18) return false;
      for (char c : t)
        if (c < '0' || c > '9') return false;
      return true;
    };
    auto pos = s.find('/');
    if (pos == std::string_view::npos) {
      if (!digits(s)) return std::nullopt;
      return Rational(std::stoll(std::string(s)), 1);
    }
    std::string_view a = s.substr(0, pos), b = s.substr(pos + 1);
    if (!digits(a) || !digits(b)) return std::nullopt;
    std::int64_t den = std::stoll(std::string(b));
    if (den == 0) return std::nullopt;
    return Rational(std::stoll(std::string(a)), den);
  }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// A repetition threshold: "value"-power-free when strict is false (factors
// with exponent >= value are forbidden), or "value^+"-power-free when strict
// is true (only exponents strictly above value are forbidden).
struct PowerThreshold {
  Rational value;
  bool strict = false;

  PowerThreshold(Rational v, bool s) : value(v), strict(s) {
    if (v < Rational::integer(1)) fail(Errc::argument, "power threshold must be >= 1");
  }

  // True when a repetition of the given exponent violates the threshold.
  bool violated_by(const Rational& exponent) const {
    return strict ? exponent > value : exponent >= value;
  }

  // Same test expressed on (length, period) without building a Rational.
  bool violated_by(std::uint64_t length, std::uint64_t period) const {
    __int128 lhs = static_cast<__int128>(length) * value.den();
    __int128 rhs = static_cast<__int128>(value.num()) * period;
    return strict ? lhs > rhs : lhs >= rhs;
  }

  std::string str() const { return value.str() + (strict ? "+" : ""); }
};

}  // namespace circw
