#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <string_view>

namespace fanband {

// Hop-count distance with an absorbing infinity.
class Distance {
 public:
  constexpr Distance() = default;
  constexpr Distance(std::int64_t hops) : v_(hops) {}  // NOLINT(implicit)

  static constexpr Distance infinity() { return Distance(kInfRaw); }

  constexpr bool is_infinite() const { return v_ == kInfRaw; }
  constexpr bool is_finite() const { return v_ != kInfRaw; }
  constexpr std::int64_t value() const { return v_; }

  friend constexpr Distance operator+(Distance a, Distance b) {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    return Distance(a.v_ + b.v_);
  }
  friend constexpr auto operator<=>(Distance, Distance) = default;

 private:
  static constexpr std::int64_t kInfRaw = std::numeric_limits<std::int64_t>::max();
  std::int64_t v_ = 0;
};

constexpr Distance max(Distance a, Distance b) { return a < b ? b : a; }
constexpr Distance min(Distance a, Distance b) { return a < b ? a : b; }

std::ostream& operator<<(std::ostream& os, Distance d);

// Exact non-negative-denominator fraction. Used for local densities and for
// the density parameter D so that every ceiling in the sparsifiers is exact.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  // Accepts "7", "-3", "4.25", "9/4".
  static Rational parse(std::string_view text);
  // Closest fraction with denominator <= max_den (continued fractions).
  static Rational approximate(double x, std::int64_t max_den = 1'000'000);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string to_string() const;

  // Smallest integer c with c >= (*this).
  std::int64_t ceil() const;
  std::int64_t floor() const;

  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace fanband
