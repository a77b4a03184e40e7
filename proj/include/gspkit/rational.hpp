#ifndef GSPKIT_RATIONAL_HPP
#define GSPKIT_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace gspkit {

// Exact rational number with 64-bit numerator and denominator.
//
// Always normalized: gcd(num, den) == 1 and den > 0. Intermediate products
// are formed in 128-bit arithmetic; a result that does not fit back into
// 64 bits throws std::overflow_error instead of wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  // Largest integer <= value / smallest integer >= value.
  std::int64_t floor() const;
  std::int64_t ceil() const;
  double to_double() const { return static_cast<double>(num_) / den_; }

  // "p/q" or "p"; whitespace not allowed.
  static Rational parse(std::string_view text);
  std::string to_string() const;

  Rational operator-() const { return Rational(-num_, den_); }
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b);

 private:
  static Rational from_wide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// Exact comparisons of an integer quantity against a rational multiple of
// another integer, e.g. `value > ratio * base`. These are the threshold
// tests used by item classification; they never round.
bool greater_than_scaled(std::int64_t value, const Rational& ratio,
                         std::int64_t base);
bool at_most_scaled(std::int64_t value, const Rational& ratio,
                    std::int64_t base);

// floor(ratio * base) and ceil(ratio * base) without intermediate rounding.
std::int64_t floor_scaled(const Rational& ratio, std::int64_t base);
std::int64_t ceil_scaled(const Rational& ratio, std::int64_t base);

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace gspkit

#endif  // GSPKIT_RATIONAL_HPP
