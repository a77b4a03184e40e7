#include "gspkit/rational.hpp"

#include <charconv>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "gspkit/errors.hpp"

namespace gspkit {
namespace {

using Wide = __int128;

Wide wide_gcd(Wide a, Wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits64(Wide v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

Wide floor_div(Wide a, Wide b) {
  Wide q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw ParameterError("rational with zero denominator");
  *this = from_wide(num, den);
}

Rational Rational::from_wide(Wide num, Wide den) {
  if (den == 0) throw std::overflow_error("rational division by zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Wide g = wide_gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (!fits64(num) || !fits64(den)) {
    throw std::overflow_error("rational overflow");
  }
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

std::int64_t Rational::floor() const {
  return static_cast<std::int64_t>(floor_div(num_, den_));
}

std::int64_t Rational::ceil() const {
  return -static_cast<std::int64_t>(floor_div(-static_cast<Wide>(num_), den_));
}

Rational Rational::parse(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
      throw ParameterError("malformed rational '" + std::string(text) + "'");
    }
    return v;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  std::int64_t den = parse_int(text.substr(slash + 1));
  if (den == 0) throw ParameterError("rational with zero denominator");
  return Rational(parse_int(text.substr(0, slash)), den);
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational::from_wide(
      static_cast<Wide>(a.num_) * b.den_ + static_cast<Wide>(b.num_) * a.den_,
      static_cast<Wide>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  return Rational::from_wide(static_cast<Wide>(a.num_) * b.num_,
                             static_cast<Wide>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::overflow_error("rational division by zero");
  return Rational::from_wide(static_cast<Wide>(a.num_) * b.den_,
                             static_cast<Wide>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  Wide lhs = static_cast<Wide>(a.num_) * b.den_;
  Wide rhs = static_cast<Wide>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

bool greater_than_scaled(std::int64_t value, const Rational& ratio,
                         std::int64_t base) {
  return static_cast<Wide>(value) * ratio.den() >
         static_cast<Wide>(ratio.num()) * base;
}

bool at_most_scaled(std::int64_t value, const Rational& ratio,
                    std::int64_t base) {
  return !greater_than_scaled(value, ratio, base);
}

std::int64_t floor_scaled(const Rational& ratio, std::int64_t base) {
  Wide v = floor_div(static_cast<Wide>(ratio.num()) * base, ratio.den());
  if (!fits64(v)) throw std::overflow_error("scaled value overflow");
  return static_cast<std::int64_t>(v);
}

std::int64_t ceil_scaled(const Rational& ratio, std::int64_t base) {
  Wide v = -floor_div(-static_cast<Wide>(ratio.num()) * base, ratio.den());
  if (!fits64(v)) throw std::overflow_error("scaled value overflow");
  return static_cast<std::int64_t>(v);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.to_string();
}

}  // namespace gspkit
