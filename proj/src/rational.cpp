#include "troprank/rational.hpp"

#include <charconv>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace troprank {
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

bool fits(Wide v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

std::optional<std::int64_t> parse_int(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  *this = from_wide(num, den);
}

Rational Rational::from_wide(Wide num, Wide den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Wide g = wide_gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (!fits(num) || !fits(den)) throw std::overflow_error("rational overflow");
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

Rational Rational::floor() const {
  if (den_ == 1) return *this;
  std::int64_t q = num_ / den_;
  if (num_ < 0) --q;
  return Rational(q);
}

Rational Rational::ceil() const {
  if (den_ == 1) return *this;
  std::int64_t q = num_ / den_;
  if (num_ > 0) ++q;
  return Rational(q);
}

Rational Rational::operator-() const {
  if (num_ == std::numeric_limits<std::int64_t>::min()) throw std::overflow_error("rational overflow");
  Rational r = *this;
  r.num_ = -num_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  if (den_ == 1 && o.den_ == 1) {
    if (__builtin_add_overflow(num_, o.num_, &num_)) throw std::overflow_error("rational overflow");
    return *this;
  }
  Wide g = wide_gcd(den_, o.den_);
  Wide n = Wide(num_) * (o.den_ / g) + Wide(o.num_) * (den_ / g);
  Wide d = Wide(den_) * (o.den_ / g);
  return *this = from_wide(n, d);
}

Rational& Rational::operator-=(const Rational& o) {
  if (den_ == 1 && o.den_ == 1) {
    if (__builtin_sub_overflow(num_, o.num_, &num_)) throw std::overflow_error("rational overflow");
    return *this;
  }
  return *this += -o;
}

Rational& Rational::operator*=(const Rational& o) {
  if (den_ == 1 && o.den_ == 1) {
    if (__builtin_mul_overflow(num_, o.num_, &num_)) throw std::overflow_error("rational overflow");
    return *this;
  }
  return *this = from_wide(Wide(num_) * o.num_, Wide(den_) * o.den_);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw std::domain_error("rational division by zero");
  return *this = from_wide(Wide(num_) * o.den_, Wide(den_) * o.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (a.den_ == b.den_) return a.num_ <=> b.num_;
  Wide lhs = Wide(a.num_) * b.den_;
  Wide rhs = Wide(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::optional<Rational> Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    auto v = parse_int(text);
    if (!v) return std::nullopt;
    return Rational(*v);
  }
  auto p = parse_int(text.substr(0, slash));
  auto q_text = text.substr(slash + 1);
  if (!q_text.empty() && (q_text.front() == '-' || q_text.front() == '+')) return std::nullopt;
  auto q = parse_int(q_text);
  if (!p || !q || *q == 0) return std::nullopt;
  return Rational(*p, *q);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace troprank
