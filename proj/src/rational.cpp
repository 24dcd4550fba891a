#include "sslab/rational.hpp"

#include <numeric>
#include <stdexcept>

namespace sslab {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("Rational: multiplication overflow");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("Rational: addition overflow");
  return r;
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw std::domain_error("Rational: zero denominator");
  if (d < 0) {
    n = checked_mul(n, -1);
    d = checked_mul(d, -1);
  }
  std::int64_t g = std::gcd(n, d);
  num_ = n / g;
  den_ = d / g;
}

Rational Rational::operator+(const Rational& o) const {
  std::int64_t g = std::gcd(den_, o.den_);
  std::int64_t l = checked_mul(den_ / g, o.den_);
  return {checked_add(checked_mul(num_, l / den_), checked_mul(o.num_, l / o.den_)), l};
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
  std::int64_t g1 = std::gcd(num_, o.den_), g2 = std::gcd(o.num_, den_);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  return {checked_mul(num_ / g1, o.num_ / g2), checked_mul(den_ / g2, o.den_ / g1)};
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) throw std::domain_error("Rational: division by zero");
  return *this * Rational(o.den_, o.num_);
}

Rational Rational::operator-() const { return {checked_mul(num_, -1), den_}; }

std::strong_ordering Rational::operator<=>(const Rational& o) const {
  __int128 l = static_cast<__int128>(num_) * o.den_;
  __int128 r = static_cast<__int128>(o.num_) * den_;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::int64_t Rational::floor() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

std::int64_t Rational::ceil() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ > 0) ++q;
  return q;
}

std::string Rational::str() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace sslab
