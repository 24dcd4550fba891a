#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace sslab {

// Exact rational with int64 parts; every operation throws std::overflow_error instead of wrapping.
class Rational {
 public:
  Rational(std::int64_t n = 0) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t n, std::int64_t d);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  Rational operator-() const;

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  std::strong_ordering operator<=>(const Rational& o) const;

  // Largest integer <= this.
  std::int64_t floor() const;
  std::int64_t ceil() const;
  std::string str() const;

 private:
  std::int64_t num_, den_;
};

}  // namespace sslab
