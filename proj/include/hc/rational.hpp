#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "hc/error.hpp"

namespace hc {

// Exact rational on 64-bit numerator/denominator with 128-bit intermediates.
// Out-of-range results throw Overflow instead of degrading silently; every
// exponent chain in this project stays far inside the range.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(long long num) : num_(num), den_(1) {}  // NOLINT: implicit by design
  Rational(long long num, long long den) : num_(num), den_(den) { normalize(); }

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  bool is_negative() const { return num_ < 0; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw RangeError("division by zero rational");
    return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }
  Rational operator-() const { return Rational(-num_, den_); }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  Rational pow(unsigned e) const {
    Rational r(1), base = *this;
    while (e) {
      if (e & 1) r *= base;
      base = e > 1 ? base * base : base;
      e >>= 1;
    }
    return r;
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  // ceil(a/b) for use in r = ceil(4/eps)
  long long ceil() const { return num_ >= 0 ? (num_ + den_ - 1) / den_ : num_ / den_; }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  using i128 = __int128;

  static long long checked(i128 v) {
    if (v > INT64_MAX || v < INT64_MIN + 1) throw Overflow("rational out of 64-bit range");
    return static_cast<long long>(v);
  }

  static Rational make(i128 num, i128 den) {
    if (den == 0) throw RangeError("zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    i128 a = num < 0 ? -num : num, b = den;
    while (b) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      num /= a;
      den /= a;
    }
    Rational r;
    r.num_ = checked(num);
    r.den_ = checked(den);
    return r;
  }

  void normalize() { *this = make(num_, den_); }

  long long num_ = 0;
  long long den_ = 1;
};

// c0 + c1 * eps, with exact rational coefficients. Enough structure for every
// exponent expression this project manipulates.
struct EpsAffine {
  Rational c0;
  Rational c1;

  EpsAffine() = default;
  EpsAffine(Rational constant) : c0(constant) {}  // NOLINT: implicit by design
  EpsAffine(Rational constant, Rational eps_coeff) : c0(constant), c1(eps_coeff) {}

  bool is_constant() const { return c1.is_zero(); }
  Rational at(const Rational& eps) const { return c0 + c1 * eps; }

  friend EpsAffine operator+(const EpsAffine& a, const EpsAffine& b) {
    return {a.c0 + b.c0, a.c1 + b.c1};
  }
  friend EpsAffine operator-(const EpsAffine& a, const EpsAffine& b) {
    return {a.c0 - b.c0, a.c1 - b.c1};
  }
  friend EpsAffine operator*(const Rational& k, const EpsAffine& a) {
    return {k * a.c0, k * a.c1};
  }
  friend bool operator==(const EpsAffine& a, const EpsAffine& b) {
    return a.c0 == b.c0 && a.c1 == b.c1;
  }
  friend bool operator!=(const EpsAffine& a, const EpsAffine& b) { return !(a == b); }

  std::string str() const;
};

// Parses "15/8", "0.1", "1 - e", "15/8+e/2", "3e/4", "2-1/36" into an affine
// expression in e. Whitespace is ignored.
EpsAffine parse_eps_affine(const std::string& text);
Rational parse_rational(const std::string& text);

}  // namespace hc
