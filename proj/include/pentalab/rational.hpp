/// @file rational.hpp
/// @brief Exact arbitrary-precision rationals (GMP-backed) with a bit-size guard.
#pragma once

#include <gmpxx.h>

#include <atomic>
#include <string>
#include <utility>

#include "pentalab/error.hpp"

namespace pentalab {

namespace detail {
inline std::atomic<std::size_t>& rational_bit_cap() {
  // Orbit iteration grows numerators fast; the cap turns a runaway
  // computation into a typed error instead of an apparent hang.
  static std::atomic<std::size_t> cap{1000000};
  return cap;
}
}  // namespace detail

/// Canonical fraction: denominator > 0, gcd(|num|, den) = 1, arithmetic exact.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(int n) : v_(n) {}
  Rational(long n) : v_((signed long)n) {}
  Rational(long num, long den) {
    if (den == 0) throw DivisionByZero();
    v_ = mpq_class((signed long)num, (signed long)den);
    v_.canonicalize();
  }
  explicit Rational(mpq_class q) : v_(std::move(q)) {
    v_.canonicalize();
    guard();
  }

  /// Accepts "p/q" or "p" in base 10.
  static Rational from_string(const std::string& s) {
    mpq_class q;
    if (s.empty() || mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
      throw ParseError("not a rational literal: '" + s + "'");
    if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
    q.canonicalize();
    return Rational(std::move(q));
  }

  static std::size_t max_bits() { return detail::rational_bit_cap().load(); }
  static void set_max_bits(std::size_t bits) { detail::rational_bit_cap().store(bits); }

  const mpq_class& raw() const { return v_; }
  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }
  double to_double() const { return v_.get_d(); }

  std::string str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  Rational operator-() const {
    Rational r;
    r.v_ = -v_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    Rational r;
    r.v_ = a.v_ + b.v_;
    r.guard();
    return r;
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    Rational r;
    r.v_ = a.v_ - b.v_;
    r.guard();
    return r;
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    Rational r;
    r.v_ = a.v_ * b.v_;
    r.guard();
    return r;
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw DivisionByZero();
    Rational r;
    r.v_ = a.v_ / b.v_;
    r.guard();
    return r;
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

 private:
  void guard() const {
    const std::size_t cap = max_bits();
    if (mpz_sizeinbase(v_.get_num().get_mpz_t(), 2) > cap ||
        mpz_sizeinbase(v_.get_den().get_mpz_t(), 2) > cap)
      throw ResourceLimitExceeded("rational exceeds " + std::to_string(cap) + " bits");
  }
  mpq_class v_;
};

inline Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }

}  // namespace pentalab
