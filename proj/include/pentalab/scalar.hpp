/// @file scalar.hpp
/// @brief Scalar backends (exact rational, real, complex) and their trait surface.
///
/// Generic code talks to scalars only through ScalarTraits: construction from
/// integers, zero tests, equality (exact for exact backends, relative
/// tolerance otherwise), pivoting magnitude and serialization.
#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "pentalab/error.hpp"
#include "pentalab/rational.hpp"

namespace pentalab {

using Real64 = double;
using ComplexScalar = std::complex<double>;

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational from_int(long n) { return Rational(n); }
  static bool is_zero(const Rational& a) { return a.is_zero(); }
  static bool is_finite(const Rational&) { return true; }
  static bool eq(const Rational& a, const Rational& b) { return a == b; }
  static bool eq(const Rational& a, const Rational& b, double) { return a == b; }
  static double pivot_mag(const Rational& a) { return a.is_zero() ? 0.0 : 1.0; }
  static bool negligible(const Rational& a, double) { return a.is_zero(); }
  static double approx(const Rational& a) { return a.to_double(); }
  static std::string str(const Rational& a) { return a.str(); }
  static Rational parse(const std::string& s) { return Rational::from_string(s); }
};

namespace detail {
inline bool double_eq(double a, double b, double tol) {
  double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
  return std::fabs(a - b) <= tol * scale;
}
inline std::string double_str(double a) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", a);
  return buf;
}
}  // namespace detail

template <>
struct ScalarTraits<Real64> {
  static constexpr bool exact = false;
  static constexpr double default_tol = 1e-9;
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static double from_int(long n) { return double(n); }
  static bool is_zero(double a) { return a == 0.0; }
  static bool is_finite(double a) { return std::isfinite(a); }
  static bool eq(double a, double b) { return detail::double_eq(a, b, default_tol); }
  static bool eq(double a, double b, double tol) { return detail::double_eq(a, b, tol); }
  static double pivot_mag(double a) { return std::fabs(a); }
  static bool negligible(double a, double scale) {
    return std::fabs(a) <= 1e-12 * std::max(1.0, scale);
  }
  static double approx(double a) { return a; }
  static std::string str(double a) { return detail::double_str(a); }
  static double parse(const std::string& s) {
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') throw ParseError("not a real literal: '" + s + "'");
    return v;
  }
};

template <>
struct ScalarTraits<ComplexScalar> {
  static constexpr bool exact = false;
  static constexpr double default_tol = 1e-9;
  static ComplexScalar zero() { return {0.0, 0.0}; }
  static ComplexScalar one() { return {1.0, 0.0}; }
  static ComplexScalar from_int(long n) { return {double(n), 0.0}; }
  static bool is_zero(const ComplexScalar& a) { return a.real() == 0.0 && a.imag() == 0.0; }
  static bool is_finite(const ComplexScalar& a) {
    return std::isfinite(a.real()) && std::isfinite(a.imag());
  }
  static bool eq(const ComplexScalar& a, const ComplexScalar& b) { return eq(a, b, default_tol); }
  static bool eq(const ComplexScalar& a, const ComplexScalar& b, double tol) {
    double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= tol * scale;
  }
  static double pivot_mag(const ComplexScalar& a) { return std::abs(a); }
  static bool negligible(const ComplexScalar& a, double scale) {
    return std::abs(a) <= 1e-12 * std::max(1.0, scale);
  }
  static double approx(const ComplexScalar& a) { return a.real(); }
  static std::string str(const ComplexScalar& a) {
    return "(" + detail::double_str(a.real()) + "," + detail::double_str(a.imag()) + ")";
  }
  static ComplexScalar parse(const std::string&) {
    throw ParseError("complex scalars parse from {re, im} pairs, not bare strings");
  }
};

}  // namespace pentalab
