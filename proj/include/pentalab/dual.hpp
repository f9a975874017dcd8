/// @file dual.hpp
/// @brief Forward-mode dual numbers with a dynamic tangent width, plus Jacobians.
///
/// A Dual with an empty tangent acts as a constant of any width; binary ops
/// otherwise require matching widths. Division throws PoleEncountered when the
/// divisor's primal part vanishes (zero-primal duals are zero divisors).
#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "pentalab/scalar.hpp"

namespace pentalab {

template <class S>
class Dual {
 public:
  Dual() : p_(ScalarTraits<S>::zero()) {}
  Dual(const S& primal) : p_(primal) {}
  Dual(S primal, std::vector<S> tangent) : p_(std::move(primal)), t_(std::move(tangent)) {}

  /// Constant `primal` plus the unit tangent in direction `slot` of `width`.
  static Dual seed(const S& primal, std::size_t width, std::size_t slot) {
    std::vector<S> t(width, ScalarTraits<S>::zero());
    t.at(slot) = ScalarTraits<S>::one();
    return Dual(primal, std::move(t));
  }

  const S& primal() const { return p_; }
  const std::vector<S>& tangent() const { return t_; }
  std::size_t width() const { return t_.size(); }

  /// Tangent component, treating the empty tangent as all zeros.
  S d(std::size_t i) const { return t_.empty() ? ScalarTraits<S>::zero() : t_[i]; }

  Dual operator-() const {
    Dual r(-p_);
    r.t_.reserve(t_.size());
    for (const S& v : t_) r.t_.push_back(-v);
    return r;
  }

  friend Dual operator+(const Dual& a, const Dual& b) {
    Dual r(a.p_ + b.p_);
    r.t_ = combine(a.t_, b.t_, [](const S& x, const S& y) { return x + y; });
    return r;
  }
  friend Dual operator-(const Dual& a, const Dual& b) {
    Dual r(a.p_ - b.p_);
    r.t_ = combine(a.t_, b.t_, [](const S& x, const S& y) { return x - y; });
    return r;
  }
  friend Dual operator*(const Dual& a, const Dual& b) {
    Dual r(a.p_ * b.p_);
    r.t_ = combine(a.t_, b.t_,
                   [&](const S& da, const S& db) { return da * b.p_ + a.p_ * db; });
    return r;
  }
  friend Dual operator/(const Dual& a, const Dual& b) {
    if (ScalarTraits<S>::is_zero(b.p_)) throw PoleEncountered();
    S q = a.p_ / b.p_;
    Dual r(q);
    r.t_ = combine(a.t_, b.t_,
                   [&](const S& da, const S& db) { return (da - q * db) / b.p_; });
    return r;
  }

  Dual& operator+=(const Dual& o) { return *this = *this + o; }
  Dual& operator-=(const Dual& o) { return *this = *this - o; }
  Dual& operator*=(const Dual& o) { return *this = *this * o; }
  Dual& operator/=(const Dual& o) { return *this = *this / o; }

  friend bool operator==(const Dual& a, const Dual& b) {
    if (!(a.p_ == b.p_)) return false;
    std::size_t w = std::max(a.t_.size(), b.t_.size());
    for (std::size_t i = 0; i < w; ++i)
      if (!(a.d(i) == b.d(i))) return false;
    return true;
  }
  friend bool operator!=(const Dual& a, const Dual& b) { return !(a == b); }

 private:
  template <class F>
  static std::vector<S> combine(const std::vector<S>& a, const std::vector<S>& b, F&& f) {
    if (a.empty() && b.empty()) return {};
    if (!a.empty() && !b.empty() && a.size() != b.size())
      throw std::logic_error("dual tangent width mismatch");
    std::size_t w = std::max(a.size(), b.size());
    const S z = ScalarTraits<S>::zero();
    std::vector<S> out;
    out.reserve(w);
    for (std::size_t i = 0; i < w; ++i)
      out.push_back(f(a.empty() ? z : a[i], b.empty() ? z : b[i]));
    return out;
  }

  S p_;
  std::vector<S> t_;
};

template <class S>
struct ScalarTraits<Dual<S>> {
  using Base = ScalarTraits<S>;
  static constexpr bool exact = Base::exact;
  static Dual<S> zero() { return Dual<S>(Base::zero()); }
  static Dual<S> one() { return Dual<S>(Base::one()); }
  static Dual<S> from_int(long n) { return Dual<S>(Base::from_int(n)); }
  // Zero/pivot tests look at the primal part only: that is what decides
  // invertibility of a dual number.
  static bool is_zero(const Dual<S>& a) { return Base::is_zero(a.primal()); }
  static bool is_finite(const Dual<S>& a) {
    if (!Base::is_finite(a.primal())) return false;
    for (const S& t : a.tangent())
      if (!Base::is_finite(t)) return false;
    return true;
  }
  static bool eq(const Dual<S>& a, const Dual<S>& b) {
    if (!Base::eq(a.primal(), b.primal())) return false;
    std::size_t w = std::max(a.width(), b.width());
    for (std::size_t i = 0; i < w; ++i)
      if (!Base::eq(a.d(i), b.d(i))) return false;
    return true;
  }
  static double pivot_mag(const Dual<S>& a) { return Base::pivot_mag(a.primal()); }
  static bool negligible(const Dual<S>& a, double scale) {
    return Base::negligible(a.primal(), scale);
  }
  static double approx(const Dual<S>& a) { return Base::approx(a.primal()); }
  static std::string str(const Dual<S>& a) { return Base::str(a.primal()); }
  static Dual<S> parse(const std::string& s) { return Dual<S>(Base::parse(s)); }
};

/// Exact Jacobian of f : S^n -> S^m at `at`, one dual sweep with n tangent slots.
template <class S, class F>
std::vector<std::vector<S>> jacobian(F&& f, const std::vector<S>& at) {
  const std::size_t n = at.size();
  std::vector<Dual<S>> in;
  in.reserve(n);
  for (std::size_t i = 0; i < n; ++i) in.push_back(Dual<S>::seed(at[i], n, i));
  std::vector<Dual<S>> out = f(in);
  std::vector<std::vector<S>> J(out.size(), std::vector<S>());
  for (std::size_t r = 0; r < out.size(); ++r) {
    J[r].reserve(n);
    for (std::size_t c = 0; c < n; ++c) J[r].push_back(out[r].d(c));
  }
  return J;
}

}  // namespace pentalab
