/// @file dynamics.hpp
/// @brief The discrete maps on states: the span-k map T on (x, y), its
/// cluster-side counterpart on (p, q), the auxiliary involution-like map D
/// on both sides, the composed inverse, and the span-3 corner-variable map.
#pragma once

#include "pentalab/error.hpp"
#include "pentalab/scalar.hpp"
#include "pentalab/state.hpp"

namespace pentalab {

/// x_i* = x_{i-rp-1} (x_{i+r} + y_{i+r}) / (x_{i-rp-1} + y_{i-rp-1})
/// y_i* = y_{i-rp}   (x_{i+r+1} + y_{i+r+1}) / (x_{i-rp} + y_{i-rp})
template <class S>
XYState<S> tk_step(const XYState<S>& s) {
  MapParams mp(s.k, s.n);
  std::vector<S> sig = sigmas(s);
  XYState<S> out;
  out.k = s.k;
  out.n = s.n;
  out.x.resize(std::size_t(s.n));
  out.y.resize(std::size_t(s.n));
  for (long i = 0; i < s.n; ++i) {
    std::size_t xi = cyc(i - mp.rp - 1, s.n);
    std::size_t yi = cyc(i - mp.rp, s.n);
    out.x[std::size_t(i)] = s.x[xi] * sig[cyc(i + mp.r, s.n)] / sig[xi];
    out.y[std::size_t(i)] = s.y[yi] * sig[cyc(i + mp.r + 1, s.n)] / sig[yi];
  }
  return out;
}

/// Both parity branches written out verbatim; for odd spans the stencil is
/// asymmetric and the q update reads one step to the left.
template <class S>
PQState<S> tbar_step(const PQState<S>& s) {
  MapParams mp(s.k, s.n);
  const S one = ScalarTraits<S>::one();
  for (long i = 0; i < s.n; ++i) {
    if (ScalarTraits<S>::is_zero(s.p[std::size_t(i)]) ||
        ScalarTraits<S>::is_zero(one + s.p[std::size_t(i)]))
      throw PDenominatorVanishes(i + 1);
  }
  auto p = [&](long i) -> const S& { return s.p[cyc(i, s.n)]; };
  auto q = [&](long i) -> const S& { return s.q[cyc(i, s.n)]; };
  PQState<S> out;
  out.k = s.k;
  out.n = s.n;
  out.p.resize(std::size_t(s.n));
  out.q.resize(std::size_t(s.n));
  const long r = mp.r;
  for (long i = 0; i < s.n; ++i) {
    if (s.k % 2 == 0) {
      out.q[std::size_t(i)] = one / p(i);
      out.p[std::size_t(i)] = q(i) * (one + p(i - r - 1)) * (one + p(i + r + 1)) * p(i - r) *
                              p(i + r) / ((one + p(i - r)) * (one + p(i + r)));
    } else {
      out.q[std::size_t(i)] = one / p(i - 1);
      out.p[std::size_t(i)] = q(i) * (one + p(i - r - 2)) * (one + p(i + r + 1)) * p(i - r - 1) *
                              p(i + r) / ((one + p(i - r - 1)) * (one + p(i + r)));
    }
  }
  return out;
}

/// x_i* = (y_{i-r} ... y_{i+rp-1}) / (x_{i-r} ... x_{i+rp})
/// y_i* = (y_{i-r} ... y_{i+rp})   / (x_{i-r} ... x_{i+rp+1})
template <class S>
XYState<S> dk_apply(const XYState<S>& s) {
  MapParams mp(s.k, s.n);
  for (long i = 0; i < s.n; ++i)
    if (ScalarTraits<S>::is_zero(s.x[std::size_t(i)])) throw DivisionByZero();
  XYState<S> out;
  out.k = s.k;
  out.n = s.n;
  out.x.resize(std::size_t(s.n));
  out.y.resize(std::size_t(s.n));
  for (long i = 0; i < s.n; ++i) {
    S ynum = ScalarTraits<S>::one(), xden = ScalarTraits<S>::one();
    for (long m = -mp.r; m <= mp.rp - 1; ++m) ynum = ynum * s.y[cyc(i + m, s.n)];
    for (long m = -mp.r; m <= mp.rp; ++m) xden = xden * s.x[cyc(i + m, s.n)];
    out.x[std::size_t(i)] = ynum / xden;
    out.y[std::size_t(i)] = ynum * s.y[cyc(i + mp.rp, s.n)] / (xden * s.x[cyc(i + mp.rp + 1, s.n)]);
  }
  return out;
}

/// Even span: p_i -> 1/q_i, q_i -> 1/p_i. Odd span: p_i -> 1/q_{i+1}, q_i -> 1/p_i.
template <class S>
PQState<S> dbar_apply(const PQState<S>& s) {
  MapParams mp(s.k, s.n);
  (void)mp;
  const S one = ScalarTraits<S>::one();
  PQState<S> out;
  out.k = s.k;
  out.n = s.n;
  out.p.resize(std::size_t(s.n));
  out.q.resize(std::size_t(s.n));
  for (long i = 0; i < s.n; ++i) {
    if (ScalarTraits<S>::is_zero(s.p[std::size_t(i)]) ||
        ScalarTraits<S>::is_zero(s.q[std::size_t(i)]))
      throw DivisionByZero();
    out.q[std::size_t(i)] = one / s.p[std::size_t(i)];
    if (s.k % 2 == 0)
      out.p[std::size_t(i)] = one / s.q[std::size_t(i)];
    else
      out.p[std::size_t(i)] = one / s.q[cyc(i + 1, s.n)];
  }
  return out;
}

/// T^{-1} = D o T o D.
template <class S>
XYState<S> tk_inverse(const XYState<S>& s) {
  return dk_apply(tk_step(dk_apply(s)));
}

/// Span-3 map in corner variables:
/// X_i* = X_i (1 - X_{i-1}Y_{i-1}) / (1 - X_{i+1}Y_{i+1})
/// Y_i* = Y_{i+1} (1 - X_{i+2}Y_{i+2}) / (1 - X_i Y_i)
template <class S>
CornerState<S> pentagram_corner_step(const CornerState<S>& s) {
  const S one = ScalarTraits<S>::one();
  std::vector<S> d;
  d.reserve(std::size_t(s.n));
  for (long i = 0; i < s.n; ++i) {
    S v = one - s.X[std::size_t(i)] * s.Y[std::size_t(i)];
    if (ScalarTraits<S>::is_zero(v)) throw CornerDenominatorVanishes(i + 1);
    d.push_back(v);
  }
  CornerState<S> out;
  out.n = s.n;
  out.X.resize(std::size_t(s.n));
  out.Y.resize(std::size_t(s.n));
  for (long i = 0; i < s.n; ++i) {
    out.X[std::size_t(i)] = s.X[std::size_t(i)] * d[cyc(i - 1, s.n)] / d[cyc(i + 1, s.n)];
    out.Y[std::size_t(i)] = s.Y[cyc(i + 1, s.n)] * d[cyc(i + 2, s.n)] / d[std::size_t(i)];
  }
  return out;
}

}  // namespace pentalab
