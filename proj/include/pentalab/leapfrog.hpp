/// @file leapfrog.hpp
/// @brief The span-2 geometry: pairs of twisted point sequences on the
/// projective line, the coordinate map phi onto (x, y) with k = 2, the
/// leapfrog step, the tangent-circle construction over the complex numbers,
/// the invariant 2-form, and the cross-ratio lattice extension.
///
/// Projective-line points are a scalar plus a reserved infinity flag; all
/// formulas act through homogeneous pairs [v : 1] / [1 : 0], so no operand
/// position is ever special-cased on infinity. Degeneracy errors report the
/// 0-based storage index of the offending site.
#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pentalab/error.hpp"
#include "pentalab/linalg.hpp"
#include "pentalab/scalar.hpp"
#include "pentalab/state.hpp"

namespace pentalab {

/// Point of the projective line: the scalar `v`, or the point at infinity.
template <class S>
struct ProjPoint {
  S v = ScalarTraits<S>::zero();
  bool inf = false;

  friend bool operator==(const ProjPoint& a, const ProjPoint& b) {
    if (a.inf || b.inf) return a.inf && b.inf;
    return a.v == b.v;
  }
  friend bool operator!=(const ProjPoint& a, const ProjPoint& b) { return !(a == b); }
};

template <class S>
ProjPoint<S> finite_point(const S& v) {
  return {v, false};
}

template <class S>
ProjPoint<S> point_at_infinity() {
  return {ScalarTraits<S>::zero(), true};
}

/// Pair of twisted n-point sequences on the projective line with a shared
/// 2x2 monodromy: index i + n is the Moebius image of index i.
template <class T>
struct SPairState {
  long n = 0;
  std::vector<ProjPoint<T>> Sminus, S;
  Mat<T> monodromy;
};

/// Tangent vector to SPairState at a state with all points finite.
template <class T>
struct SPairTangent {
  std::vector<T> dSminus, dS;
};

/// Rectangular array of lattice values (undefined cells are empty) together
/// with the cross-ratio constant of the square equation.
template <class S>
struct LatticeField {
  long rows = 0, cols = 0;
  std::vector<std::vector<std::optional<S>>> z;
  S q = ScalarTraits<S>::zero();
};

namespace detail {

template <class S>
std::array<S, 2> hom(const ProjPoint<S>& p) {
  if (p.inf) return {ScalarTraits<S>::one(), ScalarTraits<S>::zero()};
  return {p.v, ScalarTraits<S>::one()};
}

template <class S>
ProjPoint<S> dehom(const S& num, const S& den) {
  if (ScalarTraits<S>::is_zero(den)) return point_at_infinity<S>();
  return finite_point(num / den);
}

/// The projective surrogate of the difference a - b: vanishes exactly when
/// the points coincide.
template <class S>
S det2(const std::array<S, 2>& a, const std::array<S, 2>& b) {
  return a[0] * b[1] - b[0] * a[1];
}

}  // namespace detail

/// Moebius action of an invertible 2x2 matrix on a projective-line point.
template <class S>
ProjPoint<S> mobius(const Mat<S>& m, const ProjPoint<S>& p) {
  const auto h = detail::hom(p);
  return detail::dehom(m[0][0] * h[0] + m[0][1] * h[1], m[1][0] * h[0] + m[1][1] * h[1]);
}

namespace detail {

/// Twisted extension of a stored sequence: index n + j maps through the
/// monodromy, index -1 through its inverse.
template <class S>
std::vector<ProjPoint<S>> extend_twisted(const std::vector<ProjPoint<S>>& seq, const Mat<S>& mono,
                                         long extra) {
  std::vector<ProjPoint<S>> out = seq;
  const long n = long(seq.size());
  for (long j = 0; j < extra; ++j) out.push_back(mobius(mono, out[std::size_t(j)]));
  return out;
}

}  // namespace detail

/// Cross-ratio [a,b,c,d] = (a-b)(c-d) / ((a-d)(b-c)).
template <class S>
S cross_ratio(const S& a, const S& b, const S& c, const S& d) {
  const S ad = a - d, bc = b - c;
  if (ScalarTraits<S>::is_zero(ad) || ScalarTraits<S>::is_zero(bc)) throw DegenerateQuadruple();
  return (a - b) * (c - d) / (ad * bc);
}

/// Coordinates of the pair of sequences, with span k = 2: each x_i and y_i
/// is a ratio of point differences in which every point appears equally
/// often above and below, evaluated projectively so infinite points need no
/// special chart.
template <class S>
XYState<S> phi(const SPairState<S>& s) {
  const long n = s.n;
  if (n < 1 || long(s.S.size()) != n || long(s.Sminus.size()) != n)
    throw Error(ErrorKind::invalid_input, "state needs n points in each sequence");
  auto Se = detail::extend_twisted(s.S, s.monodromy, 2);
  auto Me = detail::extend_twisted(s.Sminus, s.monodromy, 2);
  XYState<S> out;
  out.k = 2;
  out.n = n;
  out.x.reserve(std::size_t(n));
  out.y.reserve(std::size_t(n));
  for (long i = 0; i < n; ++i) {
    const auto s1 = detail::hom(Se[std::size_t(i + 1)]);
    const auto s2 = detail::hom(Se[std::size_t(i + 2)]);
    const auto m0 = detail::hom(Me[std::size_t(i)]);
    const auto m1 = detail::hom(Me[std::size_t(i + 1)]);
    const auto m2 = detail::hom(Me[std::size_t(i + 2)]);
    const S d_m0s1 = detail::det2(m0, s1);
    const S d_m1m2 = detail::det2(m1, m2);
    const S d_m1s2 = detail::det2(m1, s2);
    if (ScalarTraits<S>::is_zero(d_m0s1) || ScalarTraits<S>::is_zero(d_m1m2) ||
        ScalarTraits<S>::is_zero(d_m1s2))
      throw DegenerateConfiguration(i);
    out.x.push_back(detail::det2(s1, m2) * detail::det2(m0, m1) / (d_m0s1 * d_m1m2));
    out.y.push_back(detail::det2(m1, s1) * detail::det2(m2, s2) * detail::det2(m0, m1) /
                    (d_m1s2 * d_m0s1 * d_m1m2));
  }
  return out;
}

namespace detail {

/// One local leapfrog solve: the unique point P with
///   (P - a)(s - m)(s - p) / ((P - s)(a - s)(m - p)) = -1,
/// where s is the fixed point, a and p the neighbors and m the old point.
/// Written homogeneously the equation is linear in P, so the solution is a
/// coefficient combination of a and s; infinite output is a valid point.
template <class S>
ProjPoint<S> leapfrog_point(const ProjPoint<S>& prev, const ProjPoint<S>& minus,
                            const ProjPoint<S>& fixed, const ProjPoint<S>& next, long i) {
  const auto sp = hom(prev), sm = hom(minus), si = hom(fixed), a = hom(next);
  const S d_asi = det2(a, si), d_spsi = det2(sp, si), d_smsi = det2(sm, si);
  if (ScalarTraits<S>::is_zero(d_asi) || ScalarTraits<S>::is_zero(d_spsi) ||
      ScalarTraits<S>::is_zero(d_smsi))
    throw DegenerateConfiguration(i);
  const S alpha = (-d_smsi) * (-d_spsi);
  const S beta = d_asi * det2(sm, sp);
  return dehom(alpha * a[0] + beta * si[0], alpha * a[1] + beta * si[1]);
}

}  // namespace detail

/// The leapfrog step (old, current) -> (current, new): the new point is the
/// image of the old one under the unique projective map fixing the current
/// point and swapping its neighbors.
template <class S>
SPairState<S> f2_step(const SPairState<S>& s) {
  const long n = s.n;
  if (n < 1 || long(s.S.size()) != n || long(s.Sminus.size()) != n)
    throw Error(ErrorKind::invalid_input, "state needs n points in each sequence");
  const Mat<S> minv = inverse(s.monodromy);
  auto Se = detail::extend_twisted(s.S, s.monodromy, 1);
  SPairState<S> out;
  out.n = n;
  out.monodromy = s.monodromy;
  out.Sminus = s.S;
  out.S.reserve(std::size_t(n));
  for (long i = 0; i < n; ++i) {
    const ProjPoint<S> prev =
        i > 0 ? s.S[std::size_t(i - 1)] : mobius(minv, s.S[std::size_t(n - 1)]);
    out.S.push_back(detail::leapfrog_point(prev, s.Sminus[std::size_t(i)], s.S[std::size_t(i)],
                                           Se[std::size_t(i + 1)], i));
  }
  return out;
}

/// The tangent-circle step over the complex numbers. Each new point is built
/// in the chart w = 1/(z - S_i), where circles through S_i are straight
/// lines and tangency at S_i is parallelism; configurations whose chart
/// lines coincide (all four points on one generalized circle, e.g. the real
/// line) degenerate, and the projective leapfrog solve is their limit.
inline SPairState<ComplexScalar> h2_step(const SPairState<ComplexScalar>& s) {
  using C = ComplexScalar;
  const long n = s.n;
  if (n < 1 || long(s.S.size()) != n || long(s.Sminus.size()) != n)
    throw Error(ErrorKind::invalid_input, "state needs n points in each sequence");
  const Mat<C> minv = inverse(s.monodromy);
  auto Se = detail::extend_twisted(s.S, s.monodromy, 1);
  SPairState<C> out;
  out.n = n;
  out.monodromy = s.monodromy;
  out.Sminus = s.S;
  out.S.reserve(std::size_t(n));
  for (long i = 0; i < n; ++i) {
    ProjPoint<C> pts[4] = {
        i > 0 ? s.S[std::size_t(i - 1)] : mobius(minv, s.S[std::size_t(n - 1)]),
        s.Sminus[std::size_t(i)], s.S[std::size_t(i)], Se[std::size_t(i + 1)]};
    // shift any point at infinity into view with z -> 1/(z - c)
    bool shifted = false;
    C shift_c(0.0);
    for (const auto& p : pts) shifted = shifted || p.inf;
    if (shifted) {
      for (int cand = 0;; ++cand) {
        shift_c = C(double(cand), 0.0);
        bool clash = false;
        for (const auto& p : pts) clash = clash || (!p.inf && p.v == shift_c);
        if (!clash) break;
      }
      for (auto& p : pts) p = p.inf ? finite_point(C(0.0)) : finite_point(C(1.0) / (p.v - shift_c));
    }
    const C zp = pts[0].v, zm = pts[1].v, zi = pts[2].v, zq = pts[3].v;
    if (zp == zi || zm == zi || zq == zi) throw DegenerateConfiguration(i);
    const C wp = C(1.0) / (zp - zi);
    const C wm = C(1.0) / (zm - zi);
    const C wq = C(1.0) / (zq - zi);
    const C d1 = wm - wp;  // line through old and previous points
    const C d3 = wm - wq;  // line through old and next points
    auto cross2 = [](const C& a, const C& b) { return std::conj(a) * b; };
    const double area = cross2(d1, d3).imag();
    ProjPoint<C> plus;
    const double scale = std::abs(d1) * std::abs(d3);
    if (std::abs(area) <= 1e-12 * std::max(1.0, scale)) {
      // all four points concyclic in the chart lines sense: fall back to the
      // projective solve, the continuous limit of the construction
      plus = detail::leapfrog_point(pts[0], pts[1], pts[2], pts[3], i);
    } else {
      const double t = cross2(wp - wq, d3).imag() / area;
      const C x = wq + t * d1;  // intersection of the two parallel-shifted lines
      plus = (x == C(0.0)) ? point_at_infinity<C>() : finite_point(zi + C(1.0) / x);
    }
    if (shifted)
      plus = plus.inf ? finite_point(shift_c)
                      : (plus.v == C(0.0) ? point_at_infinity<C>()
                                          : finite_point(shift_c + C(1.0) / plus.v));
    out.S.push_back(plus);
  }
  return out;
}

/// The 2-form sum of d(old) wedge d(current) / (old - current)^2, evaluated
/// on two tangent vectors; all points must be finite and each pair distinct.
template <class S>
S omega_eval(const SPairState<S>& s, const SPairTangent<S>& u, const SPairTangent<S>& v) {
  const long n = s.n;
  if (long(u.dSminus.size()) != n || long(u.dS.size()) != n || long(v.dSminus.size()) != n ||
      long(v.dS.size()) != n)
    throw Error(ErrorKind::invalid_input, "tangent vectors need n components per sequence");
  S acc = ScalarTraits<S>::zero();
  for (long i = 0; i < n; ++i) {
    const auto& a = s.Sminus[std::size_t(i)];
    const auto& b = s.S[std::size_t(i)];
    if (a.inf || b.inf) throw DegenerateConfiguration(i);
    const S d = a.v - b.v;
    if (ScalarTraits<S>::is_zero(d)) throw DegenerateConfiguration(i);
    acc = acc + (u.dSminus[std::size_t(i)] * v.dS[std::size_t(i)] -
                 v.dSminus[std::size_t(i)] * u.dS[std::size_t(i)]) /
                    (d * d);
  }
  return acc;
}

namespace detail {

/// The square bracket of the lattice relation: the diagonal-pairing
/// cross-ratio (a - c)(b - d) / ((a - d)(b - c)). It exceeds the edge-pairing
/// bracket of cross_ratio by exactly 1, so constant-bracket equations agree
/// up to relabeling q; with this pairing the degenerate values are exactly
/// 0 and 1, and the harmonic value -1 is admissible.
template <class S>
S square_bracket(const S& a, const S& b, const S& c, const S& d) {
  const S den = (a - d) * (b - c);
  if (ScalarTraits<S>::is_zero(den)) throw DegenerateQuadruple();
  return (a - c) * (b - d) / den;
}

/// Fourth argument of square_bracket(a, b, c, d) = q given the first three.
template <class S>
S square_solve_last(const S& a, const S& b, const S& c, const S& q) {
  const S den = q * (b - c) - (a - c);
  if (ScalarTraits<S>::is_zero(den)) throw DegenerateQuadruple();
  return (q * a * (b - c) - (a - c) * b) / den;
}

/// One propagation square: one corner of the unit square at (m, n) may be
/// missing; fill it so square_bracket(z00, z10, z11, z01) = q. Rotating the
/// arguments by one step replaces q by q / (q - 1), which moves any corner
/// into the solved-for position.
template <class S>
void fill_square(LatticeField<S>& f, long m, long n) {
  auto& z00 = f.z[std::size_t(m)][std::size_t(n)];
  auto& z10 = f.z[std::size_t(m + 1)][std::size_t(n)];
  auto& z11 = f.z[std::size_t(m + 1)][std::size_t(n + 1)];
  auto& z01 = f.z[std::size_t(m)][std::size_t(n + 1)];
  const S qrot = f.q / (f.q - ScalarTraits<S>::one());
  if (!z01 && z00 && z10 && z11)
    z01 = square_solve_last(*z00, *z10, *z11, f.q);
  else if (!z10 && z00 && z11 && z01)
    z10 = square_solve_last(*z11, *z01, *z00, f.q);
  else if (!z11 && z00 && z10 && z01)
    z11 = square_solve_last(*z01, *z00, *z10, qrot);
  else if (!z00 && z10 && z11 && z01)
    z00 = square_solve_last(*z10, *z11, *z01, qrot);
}

}  // namespace detail

/// Extends an even-sublattice solution of the square-lattice relation
///   1/(z - z_ne) + 1/(z - z_sw) = 1/(z - z_se) + 1/(z - z_nw)
/// to the full lattice with constant cross-ratio q on every unit square,
/// seeded by the single extra value z01 at position (0, 1); the extension is
/// propagated column pair by column pair, consuming z01 first. The odd
/// sublattice of the result then satisfies the same relation.
template <class S>
LatticeField<S> crossratio_extend(const LatticeField<S>& field, const S& z01) {
  const long rows = field.rows, cols = field.cols;
  if (rows < 2 || cols < 2 || long(field.z.size()) != rows)
    throw Error(ErrorKind::invalid_input, "lattice needs at least 2 x 2 cells");
  for (const auto& row : field.z)
    if (long(row.size()) != cols) throw Error(ErrorKind::invalid_input, "ragged lattice rows");
  if (ScalarTraits<S>::is_zero(field.q) ||
      ScalarTraits<S>::eq(field.q, ScalarTraits<S>::one()))
    throw Error(ErrorKind::invalid_input, "cross-ratio constant must differ from 0 and 1");
  for (long m = 0; m < rows; ++m)
    for (long n = 0; n < cols; ++n) {
      const bool even = (m + n) % 2 == 0;
      if (even && !field.z[std::size_t(m)][std::size_t(n)])
        throw Error(ErrorKind::invalid_input, "even sublattice must be fully seeded");
      if (!even && field.z[std::size_t(m)][std::size_t(n)])
        throw Error(ErrorKind::invalid_input, "odd sublattice must start empty");
    }
  // the seed must already solve the diagonal-stencil relation
  for (long m = 1; m + 1 < rows; ++m)
    for (long n = 1; n + 1 < cols; ++n) {
      if ((m + n) % 2 != 0) continue;
      const S z = *field.z[std::size_t(m)][std::size_t(n)];
      const S ne = *field.z[std::size_t(m + 1)][std::size_t(n + 1)];
      const S sw = *field.z[std::size_t(m - 1)][std::size_t(n - 1)];
      const S se = *field.z[std::size_t(m + 1)][std::size_t(n - 1)];
      const S nw = *field.z[std::size_t(m - 1)][std::size_t(n + 1)];
      const S one = ScalarTraits<S>::one();
      if (ScalarTraits<S>::is_zero(z - ne) || ScalarTraits<S>::is_zero(z - sw) ||
          ScalarTraits<S>::is_zero(z - se) || ScalarTraits<S>::is_zero(z - nw))
        throw InconsistentSeed();
      if (!ScalarTraits<S>::eq(one / (z - ne) + one / (z - sw),
                               one / (z - se) + one / (z - nw)))
        throw InconsistentSeed();
    }
  LatticeField<S> out = field;
  out.z[0][1] = z01;
  for (long n = 0; n + 1 < cols; ++n)
    for (long m = 0; m + 1 < rows; ++m) detail::fill_square(out, m, n);
  return out;
}

namespace detail {

inline std::pair<double, double> plane_parts(const ComplexScalar& v) {
  return {v.real(), v.imag()};
}
inline std::pair<double, double> plane_parts(Real64 v) { return {v, 0.0}; }
inline std::pair<double, double> plane_parts(const Rational& v) { return {v.to_double(), 0.0}; }

}  // namespace detail

/// Serializes the filled cells of a lattice field as CSV with header
/// "m,n,re,im", row-major, skipping empty cells. Real and rational values
/// get im = 0. Output is byte-stable for a given field.
template <class S>
std::string lattice_csv(const LatticeField<S>& field) {
  std::string out = "m,n,re,im\n";
  for (long m = 0; m < field.rows; ++m)
    for (long n = 0; n < field.cols; ++n) {
      const auto& cell = field.z[std::size_t(m)][std::size_t(n)];
      if (!cell) continue;
      const auto [re, im] = detail::plane_parts(*cell);
      out += std::to_string(m) + "," + std::to_string(n) + "," + detail::double_str(re) + "," +
             detail::double_str(im) + "\n";
    }
  return out;
}

}  // namespace pentalab
