/// @file acceptance.cpp
/// @brief End-to-end acceptance gate. Twelve structural criteria covering
/// the whole library are checked at desk scale, exactly on the rational
/// backend unless a tolerance is stated, and each reports a single
/// [PASS]/[FAIL] line. The process exits nonzero if any criterion fails.

#include <cmath>
#include <complex>
#include <cstdio>
#include <exception>
#include <string>
#include <utility>
#include <vector>

#include "pentalab/dual.hpp"
#include "pentalab/dynamics.hpp"
#include "pentalab/error.hpp"
#include "pentalab/lax.hpp"
#include "pentalab/leapfrog.hpp"
#include "pentalab/linalg.hpp"
#include "pentalab/poisson.hpp"
#include "pentalab/polygon.hpp"
#include "pentalab/random.hpp"
#include "pentalab/rational.hpp"
#include "pentalab/scalar.hpp"
#include "pentalab/state.hpp"

using namespace pentalab;
using R = Rational;
using C = ComplexScalar;

namespace {

// ------------------------------------------------------------ utilities --

bool generic_xy(const XYState<R>& s) {
  for (long i = 0; i < s.n; ++i) {
    if (s.x[std::size_t(i)].is_zero() || s.y[std::size_t(i)].is_zero()) return false;
    if ((s.x[std::size_t(i)] + s.y[std::size_t(i)]).is_zero()) return false;
  }
  return true;
}

// Retries `body` through genericity failures so random sampling can never
// fail a criterion spuriously.
template <class Body>
bool generic_trial(Body&& body) {
  for (int t = 0; t < 200; ++t) {
    try {
      return body();
    } catch (const Error& e) {
      if (e.kind != ErrorKind::genericity) throw;
    }
  }
  throw Error(ErrorKind::genericity, "no generic sample found after 200 attempts");
}

std::vector<R> concat_xy(const XYState<R>& s) {
  std::vector<R> v(s.x);
  v.insert(v.end(), s.y.begin(), s.y.end());
  return v;
}

std::vector<R> concat_pq(const PQState<R>& s) {
  std::vector<R> v(s.p);
  v.insert(v.end(), s.q.begin(), s.q.end());
  return v;
}

template <class D>
std::vector<D> tk_flat(long k, long n, const std::vector<D>& v) {
  XYState<D> s;
  s.k = k;
  s.n = n;
  s.x.assign(v.begin(), v.begin() + n);
  s.y.assign(v.begin() + n, v.end());
  XYState<D> t = tk_step(s);
  std::vector<D> out(t.x);
  out.insert(out.end(), t.y.begin(), t.y.end());
  return out;
}

template <class D>
std::vector<D> tbar_flat(long k, long n, const std::vector<D>& v) {
  PQState<D> s;
  s.k = k;
  s.n = n;
  s.p.assign(v.begin(), v.begin() + n);
  s.q.assign(v.begin() + n, v.end());
  PQState<D> t = tbar_step(s);
  std::vector<D> out(t.p);
  out.insert(out.end(), t.q.begin(), t.q.end());
  return out;
}

XYState<R> shifted(const XYState<R>& s, long by) {
  XYState<R> out = s;
  for (long i = 0; i < s.n; ++i) {
    out.x[std::size_t(i)] = s.x[cyc(i + by, s.n)];
    out.y[std::size_t(i)] = s.y[cyc(i + by, s.n)];
  }
  return out;
}

XYState<R> negated(const XYState<R>& s) {
  XYState<R> out = s;
  for (long i = 0; i < s.n; ++i) {
    out.x[std::size_t(i)] = -s.x[std::size_t(i)];
    out.y[std::size_t(i)] = -s.y[std::size_t(i)];
  }
  return out;
}

std::vector<Vec<R>> identity_seed(long k) {
  std::vector<Vec<R>> seed;
  for (long j = 0; j < k; ++j) {
    Vec<R> e(std::size_t(k), R(0));
    e[std::size_t(j)] = R(1);
    seed.push_back(std::move(e));
  }
  return seed;
}

std::vector<Vec<R>> rational_seed(long cnt, long dim, Rng& rng) {
  while (true) {
    std::vector<Vec<R>> v;
    for (long i = 0; i < cnt; ++i) {
      Vec<R> w;
      for (long e = 0; e < dim; ++e) w.push_back(random_rational(rng));
      v.push_back(std::move(w));
    }
    Mat<R> m{std::size_t(cnt), std::size_t(dim)};
    for (long i = 0; i < cnt; ++i)
      for (long e = 0; e < dim; ++e) m[std::size_t(i)][std::size_t(e)] = v[std::size_t(i)][std::size_t(e)];
    if (long(rank(m)) == std::min(cnt, dim)) return v;
  }
}

template <class S>
Mat<S> identity2() {
  Mat<S> m{2, 2};
  m[0][0] = m[1][1] = ScalarTraits<S>::one();
  m[0][1] = m[1][0] = ScalarTraits<S>::zero();
  return m;
}

template <class S>
Mat<S> random_mono(Rng& rng) {
  while (true) {
    Mat<S> m{2, 2};
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) m[r][c] = random_scalar<S>(rng);
    if (!ScalarTraits<S>::is_zero(m[0][0] * m[1][1] - m[0][1] * m[1][0])) return m;
  }
}

template <class S>
SPairState<S> random_spair(long n, Rng& rng, bool twisted) {
  SPairState<S> s;
  s.n = n;
  s.monodromy = twisted ? random_mono<S>(rng) : identity2<S>();
  for (long i = 0; i < n; ++i) {
    s.Sminus.push_back(finite_point(random_scalar<S>(rng)));
    s.S.push_back(finite_point(random_scalar<S>(rng)));
  }
  return s;
}

template <class S>
SPairState<S> random_good_spair(long n, Rng& rng, bool twisted) {
  while (true) {
    auto s = random_spair<S>(n, rng, twisted);
    try {
      phi(s);
      auto s2 = f2_step(s);
      phi(s2);
      f2_step(s2);
      return s;
    } catch (const Error& e) {
      if (e.kind != ErrorKind::genericity) throw;
    }
  }
}

// Shared parameter grids.
std::vector<std::pair<long, long>> full_grid() {
  std::vector<std::pair<long, long>> grid;
  for (long k = 2; k <= 6; ++k)
    for (long n = 2 * k - 1; n <= 13; ++n) grid.push_back({k, n});
  return grid;
}

const std::vector<std::pair<long, long>> kDeskGrid = {{2, 4}, {3, 5}, {3, 7}, {4, 8}, {5, 11}};

// ------------------------------------------------------------- criteria --

// 1. The characteristic polynomial of the monodromy is preserved by the
//    step map, coefficientwise and exactly, across the full grid.
bool crit_integral_invariance() {
  Rng rng(710001);
  for (auto [k, n] : full_grid())
    for (int t = 0; t < 20; ++t) {
      const bool ok = generic_trial([&] {
        auto s = random_xy_state_where<R>(k, n, rng, generic_xy);
        return char_poly(tk_step(s)) == char_poly(s);
      });
      if (!ok) {
        std::fprintf(stderr, "  invariance broken at k=%ld n=%ld\n", k, n);
        return false;
      }
    }
  return true;
}

// 2. All pairs of spectral coefficients Poisson-commute.
bool crit_involutivity() {
  Rng rng(710002);
  for (auto [k, n] : kDeskGrid)
    for (int t = 0; t < 10; ++t) {
      const bool ok = generic_trial([&] {
        auto s = random_xy_state_where<R>(k, n, rng, generic_xy);
        return integrals_in_involution(s);
      });
      if (!ok) {
        std::fprintf(stderr, "  involution broken at k=%ld n=%ld\n", k, n);
        return false;
      }
    }
  return true;
}

// 3. Both step maps push their bracket tensor forward onto itself.
bool crit_bracket_invariance() {
  Rng rng(710003);
  for (auto [k, n] : kDeskGrid) {
    const PoissonTensor tp = pq_tensor(build_quiver(k, n));
    const PoissonTensor tx = xy_tensor(MapParams(k, n));
    auto mx = [k = k, n = n](const auto& v) { return tk_flat(k, n, v); };
    auto mp = [k = k, n = n](const auto& v) { return tbar_flat(k, n, v); };
    for (int t = 0; t < 10; ++t) {
      const bool ok = generic_trial([&] {
        auto s = random_xy_state_where<R>(k, n, rng, generic_xy);
        PQState<R> pq = xy_to_pq(s);
        tk_step(s);
        tbar_step(pq);
        return check_map_invariance(mx, tx, concat_xy(s)) &&
               check_map_invariance(mp, tp, concat_pq(pq));
      });
      if (!ok) {
        std::fprintf(stderr, "  bracket drift at k=%ld n=%ld\n", k, n);
        return false;
      }
    }
  }
  return true;
}

// 4. The product of all (p, q) coordinates is preserved exactly; the
//    documented Casimir families have the right size (four iff n is even
//    and k odd, else two) and really lie in the kernel.
bool crit_casimirs() {
  Rng rng(710004);
  for (auto [k, n] : kDeskGrid)
    for (int t = 0; t < 10; ++t) {
      const bool ok = generic_trial([&] {
        auto s = random_xy_state_where<R>(k, n, rng, generic_xy);
        PQState<R> pq = xy_to_pq(s);
        PQState<R> im = tbar_step(pq);
        R before(1), after(1);
        for (long i = 0; i < n; ++i) {
          before = before * pq.p[std::size_t(i)] * pq.q[std::size_t(i)];
          after = after * im.p[std::size_t(i)] * im.q[std::size_t(i)];
        }
        return before == after;
      });
      if (!ok) {
        std::fprintf(stderr, "  casimir product drift at k=%ld n=%ld\n", k, n);
        return false;
      }
    }
  for (long k = 2; k <= 5; ++k)
    for (long n = 2 * k - 1; n <= 12; ++n) {
      const MapParams mp(k, n);
      const PoissonTensor tx = xy_tensor(mp);
      const auto cs = casimirs(tx, mp);
      const std::size_t expect = (n % 2 == 0 && k % 2 == 1) ? 4u : 2u;
      if (cs.size() != expect) {
        std::fprintf(stderr, "  casimir count %zu != %zu at k=%ld n=%ld\n", cs.size(), expect,
                     k, n);
        return false;
      }
      for (const auto& m : cs)
        if (!is_casimir(tx, m)) {
          std::fprintf(stderr, "  non-casimir family member at k=%ld n=%ld\n", k, n);
          return false;
        }
      const PoissonTensor tp = pq_tensor(build_quiver(k, n));
      const auto cp = casimirs(tp, mp);
      if (cp.size() != 1 || !is_casimir(tp, cp[0])) {
        std::fprintf(stderr, "  quiver casimir family broken at k=%ld n=%ld\n", k, n);
        return false;
      }
    }
  return true;
}

// 5. The projection intertwines both step maps and both dualities, and
//    conjugation by duality inverts the step in both coordinate systems.
bool crit_conjugations() {
  Rng rng(710005);
  for (auto [k, n] : kDeskGrid)
    for (int t = 0; t < 10; ++t) {
      const bool ok = generic_trial([&] {
        auto s = random_xy_state_where<R>(k, n, rng, generic_xy);
        if (!(xy_to_pq(tk_step(s)) == tbar_step(xy_to_pq(s)))) return false;
        if (!(xy_to_pq(dk_apply(s)) == dbar_apply(xy_to_pq(s)))) return false;
        if (!(tk_step(dk_apply(tk_step(dk_apply(s)))) == s)) return false;
        PQState<R> pq = xy_to_pq(s);
        return dbar_apply(tbar_step(dbar_apply(tbar_step(pq)))) == pq;
      });
      if (!ok) {
        std::fprintf(stderr, "  conjugation broken at k=%ld n=%ld\n", k, n);
        return false;
      }
    }
  return true;
}

// 6. In corner coordinates the span-3 step is the classical corner map up
//    to one index shift, and that map commutes with (tX, Y/t) scaling.
bool crit_pentagram_equivalence() {
  Rng rng(710006);
  for (long n = 5; n <= 12; ++n)
    for (int t = 0; t < 5; ++t) {
      const bool ok = generic_trial([&] {
        auto s = random_xy_state_where<R>(3, n, rng, generic_xy);
        CornerState<R> lhs = xy_to_corner(tk_step(s));
        CornerState<R> rhs = pentagram_corner_step(xy_to_corner(s));
        for (long i = 0; i < n; ++i)
          if (!(lhs.X[std::size_t(i)] == rhs.X[cyc(i + n - 1, n)] &&
                lhs.Y[std::size_t(i)] == rhs.Y[cyc(i + n - 1, n)]))
            return false;
        CornerState<R> c = xy_to_corner(s);
        R sc = random_rational(rng);
        auto scale = [&](CornerState<R> w) {
          for (long i = 0; i < w.n; ++i) {
            w.X[std::size_t(i)] = w.X[std::size_t(i)] * sc;
            w.Y[std::size_t(i)] = w.Y[std::size_t(i)] / sc;
          }
          return w;
        };
        return pentagram_corner_step(scale(c)) == scale(pentagram_corner_step(c));
      });
      if (!ok) {
        std::fprintf(stderr, "  corner equivalence broken at n=%ld\n", n);
        return false;
      }
    }
  return true;
}

// 7. The diagonal maps on corrugated and plane polygons project exactly
//    onto the coordinate step map, and diagonal images stay corrugated.
bool crit_geometry() {
  Rng rng(710007);
  for (long k = 3; k <= 5; ++k)
    for (long n = k + 2; n <= 12; ++n)
      for (int t = 0; t < 10; ++t) {
        const bool ok = generic_trial([&] {
          auto s = random_positive_xy_state(k, n, rng);
          auto P = polygon_from_xy(s, identity_seed(k));
          auto img = fk_step(P);
          if (!(extract_xy(img) == tk_step(s))) return false;
          for (long i = 0; i < n; ++i) {
            Mat<R> m{std::size_t(k), 4};
            for (long r = 0; r < k; ++r) {
              m[std::size_t(r)][0] = img.lifts[std::size_t(i)][std::size_t(r)];
              m[std::size_t(r)][1] = img.lifts[std::size_t(i + 1)][std::size_t(r)];
              m[std::size_t(r)][2] = img.lifts[std::size_t(i + k - 1)][std::size_t(r)];
              m[std::size_t(r)][3] = img.lifts[std::size_t(i + k)][std::size_t(r)];
            }
            if (rank(m) != 3) return false;
          }
          auto Pp = plane_polygon_from_xy(s, rational_seed(3, k, rng));
          return psi(gk_step(Pp)) == tk_step(s);
        });
        if (!ok) {
          std::fprintf(stderr, "  geometric conjugation broken at k=%ld n=%ld\n", k, n);
          return false;
        }
      }
  return true;
}

// 8. Projective duality projects onto the coordinate duality, up to the
//    sign (-1)^k and the regression-pinned cyclic shift r = floor(k/2) - 1.
bool crit_duality() {
  Rng rng(710008);
  for (long k = 3; k <= 5; ++k)
    for (long n = k + 2; n <= 12; ++n)
      for (int t = 0; t < 3; ++t) {
        const bool ok = generic_trial([&] {
          const MapParams mp(k, n);
          auto s = random_positive_xy_state(k, n, rng);
          auto P = polygon_from_xy(s, rational_seed(k, k, rng));
          XYState<R> want = dk_apply(s);
          if (k % 2 == 1) want = negated(want);
          return extract_xy(dual_polygon(P)) == shifted(want, mp.r);
        });
        if (!ok) {
          std::fprintf(stderr, "  duality projection broken at k=%ld n=%ld\n", k, n);
          return false;
        }
      }
  return true;
}

// 9. The local transition identities and the monodromy conjugation hold as
//    exact polynomial identities; the superposed span-3 transition matrix
//    passes the same check, so that case counts as resolved.
bool crit_zero_curvature() {
  Rng rng(710009);
  for (long k = 3; k <= 6; ++k)
    for (long n = k + 2; n <= 12; ++n)
      for (int t = 0; t < 2; ++t) {
        const bool ok = generic_trial([&] {
          auto s = random_positive_xy_state(k, n, rng);
          return zero_curvature_check(s);
        });
        if (!ok) {
          std::fprintf(stderr, "  zero curvature broken at k=%ld n=%ld\n", k, n);
          return false;
        }
      }
  return true;
}

// 10. The span-2 system: the coordinate chart conjugates the leapfrog step
//     to the k=2 step map exactly; the tangent-circle step agrees with the
//     projective step to 1e-10 over 100 complex trials; both degenerate
//     Menelaus forms hold; the 2-form is invariant to 1e-9; chart images
//     land on the unit Casimir level.
bool crit_leapfrog() {
  Rng rng(710010);
  for (long n : {3L, 5L, 8L})
    for (int t = 0; t < 5; ++t) {
      const bool ok = generic_trial([&] {
        auto s = random_good_spair<R>(n, rng, true);
        if (!(phi(f2_step(s)) == tk_step(phi(s)))) return false;
        PQState<R> pq = xy_to_pq(phi(s));
        R prod(1);
        for (long i = 0; i < n; ++i) prod = prod * pq.p[std::size_t(i)] * pq.q[std::size_t(i)];
        if (!(prod == R(1))) return false;
        auto s2 = f2_step(s);
        auto se = detail::extend_twisted(s.S, s.monodromy, 1);
        const Mat<R> minv = inverse(s.monodromy);
        for (long i = 0; i < n; ++i) {
          const ProjPoint<R> prevp =
              i > 0 ? s.S[std::size_t(i - 1)] : mobius(minv, s.S[std::size_t(n - 1)]);
          if (prevp.inf || s2.S[std::size_t(i)].inf || se[std::size_t(i + 1)].inf) continue;
          const R sp = prevp.v, sm = s.Sminus[std::size_t(i)].v, si = s.S[std::size_t(i)].v;
          const R a = se[std::size_t(i + 1)].v, pl = s2.S[std::size_t(i)].v;
          const R one(1);
          if (!(one / (pl - si) + one / (sm - si) == one / (a - si) + one / (sp - si)))
            return false;
          if (!((pl - a) * (si - sm) * (si - sp) == -((pl - si) * (a - si) * (sm - sp))))
            return false;
        }
        return true;
      });
      if (!ok) {
        std::fprintf(stderr, "  leapfrog chart conjugation broken at n=%ld\n", n);
        return false;
      }
    }

  // tangent-circle construction vs projective step, complex floats
  {
    Rng crng(710011);
    int done = 0;
    double worst = 0.0;
    while (done < 100) {
      const long n = 3 + done % 8;
      auto s = random_spair<C>(n, crng, true);
      try {
        auto a = h2_step(s);
        auto b = f2_step(s);
        double diff = 0.0;
        bool usable = true;
        for (long i = 0; i < n && usable; ++i) {
          if (a.S[std::size_t(i)].inf || b.S[std::size_t(i)].inf)
            usable = false;
          else
            diff = std::max(diff, std::abs(a.S[std::size_t(i)].v - b.S[std::size_t(i)].v));
        }
        if (!usable) continue;
        worst = std::max(worst, diff);
        ++done;
      } catch (const Error& e) {
        if (e.kind != ErrorKind::genericity) throw;
      }
    }
    if (!(worst < 1e-10)) {
      std::fprintf(stderr, "  circle/projective disagreement %.3e\n", worst);
      return false;
    }
  }

  // invariance of the 2-form under the pushforward, real floats
  {
    using D = Dual<Real64>;
    Rng rrng(710012);
    for (int t = 0; t < 20; ++t) {
      const long n = 5;
      SPairState<Real64> s;
      s.n = n;
      Mat<Real64> m = random_mono<Real64>(rrng);
      if (std::abs(m[0][0] * m[1][1] - m[0][1] * m[1][0]) < 0.1) m[0][0] += 1.0;
      s.monodromy = m;
      SPairTangent<Real64> u, v;
      for (long i = 0; i < n; ++i) {
        s.Sminus.push_back(finite_point(random_scalar<Real64>(rrng)));
        s.S.push_back(finite_point(random_scalar<Real64>(rrng)));
        u.dSminus.push_back(random_scalar<Real64>(rrng));
        u.dS.push_back(random_scalar<Real64>(rrng));
        v.dSminus.push_back(random_scalar<Real64>(rrng));
        v.dS.push_back(random_scalar<Real64>(rrng));
      }
      double before = 0, after = 0;
      try {
        before = omega_eval(s, u, v);
        SPairState<D> sd;
        sd.n = n;
        Mat<D> md{2, 2};
        for (int r = 0; r < 2; ++r)
          for (int c = 0; c < 2; ++c) md[r][c] = D(m[r][c]);
        sd.monodromy = md;
        for (long i = 0; i < n; ++i) {
          sd.Sminus.push_back(finite_point(D(
              s.Sminus[std::size_t(i)].v, {u.dSminus[std::size_t(i)], v.dSminus[std::size_t(i)]})));
          sd.S.push_back(finite_point(
              D(s.S[std::size_t(i)].v, {u.dS[std::size_t(i)], v.dS[std::size_t(i)]})));
        }
        const auto od = f2_step(sd);
        SPairState<Real64> s2;
        SPairTangent<Real64> u2, v2;
        s2.n = n;
        s2.monodromy = m;
        bool usable = true;
        for (long i = 0; i < n && usable; ++i) {
          if (od.S[std::size_t(i)].inf) {
            usable = false;
            break;
          }
          const D& a = od.Sminus[std::size_t(i)].v;
          const D& b = od.S[std::size_t(i)].v;
          s2.Sminus.push_back(finite_point(a.primal()));
          s2.S.push_back(finite_point(b.primal()));
          u2.dSminus.push_back(a.d(0));
          u2.dS.push_back(b.d(0));
          v2.dSminus.push_back(a.d(1));
          v2.dS.push_back(b.d(1));
        }
        if (!usable) {
          --t;
          continue;
        }
        after = omega_eval(s2, u2, v2);
      } catch (const Error& e) {
        if (e.kind != ErrorKind::genericity) throw;
        --t;
        continue;
      }
      if (!(std::abs(before - after) / std::max(1.0, std::abs(before)) < 1e-9)) {
        std::fprintf(stderr, "  2-form drift %.3e\n", std::abs(before - after));
        return false;
      }
    }
  }
  return true;
}

// 11. A 6x6 even-sublattice window of a leapfrog orbit extends through the
//     harmonic square relation (q = -1) with odd-sublattice residuals of
//     the five-point equation below 1e-9.
bool crit_lattice() {
  Rng rng(710013);
  const long rows = 6, cols = 6;
  for (int t = 0; t < 5; ++t) {
    const bool ok = generic_trial([&] {
      const auto s = random_spair<R>(5, rng, false);
      std::vector<std::vector<R>> a(2);
      for (long i = 0; i < s.n; ++i) {
        a[0].push_back(s.Sminus[std::size_t(i)].v);
        a[1].push_back(s.S[std::size_t(i)].v);
      }
      auto cur = s;
      for (long m = 2; m < (rows + cols) / 2; ++m) {
        cur = f2_step(cur);
        std::vector<R> row;
        for (long i = 0; i < s.n; ++i) {
          if (cur.S[std::size_t(i)].inf) throw DegenerateConfiguration(i);
          row.push_back(cur.S[std::size_t(i)].v);
        }
        a.push_back(std::move(row));
      }
      LatticeField<R> f;
      f.rows = rows;
      f.cols = cols;
      f.q = R(-1);
      f.z.assign(std::size_t(rows), std::vector<std::optional<R>>(std::size_t(cols)));
      for (long m = 0; m < rows; ++m)
        for (long nn = 0; nn < cols; ++nn) {
          if ((m + nn) % 2 != 0) continue;
          f.z[std::size_t(m)][std::size_t(nn)] =
              a[std::size_t((m + nn) / 2)][std::size_t(cyc((m - nn) / 2, s.n))];
        }
      const auto full = crossratio_extend(f, random_rational(rng));
      for (long m = 1; m + 1 < rows; ++m)
        for (long nn = 1; nn + 1 < cols; ++nn) {
          if ((m + nn) % 2 != 1) continue;
          const R z = *full.z[std::size_t(m)][std::size_t(nn)];
          const R ne = *full.z[std::size_t(m + 1)][std::size_t(nn + 1)];
          const R sw = *full.z[std::size_t(m - 1)][std::size_t(nn - 1)];
          const R se = *full.z[std::size_t(m + 1)][std::size_t(nn - 1)];
          const R nw = *full.z[std::size_t(m - 1)][std::size_t(nn + 1)];
          // Exact differences first: converting the individual values to
          // doubles would overflow once the extension's numerators grow.
          if ((z - ne).is_zero() || (z - sw).is_zero() || (z - se).is_zero() ||
              (z - nw).is_zero())
            throw DegenerateConfiguration(m);
          const R one(1);
          const R resid = one / (z - ne) + one / (z - sw) - one / (z - se) - one / (z - nw);
          if (!(std::fabs(resid.to_double()) < 1e-9)) return false;
        }
      return true;
    });
    if (!ok) {
      std::fprintf(stderr, "  lattice extension residual too large\n");
      return false;
    }
  }
  return true;
}

// 12. All-ones states are fixed points of both step maps, and constant
//     states are fixed points of the coordinate step map.
bool crit_fixed_points() {
  Rng rng(710014);
  for (auto [k, n] : full_grid()) {
    XYState<R> ones;
    ones.k = k;
    ones.n = n;
    ones.x.assign(std::size_t(n), R(1));
    ones.y.assign(std::size_t(n), R(1));
    const PQState<R> pq = xy_to_pq(ones);
    if (!(tk_step(ones) == ones && tbar_step(pq) == pq)) {
      std::fprintf(stderr, "  all-ones not fixed at k=%ld n=%ld\n", k, n);
      return false;
    }
    for (int t = 0; t < 3; ++t) {
      XYState<R> s;
      s.k = k;
      s.n = n;
      R a = random_rational(rng), b = random_rational(rng);
      if ((a + b).is_zero()) b = b + R(1);
      if (b.is_zero()) b = R(1);
      s.x.assign(std::size_t(n), a);
      s.y.assign(std::size_t(n), b);
      if (!(tk_step(s) == s)) {
        std::fprintf(stderr, "  constant state not fixed at k=%ld n=%ld\n", k, n);
        return false;
      }
    }
  }
  return true;
}

struct Criterion {
  const char* label;
  bool (*run)();
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"1: spectral integrals invariant under the step map (exact, full grid)",
       crit_integral_invariance},
      {"2: spectral integrals pairwise in involution (exact, desk grid)", crit_involutivity},
      {"3: both Poisson tensors invariant under their step maps (exact)",
       crit_bracket_invariance},
      {"4: Casimir product preserved; family sizes and kernel membership", crit_casimirs},
      {"5: projection/duality conjugations and duality-inverse identities", crit_conjugations},
      {"6: span-3 corner equivalence with pinned shift; corner scaling symmetry",
       crit_pentagram_equivalence},
      {"7: diagonal maps on polygons project onto the step map; images corrugated",
       crit_geometry},
      {"8: projective duality matches coordinate duality with sign and pinned shift",
       crit_duality},
      {"9: transition-matrix zero curvature and monodromy conjugation (k=3 resolved)",
       crit_zero_curvature},
      {"10: point-pair system: chart conjugation, circle step, Menelaus, 2-form",
       crit_leapfrog},
      {"11: harmonic lattice extension with odd-sublattice residuals < 1e-9", crit_lattice},
      {"12: all-ones and constant states are fixed points", crit_fixed_points},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    bool ok = false;
    try {
      ok = c.run();
    } catch (const std::exception& e) {
      std::fprintf(stderr, "  unexpected error: %s\n", e.what());
      ok = false;
    }
    std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", c.label);
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  if (failures) std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
