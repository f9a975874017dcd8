/// @file poisson.hpp
/// @brief The bipartite quiver behind the (p, q) dynamics, tau-coordinate
/// mutation, the log-canonical Poisson tensors on both coordinate systems,
/// bracket evaluation with dual-number gradients, pointwise invariance
/// checking, and the monomial Casimirs.
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "pentalab/dual.hpp"
#include "pentalab/error.hpp"
#include "pentalab/linalg.hpp"
#include "pentalab/rational.hpp"
#include "pentalab/scalar.hpp"
#include "pentalab/state.hpp"

namespace pentalab {

/// Directed multigraph on 2n vertices, stored as the skew adjacency matrix
/// A with a_uv = (#arrows u->v) - (#arrows v->u). Vertices 0..n-1 are the
/// p-family, n..2n-1 the q-family.
struct Quiver {
  long n = 0;
  std::vector<std::vector<int>> A;

  long p_vertex(long i) const { return long(cyc(i, n)); }
  long q_vertex(long i) const { return n + long(cyc(i, n)); }
};

/// Arrows are p_i -> q_{i+rp}, p_i -> q_{i-r}, q_i -> p_{i+r+1},
/// q_i -> p_{i-rp-1}. For k = 2 the two p-arrows coincide (weight 2), and
/// for k = n the two q-arrows do; no opposite pairs ever cancel.
inline Quiver build_quiver(long k, long n) {
  MapParams mp(k, n);
  Quiver qv;
  qv.n = n;
  qv.A.assign(std::size_t(2 * n), std::vector<int>(std::size_t(2 * n), 0));
  auto arrow = [&](long u, long v) {
    qv.A[std::size_t(u)][std::size_t(v)] += 1;
    qv.A[std::size_t(v)][std::size_t(u)] -= 1;
  };
  for (long i = 0; i < n; ++i) {
    arrow(qv.p_vertex(i), qv.q_vertex(i + mp.rp));
    arrow(qv.p_vertex(i), qv.q_vertex(i - mp.r));
    arrow(qv.q_vertex(i), qv.p_vertex(i + mp.r + 1));
    arrow(qv.q_vertex(i), qv.p_vertex(i - mp.rp - 1));
  }
  return qv;
}

/// tau-coordinate mutation at a set of pairwise non-adjacent vertices:
/// values at mutated vertices invert, every other value v_j picks up
/// (v_u/(1+v_u))^{#(u->j)} (1+v_u)^{#(j->u)} per mutated vertex u.
template <class S>
std::vector<S> tau_mutation(const std::vector<S>& values, const Quiver& qv,
                            const std::vector<long>& mutate_set) {
  const S one = ScalarTraits<S>::one();
  const long dim = 2 * qv.n;
  std::vector<bool> in_set(std::size_t(dim), false);
  for (long u : mutate_set) {
    if (ScalarTraits<S>::is_zero(values[std::size_t(u)]) ||
        ScalarTraits<S>::is_zero(one + values[std::size_t(u)]))
      throw PDenominatorVanishes(cyc(u, qv.n) + 1);
    in_set[std::size_t(u)] = true;
  }
  std::vector<S> out = values;
  for (long u : mutate_set) out[std::size_t(u)] = one / values[std::size_t(u)];
  for (long j = 0; j < dim; ++j) {
    if (in_set[std::size_t(j)]) continue;
    S v = out[std::size_t(j)];
    for (long u : mutate_set) {
      int a = qv.A[std::size_t(u)][std::size_t(j)];
      const S& vu = values[std::size_t(u)];
      for (int m = 0; m < a; ++m) v = v * vu / (one + vu);
      for (int m = 0; m < -a; ++m) v = v * (one + vu);
    }
    out[std::size_t(j)] = v;
  }
  return out;
}

/// Mutation at every p-vertex. No relabeling is applied; composing with the
/// parity-dependent relabeling recovers the (p, q) step map.
template <class S>
PQState<S> tau_mutation_all_p(const PQState<S>& s, const Quiver& qv) {
  std::vector<S> values;
  values.reserve(std::size_t(2 * s.n));
  values.insert(values.end(), s.p.begin(), s.p.end());
  values.insert(values.end(), s.q.begin(), s.q.end());
  std::vector<long> set;
  for (long i = 0; i < s.n; ++i) set.push_back(i);
  std::vector<S> out = tau_mutation(values, qv, set);
  PQState<S> r;
  r.k = s.k;
  r.n = s.n;
  r.p.assign(out.begin(), out.begin() + s.n);
  r.q.assign(out.begin() + s.n, out.end());
  return r;
}

enum class TensorKind { pq, xy };

/// Log-canonical tensor: {v_u, v_v} = B_uv v_u v_v with constant integer B.
struct PoissonTensor {
  TensorKind kind = TensorKind::pq;
  long dim = 0;
  std::vector<std::vector<int>> B;
};

inline PoissonTensor pq_tensor(const Quiver& qv) {
  PoissonTensor t;
  t.kind = TensorKind::pq;
  t.dim = 2 * qv.n;
  t.B = qv.A;
  return t;
}

/// Bracket on (x, y) coordinates (order x_1..x_n, y_1..y_n):
///   {x_i, x_{i+l}} = -x_i x_{i+l}   1 <= l <= k-2
///   {y_i, y_{i+l}} = -y_i y_{i+l}   1 <= l <= k-1
///   {y_i, x_{i+l}} = -y_i x_{i+l}   1 <= l <= k-1
///   {y_i, x_{i-l}} = +y_i x_{i-l}   0 <= l <= k-2
/// Defined here only in the stable range n >= 2k-1, where the families above
/// never overlap.
inline PoissonTensor xy_tensor(const MapParams& mp) {
  if (mp.n < 2 * mp.k - 1) throw OutsideStableRange(mp.k, mp.n);
  const long n = mp.n;
  PoissonTensor t;
  t.kind = TensorKind::xy;
  t.dim = 2 * n;
  t.B.assign(std::size_t(2 * n), std::vector<int>(std::size_t(2 * n), 0));
  auto X = [&](long i) { return long(cyc(i, n)); };
  auto Y = [&](long i) { return n + long(cyc(i, n)); };
  auto put = [&](long u, long v, int sign) {
    if (t.B[std::size_t(u)][std::size_t(v)] != 0) throw OutsideStableRange(mp.k, mp.n);
    t.B[std::size_t(u)][std::size_t(v)] = sign;
    t.B[std::size_t(v)][std::size_t(u)] = -sign;
  };
  for (long i = 0; i < n; ++i) {
    for (long l = 1; l <= mp.k - 2; ++l) put(X(i), X(i + l), -1);
    for (long l = 1; l <= mp.k - 1; ++l) put(Y(i), Y(i + l), -1);
    for (long l = 1; l <= mp.k - 1; ++l) put(Y(i), X(i + l), -1);
    for (long l = 0; l <= mp.k - 2; ++l) put(Y(i), X(i - l), +1);
  }
#ifdef PENTALAB_FAULT_XY_TENSOR_SIGN
  // Deliberate defect for the negative-control binary: one flipped sign.
  t.B[std::size_t(n)][0] = -t.B[std::size_t(n)][0];
  t.B[0][std::size_t(n)] = -t.B[0][std::size_t(n)];
#endif
  return t;
}

/// {f, g}(at) = sum_{u,v} B_uv at_u at_v (df/dv_u)(dg/dv_v), gradients taken
/// with one dual-number sweep per function. Works at dual-valued points too,
/// so brackets can be nested.
template <class S, class F, class G>
S bracket_of(F&& f, G&& g, const PoissonTensor& t, const std::vector<S>& at) {
  const std::size_t dim = std::size_t(t.dim);
  std::vector<Dual<S>> in;
  in.reserve(dim);
  for (std::size_t u = 0; u < dim; ++u) in.push_back(Dual<S>::seed(at[u], dim, u));
  Dual<S> fv = f(in);
  Dual<S> gv = g(in);
  S acc = ScalarTraits<S>::zero();
  for (std::size_t u = 0; u < dim; ++u)
    for (std::size_t v = 0; v < dim; ++v) {
      int b = t.B[u][v];
      if (b == 0) continue;
      S term = at[u] * at[v] * fv.d(u) * gv.d(v);
      for (int m = 0; m < b; ++m) acc += term;
      for (int m = 0; m < -b; ++m) acc -= term;
    }
  return acc;
}

/// Pointwise pushforward test: J B^(s) J^T == B^(map(s)) where
/// B^_uv(s) = B_uv s_u s_v and J is the Jacobian of the map at s.
/// Exact comparison for exact scalars, relative 1e-9 otherwise.
template <class S, class M>
bool check_map_invariance(M&& map, const PoissonTensor& t, const std::vector<S>& at) {
  const std::size_t dim = std::size_t(t.dim);
  auto hat = [&](const std::vector<S>& s) {
    Mat<S> b(dim, dim);
    for (std::size_t u = 0; u < dim; ++u)
      for (std::size_t v = 0; v < dim; ++v) {
        int c = t.B[u][v];
        S e = ScalarTraits<S>::zero();
        S term = s[u] * s[v];
        for (int m = 0; m < c; ++m) e += term;
        for (int m = 0; m < -c; ++m) e -= term;
        b.a[u][v] = e;
      }
    return b;
  };
  std::vector<std::vector<S>> jrows = jacobian(map, at);
  Mat<S> J(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) J.a[r] = jrows[r];
  std::vector<Dual<S>> lifted;
  for (const S& v : at) lifted.emplace_back(v);
  std::vector<Dual<S>> image_dual = map(lifted);
  std::vector<S> image;
  for (const auto& d : image_dual) image.push_back(d.primal());
  Mat<S> lhs = J * hat(at) * J.transposed();
  Mat<S> rhs = hat(image);
  for (std::size_t u = 0; u < dim; ++u)
    for (std::size_t v = 0; v < dim; ++v) {
      if constexpr (ScalarTraits<S>::exact) {
        if (!(lhs.a[u][v] == rhs.a[u][v])) return false;
      } else {
        if (!ScalarTraits<S>::eq(lhs.a[u][v], rhs.a[u][v], 1e-9)) return false;
      }
    }
  return true;
}

/// A Casimir candidate as an exponent vector over the tensor's coordinates.
struct Monomial {
  std::vector<int> expo;

  template <class S>
  S eval(const std::vector<S>& at) const {
    S acc = ScalarTraits<S>::one();
    for (std::size_t u = 0; u < expo.size(); ++u) {
      for (int m = 0; m < expo[u]; ++m) acc = acc * at[u];
      for (int m = 0; m < -expo[u]; ++m) acc = acc / at[u];
    }
    return acc;
  }
};

/// The documented Casimir families. For the (p, q) tensor: the full product
/// of all coordinates. For the (x, y) tensor: parity-split products of the
/// x's and of the y's when n is even and k is odd, otherwise the two full
/// products.
inline std::vector<Monomial> casimirs(const PoissonTensor& t, const MapParams& mp) {
  const long n = mp.n;
  std::vector<Monomial> out;
  auto monomial = [&](auto&& pred) {
    Monomial m;
    m.expo.assign(std::size_t(2 * n), 0);
    for (long u = 0; u < 2 * n; ++u)
      if (pred(u)) m.expo[std::size_t(u)] = 1;
    return m;
  };
  if (t.kind == TensorKind::pq) {
    out.push_back(monomial([](long) { return true; }));
    return out;
  }
  if (n % 2 == 0 && mp.k % 2 == 1) {
    out.push_back(monomial([&](long u) { return u < n && u % 2 == 0; }));
    out.push_back(monomial([&](long u) { return u < n && u % 2 == 1; }));
    out.push_back(monomial([&](long u) { return u >= n && u % 2 == 0; }));
    out.push_back(monomial([&](long u) { return u >= n && u % 2 == 1; }));
  } else {
    out.push_back(monomial([&](long u) { return u < n; }));
    out.push_back(monomial([&](long u) { return u >= n; }));
  }
  return out;
}

/// A monomial is Casimir iff its exponent vector lies in the kernel of B;
/// this is linear algebra over the integers, checked exactly.
inline bool is_casimir(const PoissonTensor& t, const Monomial& m) {
  for (long j = 0; j < t.dim; ++j) {
    long acc = 0;
    for (long u = 0; u < t.dim; ++u) acc += long(m.expo[std::size_t(u)]) * t.B[std::size_t(u)][std::size_t(j)];
    if (acc != 0) return false;
  }
  return true;
}

/// Corank of B over the rationals: 2n minus the rank.
inline long tensor_corank(const PoissonTensor& t) {
  Mat<Rational> m(std::size_t(t.dim), std::size_t(t.dim));
  for (long u = 0; u < t.dim; ++u)
    for (long v = 0; v < t.dim; ++v) m.a[std::size_t(u)][std::size_t(v)] = Rational(t.B[std::size_t(u)][std::size_t(v)]);
  return t.dim - long(rank(m));
}

}  // namespace pentalab
