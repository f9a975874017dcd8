/// @file pentalab.cpp
/// @brief Command-line driver: iterate the maps and export orbits as CSV,
/// export the spectral integral table, run the verification suites, render
/// polygons and circle patterns as SVG, and convert between coordinate
/// systems.
///
/// Exit codes: 0 success, 1 verification failure, 2 invalid input or
/// configuration, 3 genericity/singularity failure. The environment variable
/// PENTALAB_MAX_BITS overrides the rational size guard.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pentalab/dual.hpp"
#include "pentalab/dynamics.hpp"
#include "pentalab/error.hpp"
#include "pentalab/json_io.hpp"
#include "pentalab/lax.hpp"
#include "pentalab/leapfrog.hpp"
#include "pentalab/linalg.hpp"
#include "pentalab/poisson.hpp"
#include "pentalab/polygon.hpp"
#include "pentalab/random.hpp"
#include "pentalab/rational.hpp"
#include "pentalab/scalar.hpp"
#include "pentalab/state.hpp"
#include "pentalab/svg.hpp"

namespace {

using namespace pentalab;
using R = Rational;
using C = ComplexScalar;

// ---------------------------------------------------------------- config --

struct RunConfig {
  long k = 3, n = 7;
  long steps = 10, trials = 10;
  unsigned long long seed = 1;
  std::string backend = "rational";
  std::string state_path, out_path, suite;
  bool decimal = false;
};

void validate(const RunConfig& cfg) {
  MapParams mp(cfg.k, cfg.n);
  if (cfg.steps < 0) throw Error(ErrorKind::invalid_input, "steps must be >= 0");
  if (cfg.trials < 1) throw Error(ErrorKind::invalid_input, "trials must be >= 1");
  if (cfg.backend != "rational" && cfg.backend != "float" && cfg.backend != "complex")
    throw Error(ErrorKind::invalid_input,
                "unknown backend: " + cfg.backend + " (expected rational, float, or complex)");
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out_path.empty())
    std::cout << text;
  else
    write_text_file(cfg.out_path, text);
}

Json load_state(const RunConfig& cfg, const char* cmd) {
  if (cfg.state_path.empty())
    throw Error(ErrorKind::invalid_input, std::string(cmd) + " needs --state <path>");
  return read_json_file(cfg.state_path);
}

template <class F>
int with_backend(const std::string& backend, F&& f) {
  if (backend == "rational") return f(R{});
  if (backend == "float") return f(Real64{});
  return f(C{});
}

// ------------------------------------------------------------- CSV cells --

std::string csv_quote(const std::string& s) {
  if (s.find(',') == std::string::npos) return s;
  return "\"" + s + "\"";
}

template <class S>
std::string cell_exact(const S& v) {
  return csv_quote(ScalarTraits<S>::str(v));
}

std::string cell_decimal(const R& v) { return ScalarTraits<Real64>::str(v.to_double()); }

struct CsvBuilder {
  std::ostringstream os;

  void header(const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i) os << (i ? "," : "") << names[i];
    os << "\n";
  }
  void row(long step, const std::vector<std::string>& cells) {
    os << step;
    for (const auto& c : cells) os << "," << c;
    os << "\n";
  }
};

std::vector<std::string> coord_names(const char* a, const char* b, long n) {
  std::vector<std::string> names = {"step"};
  for (long i = 0; i < n; ++i) names.push_back(a + std::to_string(i));
  for (long i = 0; i < n; ++i) names.push_back(b + std::to_string(i));
  return names;
}

void append_decimal_names(std::vector<std::string>& names) {
  std::vector<std::string> extra;
  for (std::size_t i = 1; i < names.size(); ++i) extra.push_back(names[i] + "_dec");
  names.insert(names.end(), extra.begin(), extra.end());
}

// Exact cells for the two coordinate runs; rational backend optionally adds
// decimal columns.
template <class S>
std::vector<std::string> run_cells(const std::vector<S>& a, const std::vector<S>& b,
                                   bool decimal) {
  std::vector<std::string> cells;
  for (const S& v : a) cells.push_back(cell_exact(v));
  for (const S& v : b) cells.push_back(cell_exact(v));
  if constexpr (std::is_same_v<S, R>) {
    if (decimal) {
      for (const S& v : a) cells.push_back(cell_decimal(v));
      for (const S& v : b) cells.push_back(cell_decimal(v));
    }
  }
  return cells;
}

// Re-raises genericity failures with the orbit step attached; the underlying
// message already names the offending site index.
template <class State, class Step>
State advance(State s, Step&& step, long m) {
  try {
    return step(s);
  } catch (const Error& e) {
    if (e.kind == ErrorKind::genericity)
      throw Error(ErrorKind::genericity,
                  "orbit became singular at step " + std::to_string(m) + ": " + e.what());
    throw;
  }
}

// -------------------------------------------------------------- iterate ---

template <class S>
int iterate_xy(const RunConfig& cfg, XYState<S> s) {
  CsvBuilder csv;
  auto names = coord_names("x", "y", s.n);
  if (cfg.decimal && std::is_same_v<S, R>) append_decimal_names(names);
  csv.header(names);
  csv.row(0, run_cells(s.x, s.y, cfg.decimal));
  for (long m = 1; m <= cfg.steps; ++m) {
    s = advance(s, [](const XYState<S>& t) { return tk_step(t); }, m);
    csv.row(m, run_cells(s.x, s.y, cfg.decimal));
  }
  emit(cfg, csv.os.str());
  return 0;
}

template <class S>
int iterate_pq(const RunConfig& cfg, PQState<S> s) {
  CsvBuilder csv;
  auto names = coord_names("p", "q", s.n);
  names.push_back("casimir");
  if (cfg.decimal && std::is_same_v<S, R>) append_decimal_names(names);
  auto cells = [&](const PQState<S>& t) {
    S prod = ScalarTraits<S>::one();
    for (long i = 0; i < t.n; ++i) prod = prod * t.p[std::size_t(i)] * t.q[std::size_t(i)];
    std::vector<S> q = t.q;
    q.push_back(prod);
    return run_cells(t.p, q, cfg.decimal);
  };
  csv.header(names);
  csv.row(0, cells(s));
  for (long m = 1; m <= cfg.steps; ++m) {
    s = advance(s, [](const PQState<S>& t) { return tbar_step(t); }, m);
    csv.row(m, cells(s));
  }
  emit(cfg, csv.os.str());
  return 0;
}

template <class S>
int iterate_corner(const RunConfig& cfg, CornerState<S> s) {
  CsvBuilder csv;
  csv.header(coord_names("X", "Y", s.n));
  csv.row(0, run_cells(s.X, s.Y, false));
  for (long m = 1; m <= cfg.steps; ++m) {
    s = advance(s, [](const CornerState<S>& t) { return pentagram_corner_step(t); }, m);
    csv.row(m, run_cells(s.X, s.Y, false));
  }
  emit(cfg, csv.os.str());
  return 0;
}

template <class S>
std::vector<std::string> point_cells(const SPairState<S>& s) {
  std::vector<std::string> cells;
  for (const auto& p : s.Sminus) cells.push_back(p.inf ? "inf" : cell_exact(p.v));
  for (const auto& p : s.S) cells.push_back(p.inf ? "inf" : cell_exact(p.v));
  return cells;
}

template <class S>
int iterate_spair(const RunConfig& cfg, SPairState<S> s) {
  CsvBuilder csv;
  csv.header(coord_names("sminus", "s", s.n));
  csv.row(0, point_cells(s));
  for (long m = 1; m <= cfg.steps; ++m) {
    s = advance(s, [](const SPairState<S>& t) { return f2_step(t); }, m);
    csv.row(m, point_cells(s));
  }
  emit(cfg, csv.os.str());
  return 0;
}

int cmd_iterate(const RunConfig& cfg) {
  const Json j = load_state(cfg, "iterate");
  const std::string type = json_state_type(j);
  return with_backend(cfg.backend, [&](auto tag) {
    using S = std::decay_t<decltype(tag)>;
    if (type == "xy") return iterate_xy<S>(cfg, xy_from_json<S>(j));
    if (type == "pq") return iterate_pq<S>(cfg, pq_from_json<S>(j));
    if (type == "corner") return iterate_corner<S>(cfg, corner_from_json<S>(j));
    if (type == "spair") return iterate_spair<S>(cfg, spair_from_json<S>(j));
    throw Error(ErrorKind::invalid_input, "unknown state type: " + type);
  });
}

// ------------------------------------------------------------- integrals --

int cmd_integrals(const RunConfig& cfg) {
  const Json j = load_state(cfg, "integrals");
  if (json_state_type(j) != "xy")
    throw Error(ErrorKind::invalid_input,
                "integrals need an (x, y) state; run convert first");
  return with_backend(cfg.backend, [&](auto tag) {
    using S = std::decay_t<decltype(tag)>;
    const XYState<S> s = xy_from_json<S>(j);
    const BivarPoly<S> cp = char_poly(s);
    std::ostringstream os;
    os << "i,j,value";
    if (cfg.decimal && std::is_same_v<S, R>) os << ",value_dec";
    os << "\n";
    for (long i = 0; i <= cp.zdeg; ++i)
      for (long jj = 0; jj <= cp.lambda_degree(i); ++jj) {
        os << i << "," << jj << "," << cell_exact(cp.coeff(i, jj));
        if constexpr (std::is_same_v<S, R>) {
          if (cfg.decimal) os << "," << cell_decimal(cp.coeff(i, jj));
        }
        os << "\n";
      }
    emit(cfg, os.str());
    return 0;
  });
}

// -------------------------------------------------------------- convert ---

int cmd_convert(const RunConfig& cfg) {
  const Json j = load_state(cfg, "convert");
  const std::string type = json_state_type(j);
  return with_backend(cfg.backend, [&](auto tag) {
    using S = std::decay_t<decltype(tag)>;
    Json out;
    if (type == "xy")
      out = to_json(xy_to_pq(xy_from_json<S>(j)));
    else if (type == "pq")
      out = to_json(pq_to_xy(pq_from_json<S>(j), ScalarTraits<S>::one()));
    else if (type == "corner")
      out = to_json(corner_to_xy(corner_from_json<S>(j)));
    else if (type == "spair")
      out = to_json(phi(spair_from_json<S>(j)));
    else
      throw Error(ErrorKind::invalid_input, "unknown state type: " + type);
    emit(cfg, out.dump(2) + "\n");
    return 0;
  });
}

// --------------------------------------------------------------- verify ---

struct Reporter {
  std::ostringstream out;
  bool all_pass = true;

  void prop(const std::string& suite, const std::string& name, bool pass,
            const std::string& counter = "") {
    out << (pass ? "[pass] " : "[FAIL] ") << suite << "/" << name << "\n";
    if (!pass) {
      all_pass = false;
      if (!counter.empty()) out << "  counterexample: " << counter << "\n";
    }
  }
};

// Runs `body` until it completes without a genericity failure (resampling
// is the body's job); anything else propagates.
template <class Body>
bool run_trial(Rng& rng, Body&& body) {
  (void)rng;
  for (int t = 0; t < 200; ++t) {
    try {
      return body();
    } catch (const Error& e) {
      if (e.kind != ErrorKind::genericity) throw;
    }
  }
  throw Error(ErrorKind::genericity, "no generic sample found after 200 attempts");
}

// One named property, `trials` independent trials, first failure recorded.
template <class Body>
void property(Reporter& rep, Rng& rng, long trials, const std::string& suite,
              const std::string& name, Body&& body) {
  std::string counter;
  bool pass = true;
  for (long t = 0; t < trials && pass; ++t)
    pass = run_trial(rng, [&] { return body(counter); });
  rep.prop(suite, name, pass, counter);
}

bool generic_xy(const XYState<R>& s) {
  for (long i = 0; i < s.n; ++i) {
    if (s.x[std::size_t(i)].is_zero() || s.y[std::size_t(i)].is_zero()) return false;
    if ((s.x[std::size_t(i)] + s.y[std::size_t(i)]).is_zero()) return false;
  }
  return true;
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
SPairState<S> random_spair(long n, Rng& rng) {
  SPairState<S> s;
  s.n = n;
  s.monodromy = random_mono<S>(rng);
  for (long i = 0; i < n; ++i) {
    s.Sminus.push_back(finite_point(random_scalar<S>(rng)));
    s.S.push_back(finite_point(random_scalar<S>(rng)));
  }
  return s;
}

/// Random point-pair state on which phi and two leapfrog steps are defined.
template <class S>
SPairState<S> random_good_spair(long n, Rng& rng) {
  while (true) {
    auto s = random_spair<S>(n, rng);
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

std::string counter_state(const XYState<R>& s) { return to_json(s).dump(); }
std::string counter_state(const PQState<R>& s) { return to_json(s).dump(); }
std::string counter_state(const SPairState<R>& s) { return to_json(s).dump(); }

// -- suite bodies ----------------------------------------------------------

void suite_dynamics(const RunConfig& cfg, Rng& rng, Reporter& rep) {
  const long k = cfg.k, n = cfg.n;
  const std::string S = "dynamics";

  property(rep, rng, cfg.trials, S, "pi-step-conjugation", [&](std::string& cx) {
    auto s = random_xy_state_where<R>(k, n, rng, generic_xy);
    if (xy_to_pq(tk_step(s)) == tbar_step(xy_to_pq(s))) return true;
    cx = counter_state(s);
    return false;
  });

  property(rep, rng, cfg.trials, S, "pi-duality-conjugation", [&](std::string& cx) {
    auto s = random_xy_state_where<R>(k, n, rng, generic_xy);
    if (xy_to_pq(dk_apply(s)) == dbar_apply(xy_to_pq(s))) return true;
    cx = counter_state(s);
    return false;
  });

  property(rep, rng, cfg.trials, S, "inverse-roundtrip", [&](std::string& cx) {
    auto s = random_xy_state_where<R>(k, n, rng, generic_xy);
    if (tk_step(tk_inverse(s)) == s) return true;
    cx = counter_state(s);
    return false;
  });

  property(rep, rng, cfg.trials, S, "pq-inverse-roundtrip", [&](std::string& cx) {
    auto s = random_xy_state_where<R>(k, n, rng, generic_xy);
    PQState<R> p = xy_to_pq(s);
    if (dbar_apply(tbar_step(dbar_apply(tbar_step(p)))) == p) return true;
    cx = counter_state(p);
    return false;
  });

  property(rep, rng, 1, S, "all-ones-fixed", [&](std::string& cx) {
    XYState<R> ones;
    ones.k = k;
    ones.n = n;
    ones.x.assign(std::size_t(n), R(1));
    ones.y.assign(std::size_t(n), R(1));
    PQState<R> pq = xy_to_pq(ones);
    if (tk_step(ones) == ones && tbar_step(pq) == pq) return true;
    cx = counter_state(ones);
    return false;
  });

  property(rep, rng, cfg.trials, S, "constant-fixed", [&](std::string& cx) {
    XYState<R> s;
    s.k = k;
    s.n = n;
    R a = random_rational(rng), b = random_rational(rng);
    if ((a + b).is_zero()) b = b + R(1);
    if (b.is_zero()) b = R(1);
    s.x.assign(std::size_t(n), a);
    s.y.assign(std::size_t(n), b);
    if (tk_step(s) == s) return true;
    cx = counter_state(s);
    return false;
  });

  if (k == 3) {
    property(rep, rng, cfg.trials, S, "corner-conjugation", [&](std::string& cx) {
      auto s = random_xy_state_where<R>(3, n, rng, generic_xy);
      CornerState<R> lhs = xy_to_corner(tk_step(s));
      CornerState<R> rhs = pentagram_corner_step(xy_to_corner(s));
      for (long i = 0; i < n; ++i)
        if (!(lhs.X[std::size_t(i)] == rhs.X[cyc(i + n - 1, n)] &&
              lhs.Y[std::size_t(i)] == rhs.Y[cyc(i + n - 1, n)])) {
          cx = counter_state(s);
          return false;
        }
      return true;
    });

    property(rep, rng, cfg.trials, S, "corner-scaling", [&](std::string& cx) {
      auto s = random_xy_state_where<R>(3, n, rng, generic_xy);
      CornerState<R> c = xy_to_corner(s);
      const R t = random_rational(rng);
      auto scale = [&](CornerState<R> w) {
        for (long i = 0; i < w.n; ++i) {
          w.X[std::size_t(i)] = w.X[std::size_t(i)] * t;
          w.Y[std::size_t(i)] = w.Y[std::size_t(i)] / t;
        }
        return w;
      };
      CornerState<R> lhs = pentagram_corner_step(scale(c));
      CornerState<R> rhs = scale(pentagram_corner_step(c));
      if (lhs == rhs) return true;
      cx = counter_state(s);
      return false;
    });
  }
}

void suite_pq_bracket(const RunConfig& cfg, Rng& rng, Reporter& rep) {
  const long k = cfg.k, n = cfg.n;
  const std::string S = "pq-bracket";
  const PoissonTensor t = pq_tensor(build_quiver(k, n));
  auto map = [k, n](const auto& v) { return tbar_flat(k, n, v); };

  property(rep, rng, cfg.trials, S, "tensor-invariance", [&](std::string& cx) {
    auto s = random_xy_state_where<R>(k, n, rng, generic_xy);
    PQState<R> pq = xy_to_pq(s);
    tbar_step(pq);
    if (check_map_invariance(map, t, concat_pq(pq))) return true;
    cx = counter_state(pq);
    return false;
  });

  property(rep, rng, cfg.trials, S, "casimir-product", [&](std::string& cx) {
    auto s = random_xy_state_where<R>(k, n, rng, generic_xy);
    PQState<R> pq = xy_to_pq(s);
    PQState<R> im = tbar_step(pq);
    R before(1), after(1);
    for (long i = 0; i < n; ++i) {
      before = before * pq.p[std::size_t(i)] * pq.q[std::size_t(i)];
      after = after * im.p[std::size_t(i)] * im.q[std::size_t(i)];
    }
    if (before == after) return true;
    cx = counter_state(pq);
    return false;
  });

  property(rep, rng, 1, S, "casimir-family", [&](std::string& cx) {
    auto cs = casimirs(t, MapParams(k, n));
    if (cs.size() == 1 && is_casimir(t, cs[0])) return true;
    cx = "casimir family of the quiver tensor";
    return false;
  });
}

void suite_xy_bracket(const RunConfig& cfg, Rng& rng, Reporter& rep) {
  const long k = cfg.k, n = cfg.n;
  const std::string S = "xy-bracket";
  const MapParams mp(k, n);
  const PoissonTensor t = xy_tensor(mp);
  auto map = [k, n](const auto& v) { return tk_flat(k, n, v); };

  property(rep, rng, cfg.trials, S, "tensor-invariance", [&](std::string& cx) {
    auto s = random_xy_state_where<R>(k, n, rng, generic_xy);
    tk_step(s);
    if (check_map_invariance(map, t, concat_xy(s))) return true;
    cx = counter_state(s);
    return false;
  });

  property(rep, rng, 1, S, "casimir-count", [&](std::string& cx) {
    auto cs = casimirs(t, mp);
    const std::size_t expect = (n % 2 == 0 && k % 2 == 1) ? 4u : 2u;
    if (cs.size() == expect) return true;
    cx = "expected " + std::to_string(expect) + " casimirs, found " + std::to_string(cs.size());
    return false;
  });

  property(rep, rng, 1, S, "casimir-brackets", [&](std::string& cx) {
    auto cs = casimirs(t, mp);
    for (const auto& m : cs)
      if (!is_casimir(t, m)) {
        cx = "documented casimir family member fails the kernel test";
        return false;
      }
    return true;
  });
}

void suite_integrals(const RunConfig& cfg, Rng& rng, Reporter& rep) {
  property(rep, rng, cfg.trials, "integrals", "char-poly-invariance", [&](std::string& cx) {
    auto s = random_xy_state_where<R>(cfg.k, cfg.n, rng, generic_xy);
    if (char_poly(tk_step(s)) == char_poly(s)) return true;
    cx = counter_state(s);
    return false;
  });
}

void suite_involution(const RunConfig& cfg, Rng& rng, Reporter& rep) {
  property(rep, rng, cfg.trials, "involution", "pairwise-involution", [&](std::string& cx) {
    auto s = random_xy_state_where<R>(cfg.k, cfg.n, rng, generic_xy);
    if (integrals_in_involution(s)) return true;
    cx = counter_state(s);
    return false;
  });
}

void suite_zero_curvature(const RunConfig& cfg, Rng& rng, Reporter& rep) {
  property(rep, rng, cfg.trials, "zero-curvature", "local-and-monodromy", [&](std::string& cx) {
    auto s = random_xy_state_where<R>(cfg.k, cfg.n, rng, generic_xy);
    if (zero_curvature_check(s)) return true;
    cx = counter_state(s);
    return false;
  });
}

void suite_geometry(const RunConfig& cfg, Rng& rng, Reporter& rep) {
  const long k = cfg.k, n = cfg.n;
  const std::string S = "geometry";
  if (k < 3) throw UnsupportedSpan(int(k));

  property(rep, rng, cfg.trials, S, "corrugated-step-conjugation", [&](std::string& cx) {
    auto s = random_positive_xy_state(k, n, rng);
    auto P = polygon_from_xy(s, identity_seed(k));
    if (extract_xy(fk_step(P)) == tk_step(s)) return true;
    cx = counter_state(s);
    return false;
  });

  property(rep, rng, cfg.trials, S, "corrugation-rank", [&](std::string& cx) {
    auto s = random_positive_xy_state(k, n, rng);
    auto img = fk_step(polygon_from_xy(s, identity_seed(k)));
    for (long i = 0; i < n; ++i) {
      Mat<R> m{std::size_t(k), 4};
      for (long r = 0; r < k; ++r) {
        m[std::size_t(r)][0] = img.lifts[std::size_t(i)][std::size_t(r)];
        m[std::size_t(r)][1] = img.lifts[std::size_t(i + 1)][std::size_t(r)];
        m[std::size_t(r)][2] = img.lifts[std::size_t(i + k - 1)][std::size_t(r)];
        m[std::size_t(r)][3] = img.lifts[std::size_t(i + k)][std::size_t(r)];
      }
      if (rank(m) != 3) {
        cx = counter_state(s);
        return false;
      }
    }
    return true;
  });

  property(rep, rng, cfg.trials, S, "plane-step-conjugation", [&](std::string& cx) {
    auto s = random_positive_xy_state(k, n, rng);
    auto P = plane_polygon_from_xy(s, rational_seed(3, k, rng));
    if (psi(gk_step(P)) == tk_step(s)) return true;
    cx = counter_state(s);
    return false;
  });

  property(rep, rng, cfg.trials, S, "plane-roundtrip", [&](std::string& cx) {
    auto s = random_positive_xy_state(k, n, rng);
    if (psi(plane_polygon_from_xy(s, rational_seed(3, k, rng))) == s) return true;
    cx = counter_state(s);
    return false;
  });
}

void suite_duality(const RunConfig& cfg, Rng& rng, Reporter& rep) {
  const long k = cfg.k, n = cfg.n;
  const std::string S = "duality";
  if (k < 3) throw UnsupportedSpan(int(k));
  const MapParams mp(k, n);

  property(rep, rng, cfg.trials, S, "dual-step-regression", [&](std::string& cx) {
    auto s = random_positive_xy_state(k, n, rng);
    auto P = polygon_from_xy(s, rational_seed(k, k, rng));
    XYState<R> want = dk_apply(s);
    if (k % 2 == 1) want = negated(want);
    if (extract_xy(dual_polygon(P)) == shifted(want, mp.r)) return true;
    cx = counter_state(s);
    return false;
  });

  property(rep, rng, cfg.trials, S, "double-dual-shift", [&](std::string& cx) {
    auto s = random_positive_xy_state(k, n, rng);
    auto P = polygon_from_xy(s, rational_seed(k, k, rng));
    if (extract_xy(dual_polygon(dual_polygon(P))) == shifted(s, k - 2)) return true;
    cx = counter_state(s);
    return false;
  });
}

void suite_leapfrog(const RunConfig& cfg, Rng& rng, Reporter& rep) {
  const long n = std::max<long>(cfg.n, 3);
  const std::string S = "leapfrog";

  property(rep, rng, cfg.trials, S, "phi-step-conjugation", [&](std::string& cx) {
    auto s = random_good_spair<R>(n, rng);
    if (phi(f2_step(s)) == tk_step(phi(s))) return true;
    cx = counter_state(s);
    return false;
  });

  property(rep, rng, cfg.trials, S, "casimir-level", [&](std::string& cx) {
    auto s = random_good_spair<R>(n, rng);
    PQState<R> pq = xy_to_pq(phi(s));
    R prod(1);
    for (long i = 0; i < n; ++i) prod = prod * pq.p[std::size_t(i)] * pq.q[std::size_t(i)];
    if (prod == R(1)) return true;
    cx = counter_state(s);
    return false;
  });

  property(rep, rng, cfg.trials, S, "menelaus-forms", [&](std::string& cx) {
    auto s = random_good_spair<R>(n, rng);
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
      const bool harmonic =
          one / (pl - si) + one / (sm - si) == one / (a - si) + one / (sp - si);
      const bool ratio =
          (pl - a) * (si - sm) * (si - sp) == -((pl - si) * (a - si) * (sm - sp));
      if (!harmonic || !ratio) {
        cx = counter_state(s);
        return false;
      }
    }
    return true;
  });

  property(rep, rng, cfg.trials, S, "omega-invariance", [&](std::string& cx) {
    using D = Dual<Real64>;
    SPairState<Real64> s;
    s.n = n;
    Mat<Real64> m = random_mono<Real64>(rng);
    if (std::abs(m[0][0] * m[1][1] - m[0][1] * m[1][0]) < 0.1) m[0][0] += 1.0;
    s.monodromy = m;
    SPairTangent<Real64> u, v;
    for (long i = 0; i < n; ++i) {
      s.Sminus.push_back(finite_point(random_scalar<Real64>(rng)));
      s.S.push_back(finite_point(random_scalar<Real64>(rng)));
      u.dSminus.push_back(random_scalar<Real64>(rng));
      u.dS.push_back(random_scalar<Real64>(rng));
      v.dSminus.push_back(random_scalar<Real64>(rng));
      v.dS.push_back(random_scalar<Real64>(rng));
    }
    const double before = omega_eval(s, u, v);
    SPairState<D> sd;
    sd.n = n;
    Mat<D> md{2, 2};
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) md[r][c] = D(m[r][c]);
    sd.monodromy = md;
    for (long i = 0; i < n; ++i) {
      sd.Sminus.push_back(finite_point(
          D(s.Sminus[std::size_t(i)].v, {u.dSminus[std::size_t(i)], v.dSminus[std::size_t(i)]})));
      sd.S.push_back(
          finite_point(D(s.S[std::size_t(i)].v, {u.dS[std::size_t(i)], v.dS[std::size_t(i)]})));
    }
    const auto od = f2_step(sd);
    SPairState<Real64> s2;
    SPairTangent<Real64> u2, v2;
    s2.n = n;
    s2.monodromy = m;
    for (long i = 0; i < n; ++i) {
      if (od.S[std::size_t(i)].inf) throw DegenerateConfiguration(i);
      const D& a = od.Sminus[std::size_t(i)].v;
      const D& b = od.S[std::size_t(i)].v;
      s2.Sminus.push_back(finite_point(a.primal()));
      s2.S.push_back(finite_point(b.primal()));
      u2.dSminus.push_back(a.d(0));
      u2.dS.push_back(b.d(0));
      v2.dSminus.push_back(a.d(1));
      v2.dS.push_back(b.d(1));
    }
    const double after = omega_eval(s2, u2, v2);
    if (std::abs(before - after) / std::max(1.0, std::abs(before)) < 1e-9) return true;
    cx = "2-form drift " + std::to_string(std::abs(before - after));
    return false;
  });
}

void suite_circles(const RunConfig& cfg, Rng& rng, Reporter& rep) {
  const long n = std::min<long>(std::max<long>(cfg.n, 1), 10);
  const std::string S = "circles";

  property(rep, rng, 1, S, "worked-example", [&](std::string& cx) {
    SPairState<C> s;
    s.n = 1;
    Mat<C> m{2, 2};
    m[0][0] = m[0][1] = m[1][1] = C(1.0, 0.0);
    m[1][0] = C(0.0, 0.0);
    s.monodromy = m;
    s.Sminus.push_back(finite_point(C(0.0, 1.0)));
    s.S.push_back(finite_point(C(0.0, 0.0)));
    auto a = h2_step(s), b = f2_step(s);
    const C want(0.0, -1.0);
    if (!a.S[0].inf && !b.S[0].inf && std::abs(a.S[0].v - want) < 1e-12 &&
        std::abs(b.S[0].v - want) < 1e-12)
      return true;
    cx = "tangent-circle image of the (i, 0) pair with unit-shift holonomy";
    return false;
  });

  property(rep, rng, cfg.trials, S, "tangent-vs-projective", [&](std::string& cx) {
    auto s = random_spair<C>(n, rng);
    auto a = h2_step(s);
    auto b = f2_step(s);
    double worst = 0.0;
    for (long i = 0; i < n; ++i) {
      if (a.S[std::size_t(i)].inf != b.S[std::size_t(i)].inf) throw DegenerateConfiguration(i);
      if (a.S[std::size_t(i)].inf) continue;
      worst = std::max(worst, std::abs(a.S[std::size_t(i)].v - b.S[std::size_t(i)].v));
    }
    if (worst < 1e-10) return true;
    cx = "chart and projective steps differ by " + std::to_string(worst);
    return false;
  });
}

void suite_lattice(const RunConfig& cfg, Rng& rng, Reporter& rep) {
  const std::string S = "lattice";
  const long rows = 6, cols = 6;

  // Orbits are read as plain doubly indexed sequences, so the holonomy must
  // be trivial or the site wraparound would leave the lattice picture.
  auto untwisted_spair = [&](long nn) {
    SPairState<R> s;
    s.n = nn;
    s.monodromy = identity2<R>();
    for (long i = 0; i < nn; ++i) {
      s.Sminus.push_back(finite_point(random_scalar<R>(rng)));
      s.S.push_back(finite_point(random_scalar<R>(rng)));
    }
    return s;
  };

  // Time slices of a leapfrog orbit placed on the even sublattice along
  // (M, N) = (time + site, time - site).
  auto orbit_field = [&](const SPairState<R>& s, const R& q) {
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
    f.q = q;
    f.z.assign(std::size_t(rows), std::vector<std::optional<R>>(std::size_t(cols)));
    for (long m = 0; m < rows; ++m)
      for (long nn = 0; nn < cols; ++nn) {
        if ((m + nn) % 2 != 0) continue;
        f.z[std::size_t(m)][std::size_t(nn)] =
            a[std::size_t((m + nn) / 2)][std::size_t(cyc((m - nn) / 2, s.n))];
      }
    return f;
  };

  auto relation = [](const LatticeField<R>& f, long m, long nn) {
    const R z = *f.z[std::size_t(m)][std::size_t(nn)];
    const R ne = *f.z[std::size_t(m + 1)][std::size_t(nn + 1)];
    const R sw = *f.z[std::size_t(m - 1)][std::size_t(nn - 1)];
    const R se = *f.z[std::size_t(m + 1)][std::size_t(nn - 1)];
    const R nw = *f.z[std::size_t(m - 1)][std::size_t(nn + 1)];
    const R one(1);
    return one / (z - ne) + one / (z - sw) == one / (z - se) + one / (z - nw);
  };

  property(rep, rng, cfg.trials, S, "orbit-relation", [&](std::string& cx) {
    auto s = untwisted_spair(5);
    auto f = orbit_field(s, R(-1));
    for (long m = 1; m + 1 < rows; ++m)
      for (long nn = 1; nn + 1 < cols; ++nn) {
        if ((m + nn) % 2 != 0) continue;
        if (!relation(f, m, nn)) {
          cx = counter_state(s);
          return false;
        }
      }
    return true;
  });

  property(rep, rng, cfg.trials, S, "harmonic-extension", [&](std::string& cx) {
    auto s = untwisted_spair(5);
    auto f = orbit_field(s, R(-1));
    auto full = crossratio_extend(f, random_rational(rng));
    for (long m = 0; m + 1 < rows; ++m)
      for (long nn = 0; nn + 1 < cols; ++nn) {
        const R got = detail::square_bracket(*full.z[std::size_t(m)][std::size_t(nn)],
                                             *full.z[std::size_t(m + 1)][std::size_t(nn)],
                                             *full.z[std::size_t(m + 1)][std::size_t(nn + 1)],
                                             *full.z[std::size_t(m)][std::size_t(nn + 1)]);
        if (!(got == full.q)) {
          cx = counter_state(s);
          return false;
        }
      }
    for (long m = 1; m + 1 < rows; ++m)
      for (long nn = 1; nn + 1 < cols; ++nn) {
        if ((m + nn) % 2 != 1) continue;
        if (!relation(full, m, nn)) {
          cx = counter_state(s);
          return false;
        }
      }
    return true;
  });
}

int cmd_verify(const RunConfig& cfg) {
  using SuiteFn = void (*)(const RunConfig&, Rng&, Reporter&);
  const std::vector<std::pair<std::string, SuiteFn>> suites = {
      {"dynamics", suite_dynamics},
      {"pq-bracket", suite_pq_bracket},
      {"xy-bracket", suite_xy_bracket},
      {"integrals", suite_integrals},
      {"involution", suite_involution},
      {"zero-curvature", suite_zero_curvature},
      {"geometry", suite_geometry},
      {"duality", suite_duality},
      {"leapfrog", suite_leapfrog},
      {"circles", suite_circles},
      {"lattice", suite_lattice},
  };
  Reporter rep;
  Rng rng(cfg.seed);
  bool ran = false;
  for (const auto& [name, fn] : suites) {
    if (!cfg.suite.empty() && cfg.suite != name) continue;
    fn(cfg, rng, rep);
    ran = true;
  }
  if (!ran) {
    std::string known;
    for (const auto& [name, fn] : suites) known += (known.empty() ? "" : ", ") + name;
    throw Error(ErrorKind::invalid_input,
                "unknown suite: " + cfg.suite + " (expected one of " + known + ")");
  }
  emit(cfg, rep.out.str());
  return rep.all_pass ? 0 : 1;
}

// --------------------------------------------------------------- render ---

struct Pt {
  double x = 0, y = 0;
};

const char* kPalette[6] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

Pt chart_point(const Vec<Real64>& v, long label) {
  const double scale = std::fabs(v[0]) + std::fabs(v[1]) + std::fabs(v[2]);
  if (std::fabs(v[2]) <= 1e-12 * std::max(scale, 1e-300))
    throw Error(ErrorKind::genericity,
                "vertex " + std::to_string(label) + " escapes the affine chart");
  return {v[0] / v[2], v[1] / v[2]};
}

int render_polygon(const RunConfig& cfg, const XYState<Real64>& s) {
  const long k = s.k, n = s.n;
  // fixed Vandermonde seed (nodes 1, 2, 3) so output depends only on input
  std::vector<Vec<Real64>> seed(3, Vec<Real64>(std::size_t(k), 1.0));
  for (long r = 0; r < 3; ++r)
    for (long c = 1; c < k; ++c)
      seed[std::size_t(r)][std::size_t(c)] = seed[std::size_t(r)][std::size_t(c - 1)] * double(r + 1);
  PlanePolygon<Real64> P = plane_polygon_from_xy(s, seed);

  std::vector<std::vector<Pt>> layers;
  for (long step = 0;; ++step) {
    std::vector<Pt> pts;
    for (long i = 0; i < n + k; ++i) pts.push_back(chart_point(P.lifts[std::size_t(i)], i));
    layers.push_back(std::move(pts));
    if (step == cfg.steps) break;
    P = gk_step(P);
  }

  double ext = 1e-9;
  {
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (const auto& layer : layers)
      for (const Pt& p : layer) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
      }
    ext = std::max({ext, x1 - x0, y1 - y0});
  }
  const double half = 0.012 * ext;

  SvgCanvas svg;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const auto& pts = layers[l];
    svg.begin_group(kPalette[l % 6], 0.004 * ext);
    for (long i = 0; i < n; ++i)
      svg.line(pts[std::size_t(i)].x, pts[std::size_t(i)].y, pts[std::size_t(i + 1)].x,
               pts[std::size_t(i + 1)].y);
    for (long i = 0; i < n; ++i)
      svg.line(pts[std::size_t(i)].x, pts[std::size_t(i)].y, pts[std::size_t(i + k - 1)].x,
               pts[std::size_t(i + k - 1)].y, "1.2 1.2");
    for (long i = 0; i < n; ++i)
      svg.marker(pts[std::size_t(i)].x, pts[std::size_t(i)].y, half, kPalette[l % 6]);
    svg.end_group();
  }
  emit(cfg, svg.str());
  return 0;
}

struct Circle {
  Pt c;
  double r = 0;
};

Circle circumcircle(const C& a, const C& b, const C& c) {
  // intersection of the perpendicular bisectors of (a,b) and (a,c)
  const C u = b - a, v = c - a;
  const double det = u.real() * v.imag() - u.imag() * v.real();
  const double scale = std::abs(u) * std::abs(v);
  if (std::fabs(det) <= 1e-12 * std::max(scale, 1e-300))
    throw Error(ErrorKind::genericity, "collinear triple has no circumcircle");
  const double ru = 0.5 * std::norm(u), rv = 0.5 * std::norm(v);
  const double px = (ru * v.imag() - rv * u.imag()) / det;
  const double py = (rv * u.real() - ru * v.real()) / det;
  Circle out;
  out.c = {a.real() + px, a.imag() + py};
  out.r = std::hypot(px, py);
  return out;
}

/// Circle through p and q tangent at p to the circle centered at o (which
/// passes through p): its center lies on the line (o, p) and on the
/// perpendicular bisector of (p, q).
Circle tangent_circle(const C& p, const C& q, const Pt& o) {
  const C d(o.x - p.real(), o.y - p.imag());
  const C w = p - q;
  const double den = 2.0 * (d.real() * w.real() + d.imag() * w.imag());
  const double scale = std::abs(d) * std::abs(w);
  if (std::fabs(den) <= 1e-12 * std::max(scale, 1e-300))
    throw Error(ErrorKind::genericity, "tangency direction passes through both points");
  const double t = -std::norm(w) / den;
  Circle out;
  out.c = {p.real() + t * d.real(), p.imag() + t * d.imag()};
  out.r = std::fabs(t) * std::abs(d);
  return out;
}

int render_circles(const RunConfig& cfg, const SPairState<C>& s) {
  const long n = s.n;
  for (long i = 0; i < n; ++i)
    if (s.Sminus[std::size_t(i)].inf || s.S[std::size_t(i)].inf)
      throw Error(ErrorKind::genericity, "circle pattern needs finite points");
  const SPairState<C> out = h2_step(s);
  const auto se = detail::extend_twisted(s.S, s.monodromy, 1);
  const ProjPoint<C> wrap = mobius(inverse(s.monodromy), s.S[std::size_t(n - 1)]);
  if (wrap.inf || se[std::size_t(n)].inf)
    throw Error(ErrorKind::genericity, "holonomy image of a construction point is infinite");

  std::vector<Circle> circles;
  std::vector<std::pair<Pt, const char*>> marks;
  for (long i = 0; i < n; ++i) {
    const C zc = s.S[std::size_t(i)].v;
    const C zm = s.Sminus[std::size_t(i)].v;
    const ProjPoint<C>& nextp = se[std::size_t(i + 1)];
    const ProjPoint<C>& prevp = i > 0 ? s.S[std::size_t(i - 1)] : wrap;
    if (nextp.inf || prevp.inf)
      throw Error(ErrorKind::genericity, "holonomy image of a construction point is infinite");
    const C zp = nextp.v, zq = prevp.v;
    const Circle c1 = circumcircle(zq, zc, zm);
    const Circle c3 = circumcircle(zp, zc, zm);
    circles.push_back(c1);
    circles.push_back(tangent_circle(zc, zp, c1.c));
    circles.push_back(c3);
    circles.push_back(tangent_circle(zc, zq, c3.c));
    if (out.S[std::size_t(i)].inf)
      throw Error(ErrorKind::genericity, "new point escapes to infinity");
    marks.push_back({{zm.real(), zm.imag()}, "#2ca02c"});
    marks.push_back({{zc.real(), zc.imag()}, "#1f77b4"});
    marks.push_back(
        {{out.S[std::size_t(i)].v.real(), out.S[std::size_t(i)].v.imag()}, "#d62728"});
  }

  double ext = 1e-9;
  for (const Circle& c : circles) ext = std::max(ext, 2 * c.r);
  const double half = 0.012 * ext;

  SvgCanvas svg;
  svg.begin_group("#444444", 0.004 * ext);
  for (const Circle& c : circles) svg.circle(c.c.x, c.c.y, c.r);
  svg.end_group();
  svg.begin_group("none", 0.004 * ext);
  for (const auto& [p, color] : marks) svg.marker(p.x, p.y, half, color);
  svg.end_group();
  emit(cfg, svg.str());
  return 0;
}

int cmd_render(const RunConfig& cfg) {
  if (cfg.backend == "rational")
    throw Error(ErrorKind::invalid_input,
                "rendering requires an embedding; use --backend float or complex");
  const Json j = load_state(cfg, "render");
  const std::string type = json_state_type(j);
  if (type == "xy") {
    if (cfg.backend != "float")
      throw Error(ErrorKind::invalid_input, "polygon rendering uses --backend float");
    return render_polygon(cfg, xy_from_json<Real64>(j));
  }
  if (type == "spair") return render_circles(cfg, spair_from_json<C>(j));
  throw Error(ErrorKind::invalid_input,
              "render needs an (x, y) polygon state or a point-pair state");
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* mb = std::getenv("PENTALAB_MAX_BITS")) {
    char* end = nullptr;
    const long bits = std::strtol(mb, &end, 10);
    if (end == mb || *end != '\0' || bits <= 0) {
      std::cerr << "error: PENTALAB_MAX_BITS must be a positive integer\n";
      return 2;
    }
    Rational::set_max_bits(bits);
  }

  CLI::App app{
      "pentalab: higher pentagram maps, their cluster dynamics, and the "
      "point-pair systems of the projective line"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--k", cfg.k, "span parameter k (diagonal depth), 2 <= k <= n");
    sub->add_option("--n", cfg.n, "number of sites / vertices");
    sub->add_option("--steps", cfg.steps, "number of map applications");
    sub->add_option("--trials", cfg.trials, "random trials per verified property");
    sub->add_option("--seed", cfg.seed, "PRNG seed for random states");
    sub->add_option("--backend", cfg.backend, "scalar backend: rational, float, complex");
    sub->add_option("--state", cfg.state_path, "input state file (JSON)");
    sub->add_option("--out", cfg.out_path, "output path (default: stdout)");
    sub->add_flag("--decimal", cfg.decimal, "add approximate decimal columns to CSV output");
  };

  CLI::App* c_iterate = app.add_subcommand(
      "iterate", "iterate the step map of the state's coordinate system, emit a CSV orbit");
  CLI::App* c_integrals = app.add_subcommand(
      "integrals", "emit the spectral invariants I_ij of an (x, y) state as CSV (i, j, value)");
  CLI::App* c_verify = app.add_subcommand(
      "verify", "run structural verification suites on random states (exact where possible)");
  CLI::App* c_render = app.add_subcommand(
      "render", "render a polygon orbit or a one-step circle pattern as deterministic SVG");
  CLI::App* c_convert = app.add_subcommand(
      "convert",
      "convert between coordinate systems: xy -> pq, pq -> xy (x1 = 1), corner -> xy, "
      "point pairs -> xy");
  for (CLI::App* sub : {c_iterate, c_integrals, c_verify, c_render, c_convert}) add_common(sub);
  c_verify->add_option(
      "--suite", cfg.suite,
      "suite name: dynamics, pq-bracket, xy-bracket, integrals, involution, zero-curvature, "
      "geometry, duality, leapfrog, circles, lattice (default: all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    validate(cfg);
    if (c_iterate->parsed()) return cmd_iterate(cfg);
    if (c_integrals->parsed()) return cmd_integrals(cfg);
    if (c_verify->parsed()) return cmd_verify(cfg);
    if (c_render->parsed()) return cmd_render(cfg);
    return cmd_convert(cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind == ErrorKind::invalid_input ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
