/// @file json_io.hpp
/// @brief JSON (de)serialization for coordinate states and S-pairs.
///
/// Scalars encode per backend: rationals as exact strings ("3/4"), reals as
/// numbers, complex values as [re, im] pairs. Points of the projective line
/// additionally admit the string "inf". State objects carry a "type" tag
/// ("xy", "pq", "corner", "spair") plus the size fields, so files are
/// self-describing.
#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pentalab/error.hpp"
#include "pentalab/leapfrog.hpp"
#include "pentalab/linalg.hpp"
#include "pentalab/scalar.hpp"
#include "pentalab/state.hpp"

namespace pentalab {

using Json = nlohmann::json;

template <class S>
struct JsonCodec;

template <>
struct JsonCodec<Rational> {
  static Json to(const Rational& v) { return ScalarTraits<Rational>::str(v); }
  static Rational from(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) return ScalarTraits<Rational>::parse(j.get<std::string>());
    throw ParseError("rational values must be strings like \"3/4\" or integers");
  }
};

template <>
struct JsonCodec<Real64> {
  static Json to(const Real64& v) { return v; }
  static Real64 from(const Json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return ScalarTraits<Real64>::parse(j.get<std::string>());
    throw ParseError("real values must be numbers or numeric strings");
  }
};

template <>
struct JsonCodec<ComplexScalar> {
  static Json to(const ComplexScalar& v) { return Json::array({v.real(), v.imag()}); }
  static ComplexScalar from(const Json& j) {
    if (j.is_number()) return ComplexScalar(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
      return ComplexScalar(j[0].get<double>(), j[1].get<double>());
    throw ParseError("complex values must be [re, im] pairs");
  }
};

namespace detail {

template <class S>
std::vector<S> scalars_from_json(const Json& j, const char* field, long expect) {
  if (!j.contains(field) || !j[field].is_array() || long(j[field].size()) != expect)
    throw ParseError(std::string("field '") + field + "' must be an array of length " +
                     std::to_string(expect));
  std::vector<S> out;
  out.reserve(std::size_t(expect));
  for (const Json& e : j[field]) out.push_back(JsonCodec<S>::from(e));
  return out;
}

template <class S>
Json scalars_to_json(const std::vector<S>& v) {
  Json a = Json::array();
  for (const S& e : v) a.push_back(JsonCodec<S>::to(e));
  return a;
}

inline long long_field(const Json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_number_integer())
    throw ParseError(std::string("missing integer field '") + field + "'");
  return j[field].get<long>();
}

inline void require_type(const Json& j, const char* want) {
  if (!j.is_object() || !j.contains("type") || j["type"] != want)
    throw ParseError(std::string("expected a state object with type \"") + want + "\"");
}

}  // namespace detail

inline std::string json_state_type(const Json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw ParseError("state files need a string \"type\" field");
  return j["type"].get<std::string>();
}

template <class S>
Json to_json(const XYState<S>& s) {
  return Json{{"type", "xy"},
              {"k", s.k},
              {"n", s.n},
              {"x", detail::scalars_to_json(s.x)},
              {"y", detail::scalars_to_json(s.y)}};
}

template <class S>
XYState<S> xy_from_json(const Json& j) {
  detail::require_type(j, "xy");
  XYState<S> s;
  s.k = detail::long_field(j, "k");
  s.n = detail::long_field(j, "n");
  MapParams mp(s.k, s.n);
  s.x = detail::scalars_from_json<S>(j, "x", s.n);
  s.y = detail::scalars_from_json<S>(j, "y", s.n);
  return s;
}

template <class S>
Json to_json(const PQState<S>& s) {
  return Json{{"type", "pq"},
              {"k", s.k},
              {"n", s.n},
              {"p", detail::scalars_to_json(s.p)},
              {"q", detail::scalars_to_json(s.q)}};
}

template <class S>
PQState<S> pq_from_json(const Json& j) {
  detail::require_type(j, "pq");
  PQState<S> s;
  s.k = detail::long_field(j, "k");
  s.n = detail::long_field(j, "n");
  MapParams mp(s.k, s.n);
  s.p = detail::scalars_from_json<S>(j, "p", s.n);
  s.q = detail::scalars_from_json<S>(j, "q", s.n);
  return s;
}

template <class S>
Json to_json(const CornerState<S>& s) {
  return Json{{"type", "corner"},
              {"n", s.n},
              {"X", detail::scalars_to_json(s.X)},
              {"Y", detail::scalars_to_json(s.Y)}};
}

template <class S>
CornerState<S> corner_from_json(const Json& j) {
  detail::require_type(j, "corner");
  CornerState<S> s;
  s.n = detail::long_field(j, "n");
  if (s.n < 1) throw ParseError("corner states need n >= 1");
  s.X = detail::scalars_from_json<S>(j, "X", s.n);
  s.Y = detail::scalars_from_json<S>(j, "Y", s.n);
  return s;
}

template <class S>
Json point_to_json(const ProjPoint<S>& p) {
  if (p.inf) return "inf";
  return JsonCodec<S>::to(p.v);
}

template <class S>
ProjPoint<S> point_from_json(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return point_at_infinity<S>();
  return finite_point(JsonCodec<S>::from(j));
}

template <class S>
Json to_json(const SPairState<S>& s) {
  Json sm = Json::array(), sc = Json::array();
  for (const auto& p : s.Sminus) sm.push_back(point_to_json(p));
  for (const auto& p : s.S) sc.push_back(point_to_json(p));
  Json mono = Json::array();
  for (int r = 0; r < 2; ++r)
    mono.push_back(Json::array(
        {JsonCodec<S>::to(s.monodromy[r][0]), JsonCodec<S>::to(s.monodromy[r][1])}));
  return Json{{"type", "spair"}, {"n", s.n}, {"sminus", sm}, {"s", sc}, {"monodromy", mono}};
}

template <class S>
SPairState<S> spair_from_json(const Json& j) {
  detail::require_type(j, "spair");
  SPairState<S> s;
  s.n = detail::long_field(j, "n");
  if (s.n < 1) throw ParseError("s-pair states need n >= 1");
  for (const char* field : {"sminus", "s"}) {
    if (!j.contains(field) || !j[field].is_array() || long(j[field].size()) != s.n)
      throw ParseError(std::string("field '") + field + "' must be an array of length " +
                       std::to_string(s.n));
  }
  for (const Json& e : j["sminus"]) s.Sminus.push_back(point_from_json<S>(e));
  for (const Json& e : j["s"]) s.S.push_back(point_from_json<S>(e));
  if (!j.contains("monodromy") || !j["monodromy"].is_array() || j["monodromy"].size() != 2)
    throw ParseError("field 'monodromy' must be a 2x2 matrix");
  Mat<S> m{2, 2};
  for (int r = 0; r < 2; ++r) {
    const Json& row = j["monodromy"][std::size_t(r)];
    if (!row.is_array() || row.size() != 2) throw ParseError("field 'monodromy' must be a 2x2 matrix");
    for (int c = 0; c < 2; ++c) m[r][c] = JsonCodec<S>::from(row[std::size_t(c)]);
  }
  s.monodromy = m;
  return s;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::invalid_input, "cannot open file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw ParseError("invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::invalid_input, "cannot open file for writing: " + path);
  out << text;
  if (!out) throw Error(ErrorKind::invalid_input, "failed writing file: " + path);
}

}  // namespace pentalab
