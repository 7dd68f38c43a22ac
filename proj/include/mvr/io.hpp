#ifndef MVR_IO_HPP
#define MVR_IO_HPP

// JSON serialization of triangulations, Z-maps and multiplicity reports.
// Integers that fit in 64 bits are JSON numbers, larger ones decimal strings.

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mvr/error.hpp"
#include "mvr/exact.hpp"
#include "mvr/pwl.hpp"
#include "mvr/retract.hpp"
#include "mvr/triangulation.hpp"

namespace mvr::io {

using Json = nlohmann::ordered_json;

inline Json integer_to_json(const Integer& v) {
  static const Integer lo = std::numeric_limits<std::int64_t>::min();
  static const Integer hi = std::numeric_limits<std::int64_t>::max();
  if (v >= lo && v <= hi) return Json(v.convert_to<std::int64_t>());
  return Json(v.str());
}

inline Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos)
      throw InputError("'" + s + "' is not an integer");
    return Integer(s);
  }
  throw InputError("expected an integer, got " + j.dump());
}

inline std::size_t index_from_json(const Json& j) {
  if (!j.is_number_unsigned()) throw InputError("expected a nonnegative index, got " + j.dump());
  return j.get<std::size_t>();
}

inline const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw InputError(std::string("missing field '") + name + "'");
  return j.at(name);
}

inline const Json& array_field(const Json& j, const char* name) {
  const Json& a = field(j, name);
  if (!a.is_array()) throw InputError(std::string("field '") + name + "' must be an array");
  return a;
}

inline Json point_to_json(const Point& p) {
  Json a = Json::array();
  HomogeneousVector h = to_homogeneous(p);
  for (const auto& e : h.entries()) a.push_back(integer_to_json(e));
  return a;
}

inline Point point_from_json(const Json& j, std::size_t n) {
  if (!j.is_array() || j.size() != n + 1) throw InputError("expected a homogeneous tuple of length " + std::to_string(n + 1));
  std::vector<Integer> e;
  for (const auto& x : j) e.push_back(integer_from_json(x));
  return from_homogeneous(HomogeneousVector(std::move(e)));
}

inline Json to_json(const Triangulation& t) {
  Json j;
  j["ambient_dim"] = t.ambient_dim();
  j["vertices"] = Json::array();
  for (const auto& v : t.vertices()) j["vertices"].push_back(point_to_json(v));
  j["maximal_simplexes"] = Json::array();
  for (const auto& s : t.simplexes()) j["maximal_simplexes"].push_back(s);
  return j;
}

/// Reads a triangulation; origin (optional) receives the input position of
/// every canonical simplex.
inline Triangulation triangulation_from_json(const Json& j, std::vector<std::size_t>* origin = nullptr) {
  std::size_t n = index_from_json(field(j, "ambient_dim"));
  if (n == 0) throw InputError("ambient_dim must be positive");
  std::vector<Point> vs;
  for (const auto& v : array_field(j, "vertices")) vs.push_back(point_from_json(v, n));
  std::vector<SimplexIndices> ss;
  for (const auto& s : array_field(j, "maximal_simplexes")) {
    if (!s.is_array()) throw InputError("a simplex must be an array of vertex indices");
    SimplexIndices idx;
    for (const auto& i : s) idx.push_back(index_from_json(i));
    ss.push_back(std::move(idx));
  }
  std::vector<std::size_t> local;
  Triangulation t = Triangulation::build(n, std::move(vs), std::move(ss), origin ? origin : &local);
  std::size_t given = array_field(j, "maximal_simplexes").size();
  if ((origin ? origin : &local)->size() != given)
    throw InputError("maximal_simplexes lists a face of another simplex or a duplicate");
  return t;
}

inline Json to_json(const PwlMap& f) {
  Json j;
  j["domain"] = to_json(f.domain());
  j["codomain_dim"] = f.codomain_dim();
  j["pieces"] = Json::array();
  for (const auto& row : f.all_pieces()) {
    Json r = Json::array();
    for (const auto& p : row) {
      Json a = Json::array();
      for (const auto& c : p.coeffs) a.push_back(integer_to_json(c));
      a.push_back(integer_to_json(p.constant));
      r.push_back(std::move(a));
    }
    j["pieces"].push_back(std::move(r));
  }
  return j;
}

inline PwlMap pwl_from_json(const Json& j) {
  std::vector<std::size_t> origin;
  Triangulation dom = triangulation_from_json(field(j, "domain"), &origin);
  std::size_t m = index_from_json(field(j, "codomain_dim"));
  std::size_t n = dom.ambient_dim();
  const Json& rows = array_field(j, "pieces");
  if (rows.size() != origin.size()) throw InputError("one row of pieces per maximal simplex is required");
  std::vector<std::vector<AffinePiece>> pieces;
  for (std::size_t o : origin) {
    const Json& row = rows[o];
    if (!row.is_array() || row.size() != m) throw InputError("each simplex needs codomain_dim pieces");
    std::vector<AffinePiece> ps;
    for (const auto& a : row) {
      if (!a.is_array() || a.size() != n + 1) throw InputError("a piece is [a1, ..., an, b]");
      AffinePiece p;
      for (std::size_t i = 0; i < n; ++i) p.coeffs.push_back(integer_from_json(a[i]));
      p.constant = integer_from_json(a[n]);
      ps.push_back(std::move(p));
    }
    pieces.push_back(std::move(ps));
  }
  return PwlMap(std::move(dom), m, std::move(pieces));
}

inline Json simplex_to_json(const RationalSimplex& s) {
  Json a = Json::array();
  for (const auto& v : s.vertices()) a.push_back(point_to_json(v));
  return a;
}

inline Json to_json(const MultiplicityReport& r) {
  Json j;
  j["verdict"] = r.finite ? "FINITE" : "INFINITE";
  if (r.finite) {
    j["count"] = r.count;
    j["certificates"] = Json::array();
    for (const auto& c : r.certificates) j["certificates"].push_back(to_json(c));
    j["witness"] = nullptr;
  } else {
    j["count"] = nullptr;
    j["certificates"] = Json::array();
    j["witness"] = r.witness ? simplex_to_json(*r.witness) : Json(nullptr);
  }
  return j;
}

inline MultiplicityReport report_from_json(const Json& j) {
  MultiplicityReport r;
  const Json& v = field(j, "verdict");
  if (v == "FINITE") {
    r.finite = true;
    r.count = index_from_json(field(j, "count"));
    for (const auto& c : array_field(j, "certificates")) r.certificates.push_back(triangulation_from_json(c));
    if (r.certificates.size() != r.count) throw InputError("count disagrees with the certificates");
  } else if (v == "INFINITE") {
    r.finite = false;
    const Json& w = field(j, "witness");
    if (!w.is_array() || w.empty()) throw InputError("an INFINITE report needs a witness simplex");
    std::size_t n = w[0].is_array() && !w[0].empty() ? w[0].size() - 1 : 0;
    std::vector<Point> pts;
    for (const auto& p : w) pts.push_back(point_from_json(p, n));
    r.witness = RationalSimplex(std::move(pts));
  } else {
    throw InputError("verdict must be FINITE or INFINITE");
  }
  return r;
}

inline Json to_json(const IndexBounds& b) {
  Json j;
  j["unbounded"] = b.unbounded;
  j["lower"] = integer_to_json(b.lower);
  j["upper"] = b.upper ? integer_to_json(*b.upper) : Json(nullptr);
  j["lambda"] = to_string(b.lambda);
  j["components"] = b.components;
  j["verified_copies"] = b.verified_copies;
  return j;
}

inline Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace mvr::io

#endif  // MVR_IO_HPP
