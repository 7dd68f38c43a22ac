#ifndef MVR_SUBDIVISION_HPP
#define MVR_SUBDIVISION_HPP

// Stellar subdivisions: blow-ups and the desingularization loop.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "mvr/error.hpp"
#include "mvr/exact.hpp"
#include "mvr/simplex.hpp"
#include "mvr/triangulation.hpp"

namespace mvr {

/// Replaces every maximal simplex S containing b by the cones conv(b, F) over
/// the facets F of S that avoid b.
inline Triangulation blow_up(const Triangulation& t, const Point& b) {
  if (b.dim() != t.ambient_dim()) throw DimensionMismatch("blow-up point has the wrong dimension");
  std::vector<Point> pool = t.vertices();
  std::size_t bi = pool.size();
  pool.push_back(b);
  std::vector<SimplexIndices> cells;
  bool hit = false;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto& s = t.simplexes()[i];
    auto frame = make_frame(t.points(i));
    if (!frame.contains(b)) {
      cells.push_back(s);
      continue;
    }
    hit = true;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (frame.barycentric[j](b) == 0) continue;
      SimplexIndices c;
      for (std::size_t l = 0; l < s.size(); ++l)
        if (l != j) c.push_back(s[l]);
      c.push_back(bi);
      cells.push_back(std::move(c));
    }
  }
  if (!hit) throw PointOutsideSupport("blow-up point " + to_string(b) + " is outside the support");
  return Triangulation(t.ambient_dim(), std::move(pool), std::move(cells));
}

/// A nonzero lattice point of the half-open parallelepiped spanned by the
/// homogeneous vertex vectors, or nullopt when the simplex is regular. If
/// every proper face is regular the point lies in the relative interior.
inline std::optional<Point> parallelepiped_point(const RationalSimplex& s) {
  auto hs = s.homogeneous();
  std::size_t k = hs.size(), cols = hs[0].size();
  IntegerMatrix v;
  for (const auto& h : hs) v.push_back(h.entries());
  SmithForm snf = smith_normal_form(v);
  if (std::all_of(snf.diagonal.begin(), snf.diagonal.end(), [](const Integer& d) { return d == 1; })) return std::nullopt;
  // Saturated basis B_0..B_{k-1}; coordinates C with v_i = sum_j C_ij B_j.
  RationalMatrix bt(k, std::vector<Rational>(cols));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t c = 0; c < cols; ++c) bt[j][c] = Rational(snf.column_basis[j][c]);
  RationalMatrix red = bt;
  auto piv = row_reduce(red);
  RationalMatrix sq(k, std::vector<Rational>(k));  // sq[r][j] = B_j[piv[r]]
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t j = 0; j < k; ++j) sq[r][j] = bt[j][piv[r]];
  RationalMatrix coeff(k, std::vector<Rational>(k));  // coeff[i][j] = C_ij
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Rational> rhs(k);
    for (std::size_t r = 0; r < k; ++r) rhs[r] = Rational(hs[i][piv[r]]);
    auto c = solve(sq, rhs);
    for (std::size_t j = 0; j < k; ++j) coeff[i][j] = (*c)[j];
  }
  // B_j = sum_i A_ij v_i with A = C^{-1}: solve C^T a = e_j.
  RationalMatrix ct(k, std::vector<Rational>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) ct[j][i] = coeff[i][j];
  std::optional<std::vector<Integer>> best;
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<Rational> e(k, 0);
    e[j] = 1;
    auto a = solve(ct, e);
    std::vector<Rational> acc(cols, 0);
    bool nonzero = false;
    for (std::size_t i = 0; i < k; ++i) {
      Rational f = (*a)[i] - Rational(floor_div((*a)[i]));
      if (f == 0) continue;
      nonzero = true;
      for (std::size_t c = 0; c < cols; ++c) acc[c] += f * Rational(hs[i][c]);
    }
    std::vector<Integer> w;
    for (const auto& x : acc) w.push_back(num(x));
    if (nonzero && (!best || w.back() < best->back() || (w.back() == best->back() && w < *best))) best = w;
  }
  if (!best) return std::nullopt;
  std::vector<Rational> x;
  for (std::size_t c = 0; c + 1 < cols; ++c) x.emplace_back((*best)[c], best->back());
  return Point(std::move(x));
}

/// Repeatedly blows up at an interior lattice point of a minimal non-regular
/// face until every simplex is regular. Throws CapExceeded after `cap`
/// blow-ups.
inline Triangulation desingularize(Triangulation t, std::size_t cap = 100000) {
  std::map<std::vector<Point>, bool> regular;
  for (std::size_t steps = 0;; ++steps) {
    std::optional<RationalSimplex> bad;
    for (const auto& f : t.all_faces()) {
      if (f.size() < 2) continue;
      auto pts = t.points(f);
      auto it = regular.find(pts);
      if (it == regular.end()) it = regular.emplace(pts, is_regular(RationalSimplex(pts))).first;
      if (!it->second) {
        bad = RationalSimplex(pts);
        break;
      }
    }
    if (!bad) return t;
    if (steps >= cap) throw CapExceeded("desingularization needed more than " + std::to_string(cap) + " blow-ups");
    auto w = parallelepiped_point(*bad);
    if (!w) throw NotRegular("no lattice point found in a non-regular face");
    t = blow_up(t, *w);
  }
}

}  // namespace mvr

#endif  // MVR_SUBDIVISION_HPP
