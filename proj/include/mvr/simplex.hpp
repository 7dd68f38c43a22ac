#ifndef MVR_SIMPLEX_HPP
#define MVR_SIMPLEX_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "mvr/error.hpp"
#include "mvr/exact.hpp"

namespace mvr {

/// Rank of {v_i - v_0}.
inline std::size_t affine_rank(const std::vector<Point>& pts) {
  if (pts.size() <= 1) return 0;
  RationalMatrix m;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    std::vector<Rational> row(pts[0].dim());
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = pts[i][j] - pts[0][j];
    m.push_back(std::move(row));
  }
  return rank(std::move(m));
}

inline Point centroid(const std::vector<Point>& pts) {
  std::vector<Rational> c(pts.front().dim(), 0);
  for (const auto& p : pts)
    for (std::size_t j = 0; j < c.size(); ++j) c[j] += p[j];
  Rational k(static_cast<long>(pts.size()));
  for (auto& x : c) x /= k;
  return Point(std::move(c));
}

/// Barycentric coordinates of a (possibly lower dimensional) simplex extended
/// to affine functionals on R^n, plus the equations of its affine hull. A
/// point lies in the simplex iff every barycentric functional is >= 0 and
/// every equation vanishes.
struct SimplexFrame {
  std::vector<AffineFunctional> barycentric;
  std::vector<AffineFunctional> equations;

  bool contains(const Point& p) const {
    for (const auto& e : equations)
      if (e(p) != 0) return false;
    for (const auto& b : barycentric)
      if (b(p) < 0) return false;
    return true;
  }
  bool contains_in_relative_interior(const Point& p) const {
    for (const auto& e : equations)
      if (e(p) != 0) return false;
    for (const auto& b : barycentric)
      if (b(p) <= 0) return false;
    return true;
  }
};

/// Builds the frame from affinely independent vertices. The barycentric
/// functionals only read a pivot set of coordinates (first independent ones),
/// which makes the extension deterministic.
inline SimplexFrame make_frame(const std::vector<Point>& verts) {
  std::size_t n = verts.front().dim();
  std::size_t m = verts.size() - 1;
  SimplexFrame f;
  if (m == 0) {
    AffineFunctional one{std::vector<Rational>(n, 0), 1};
    f.barycentric.push_back(one);
    for (std::size_t j = 0; j < n; ++j) {
      AffineFunctional e{std::vector<Rational>(n, 0), -verts[0][j]};
      e.coeffs[j] = 1;
      f.equations.push_back(std::move(e));
    }
    return f;
  }
  // D is n x m, columns v_i - v_0. Choose pivot rows by reducing D^T.
  RationalMatrix dt(m, std::vector<Rational>(n));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) dt[i][j] = verts[i + 1][j] - verts[0][j];
  RationalMatrix red = dt;
  auto pivots = row_reduce(red);
  if (pivots.size() != m) throw InputError("simplex vertices are affinely dependent");
  // Square system: rows = pivot coordinates, columns = m directions.
  RationalMatrix sq(m, std::vector<Rational>(m));
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c) sq[r][c] = dt[c][pivots[r]];
  // Inverse of sq, column by column.
  RationalMatrix inv(m, std::vector<Rational>(m));
  for (std::size_t c = 0; c < m; ++c) {
    std::vector<Rational> e(m, 0);
    e[c] = 1;
    auto col = solve(sq, e);
    for (std::size_t r = 0; r < m; ++r) inv[r][c] = (*col)[r];
  }
  // mu = inv (x_p - v0_p)
  std::vector<AffineFunctional> mu(m, AffineFunctional{std::vector<Rational>(n, 0), 0});
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t r = 0; r < m; ++r) {
      mu[i].coeffs[pivots[r]] += inv[i][r];
      mu[i].constant -= inv[i][r] * verts[0][pivots[r]];
    }
  AffineFunctional lambda0{std::vector<Rational>(n, 0), 1};
  for (const auto& u : mu) {
    for (std::size_t j = 0; j < n; ++j) lambda0.coeffs[j] -= u.coeffs[j];
    lambda0.constant -= u.constant;
  }
  f.barycentric.push_back(std::move(lambda0));
  for (auto& u : mu) f.barycentric.push_back(u);
  // equations for the non-pivot coordinates: x_j - v0_j - sum_i D[j][i] mu_i = 0
  for (std::size_t j = 0; j < n; ++j) {
    if (std::find(pivots.begin(), pivots.end(), j) != pivots.end()) continue;
    AffineFunctional e{std::vector<Rational>(n, 0), -verts[0][j]};
    e.coeffs[j] += 1;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t k = 0; k < n; ++k) e.coeffs[k] -= dt[i][j] * mu[i].coeffs[k];
      e.constant -= dt[i][j] * mu[i].constant;
    }
    f.equations.push_back(std::move(e));
  }
  return f;
}

/// conv(v_0, ..., v_m) with rational, affinely independent vertices.
class RationalSimplex {
 public:
  RationalSimplex() = default;
  explicit RationalSimplex(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.empty()) throw InputError("a simplex needs at least one vertex");
    for (const auto& v : vertices_)
      if (v.dim() != vertices_[0].dim()) throw DimensionMismatch("simplex vertices of different dimensions");
    if (vertices_.size() > vertices_[0].dim() + 1 || affine_rank(vertices_) != vertices_.size() - 1)
      throw InputError("simplex vertices are affinely dependent");
  }

  std::size_t dim() const { return vertices_.size() - 1; }
  std::size_t ambient_dim() const { return vertices_[0].dim(); }
  const std::vector<Point>& vertices() const { return vertices_; }
  const Point& operator[](std::size_t i) const { return vertices_[i]; }

  std::vector<HomogeneousVector> homogeneous() const {
    std::vector<HomogeneousVector> h;
    h.reserve(vertices_.size());
    for (const auto& v : vertices_) h.push_back(to_homogeneous(v));
    return h;
  }
  SimplexFrame frame() const { return make_frame(vertices_); }
  bool contains(const Point& p) const { return frame().contains(p); }
  Point barycenter() const { return centroid(vertices_); }

  /// Same vertex set, order ignored.
  friend bool same_simplex(const RationalSimplex& a, const RationalSimplex& b) {
    auto x = a.vertices_, y = b.vertices_;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    return x == y;
  }

 private:
  std::vector<Point> vertices_;
};

inline bool is_regular(const RationalSimplex& s) { return is_basis_extendable(s.homogeneous()); }

/// gcd of the maximal minors of the stacked homogeneous vertex vectors: 1 for
/// regular simplexes, larger for singular ones.
inline Integer multiplicity_index(const RationalSimplex& s) {
  IntegerMatrix m;
  for (const auto& h : s.homogeneous()) m.push_back(h.entries());
  return minor_gcd(m);
}

inline Point farey_mediant(const RationalSimplex& s) {
  if (s.dim() == 0) throw ZeroDimensional("the Farey mediant needs a simplex of dimension >= 1");
  if (!is_regular(s)) throw NotRegular("the Farey mediant is defined for regular simplexes only");
  auto hs = s.homogeneous();
  std::vector<Integer> sum(hs[0].size(), 0);
  for (const auto& h : hs)
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += h[i];
  std::vector<Rational> c;
  for (std::size_t i = 0; i + 1 < sum.size(); ++i) c.emplace_back(sum[i], sum.back());
  return Point(std::move(c));
}

/// n-dimensional Lebesgue measure; 0 for simplexes of lower dimension.
inline Rational lebesgue_measure_ndim(const RationalSimplex& s) {
  std::size_t n = s.ambient_dim();
  if (s.dim() != n) return 0;
  RationalMatrix m(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = s[i + 1][j] - s[0][j];
  Rational d = rabs(determinant(std::move(m)));
  for (std::size_t k = 2; k <= n; ++k) d /= static_cast<long>(k);
  return d;
}

inline std::string to_string(const RationalSimplex& s) {
  std::string out = "conv(";
  for (std::size_t i = 0; i < s.vertices().size(); ++i) {
    if (i) out += ",";
    out += to_string(s[i]);
  }
  return out + ")";
}

}  // namespace mvr

#endif  // MVR_SIMPLEX_HPP
