#ifndef MVR_EXACT_HPP
#define MVR_EXACT_HPP

// Exact scalars, rational points, homogeneous correspondents and the
// integer-lattice tests (minor gcd, Smith normal form) built on them.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "mvr/error.hpp"

namespace mvr {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline Integer num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(a, b);
}
inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::lcm(a, b);
}
inline Integer iabs(const Integer& a) { return a < 0 ? Integer(-a) : a; }
inline Rational rabs(const Rational& a) { return a < 0 ? Rational(-a) : a; }

inline std::string to_string(const Rational& r) {
  if (den(r) == 1) return num(r).str();
  return num(r).str() + "/" + den(r).str();
}

/// Parses "p", "-p" or "p/q". Throws InputError on anything else.
inline Rational parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  auto slash = text.find('/');
  std::string_view p = text.substr(0, slash);
  std::string_view q = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!digits(p) || !digits(q) || q[0] == '-' || q[0] == '+')
    throw InputError("malformed rational '" + std::string(text) + "'");
  Integer qi{std::string(q)};
  if (qi == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  std::string ps(p);
  if (ps[0] == '+') ps.erase(0, 1);
  return Rational(Integer(ps), qi);
}

/// A point of R^n with rational coordinates. Cube membership is a separate
/// predicate (see in_unit_cube); intermediate points may leave the cube.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<Rational> coords) : coords_(std::move(coords)) {}
  Point(std::initializer_list<Rational> coords) : coords_(coords) {}

  std::size_t dim() const { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  Rational& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<Rational>& coords() const { return coords_; }
  auto begin() const { return coords_.begin(); }
  auto end() const { return coords_.end(); }

  friend bool operator==(const Point& a, const Point& b) { return a.coords_ == b.coords_; }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
  friend bool operator<(const Point& a, const Point& b) {
    return std::lexicographical_compare(a.coords_.begin(), a.coords_.end(), b.coords_.begin(),
                                        b.coords_.end());
  }

 private:
  std::vector<Rational> coords_;
};

inline std::string to_string(const Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (i) s += ",";
    s += to_string(p[i]);
  }
  return s + ")";
}

inline std::ostream& operator<<(std::ostream& os, const Point& p) { return os << to_string(p); }

/// Parses "a,b,c" where each entry is a rational.
inline Point parse_point(std::string_view text) {
  std::vector<Rational> coords;
  std::size_t start = 0;
  while (true) {
    auto comma = text.find(',', start);
    auto item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    coords.push_back(parse_rational(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return Point(std::move(coords));
}

inline bool in_unit_cube(const Point& p) {
  return std::all_of(p.begin(), p.end(), [](const Rational& x) { return x >= 0 && x <= 1; });
}

/// Least common denominator of the coordinates; 1 for integer points.
inline Integer denominator(const Point& p) {
  Integer d = 1;
  for (const auto& x : p) d = lcm(d, den(x));
  return d;
}

/// Integer vector [n_1,...,n_k,d] with gcd 1 and d > 0.
class HomogeneousVector {
 public:
  HomogeneousVector() = default;
  explicit HomogeneousVector(std::vector<Integer> entries) : entries_(std::move(entries)) {
    if (entries_.size() < 1) throw InputError("homogeneous vector needs at least one entry");
    if (entries_.back() <= 0) throw InputError("homogeneous vector needs a positive last entry");
    Integer g = 0;
    for (const auto& e : entries_) g = gcd(g, e);
    if (g != 1) throw InputError("homogeneous vector entries must have gcd 1");
  }

  std::size_t size() const { return entries_.size(); }
  std::size_t ambient_dim() const { return entries_.size() - 1; }
  const Integer& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<Integer>& entries() const { return entries_; }

  friend bool operator==(const HomogeneousVector& a, const HomogeneousVector& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::vector<Integer> entries_;
};

inline HomogeneousVector to_homogeneous(const Point& p) {
  Integer d = denominator(p);
  std::vector<Integer> e;
  e.reserve(p.dim() + 1);
  for (const auto& x : p) e.push_back(num(x) * (d / den(x)));
  e.push_back(d);
  return HomogeneousVector(std::move(e));
}

/// Affine correspondent. With require_cube set, rejects points outside [0,1]^n.
inline Point from_homogeneous(const HomogeneousVector& v, bool require_cube = false) {
  std::vector<Rational> c;
  c.reserve(v.ambient_dim());
  for (std::size_t i = 0; i + 1 < v.size(); ++i) c.emplace_back(v[i], v[v.size() - 1]);
  Point p(std::move(c));
  if (require_cube && !in_unit_cube(p)) throw InputError("point " + to_string(p) + " lies outside the unit cube");
  return p;
}

// ---------------------------------------------------------------------------
// Dense exact linear algebra.

using RationalMatrix = std::vector<std::vector<Rational>>;
using IntegerMatrix = std::vector<std::vector<Integer>>;

/// Row-reduces in place; returns pivot columns.
inline std::vector<std::size_t> row_reduce(RationalMatrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(RationalMatrix m) { return row_reduce(m).size(); }

/// Solves A x = b for square invertible A; nullopt when singular.
inline std::optional<std::vector<Rational>> solve(const RationalMatrix& a, const std::vector<Rational>& b) {
  std::size_t n = a.size();
  RationalMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m[i] = a[i];
    m[i].push_back(b[i]);
  }
  auto piv = row_reduce(m);
  if (piv.size() != n || (n && piv.back() != n - 1)) return std::nullopt;
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n];
  return x;
}

inline Rational determinant(RationalMatrix m) {
  std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c] == 0) continue;
      Rational f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

/// Fraction-free (Bareiss) determinant of a square integer matrix.
inline Integer determinant(IntegerMatrix m) {
  std::size_t n = m.size();
  if (n == 0) return 1;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

namespace detail {

inline void check_rectangular(const IntegerMatrix& m) {
  for (const auto& row : m)
    if (row.size() != m.front().size()) throw DimensionMismatch("ragged integer matrix");
}

inline IntegerMatrix stack(const std::vector<HomogeneousVector>& vs) {
  IntegerMatrix m;
  m.reserve(vs.size());
  for (const auto& v : vs) m.push_back(v.entries());
  check_rectangular(m);
  return m;
}

}  // namespace detail

/// gcd of all maximal-order (rows x rows) minors; 0 when rows are dependent
/// or outnumber columns.
inline Integer minor_gcd(const IntegerMatrix& m) {
  if (m.empty()) return 1;
  detail::check_rectangular(m);
  std::size_t k = m.size(), cols = m[0].size();
  if (k > cols) return 0;
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  Integer g = 0;
  while (true) {
    IntegerMatrix sub(k, std::vector<Integer>(k));
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) sub[r][c] = m[r][pick[c]];
    g = gcd(g, determinant(std::move(sub)));
    if (g == 1) return 1;
    // next combination
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == cols - k + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return iabs(g);
}

/// Smith normal form of an integer matrix. `diagonal` holds the invariant
/// factors d_1 | d_2 | ... (nonnegative); `column_basis` is the inverse of the
/// accumulated column transform, so the first rank() rows of it span the
/// saturation of the row lattice of the input.
struct SmithForm {
  std::vector<Integer> diagonal;
  IntegerMatrix column_basis;
  std::size_t rank() const {
    return static_cast<std::size_t>(std::count_if(diagonal.begin(), diagonal.end(), [](const Integer& d) { return d != 0; }));
  }
};

inline SmithForm smith_normal_form(IntegerMatrix m) {
  detail::check_rectangular(m);
  std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  IntegerMatrix basis(cols, std::vector<Integer>(cols, 0));
  for (std::size_t i = 0; i < cols; ++i) basis[i][i] = 1;

  auto swap_cols = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (auto& row : m) std::swap(row[a], row[b]);
    std::swap(basis[a], basis[b]);
  };
  // col_i += f * col_j
  auto add_col = [&](std::size_t i, std::size_t j, const Integer& f) {
    for (auto& row : m) row[i] += f * row[j];
    for (std::size_t c = 0; c < cols; ++c) basis[j][c] -= f * basis[i][c];
  };
  auto add_row = [&](std::size_t i, std::size_t j, const Integer& f) {
    for (std::size_t c = 0; c < cols; ++c) m[i][c] += f * m[j][c];
  };

  std::size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    while (true) {
      // smallest nonzero |entry| in the trailing block
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (m[i][j] != 0 && (!best || iabs(m[i][j]) < iabs(m[best->first][best->second]))) best = {i, j};
      if (!best) goto done;
      std::swap(m[t], m[best->first]);
      swap_cols(t, best->second);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        Integer q = m[i][t] / m[t][t];
        if (q != 0) add_row(i, t, -q);
        if (m[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        Integer q = m[t][j] / m[t][t];
        if (q != 0) add_col(j, t, -q);
        if (m[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility of the remaining block
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m[i][j] % m[t][t] != 0) {
            add_row(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (m[t][t] < 0) m[t][t] = -m[t][t];
  }
done:
  SmithForm out;
  for (std::size_t i = 0; i < std::min(rows, cols); ++i) out.diagonal.push_back(iabs(m[i][i]));
  out.column_basis = std::move(basis);
  return out;
}

/// True iff the vectors extend to a basis of Z^{n+1}. Minor gcd below
/// dimension 5, Smith normal form above.
inline bool is_basis_extendable(const std::vector<HomogeneousVector>& vs) {
  if (vs.empty()) return true;
  IntegerMatrix m = detail::stack(vs);
  std::size_t cols = m[0].size();
  if (vs.size() > cols) return false;
  if (cols <= 4) return minor_gcd(m) == 1;
  SmithForm s = smith_normal_form(std::move(m));
  if (s.rank() != vs.size()) return false;
  return std::all_of(s.diagonal.begin(), s.diagonal.end(), [](const Integer& d) { return d == 1; });
}

// ---------------------------------------------------------------------------

/// x -> coeffs . x + constant, rational coefficients.
struct AffineFunctional {
  std::vector<Rational> coeffs;
  Rational constant = 0;

  Rational operator()(const Point& p) const {
    Rational v = constant;
    for (std::size_t i = 0; i < coeffs.size(); ++i) v += coeffs[i] * p[i];
    return v;
  }
  bool is_constant() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c == 0; });
  }

  /// Scales to primitive integer coefficients with a positive leading entry;
  /// two functionals with the same zero set normalize identically.
  AffineFunctional normalized() const {
    Integer l = 1;
    for (const auto& c : coeffs) l = lcm(l, den(c));
    l = lcm(l, den(constant));
    Integer g = 0;
    for (const auto& c : coeffs) g = gcd(g, num(c * l));
    g = gcd(g, num(constant * l));
    AffineFunctional out = *this;
    if (g == 0) return out;
    Rational scale(l, g);
    const Rational* lead = nullptr;
    for (const auto& c : coeffs)
      if (c != 0) {
        lead = &c;
        break;
      }
    if (!lead && constant != 0) lead = &constant;
    if (lead && *lead < 0) scale = -scale;
    for (auto& c : out.coeffs) c *= scale;
    out.constant *= scale;
    return out;
  }

  friend bool operator<(const AffineFunctional& a, const AffineFunctional& b) {
    if (a.coeffs != b.coeffs)
      return std::lexicographical_compare(a.coeffs.begin(), a.coeffs.end(), b.coeffs.begin(), b.coeffs.end());
    return a.constant < b.constant;
  }
  friend bool operator==(const AffineFunctional& a, const AffineFunctional& b) {
    return a.coeffs == b.coeffs && a.constant == b.constant;
  }
};

inline Integer binomial(const Integer& n, std::size_t k) {
  if (n < 0 || Integer(k) > n) return 0;
  Integer r = 1;
  for (std::size_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

inline Integer floor_div(const Rational& r) {
  Integer q = num(r) / den(r);
  if (num(r) < 0 && q * den(r) != num(r)) --q;
  return q;
}

}  // namespace mvr

#endif  // MVR_EXACT_HPP
