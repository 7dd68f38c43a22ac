#ifndef MVR_TRIANGULATION_HPP
#define MVR_TRIANGULATION_HPP

// Finite rational simplicial complexes stored by their maximal simplexes.
//
// Every Triangulation is kept in canonical form: the vertex pool is sorted
// lexicographically and holds only used vertices, each simplex is a sorted
// index tuple, no stored simplex is a face of another, and the simplex list
// is sorted. Two triangulations are equal iff they are the same complex.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mvr/error.hpp"
#include "mvr/exact.hpp"
#include "mvr/simplex.hpp"

namespace mvr {

using SimplexIndices = std::vector<std::size_t>;

class Triangulation {
 public:
  Triangulation() = default;
  explicit Triangulation(std::size_t ambient_dim) : ambient_dim_(ambient_dim) {}
  Triangulation(std::size_t ambient_dim, std::vector<Point> vertices, std::vector<SimplexIndices> simplexes) {
    *this = build(ambient_dim, std::move(vertices), std::move(simplexes), nullptr);
  }

  /// Canonicalizes. When `origin` is given, origin[i] is the input position
  /// of canonical simplex i.
  static Triangulation build(std::size_t ambient_dim, std::vector<Point> pool, std::vector<SimplexIndices> cells,
                             std::vector<std::size_t>* origin) {
    for (const auto& p : pool)
      if (p.dim() != ambient_dim) throw DimensionMismatch("vertex " + to_string(p) + " has the wrong dimension");
    // sorted, deduplicated pool
    std::vector<std::size_t> order(pool.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pool[a] < pool[b]; });
    std::vector<std::size_t> remap(pool.size());
    std::vector<Point> uniq;
    for (std::size_t i : order) {
      if (uniq.empty() || uniq.back() != pool[i]) uniq.push_back(pool[i]);
      remap[i] = uniq.size() - 1;
    }
    std::vector<std::pair<SimplexIndices, std::size_t>> tagged;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      SimplexIndices s;
      for (std::size_t v : cells[c]) {
        if (v >= pool.size()) throw InputError("simplex refers to a missing vertex");
        s.push_back(remap[v]);
      }
      std::sort(s.begin(), s.end());
      if (s.empty()) throw InputError("empty simplex");
      if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw InputError("simplex repeats a vertex");
      if (s.size() > ambient_dim + 1) throw InputError("simplex has too many vertices");
      tagged.emplace_back(std::move(s), c);
    }
    std::stable_sort(tagged.begin(), tagged.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    tagged.erase(std::unique(tagged.begin(), tagged.end(),
                             [](const auto& a, const auto& b) { return a.first == b.first; }),
                 tagged.end());
    // drop faces of larger simplexes
    std::size_t top = 0;
    for (const auto& t : tagged) top = std::max(top, t.first.size());
    std::set<SimplexIndices> larger_faces;
    bool any_small = std::any_of(tagged.begin(), tagged.end(), [&](const auto& t) { return t.first.size() < top; });
    if (any_small) {
      for (const auto& t : tagged) {
        std::size_t k = t.first.size();
        for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << k); ++mask) {
          SimplexIndices f;
          for (std::size_t i = 0; i < k; ++i)
            if (mask >> i & 1) f.push_back(t.first[i]);
          larger_faces.insert(std::move(f));
        }
      }
      std::erase_if(tagged, [&](const auto& t) { return larger_faces.count(t.first) > 0; });
    }
    // drop unused vertices
    std::vector<char> used(uniq.size(), 0);
    for (const auto& t : tagged)
      for (std::size_t v : t.first) used[v] = 1;
    std::vector<std::size_t> compact(uniq.size());
    Triangulation out(ambient_dim);
    for (std::size_t i = 0; i < uniq.size(); ++i)
      if (used[i]) {
        compact[i] = out.vertices_.size();
        out.vertices_.push_back(uniq[i]);
      }
    if (origin) origin->clear();
    for (auto& t : tagged) {
      for (auto& v : t.first) v = compact[v];
      std::vector<Point> pts;
      for (std::size_t v : t.first) pts.push_back(out.vertices_[v]);
      if (affine_rank(pts) + 1 != pts.size()) throw InputError("simplex vertices are affinely dependent");
      out.simplexes_.push_back(std::move(t.first));
      if (origin) origin->push_back(t.second);
    }
    return out;
  }

  std::size_t ambient_dim() const { return ambient_dim_; }
  const std::vector<Point>& vertices() const { return vertices_; }
  /// Maximal simplexes.
  const std::vector<SimplexIndices>& simplexes() const { return simplexes_; }
  std::size_t size() const { return simplexes_.size(); }
  bool empty() const { return simplexes_.empty(); }

  std::vector<Point> points(const SimplexIndices& s) const {
    std::vector<Point> pts;
    pts.reserve(s.size());
    for (std::size_t v : s) pts.push_back(vertices_[v]);
    return pts;
  }
  std::vector<Point> points(std::size_t i) const { return points(simplexes_[i]); }
  RationalSimplex simplex(std::size_t i) const { return RationalSimplex(points(i)); }
  std::size_t simplex_dim(std::size_t i) const { return simplexes_[i].size() - 1; }

  /// Largest simplex dimension; 0 for an empty complex.
  std::size_t dim() const {
    std::size_t d = 0;
    for (const auto& s : simplexes_) d = std::max(d, s.size() - 1);
    return d;
  }

  /// Every nonempty face of every maximal simplex, sorted by (size, tuple).
  std::vector<SimplexIndices> all_faces() const {
    std::set<SimplexIndices> faces;
    for (const auto& s : simplexes_) {
      std::size_t k = s.size();
      for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
        SimplexIndices f;
        for (std::size_t i = 0; i < k; ++i)
          if (mask >> i & 1) f.push_back(s[i]);
        faces.insert(std::move(f));
      }
    }
    std::vector<SimplexIndices> out(faces.begin(), faces.end());
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
    return out;
  }

  friend bool operator==(const Triangulation& a, const Triangulation& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.vertices_ == b.vertices_ && a.simplexes_ == b.simplexes_;
  }

 private:
  std::size_t ambient_dim_ = 0;
  std::vector<Point> vertices_;
  std::vector<SimplexIndices> simplexes_;
};

/// Triangulation made of the given simplexes (shared vertices are merged).
inline Triangulation from_simplexes(std::size_t ambient_dim, const std::vector<RationalSimplex>& simplexes) {
  std::vector<Point> pool;
  std::vector<SimplexIndices> cells;
  for (const auto& s : simplexes) {
    SimplexIndices idx;
    for (const auto& v : s.vertices()) {
      idx.push_back(pool.size());
      pool.push_back(v);
    }
    cells.push_back(std::move(idx));
  }
  return Triangulation(ambient_dim, std::move(pool), std::move(cells));
}

/// Point location by brute force with bounding-box rejection.
class Locator {
 public:
  explicit Locator(const Triangulation& t) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      auto pts = t.points(i);
      frames_.push_back(make_frame(pts));
      Point lo = pts[0], hi = pts[0];
      for (const auto& p : pts)
        for (std::size_t j = 0; j < p.dim(); ++j) {
          if (p[j] < lo[j]) lo[j] = p[j];
          if (hi[j] < p[j]) hi[j] = p[j];
        }
      boxes_.emplace_back(std::move(lo), std::move(hi));
    }
  }

  /// First (canonical order) maximal simplex containing p.
  std::optional<std::size_t> find(const Point& p) const {
    for (std::size_t i = 0; i < frames_.size(); ++i)
      if (in_box(i, p) && frames_[i].contains(p)) return i;
    return std::nullopt;
  }
  std::vector<std::size_t> find_all(const Point& p) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < frames_.size(); ++i)
      if (in_box(i, p) && frames_[i].contains(p)) out.push_back(i);
    return out;
  }
  const SimplexFrame& frame(std::size_t i) const { return frames_[i]; }
  std::size_t size() const { return frames_.size(); }

 private:
  bool in_box(std::size_t i, const Point& p) const {
    const auto& [lo, hi] = boxes_[i];
    for (std::size_t j = 0; j < p.dim(); ++j)
      if (p[j] < lo[j] || hi[j] < p[j]) return false;
    return true;
  }

  std::vector<SimplexFrame> frames_;
  std::vector<std::pair<Point, Point>> boxes_;
};

inline bool in_support(const Triangulation& t, const Point& p) { return Locator(t).find(p).has_value(); }

inline bool is_regular(const Triangulation& t) {
  for (std::size_t i = 0; i < t.size(); ++i)
    if (!is_regular(t.simplex(i))) return false;
  return true;
}

/// Regular, and the vertex denominators of every maximal simplex are coprime.
inline bool is_strongly_regular_triangulation(const Triangulation& t) {
  if (!is_regular(t)) throw NotRegular("triangulation is not regular");
  for (const auto& s : t.simplexes()) {
    Integer g = 0;
    for (std::size_t v : s) g = gcd(g, denominator(t.vertices()[v]));
    if (g != 1) return false;
  }
  return true;
}

inline bool is_closed_domain(const Triangulation& t) {
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t.simplex_dim(i) != t.ambient_dim()) return false;
  return true;
}

namespace detail {

inline std::size_t shared_count(const SimplexIndices& a, const SimplexIndices& b) {
  std::size_t i = 0, j = 0, c = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++c;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return c;
}

}  // namespace detail

/// Greedy growth over facet adjacency: start from the first n-simplex and
/// repeatedly add the first simplex sharing a facet with the grown set.
inline bool interior_connected(const Triangulation& t) {
  if (!is_closed_domain(t)) throw NotClosedDomain("interior connectivity needs a closed domain");
  std::size_t n = t.ambient_dim();
  std::vector<char> in(t.size(), 0);
  if (t.empty()) return true;
  in[0] = 1;
  std::size_t grown = 1;
  bool added = true;
  while (added) {
    added = false;
    for (std::size_t j = 0; j < t.size() && !added; ++j) {
      if (in[j]) continue;
      for (std::size_t i = 0; i < t.size(); ++i)
        if (in[i] && detail::shared_count(t.simplexes()[i], t.simplexes()[j]) == n) {
          in[j] = 1;
          ++grown;
          added = true;
          break;
        }
    }
  }
  return grown == t.size();
}

/// Connected components of the interior of a closed domain, as lists of
/// n-simplex indices (facet adjacency).
inline std::vector<std::vector<std::size_t>> interior_components(const Triangulation& t) {
  if (!is_closed_domain(t)) throw NotClosedDomain("interior components need a closed domain");
  std::size_t n = t.ambient_dim();
  std::vector<std::size_t> comp(t.size(), SIZE_MAX);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < t.size(); ++s) {
    if (comp[s] != SIZE_MAX) continue;
    std::vector<std::size_t> members{s}, stack{s};
    comp[s] = out.size();
    while (!stack.empty()) {
      std::size_t a = stack.back();
      stack.pop_back();
      for (std::size_t b = 0; b < t.size(); ++b)
        if (comp[b] == SIZE_MAX && detail::shared_count(t.simplexes()[a], t.simplexes()[b]) == n) {
          comp[b] = out.size();
          members.push_back(b);
          stack.push_back(b);
        }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

inline Rational total_measure(const Triangulation& t) {
  Rational m = 0;
  for (std::size_t i = 0; i < t.size(); ++i) m += lebesgue_measure_ndim(t.simplex(i));
  return m;
}

/// Standard (Kuhn) triangulation of [0,1]^n: one regular n-simplex per
/// permutation, 0 = v_0 < v_1 < ... < v_n = (1,...,1).
inline Triangulation unit_cube(std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Point> pool;
  std::vector<SimplexIndices> cells;
  do {
    SimplexIndices s;
    std::vector<Rational> c(n, 0);
    s.push_back(pool.size());
    pool.emplace_back(c);
    for (std::size_t k = 0; k < n; ++k) {
      c[perm[k]] = 1;
      s.push_back(pool.size());
      pool.emplace_back(c);
    }
    cells.push_back(std::move(s));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return Triangulation(n, std::move(pool), std::move(cells));
}

}  // namespace mvr

#endif  // MVR_TRIANGULATION_HPP
