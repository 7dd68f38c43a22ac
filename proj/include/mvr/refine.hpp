#ifndef MVR_REFINE_HPP
#define MVR_REFINE_HPP

// Subdivision of triangulations along affine functionals, and the exact
// point-set queries built on it (intersection, containment, equality).

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "mvr/error.hpp"
#include "mvr/exact.hpp"
#include "mvr/simplex.hpp"
#include "mvr/triangulation.hpp"

namespace mvr {

/// A subdivision together with, for every new maximal simplex, the index of
/// the input simplex containing it.
struct Refinement {
  Triangulation complex;
  std::vector<std::size_t> parent;
};

namespace detail {

class VertexPool {
 public:
  std::size_t add(const Point& p) {
    auto [it, fresh] = index_.emplace(p, points_.size());
    if (fresh) points_.push_back(p);
    return it->second;
  }
  const std::vector<Point>& points() const { return points_; }
  std::vector<Point> take() { return std::move(points_); }

 private:
  std::vector<Point> points_;
  std::map<Point, std::size_t> index_;
};

struct PieceVertex {
  Point at;                  // actual position
  std::vector<Rational> bary;  // barycentric coordinates in the parent cell
  std::vector<char> tight;     // one flag per defining inequality
};

// Pulling triangulation of the face of a polytope spanned by `face` (indices
// into `vs`), of dimension d. Vertices are pulled in lexicographic order of
// their actual position, so shared faces are triangulated identically.
inline void pull(const std::vector<PieceVertex>& vs, const std::vector<std::size_t>& face, std::size_t d,
                 std::size_t inequalities, std::vector<std::vector<std::size_t>>& out) {
  if (face.size() == d + 1) {
    out.push_back(face);
    return;
  }
  std::size_t apex = face[0];
  for (std::size_t v : face)
    if (vs[v].at < vs[apex].at) apex = v;
  std::set<std::vector<std::size_t>> facets;
  for (std::size_t q = 0; q < inequalities; ++q) {
    if (vs[apex].tight[q]) continue;
    std::vector<std::size_t> g;
    for (std::size_t v : face)
      if (vs[v].tight[q]) g.push_back(v);
    if (g.size() < d || g.size() == face.size()) continue;
    std::vector<Point> pts;
    for (std::size_t v : g) pts.emplace_back(vs[v].bary);
    if (affine_rank(pts) != d - 1) continue;
    facets.insert(std::move(g));
  }
  for (const auto& g : facets) {
    std::vector<std::vector<std::size_t>> sub;
    pull(vs, g, d - 1, inequalities, sub);
    for (auto& s : sub) {
      s.push_back(apex);
      out.push_back(std::move(s));
    }
  }
}

// Splits the simplex `verts` by the sign of an affine function with values
// h at its vertices. Both sides are returned, each triangulated.
inline std::vector<std::vector<Point>> cut_simplex(const std::vector<Point>& verts, const std::vector<Rational>& h) {
  std::size_t k = verts.size();
  std::size_t n = verts[0].dim();
  std::vector<std::vector<Point>> result;
  for (int side : {1, -1}) {
    std::vector<PieceVertex> pv;
    auto emit = [&](std::vector<Rational> lambda) {
      PieceVertex p;
      std::vector<Rational> x(n, 0);
      Rational hv = 0;
      for (std::size_t i = 0; i < k; ++i) {
        if (lambda[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) x[j] += lambda[i] * verts[i][j];
        hv += lambda[i] * h[i];
      }
      p.at = Point(std::move(x));
      for (std::size_t i = 0; i < k; ++i) p.tight.push_back(lambda[i] == 0);
      p.tight.push_back(hv == 0);
      p.bary = std::move(lambda);
      pv.push_back(std::move(p));
    };
    for (std::size_t i = 0; i < k; ++i)
      if (side * h[i] >= 0) {
        std::vector<Rational> l(k, 0);
        l[i] = 1;
        emit(std::move(l));
      }
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        if ((h[i] > 0 && h[j] < 0) || (h[i] < 0 && h[j] > 0)) {
          std::vector<Rational> l(k, 0);
          l[i] = -h[j] / (h[i] - h[j]);
          l[j] = h[i] / (h[i] - h[j]);
          emit(std::move(l));
        }
    std::vector<std::size_t> all(pv.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    std::vector<std::vector<std::size_t>> cells;
    pull(pv, all, k - 1, k + 1, cells);
    for (const auto& c : cells) {
      std::vector<Point> pts;
      for (std::size_t v : c) pts.push_back(pv[v].at);
      result.push_back(std::move(pts));
    }
  }
  return result;
}

}  // namespace detail

/// Refines every maximal simplex p of t by the functionals cuts(p), in order.
/// A cell is split only where its functional takes both strict signs on it.
inline Refinement refine_cells(const Triangulation& t,
                               const std::function<std::vector<AffineFunctional>(std::size_t)>& cuts) {
  detail::VertexPool pool;
  std::vector<SimplexIndices> idx;
  std::vector<std::size_t> parents;
  for (std::size_t parent = 0; parent < t.size(); ++parent) {
    std::vector<std::vector<Point>> cells{t.points(parent)};
    for (const auto& f : cuts(parent)) {
      std::vector<std::vector<Point>> next;
      next.reserve(cells.size());
      for (auto& pts : cells) {
        std::vector<Rational> h;
        bool pos = false, neg = false;
        for (const auto& p : pts) {
          h.push_back(f(p));
          pos |= h.back() > 0;
          neg |= h.back() < 0;
        }
        if (pos && neg) {
          for (auto& piece : detail::cut_simplex(pts, h)) next.push_back(std::move(piece));
        } else {
          next.push_back(std::move(pts));
        }
      }
      cells = std::move(next);
    }
    for (const auto& pts : cells) {
      SimplexIndices s;
      for (const auto& p : pts) s.push_back(pool.add(p));
      idx.push_back(std::move(s));
      parents.push_back(parent);
    }
  }
  std::vector<std::size_t> origin;
  Refinement r;
  r.complex = Triangulation::build(t.ambient_dim(), pool.take(), std::move(idx), &origin);
  for (std::size_t o : origin) r.parent.push_back(parents[o]);
  return r;
}

/// Refines t by `count` functionals; functional(p, j) gives the j-th cutting
/// functional for cells descending from maximal simplex p of t.
inline Refinement refine_by(const Triangulation& t, std::size_t count,
                            const std::function<AffineFunctional(std::size_t, std::size_t)>& functional) {
  return refine_cells(t, [&](std::size_t p) {
    std::vector<AffineFunctional> fs;
    for (std::size_t j = 0; j < count; ++j) fs.push_back(functional(p, j));
    return fs;
  });
}

/// Refines t by the same functionals everywhere.
inline Refinement refine_by(const Triangulation& t, const std::vector<AffineFunctional>& hs) {
  return refine_by(t, hs.size(), [&](std::size_t, std::size_t j) { return hs[j]; });
}

inline Triangulation refine_along_hyperplane(const Triangulation& t, const AffineFunctional& h) {
  return refine_by(t, {h}).complex;
}

/// The nonconstant barycentric functionals and hull equations of every
/// maximal simplex, normalized and deduplicated. Refining any complex by these
/// makes every cell lie inside or outside each simplex of t.
inline std::vector<AffineFunctional> cut_functionals(const Triangulation& t) {
  std::set<AffineFunctional> out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    auto f = make_frame(t.points(i));
    for (const auto& b : f.barycentric)
      if (!b.is_constant()) out.insert(b.normalized());
    for (const auto& e : f.equations)
      if (!e.is_constant()) out.insert(e.normalized());
  }
  return {out.begin(), out.end()};
}

namespace detail {

inline std::pair<Point, Point> bounding_box(const std::vector<Point>& pts) {
  Point lo = pts[0], hi = pts[0];
  for (const auto& p : pts)
    for (std::size_t j = 0; j < p.dim(); ++j) {
      if (p[j] < lo[j]) lo[j] = p[j];
      if (hi[j] < p[j]) hi[j] = p[j];
    }
  return {lo, hi};
}

inline bool boxes_overlap(const std::pair<Point, Point>& a, const std::pair<Point, Point>& b) {
  for (std::size_t j = 0; j < a.first.dim(); ++j)
    if (a.second[j] < b.first[j] || b.second[j] < a.first[j]) return false;
  return true;
}

}  // namespace detail

/// The cut functionals of each maximal simplex of a triangulation, looked up
/// by bounding box so that refinements stay local.
class CutIndex {
 public:
  explicit CutIndex(const Triangulation& t) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      auto pts = t.points(i);
      boxes_.push_back(detail::bounding_box(pts));
      auto f = make_frame(pts);
      std::vector<AffineFunctional> fs;
      for (const auto& b : f.barycentric)
        if (!b.is_constant()) fs.push_back(b.normalized());
      for (const auto& e : f.equations)
        if (!e.is_constant()) fs.push_back(e.normalized());
      cuts_.push_back(std::move(fs));
    }
  }

  /// Functionals of the simplexes whose boxes meet the box of pts.
  std::vector<AffineFunctional> near(const std::vector<Point>& pts) const {
    auto box = detail::bounding_box(pts);
    std::set<AffineFunctional> out;
    for (std::size_t i = 0; i < boxes_.size(); ++i)
      if (detail::boxes_overlap(box, boxes_[i])) out.insert(cuts_[i].begin(), cuts_[i].end());
    return {out.begin(), out.end()};
  }

 private:
  std::vector<std::pair<Point, Point>> boxes_;
  std::vector<std::vector<AffineFunctional>> cuts_;
};

/// Refines p so that every cell lies inside or outside each simplex of q.
inline Refinement overlay(const Triangulation& p, const Triangulation& q) {
  CutIndex index(q);
  return refine_cells(p, [&](std::size_t s) { return index.near(p.points(s)); });
}

/// Points whose convex hull is a ∩ b (sorted, possibly empty).
inline std::vector<Point> intersection_vertices(const RationalSimplex& a, const RationalSimplex& b) {
  std::size_t n = a.ambient_dim();
  if (b.ambient_dim() != n) throw DimensionMismatch("simplexes live in different dimensions");
  Triangulation ta = from_simplexes(n, {a});
  Triangulation tb = from_simplexes(n, {b});
  auto r = refine_by(ta, cut_functionals(tb));
  auto frame = b.frame();
  std::vector<Point> out;
  for (const auto& v : r.complex.vertices())
    if (frame.contains(v)) out.push_back(v);
  return out;
}

/// |p| ⊆ |q|.
inline bool polyhedron_contained(const Triangulation& p, const Triangulation& q) {
  if (p.ambient_dim() != q.ambient_dim()) throw DimensionMismatch("polyhedra live in different dimensions");
  if (p.empty()) return true;
  if (q.empty()) return false;
  auto r = overlay(p, q);
  Locator loc(q);
  for (std::size_t i = 0; i < r.complex.size(); ++i)
    if (!loc.find(centroid(r.complex.points(i)))) return false;
  return true;
}

inline bool polyhedra_equal(const Triangulation& p, const Triangulation& q) {
  return polyhedron_contained(p, q) && polyhedron_contained(q, p);
}

/// Any two maximal simplexes meet in a common face.
inline bool is_proper(const Triangulation& t) {
  std::vector<std::pair<Point, Point>> boxes;
  for (std::size_t i = 0; i < t.size(); ++i) {
    auto pts = t.points(i);
    Point lo = pts[0], hi = pts[0];
    for (const auto& p : pts)
      for (std::size_t j = 0; j < p.dim(); ++j) {
        if (p[j] < lo[j]) lo[j] = p[j];
        if (hi[j] < p[j]) hi[j] = p[j];
      }
    boxes.emplace_back(lo, hi);
  }
  for (std::size_t a = 0; a < t.size(); ++a)
    for (std::size_t b = a + 1; b < t.size(); ++b) {
      bool apart = false;
      for (std::size_t j = 0; j < t.ambient_dim() && !apart; ++j)
        apart = boxes[a].second[j] < boxes[b].first[j] || boxes[b].second[j] < boxes[a].first[j];
      if (apart) continue;
      auto meet = intersection_vertices(t.simplex(a), t.simplex(b));
      SimplexIndices common;
      std::set_intersection(t.simplexes()[a].begin(), t.simplexes()[a].end(), t.simplexes()[b].begin(),
                            t.simplexes()[b].end(), std::back_inserter(common));
      if (common.empty()) {
        if (!meet.empty()) return false;
        continue;
      }
      auto frame = make_frame(t.points(common));
      for (const auto& p : meet)
        if (!frame.contains(p)) return false;
    }
  return true;
}

}  // namespace mvr

#endif  // MVR_REFINE_HPP
