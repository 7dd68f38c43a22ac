#ifndef MVR_PWL_HPP
#define MVR_PWL_HPP

// Piecewise-linear maps with integer affine pieces over a triangulation
// (Z-maps), compiled from MV-terms, and the exact calculus on them.

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mvr/error.hpp"
#include "mvr/exact.hpp"
#include "mvr/refine.hpp"
#include "mvr/simplex.hpp"
#include "mvr/term.hpp"
#include "mvr/triangulation.hpp"

namespace mvr {

/// x -> coeffs . x + constant with integer coefficients.
struct AffinePiece {
  std::vector<Integer> coeffs;
  Integer constant = 0;

  static AffinePiece constant_piece(std::size_t n, const Integer& c) { return {std::vector<Integer>(n, 0), c}; }
  static AffinePiece coordinate(std::size_t n, std::size_t i) {
    AffinePiece p = constant_piece(n, 0);
    p.coeffs[i] = 1;
    return p;
  }

  Rational operator()(const Point& p) const {
    Rational v(constant);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (coeffs[i] != 0) v += Rational(coeffs[i]) * p[i];
    return v;
  }
  AffineFunctional functional() const {
    AffineFunctional f;
    for (const auto& c : coeffs) f.coeffs.emplace_back(c);
    f.constant = Rational(constant);
    return f;
  }

  friend AffinePiece operator+(AffinePiece a, const AffinePiece& b) {
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) a.coeffs[i] += b.coeffs[i];
    a.constant += b.constant;
    return a;
  }
  friend AffinePiece operator-(AffinePiece a, const AffinePiece& b) {
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) a.coeffs[i] -= b.coeffs[i];
    a.constant -= b.constant;
    return a;
  }
  friend bool operator==(const AffinePiece& a, const AffinePiece& b) {
    return a.coeffs == b.coeffs && a.constant == b.constant;
  }
};

/// outer(inner_1(x), ..., inner_n(x)).
inline AffinePiece compose_piece(const AffinePiece& outer, const std::vector<AffinePiece>& inner) {
  std::size_t k = inner.empty() ? 0 : inner[0].coeffs.size();
  AffinePiece r = AffinePiece::constant_piece(k, outer.constant);
  for (std::size_t l = 0; l < outer.coeffs.size(); ++l) {
    if (outer.coeffs[l] == 0) continue;
    for (std::size_t i = 0; i < k; ++i) r.coeffs[i] += outer.coeffs[l] * inner[l].coeffs[i];
    r.constant += outer.coeffs[l] * inner[l].constant;
  }
  return r;
}

/// A Z-map: one row of m integer pieces per maximal simplex of the domain.
class PwlMap {
 public:
  PwlMap() = default;
  PwlMap(Triangulation domain, std::size_t codomain_dim, std::vector<std::vector<AffinePiece>> pieces)
      : domain_(std::move(domain)), codim_(codomain_dim), pieces_(std::move(pieces)) {
    validate();
    locator_ = std::make_shared<Locator>(domain_);
  }

  /// Identity of [0,1]^n on its standard triangulation.
  static PwlMap identity(std::size_t n) {
    Triangulation t = unit_cube(n);
    std::vector<AffinePiece> row;
    for (std::size_t i = 0; i < n; ++i) row.push_back(AffinePiece::coordinate(n, i));
    return PwlMap(t, n, std::vector<std::vector<AffinePiece>>(t.size(), row));
  }

  /// The map that is affine on each maximal simplex and sends vertex v to
  /// images[v]. Every piece must come out with integer coefficients.
  static PwlMap from_vertex_images(Triangulation domain, const std::vector<Point>& images) {
    if (images.size() != domain.vertices().size()) throw InvalidMap("one image per vertex is required");
    std::size_t n = domain.ambient_dim();
    std::size_t m = images.empty() ? 0 : images[0].dim();
    std::vector<std::vector<AffinePiece>> pieces;
    for (std::size_t s = 0; s < domain.size(); ++s) {
      auto frame = make_frame(domain.points(s));
      const auto& idx = domain.simplexes()[s];
      std::vector<AffinePiece> row;
      for (std::size_t k = 0; k < m; ++k) {
        AffineFunctional f{std::vector<Rational>(n, 0), 0};
        for (std::size_t i = 0; i < idx.size(); ++i) {
          const Rational& w = images[idx[i]][k];
          for (std::size_t j = 0; j < n; ++j) f.coeffs[j] += w * frame.barycentric[i].coeffs[j];
          f.constant += w * frame.barycentric[i].constant;
        }
        AffinePiece p;
        for (const auto& c : f.coeffs) {
          if (den(c) != 1) throw InvalidMap("vertex images do not give integer coefficients");
          p.coeffs.push_back(num(c));
        }
        if (den(f.constant) != 1) throw InvalidMap("vertex images do not give an integer constant term");
        p.constant = num(f.constant);
        row.push_back(std::move(p));
      }
      pieces.push_back(std::move(row));
    }
    return PwlMap(std::move(domain), m, std::move(pieces));
  }

  const Triangulation& domain() const { return domain_; }
  std::size_t domain_dim() const { return domain_.ambient_dim(); }
  std::size_t codomain_dim() const { return codim_; }
  const std::vector<AffinePiece>& pieces(std::size_t s) const { return pieces_[s]; }
  const std::vector<std::vector<AffinePiece>>& all_pieces() const { return pieces_; }
  const Locator& locator() const { return *locator_; }

  Point apply(std::size_t s, const Point& p) const {
    std::vector<Rational> y;
    for (const auto& piece : pieces_[s]) y.push_back(piece(p));
    return Point(std::move(y));
  }
  Point operator()(const Point& p) const {
    if (p.dim() != domain_dim()) throw DimensionMismatch("point has the wrong dimension for this map");
    auto s = locator_->find(p);
    if (!s) throw PointOutsideSupport("point " + to_string(p) + " is outside the domain");
    return apply(*s, p);
  }
  /// Image of the i-th vertex of the domain.
  Point vertex_image(std::size_t v) const {
    for (std::size_t s = 0; s < domain_.size(); ++s)
      for (std::size_t u : domain_.simplexes()[s])
        if (u == v) return apply(s, domain_.vertices()[v]);
    throw PointOutsideSupport("vertex index out of range");
  }

  friend bool operator==(const PwlMap& a, const PwlMap& b) {
    return a.codim_ == b.codim_ && a.domain_ == b.domain_ && a.pieces_ == b.pieces_;
  }

 private:
  void validate() const {
    std::size_t n = domain_.ambient_dim();
    if (pieces_.size() != domain_.size()) throw InvalidMap("one row of pieces per maximal simplex is required");
    for (const auto& v : domain_.vertices())
      if (!in_unit_cube(v)) throw InvalidMap("domain vertex " + to_string(v) + " is outside the unit cube");
    std::vector<std::optional<Point>> seen(domain_.vertices().size());
    for (std::size_t s = 0; s < domain_.size(); ++s) {
      if (pieces_[s].size() != codim_) throw InvalidMap("wrong number of pieces for a simplex");
      for (const auto& p : pieces_[s])
        if (p.coeffs.size() != n) throw InvalidMap("piece has the wrong number of coefficients");
      for (std::size_t v : domain_.simplexes()[s]) {
        Point y = apply(s, domain_.vertices()[v]);
        if (!in_unit_cube(y)) throw InvalidMap("image of vertex " + to_string(domain_.vertices()[v]) + " leaves the cube");
        if (!seen[v])
          seen[v] = y;
        else if (*seen[v] != y)
          throw InvalidMap("pieces disagree at vertex " + to_string(domain_.vertices()[v]));
      }
    }
  }

  Triangulation domain_;
  std::size_t codim_ = 0;
  std::vector<std::vector<AffinePiece>> pieces_;
  std::shared_ptr<const Locator> locator_ = std::make_shared<Locator>(Triangulation());
};

namespace detail {

// Shared triangulation with one piece array per compiled subterm.
class Compiler {
 public:
  explicit Compiler(std::size_t n) : n_(n), tri_(unit_cube(n)) {}

  std::size_t compile(const Term& t) {
    if (auto it = memo_.find(t.id()); it != memo_.end()) return it->second;
    std::size_t slot;
    switch (t.kind()) {
      case Term::Kind::Var:
        if (t.index() > n_)
          throw ArityError("term uses x" + std::to_string(t.index()) + " in dimension " + std::to_string(n_));
        slot = fresh(AffinePiece::coordinate(n_, t.index() - 1));
        break;
      case Term::Kind::Zero:
        slot = fresh(AffinePiece::constant_piece(n_, 0));
        break;
      case Term::Kind::One:
        slot = fresh(AffinePiece::constant_piece(n_, 1));
        break;
      case Term::Kind::Neg: {
        std::size_t a = compile(t.operand());
        slot = arrays_.size();
        std::vector<AffinePiece> out;
        for (const auto& p : arrays_[a]) out.push_back(AffinePiece::constant_piece(n_, 1) - p);
        arrays_.push_back(std::move(out));
        break;
      }
      default:
        slot = binary(t);
    }
    memo_.emplace(t.id(), slot);
    return slot;
  }

  PwlMap result(const std::vector<std::size_t>& slots) const {
    std::vector<std::vector<AffinePiece>> pieces(tri_.size());
    for (std::size_t s = 0; s < tri_.size(); ++s)
      for (std::size_t k : slots) pieces[s].push_back(arrays_[k][s]);
    return PwlMap(tri_, slots.size(), std::move(pieces));
  }

 private:
  std::size_t fresh(const AffinePiece& p) {
    arrays_.emplace_back(tri_.size(), p);
    return arrays_.size() - 1;
  }

  std::size_t binary(const Term& t) {
    std::size_t a = compile(t.lhs());
    std::size_t b = compile(t.rhs());
    auto kind = t.kind();
    AffinePiece one = AffinePiece::constant_piece(n_, 1);
    auto locus = [&](std::size_t s) {
      if (kind == Term::Kind::OPlus || kind == Term::Kind::OTimes) return arrays_[a][s] + arrays_[b][s] - one;
      return arrays_[a][s] - arrays_[b][s];
    };
    auto r = refine_by(tri_, 1, [&](std::size_t s, std::size_t) { return locus(s).functional(); });
    for (auto& arr : arrays_) {
      std::vector<AffinePiece> next;
      next.reserve(r.parent.size());
      for (std::size_t p : r.parent) next.push_back(arr[p]);
      arr = std::move(next);
    }
    tri_ = std::move(r.complex);
    std::vector<AffinePiece> out;
    for (std::size_t s = 0; s < tri_.size(); ++s) {
      AffinePiece g = locus(s);
      bool positive = false;
      for (std::size_t v : tri_.simplexes()[s])
        if (g(tri_.vertices()[v]) > 0) positive = true;
      switch (kind) {
        case Term::Kind::OPlus:
          out.push_back(positive ? one : arrays_[a][s] + arrays_[b][s]);
          break;
        case Term::Kind::OTimes:
          out.push_back(positive ? g : AffinePiece::constant_piece(n_, 0));
          break;
        case Term::Kind::Meet:
          out.push_back(positive ? arrays_[b][s] : arrays_[a][s]);
          break;
        default:
          out.push_back(positive ? arrays_[a][s] : arrays_[b][s]);
      }
    }
    arrays_.push_back(std::move(out));
    return arrays_.size() - 1;
  }

  std::size_t n_;
  Triangulation tri_;
  std::vector<std::vector<AffinePiece>> arrays_;
  std::map<const void*, std::size_t> memo_;
};

}  // namespace detail

/// The Z-map (t_1, ..., t_m) : [0,1]^n -> [0,1]^m.
inline PwlMap compile(const std::vector<Term>& terms, std::size_t n) {
  if (n == 0) throw ArityError("the ambient dimension must be at least 1");
  for (const auto& t : terms)
    if (arity(t) > n) throw ArityError("term " + to_string(t) + " has arity above " + std::to_string(n));
  detail::Compiler c(n);
  std::vector<std::size_t> slots;
  for (const auto& t : terms) slots.push_back(c.compile(t));
  return c.result(slots);
}

inline PwlMap compile(const Term& t, std::size_t n) { return compile(std::vector<Term>{t}, n); }

inline Point evaluate_map(const PwlMap& f, const Point& p) { return f(p); }

/// f o g. Refines g's domain until each cell maps into one simplex of f's.
inline PwlMap compose(const PwlMap& f, const PwlMap& g) {
  if (g.codomain_dim() != f.domain_dim()) throw ShapeMismatch("composition of maps with incompatible dimensions");
  CutIndex index(f.domain());
  std::size_t k = g.domain_dim();
  auto r = refine_cells(g.domain(), [&](std::size_t s) {
    std::vector<Point> image;
    for (const auto& v : g.domain().points(s)) image.push_back(g.apply(s, v));
    const auto& gp = g.pieces(s);
    std::vector<AffineFunctional> out;
    for (const auto& h : index.near(image)) {
      AffineFunctional c{std::vector<Rational>(k, 0), h.constant};
      for (std::size_t l = 0; l < h.coeffs.size(); ++l) {
        if (h.coeffs[l] == 0) continue;
        for (std::size_t i = 0; i < k; ++i) c.coeffs[i] += h.coeffs[l] * Rational(gp[l].coeffs[i]);
        c.constant += h.coeffs[l] * Rational(gp[l].constant);
      }
      if (!c.is_constant()) out.push_back(c);
    }
    return out;
  });
  std::vector<std::vector<AffinePiece>> pieces;
  for (std::size_t s = 0; s < r.complex.size(); ++s) {
    std::size_t parent = r.parent[s];
    Point y = g.apply(parent, centroid(r.complex.points(s)));
    auto target = f.locator().find(y);
    if (!target) throw NotASubset("image of the inner map leaves the domain of the outer map");
    std::vector<AffinePiece> row;
    for (const auto& piece : f.pieces(*target)) row.push_back(compose_piece(piece, g.pieces(parent)));
    pieces.push_back(std::move(row));
  }
  return PwlMap(std::move(r.complex), f.codomain_dim(), std::move(pieces));
}

/// Lexicographically smallest vertex of the common refinement where f and g
/// differ, or nullopt when they agree everywhere.
inline std::optional<Point> pwl_difference_witness(const PwlMap& f, const PwlMap& g) {
  if (f.domain_dim() != g.domain_dim() || f.codomain_dim() != g.codomain_dim())
    throw ShapeMismatch("maps have different shapes");
  auto r = overlay(f.domain(), g.domain());
  std::optional<Point> witness;
  for (std::size_t s = 0; s < r.complex.size(); ++s) {
    auto pts = r.complex.points(s);
    auto t = g.locator().find(centroid(pts));
    if (!t) throw ShapeMismatch("maps have different domains");
    for (const auto& v : pts)
      if ((!witness || v < *witness) && f.apply(r.parent[s], v) != g.apply(*t, v)) witness = v;
  }
  return witness;
}

inline bool pwl_equal(const PwlMap& f, const PwlMap& g) { return !pwl_difference_witness(f, g); }

/// A point of [0,1]^n where t is not 1, or nothing when t is a tautology.
/// n defaults to the arity of t (at least 1).
inline std::optional<Point> tautology_witness(const Term& t, std::size_t n = 0) {
  n = std::max({n, arity(t), std::size_t{1}});
  return pwl_difference_witness(compile(t, n), compile(Term::one(), n));
}

inline bool is_tautology(const Term& t, std::size_t n = 0) { return !tautology_witness(t, n); }

/// f on |q|, over a refinement of q.
inline PwlMap restrict(const PwlMap& f, const Triangulation& q) {
  if (q.ambient_dim() != f.domain_dim()) throw DimensionMismatch("restriction to a polyhedron of another dimension");
  if (!polyhedron_contained(q, f.domain())) throw NotASubset("polyhedron is not inside the domain of the map");
  auto r = overlay(q, f.domain());
  std::vector<std::vector<AffinePiece>> pieces;
  for (std::size_t s = 0; s < r.complex.size(); ++s) {
    auto t = f.locator().find(centroid(r.complex.points(s)));
    pieces.push_back(f.pieces(*t));
  }
  return PwlMap(std::move(r.complex), f.codomain_dim(), std::move(pieces));
}

/// f over a triangulation t that subdivides f's domain.
inline PwlMap resample(const PwlMap& f, const Triangulation& t) {
  std::vector<std::vector<AffinePiece>> pieces;
  for (std::size_t s = 0; s < t.size(); ++s) {
    auto pts = t.points(s);
    auto host = f.locator().find(centroid(pts));
    if (!host) throw NotASubset("triangulation leaves the domain of the map");
    pieces.push_back(f.pieces(*host));
  }
  return PwlMap(t, f.codomain_dim(), std::move(pieces));
}

/// Triangulation of {x : f(x) = x}.
inline Triangulation fixed_point_set(const PwlMap& f) {
  std::size_t n = f.domain_dim();
  if (f.codomain_dim() != n) throw ShapeMismatch("fixed points need an endomap");
  auto gap = [&](std::size_t s, std::size_t k) {
    AffineFunctional g = f.pieces(s)[k].functional();
    g.coeffs[k] -= 1;
    return g;
  };
  auto r = refine_by(f.domain(), n, gap);
  std::vector<SimplexIndices> cells;
  for (std::size_t s = 0; s < r.complex.size(); ++s) {
    SimplexIndices z;
    for (std::size_t v : r.complex.simplexes()[s]) {
      const Point& p = r.complex.vertices()[v];
      if (f.apply(r.parent[s], p) == p) z.push_back(v);
    }
    if (!z.empty()) cells.push_back(std::move(z));
  }
  return Triangulation(n, r.complex.vertices(), std::move(cells));
}

}  // namespace mvr

#endif  // MVR_PWL_HPP
