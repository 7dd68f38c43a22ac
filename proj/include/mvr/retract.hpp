#ifndef MVR_RETRACT_HPP
#define MVR_RETRACT_HPP

// Z-retractions of [0,1]^n: verification, Z-homeomorphism domains,
// multiplicity, index bounds, and range/algebra comparisons.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "mvr/error.hpp"
#include "mvr/exact.hpp"
#include "mvr/exact_cover.hpp"
#include "mvr/pwl.hpp"
#include "mvr/refine.hpp"
#include "mvr/simplex.hpp"
#include "mvr/subdivision.hpp"
#include "mvr/term.hpp"
#include "mvr/triangulation.hpp"

namespace mvr {

class NotIdempotent : public Error {
 public:
  explicit NotIdempotent(Point witness)
      : Error("map is not idempotent at " + to_string(witness)), witness_(std::move(witness)) {}
  const Point& witness() const { return witness_; }

 private:
  Point witness_;
};

struct ZRetraction {
  PwlMap map;
  Triangulation range;
  std::size_t dim() const { return map.domain_dim(); }
};

inline ZRetraction verify_z_retraction(const PwlMap& f) {
  std::size_t n = f.domain_dim();
  if (f.codomain_dim() != n) throw ShapeMismatch("a retraction maps [0,1]^n to itself");
  if (!polyhedra_equal(f.domain(), unit_cube(n))) throw ShapeMismatch("a retraction is defined on all of [0,1]^n");
  if (auto w = pwl_difference_witness(compose(f, f), f)) throw NotIdempotent(*w);
  return {f, fixed_point_set(f)};
}

inline ZRetraction verify_z_retraction(const std::vector<Term>& terms) {
  return verify_z_retraction(compile(terms, terms.size()));
}

/// Pass/fail with a short diagnostic.
struct Verdict {
  bool ok = true;
  std::string reason;
  explicit operator bool() const { return ok; }
  static Verdict fail(std::string why) { return {false, std::move(why)}; }
};

namespace detail {

template <class F>
void parallel_for(std::size_t count, std::size_t threads, F&& body) {
  if (threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < std::min(threads, count); ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) body(i);
    });
  for (auto& th : pool) th.join();
}

inline bool boxes_meet(const std::vector<Point>& a, const std::vector<Point>& b) {
  for (std::size_t j = 0; j < a[0].dim(); ++j) {
    Rational alo = a[0][j], ahi = a[0][j], blo = b[0][j], bhi = b[0][j];
    for (const auto& p : a) {
      alo = std::min(alo, p[j]);
      ahi = std::max(ahi, p[j]);
    }
    for (const auto& p : b) {
      blo = std::min(blo, p[j]);
      bhi = std::max(bhi, p[j]);
    }
    if (ahi < blo || bhi < alo) return false;
  }
  return true;
}

// f(S) ∩ f(T) ⊆ f(S ∩ T) for two simplexes of one complex, where the images
// are given vertexwise. Together with injectivity on each simplex this makes f
// injective on S ∪ T.
inline bool images_compatible(const SimplexIndices& s, const SimplexIndices& t, const std::vector<Point>& fs,
                              const std::vector<Point>& ft) {
  if (!boxes_meet(fs, ft)) return true;
  auto meet = intersection_vertices(RationalSimplex(fs), RationalSimplex(ft));
  std::vector<Point> common;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (std::find(t.begin(), t.end(), s[i]) != t.end()) common.push_back(fs[i]);
  if (common.empty()) return meet.empty();
  auto frame = make_frame(common);
  return std::all_of(meet.begin(), meet.end(), [&](const Point& p) { return frame.contains(p); });
}

inline std::vector<Point> vertex_images(const PwlMap& f, std::size_t s) {
  std::vector<Point> out;
  for (const auto& v : f.domain().points(s)) out.push_back(f.apply(s, v));
  return out;
}

// The image is a regular simplex of the same dimension and every vertex keeps
// its denominator.
inline bool unimodular_on(const std::vector<Point>& verts, const std::vector<Point>& images) {
  if (affine_rank(images) + 1 != images.size()) return false;
  for (std::size_t i = 0; i < verts.size(); ++i)
    if (denominator(verts[i]) != denominator(images[i])) return false;
  return is_regular(RationalSimplex(images));
}

}  // namespace detail

/// A regular triangulation delta of [0,1]^n linearizing the retraction, and
/// the n-simplexes of delta on which it is a Z-homeomorphism.
struct HomeoSubcomplex {
  Triangulation delta;
  PwlMap map;                              // the retraction over delta
  std::vector<std::size_t> nabla;          // indices into delta.simplexes()
  std::vector<std::vector<Point>> images;  // vertex images, parallel to nabla
};

inline HomeoSubcomplex homeo_subcomplex(const ZRetraction& sigma) {
  HomeoSubcomplex h;
  h.delta = desingularize(sigma.map.domain());
  h.map = resample(sigma.map, h.delta);
  std::size_t n = sigma.dim();
  for (std::size_t s = 0; s < h.delta.size(); ++s) {
    if (h.delta.simplex_dim(s) != n) continue;
    auto img = detail::vertex_images(h.map, s);
    if (detail::unimodular_on(h.delta.points(s), img)) {
      h.nabla.push_back(s);
      h.images.push_back(std::move(img));
    }
  }
  return h;
}

/// Is the retraction a bijection from the union of the chosen simplexes of
/// delta (indices into delta) onto its range?
inline Verdict certify_homeo_domain(const ZRetraction& sigma, const HomeoSubcomplex& h,
                                    const std::vector<std::size_t>& chosen) {
  std::vector<std::vector<Point>> imgs;
  for (std::size_t s : chosen) {
    auto it = std::find(h.nabla.begin(), h.nabla.end(), s);
    if (it == h.nabla.end()) return Verdict::fail("simplex is not in the homeomorphism subcomplex");
    imgs.push_back(h.images[static_cast<std::size_t>(it - h.nabla.begin())]);
  }
  for (std::size_t a = 0; a < chosen.size(); ++a)
    for (std::size_t b = a + 1; b < chosen.size(); ++b)
      if (!detail::images_compatible(h.delta.simplexes()[chosen[a]], h.delta.simplexes()[chosen[b]], imgs[a], imgs[b]))
        return Verdict::fail("map is not injective on the union");
  Rational m = 0;
  std::vector<RationalSimplex> image_simplexes;
  for (const auto& img : imgs) {
    image_simplexes.emplace_back(img);
    m += lebesgue_measure_ndim(image_simplexes.back());
  }
  if (m != total_measure(sigma.range)) return Verdict::fail("image measure differs from the range measure");
  if (!polyhedra_equal(from_simplexes(sigma.dim(), image_simplexes), sigma.range))
    return Verdict::fail("image does not cover the range");
  return {};
}

/// Checks that f restricted to |q| is a Z-homeomorphism onto |p|.
inline Verdict certify_homeomorphism(const PwlMap& f, const Triangulation& q, const Triangulation& p) {
  if (q.empty() || p.empty()) return Verdict::fail("empty polyhedron");
  PwlMap g;
  try {
    g = restrict(f, q);
  } catch (const NotASubset&) {
    return Verdict::fail("polyhedron is not inside the domain of the map");
  }
  Triangulation delta = desingularize(g.domain());
  PwlMap h = resample(g, delta);
  std::vector<std::vector<Point>> imgs;
  std::vector<RationalSimplex> image_simplexes;
  Rational m = 0;
  for (std::size_t s = 0; s < delta.size(); ++s) {
    imgs.push_back(detail::vertex_images(h, s));
    if (!detail::unimodular_on(delta.points(s), imgs.back()))
      return Verdict::fail("map is not unimodular on " + to_string(delta.simplex(s)));
    image_simplexes.emplace_back(imgs.back());
    m += lebesgue_measure_ndim(image_simplexes.back());
  }
  for (std::size_t a = 0; a < delta.size(); ++a)
    for (std::size_t b = a + 1; b < delta.size(); ++b)
      if (!detail::images_compatible(delta.simplexes()[a], delta.simplexes()[b], imgs[a], imgs[b]))
        return Verdict::fail("map is not injective");
  if (m != total_measure(p)) return Verdict::fail("image measure differs from the target measure");
  if (!polyhedra_equal(from_simplexes(p.ambient_dim(), image_simplexes), p))
    return Verdict::fail("image is not the target polyhedron");
  return {};
}

/// Canonical order on triangulations (vertex list, then simplex list).
inline bool canonical_less(const Triangulation& a, const Triangulation& b) {
  if (a.vertices() != b.vertices())
    return std::lexicographical_compare(a.vertices().begin(), a.vertices().end(), b.vertices().begin(),
                                        b.vertices().end());
  return a.simplexes() < b.simplexes();
}

struct MultiplicityReport {
  bool finite = true;
  std::size_t count = 0;
  std::vector<Triangulation> certificates;  // FINITE: one domain per retraction
  std::optional<RationalSimplex> witness;   // INFINITE: maximal simplex of dimension < n
};

struct SearchOptions {
  std::size_t threads = 1;
};

inline MultiplicityReport multiplicity(const ZRetraction& sigma, const SearchOptions& opt = {}) {
  MultiplicityReport report;
  std::size_t n = sigma.dim();
  const Triangulation& p = sigma.range;
  for (std::size_t s = 0; s < p.size(); ++s)
    if (p.simplex_dim(s) < n) {
      report.finite = false;
      report.witness = p.simplex(s);
      return report;
    }
  HomeoSubcomplex h = homeo_subcomplex(sigma);
  std::size_t rows = h.nabla.size();
  // Columns: cells of the range cut by every image simplex.
  std::vector<RationalSimplex> image_simplexes;
  for (const auto& img : h.images) image_simplexes.emplace_back(img);
  Refinement cells = overlay(p, from_simplexes(n, image_simplexes));
  std::vector<Point> centers;
  for (std::size_t c = 0; c < cells.complex.size(); ++c) centers.push_back(centroid(cells.complex.points(c)));
  std::vector<std::vector<std::size_t>> cover(rows);
  detail::parallel_for(rows, opt.threads, [&](std::size_t r) {
    auto frame = image_simplexes[r].frame();
    for (std::size_t c = 0; c < centers.size(); ++c)
      if (frame.contains(centers[c])) cover[r].push_back(c);
  });
  // Pairwise compatibility for rows with disjoint cells.
  std::vector<std::vector<char>> compat(rows, std::vector<char>(rows, 1));
  detail::parallel_for(rows, opt.threads, [&](std::size_t a) {
    for (std::size_t b = a + 1; b < rows; ++b) {
      std::vector<std::size_t> shared;
      std::set_intersection(cover[a].begin(), cover[a].end(), cover[b].begin(), cover[b].end(),
                            std::back_inserter(shared));
      if (!shared.empty()) continue;
      compat[a][b] = detail::images_compatible(h.delta.simplexes()[h.nabla[a]], h.delta.simplexes()[h.nabla[b]],
                                               h.images[a], h.images[b]);
    }
  });
  ExactCover ec(centers.size(), cover);
  ec.set_compatible([&](std::size_t a, std::size_t b) { return a < b ? compat[a][b] : compat[b][a]; });
  for (const auto& sol : ec.solve()) {
    std::vector<RationalSimplex> dom;
    for (std::size_t r : sol) dom.push_back(h.delta.simplex(h.nabla[r]));
    report.certificates.push_back(from_simplexes(n, dom));
  }
  std::sort(report.certificates.begin(), report.certificates.end(), canonical_less);
  report.count = report.certificates.size();
  return report;
}

struct IndexBounds {
  bool unbounded = false;
  Integer lower = 1;
  std::optional<Integer> upper;  // nullopt when unbounded
  Rational lambda = 0;           // smallest measure of an interior component
  std::size_t components = 0;
  std::size_t verified_copies = 1;  // pairwise disjoint copies, range included
};

/// A polyhedron offered as a disjoint copy of the range, with the Z-map that
/// carries it onto the range (the retraction itself when absent).
struct CandidateCopy {
  Triangulation copy;
  std::optional<PwlMap> witness;
};

inline bool polyhedra_disjoint(const Triangulation& a, const Triangulation& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!intersection_vertices(a.simplex(i), b.simplex(j)).empty()) return false;
  return true;
}

/// Reflection x -> 1 - x of a polyhedron in [0,1].
inline Triangulation mirror_interval(const Triangulation& t) {
  std::vector<RationalSimplex> out;
  for (std::size_t s = 0; s < t.size(); ++s) {
    std::vector<Point> pts;
    for (const auto& v : t.points(s)) pts.push_back(Point{1 - v[0]});
    out.emplace_back(std::move(pts));
  }
  return from_simplexes(1, out);
}

inline IndexBounds index_bounds(const ZRetraction& sigma, const std::vector<CandidateCopy>& candidates = {},
                                const std::optional<MultiplicityReport>& known = std::nullopt) {
  IndexBounds b;
  std::size_t n = sigma.dim();
  const Triangulation& p = sigma.range;
  if (!is_closed_domain(p)) {
    b.unbounded = true;
    return b;
  }
  auto comps = interior_components(p);
  b.components = comps.size();
  bool first = true;
  for (const auto& c : comps) {
    Rational m = 0;
    for (std::size_t s : c) m += lebesgue_measure_ndim(p.simplex(s));
    if (first || m < b.lambda) b.lambda = m;
    first = false;
  }
  Integer floor_inv = floor_div(1 / b.lambda);
  b.upper = binomial(floor_inv, b.components);
  if (n == 1 && b.components == 1) b.upper = std::min(*b.upper, Integer(2));

  MultiplicityReport r = known ? *known : multiplicity(sigma);
  std::vector<CandidateCopy> all = candidates;
  if (n == 1) all.push_back({mirror_interval(p), compile(parse_term("~x1"), 1)});
  std::vector<Triangulation> accepted{p};
  for (const auto& c : all) {
    if (c.copy.ambient_dim() != n) continue;
    bool apart = std::all_of(accepted.begin(), accepted.end(),
                             [&](const Triangulation& t) { return polyhedra_disjoint(t, c.copy); });
    if (!apart) continue;
    const PwlMap& w = c.witness ? *c.witness : sigma.map;
    if (certify_homeomorphism(w, c.copy, p)) accepted.push_back(c.copy);
  }
  b.verified_copies = accepted.size();
  b.lower = std::max<Integer>(Integer(r.count), Integer(accepted.size()));
  return b;
}

inline bool same_range(const ZRetraction& a, const ZRetraction& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("retractions of cubes of different dimensions");
  return polyhedra_equal(a.range, b.range);
}

/// Do the two retractions determine the same subalgebra?
inline bool same_algebra(const ZRetraction& s, const ZRetraction& t) {
  if (s.dim() != t.dim()) throw DimensionMismatch("retractions of cubes of different dimensions");
  if (polyhedra_equal(s.range, t.range)) return pwl_equal(s.map, t.map);
  if (!certify_homeomorphism(s.map, t.range, s.range)) return false;
  return pwl_equal(compose(s.map, t.map), s.map);
}

}  // namespace mvr

#endif  // MVR_RETRACT_HPP
