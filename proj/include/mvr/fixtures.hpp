#ifndef MVR_FIXTURES_HPP
#define MVR_FIXTURES_HPP

// Named constructions: the canonical small retractions, the Fibonacci family
// of retractions of the square, and the broken lines W_p.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mvr/error.hpp"
#include "mvr/exact.hpp"
#include "mvr/pwl.hpp"
#include "mvr/retract.hpp"
#include "mvr/term.hpp"
#include "mvr/triangulation.hpp"

namespace mvr {

inline const std::vector<std::string>& canonical_names() {
  static const std::vector<std::string> names = {"half_meet", "half_tau", "half_join", "cyl_proj", "L_fold"};
  return names;
}

/// Defining terms of a canonical retraction.
inline std::vector<std::string> canonical_terms(std::string_view name) {
  if (name == "half_meet") return {"x1 /\\ ~x1"};
  if (name == "half_tau") return {"(x1 /\\ ~x1) /\\ ((~x1 (+) ~x1) (.) (~x1 (+) ~x1))"};
  if (name == "half_join") return {"x1 \\/ ~x1"};
  if (name == "cyl_proj") return {"x1", "0"};
  if (name == "L_fold") return {"x1 (-) x2", "x2 (-) x1"};
  throw InputError("unknown fixture '" + std::string(name) + "'");
}

inline ZRetraction canonical(std::string_view name) {
  std::vector<Term> ts;
  for (const auto& s : canonical_terms(name)) ts.push_back(parse_term(s));
  return verify_z_retraction(ts);
}

/// F_1 = F_2 = 1, F_{k+1} = F_k + F_{k-1}; F_0 = 0.
inline Integer fibonacci(std::size_t k) {
  Integer a = 0, b = 1;
  for (std::size_t i = 0; i < k; ++i) {
    Integer c = a + b;
    a = b;
    b = c;
  }
  return a;
}

struct FibonacciStage {
  std::size_t n = 0;
  RationalSimplex u, v;           // U_n and V_n
  std::vector<RationalSimplex> t;  // T_{n,j}; empty for n <= 2
  PwlMap rho;                      // defined on U_{n-1} (on the square for n = 1)
  ZRetraction sigma;               // rho^(n) o ... o rho^(1)
};

namespace detail {

// Affine point of the homogeneous vector [a, b, d].
inline Point hpoint(const Integer& a, const Integer& b, const Integer& d) {
  return Point{Rational(a, d), Rational(b, d)};
}

inline FibonacciStage fibonacci_piece(std::size_t n) {
  FibonacciStage st;
  st.n = n;
  Point o = hpoint(0, 0, 1);
  std::vector<RationalSimplex> cells;
  std::vector<std::pair<Point, Point>> images;  // vertex -> image
  if (n == 1) {
    Point e = hpoint(1, 0, 1), d = hpoint(1, 1, 1), f = hpoint(0, 1, 1);
    st.u = RationalSimplex({o, e, d});
    st.v = RationalSimplex({o, d, f});
    cells = {st.u, st.v};
    images = {{o, o}, {e, e}, {d, d}, {f, e}};
  } else {
    Integer fn = fibonacci(n), fn1 = fibonacci(n + 1), fnm1 = fibonacci(n - 1), fnm2 = fibonacci(n - 2);
    Point apex = hpoint(n, 1, fn1);
    Point prev = hpoint(n - 1, 1, fn);
    Point base = hpoint(1, 0, fn);
    st.v = RationalSimplex({o, apex, prev});
    st.u = RationalSimplex({o, base, apex});
    cells = {st.v, st.u};
    images = {{o, o}, {apex, apex}, {prev, base}, {base, base}};
    for (Integer j = 0; j < fnm2; ++j) {
      Point a = hpoint(1, 0, fnm1 + j), b = hpoint(1, 0, fnm1 + j + 1);
      st.t.emplace_back(std::vector<Point>{apex, a, b});
      cells.push_back(st.t.back());
      // the last triangle folds onto U_n, the others collapse onto [o, apex]
      images.emplace_back(a, o);
    }
  }
  Triangulation dom = from_simplexes(2, cells);
  std::vector<Point> img(dom.vertices().size());
  for (std::size_t i = 0; i < dom.vertices().size(); ++i) {
    bool found = false;
    for (const auto& [from, to] : images)
      if (from == dom.vertices()[i]) {
        img[i] = to;
        found = true;
        break;
      }
    if (!found) throw InvalidMap("Fibonacci stage vertex without an image");
  }
  st.rho = PwlMap::from_vertex_images(dom, img);
  return st;
}

}  // namespace detail

/// The triangles and the map rho of stage n, without composing earlier stages.
inline FibonacciStage fibonacci_geometry(std::size_t n) {
  if (n == 0) throw InputError("Fibonacci stages start at 1");
  return detail::fibonacci_piece(n);
}

/// Stage n of the Fibonacci family; throws CapExceeded beyond `cap`.
inline FibonacciStage fibonacci_stage(std::size_t n, std::size_t cap = 5) {
  if (n == 0) throw InputError("Fibonacci stages start at 1");
  if (n > cap) throw CapExceeded("Fibonacci stage " + std::to_string(n) + " exceeds the cap " + std::to_string(cap));
  FibonacciStage st = detail::fibonacci_piece(1);
  st.sigma = verify_z_retraction(st.rho);
  for (std::size_t k = 2; k <= n; ++k) {
    ZRetraction previous = std::move(st.sigma);
    st = detail::fibonacci_piece(k);
    st.sigma = verify_z_retraction(compose(st.rho, previous.map));
  }
  return st;
}

/// L = [0,1] x {0} ∪ {0} x [0,1].
inline Triangulation l_shape() {
  return from_simplexes(2, {RationalSimplex({Point{0, 1}, Point{0, 0}}), RationalSimplex({Point{1, 0}, Point{0, 0}})});
}

/// The broken line from (0,1) through (0,0), (2/p,1/p), (1/(p-1),0) to (1,0).
inline Triangulation wp_domain(long p) {
  if (p < 3) throw InputError("W_p needs p >= 3");
  Point a{0, 1}, o{0, 0}, b{Rational(2, p), Rational(1, p)}, c{Rational(1, p - 1), 0}, e{1, 0};
  return from_simplexes(2, {RationalSimplex({a, o}), RationalSimplex({o, b}), RationalSimplex({b, c}),
                            RationalSimplex({c, e})});
}

/// Is the L-fold retraction a Z-homeomorphism of W_p onto L?
inline Verdict wp_certified(long p) {
  return certify_homeomorphism(canonical("L_fold").map, wp_domain(p), l_shape());
}

}  // namespace mvr

#endif  // MVR_FIXTURES_HPP
