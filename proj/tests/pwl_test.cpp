#include <gtest/gtest.h>

#include <random>

#include "mvr/pwl.hpp"
#include "random_terms.hpp"

using namespace mvr;

namespace {

Rational q(const char* s) { return parse_rational(s); }
Point p1(const char* a) { return Point{q(a)}; }
Point p2(const char* a, const char* b) { return Point{q(a), q(b)}; }
PwlMap term_map(const char* s, std::size_t n) { return compile(parse_term(s), n); }
PwlMap terms_map(std::vector<const char*> ss, std::size_t n) {
  std::vector<Term> ts;
  for (const char* s : ss) ts.push_back(parse_term(s));
  return compile(ts, n);
}
Triangulation interval(const char* a, const char* b) {
  return from_simplexes(1, {RationalSimplex({p1(a), p1(b)})});
}
AffinePiece piece(std::vector<long> c, long b) { return AffinePiece{std::vector<Integer>(c.begin(), c.end()), b}; }

}  // namespace

TEST(Compile, HalfMeet) {
  PwlMap f = term_map("x1 /\\ ~x1", 1);
  EXPECT_EQ(f.domain(), from_simplexes(1, {RationalSimplex({p1("0"), p1("1/2")}), RationalSimplex({p1("1/2"), p1("1")})}));
  EXPECT_EQ(f.pieces(0)[0], piece({1}, 0));
  EXPECT_EQ(f.pieces(1)[0], piece({-1}, 1));
}

TEST(Compile, LFold) {
  PwlMap rho = terms_map({"x1 (-) x2", "x2 (-) x1"}, 2);
  for (std::size_t s = 0; s < rho.domain().size(); ++s) {
    Point c = centroid(rho.domain().points(s));
    if (c[1] > c[0]) {
      EXPECT_EQ(rho.pieces(s)[0], piece({0, 0}, 0));
      EXPECT_EQ(rho.pieces(s)[1], piece({-1, 1}, 0));
    } else {
      EXPECT_EQ(rho.pieces(s)[0], piece({1, -1}, 0));
      EXPECT_EQ(rho.pieces(s)[1], piece({0, 0}, 0));
    }
  }
  EXPECT_EQ(rho(p2("1/2", "1/4")), p2("1/4", "0"));
}

TEST(Compile, Constant) {
  PwlMap f = term_map("1", 1);
  EXPECT_EQ(f.domain().size(), 1u);
  EXPECT_EQ(f.pieces(0)[0], piece({0}, 1));
}

TEST(Compile, ArityError) { EXPECT_THROW(term_map("x2", 1), ArityError); }

TEST(PwlEqual, Cases) {
  EXPECT_TRUE(pwl_equal(term_map("~~x1", 1), term_map("x1", 1)));
  auto w = pwl_difference_witness(term_map("x1 (+) x1", 1), term_map("x1", 1));
  ASSERT_TRUE(w);
  EXPECT_EQ(*w, p1("1/2"));
  PwlMap s = term_map("x1 /\\ ~x1", 1);
  EXPECT_TRUE(pwl_equal(compose(s, s), s));
  EXPECT_THROW(pwl_equal(term_map("x1", 1), term_map("x1", 2)), ShapeMismatch);
}

TEST(Compose, Cases) {
  PwlMap f = term_map("x1 (.) x1", 1);
  EXPECT_TRUE(pwl_equal(compose(f, PwlMap::identity(1)), f));
  PwlMap s = term_map("x1 /\\ ~x1", 1);
  EXPECT_EQ(compose(term_map("~x1", 1), s)(p1("1/4")), p1("3/4"));
  EXPECT_THROW(compose(term_map("x1", 2), s), ShapeMismatch);
}

TEST(Evaluate, Cases) {
  EXPECT_EQ(PwlMap::identity(2)(p2("1/3", "2/7")), p2("1/3", "2/7"));
  EXPECT_EQ(term_map("x1 /\\ ~x1", 1)(p1("3/4")), p1("1/4"));
  EXPECT_THROW(term_map("x1", 1)(p1("2")), PointOutsideSupport);
}

TEST(Restrict, Cases) {
  PwlMap s = term_map("x1 /\\ ~x1", 1);
  PwlMap r = restrict(s, interval("1/2", "1"));
  EXPECT_EQ(r.domain().size(), 1u);
  EXPECT_EQ(r.pieces(0)[0], piece({-1}, 1));
  EXPECT_TRUE(pwl_equal(restrict(s, s.domain()), s));
  PwlMap rho = terms_map({"x1 (-) x2", "x2 (-) x1"}, 2);
  auto l = from_simplexes(2, {RationalSimplex({p2("0", "1"), p2("0", "0")}), RationalSimplex({p2("1", "0"), p2("0", "0")})});
  PwlMap on_l = restrict(rho, l);
  for (const auto& v : on_l.domain().vertices()) EXPECT_EQ(on_l(v), v);
  EXPECT_THROW(restrict(restrict(s, interval("0", "1/2")), interval("1/4", "1")), NotASubset);
}

TEST(FixedPoints, Cases) {
  EXPECT_TRUE(polyhedra_equal(fixed_point_set(term_map("x1 /\\ ~x1", 1)), interval("0", "1/2")));
  EXPECT_TRUE(polyhedra_equal(fixed_point_set(PwlMap::identity(2)), unit_cube(2)));
  PwlMap rho = terms_map({"x1 (-) x2", "x2 (-) x1"}, 2);
  auto l = from_simplexes(2, {RationalSimplex({p2("0", "1"), p2("0", "0")}), RationalSimplex({p2("1", "0"), p2("0", "0")})});
  EXPECT_TRUE(polyhedra_equal(fixed_point_set(rho), l));
  EXPECT_TRUE(fixed_point_set(term_map("~x1 (.) ~x1", 1)).empty() == false);
  EXPECT_TRUE(fixed_point_set(term_map("1 (.) 0", 1)).size() == 1u);
}

TEST(FromVertexImages, Checks) {
  Triangulation t = interval("0", "1");
  EXPECT_NO_THROW(PwlMap::from_vertex_images(t, {p1("1"), p1("0")}));
  EXPECT_THROW(PwlMap::from_vertex_images(t, {p1("0"), p1("1/2")}), InvalidMap);
  EXPECT_THROW(PwlMap::from_vertex_images(interval("0", "1/2"), {p1("0"), p1("3/2")}), InvalidMap);
}

TEST(PwlMap, ContinuityChecked) {
  Triangulation t = from_simplexes(1, {RationalSimplex({p1("0"), p1("1/2")}), RationalSimplex({p1("1/2"), p1("1")})});
  EXPECT_THROW(PwlMap(t, 1, {{piece({1}, 0)}, {piece({0}, 0)}}), InvalidMap);
  EXPECT_NO_THROW(PwlMap(t, 1, {{piece({1}, 0)}, {piece({-1}, 1)}}));
}

class PwlProperties : public ::testing::Test {
 protected:
  std::mt19937 rng{31337};
};

TEST_F(PwlProperties, CompileAgreesWithEvaluation) {
  for (int i = 0; i < 100; ++i) {
    std::size_t n = 1 + i % 2;
    Term t = testing_support::random_term(rng, n, 4);
    PwlMap f = compile(t, n);
    for (int k = 0; k < 200; ++k) {
      Point p = testing_support::random_point(rng, n, 60);
      ASSERT_EQ(f(p)[0], evaluate(t, p)) << to_string(t) << " at " << to_string(p);
    }
  }
}

TEST_F(PwlProperties, DenominatorsNeverGrow) {
  for (int i = 0; i < 100; ++i) {
    std::size_t n = 1 + i % 2;
    PwlMap f = compile(testing_support::random_term(rng, n, 4), n);
    for (std::size_t v = 0; v < f.domain().vertices().size(); ++v) {
      Integer d = denominator(f.domain().vertices()[v]);
      EXPECT_EQ(d % denominator(f.vertex_image(v)), 0);
    }
  }
}

TEST_F(PwlProperties, ComposeIsAssociative) {
  for (int i = 0; i < 40; ++i) {
    std::size_t n = 1 + i % 2;
    auto pick = [&] {
      std::vector<Term> ts;
      for (std::size_t k = 0; k < n; ++k) ts.push_back(testing_support::random_term(rng, n, 2));
      return compile(ts, n);
    };
    PwlMap a = pick(), b = pick(), c = pick();
    EXPECT_TRUE(pwl_equal(compose(compose(a, b), c), compose(a, compose(b, c))));
  }
}

TEST_F(PwlProperties, FixedPointsAreFixed) {
  for (int i = 0; i < 60; ++i) {
    std::size_t n = 1 + i % 2;
    std::vector<Term> ts;
    for (std::size_t k = 0; k < n; ++k) ts.push_back(testing_support::random_term(rng, n, 3));
    PwlMap f = compile(ts, n);
    Triangulation fix = fixed_point_set(f);
    for (const auto& v : fix.vertices()) EXPECT_EQ(f(v), v);
    for (std::size_t s = 0; s < fix.size(); ++s) {
      Point c = centroid(fix.points(s));
      EXPECT_EQ(f(c), c);
    }
  }
}
