#include <gtest/gtest.h>

#include <random>

#include "mvr/refine.hpp"
#include "mvr/simplex.hpp"
#include "mvr/subdivision.hpp"
#include "mvr/triangulation.hpp"

using namespace mvr;

namespace {

Rational q(const char* s) { return parse_rational(s); }
Point p2(const char* a, const char* b) { return Point{q(a), q(b)}; }
Point p1(const char* a) { return Point{q(a)}; }

RationalSimplex simplex(std::vector<Point> v) { return RationalSimplex(std::move(v)); }
Triangulation tri(std::size_t n, std::vector<std::vector<Point>> cells) {
  std::vector<RationalSimplex> s;
  for (auto& c : cells) s.emplace_back(std::move(c));
  return from_simplexes(n, s);
}

const Point O = p2("0", "0");
Triangulation step0() {
  return tri(2, {{O, p2("1", "0"), p2("1", "1")}, {O, p2("1", "1"), p2("0", "1")}});
}
Triangulation l_shape() { return tri(2, {{p2("0", "1"), O}, {p2("1", "0"), O}}); }

}  // namespace

TEST(Simplex, RejectsDependentVertices) {
  EXPECT_THROW(simplex({O, p2("1", "1"), p2("1/2", "1/2")}), InputError);
  EXPECT_THROW(simplex({O, p1("1")}), DimensionMismatch);
}

TEST(Regular, StepZeroTriangle) { EXPECT_TRUE(is_regular(simplex({O, p2("1", "0"), p2("1", "1")}))); }
TEST(Regular, CounterexampleTriangle) {
  EXPECT_TRUE(is_regular(simplex({O, p2("2/3", "1/3"), p2("1/3", "0")})));
}
TEST(Regular, ThirdsSegment) { EXPECT_FALSE(is_regular(simplex({p1("1/3"), p1("2/3")}))); }

TEST(StrongRegularity, UnitInterval) {
  EXPECT_TRUE(is_strongly_regular_triangulation(tri(1, {{p1("0"), p1("1")}})));
}
TEST(StrongRegularity, HalfPoint) { EXPECT_FALSE(is_strongly_regular_triangulation(tri(1, {{p1("1/2")}}))); }
TEST(StrongRegularity, StepZero) { EXPECT_TRUE(is_strongly_regular_triangulation(step0())); }
TEST(StrongRegularity, NeedsRegular) {
  EXPECT_THROW(is_strongly_regular_triangulation(tri(1, {{p1("1/3"), p1("2/3")}})), NotRegular);
}

TEST(Farey, UnitInterval) { EXPECT_EQ(farey_mediant(simplex({p1("0"), p1("1")})), p1("1/2")); }
TEST(Farey, StepOneEdge) { EXPECT_EQ(farey_mediant(simplex({p2("1", "0"), p2("1", "1")})), p2("1", "1/2")); }
TEST(Farey, StepTwoEdge) {
  EXPECT_EQ(farey_mediant(simplex({p2("1/2", "0"), p2("2/3", "1/3")})), p2("3/5", "1/5"));
}
TEST(Farey, Errors) {
  EXPECT_THROW(farey_mediant(simplex({p1("1/3")})), ZeroDimensional);
  EXPECT_THROW(farey_mediant(simplex({p1("1/3"), p1("2/3")})), NotRegular);
}

TEST(BlowUp, StepOne) {
  auto u1 = tri(2, {{O, p2("1", "0"), p2("1", "1")}});
  auto expected = tri(2, {{O, p2("1", "1/2"), p2("1", "1")}, {O, p2("1", "0"), p2("1", "1/2")}});
  EXPECT_EQ(blow_up(u1, p2("1", "1/2")), expected);
}
TEST(BlowUp, Bisection) {
  EXPECT_EQ(blow_up(tri(1, {{p1("0"), p1("1")}}), p1("1/2")),
            tri(1, {{p1("0"), p1("1/2")}, {p1("1/2"), p1("1")}}));
}
TEST(BlowUp, AtVertex) { EXPECT_EQ(blow_up(step0(), p2("1", "1")), step0()); }
TEST(BlowUp, Outside) {
  EXPECT_THROW(blow_up(tri(1, {{p1("0"), p1("1/2")}}), p1("3/4")), PointOutsideSupport);
}

TEST(Measure, Values) {
  EXPECT_EQ(lebesgue_measure_ndim(simplex({O, p2("1", "0"), p2("1", "1")})), q("1/2"));
  EXPECT_EQ(lebesgue_measure_ndim(simplex({O, p2("1", "1/2"), p2("1", "1")})), q("1/4"));
  EXPECT_EQ(lebesgue_measure_ndim(simplex({O, p2("1", "1")})), 0);
}

TEST(ClosedDomain, Cases) {
  EXPECT_TRUE(is_closed_domain(tri(1, {{p1("0"), p1("1/2")}})));
  EXPECT_FALSE(is_closed_domain(l_shape()));
  EXPECT_TRUE(is_closed_domain(step0()));
}

TEST(InteriorConnected, Cases) {
  EXPECT_TRUE(interior_connected(step0()));
  EXPECT_TRUE(interior_connected(unit_cube(2)));
  auto bow = tri(2, {{O, p2("1/2", "0"), p2("1/2", "1/2")}, {p2("1/2", "1/2"), p2("1", "1/2"), p2("1", "1")}});
  EXPECT_FALSE(interior_connected(bow));
  EXPECT_EQ(interior_components(bow).size(), 2u);
  EXPECT_TRUE(interior_connected(tri(2, {{O, p2("1", "0"), p2("1", "1")}})));
  EXPECT_THROW(interior_connected(l_shape()), NotClosedDomain);
}

TEST(Refine, Bisection) {
  auto t = tri(1, {{p1("0"), p1("1")}});
  AffineFunctional h{{1}, q("-1/2")};
  EXPECT_EQ(refine_along_hyperplane(t, h), tri(1, {{p1("0"), p1("1/2")}, {p1("1/2"), p1("1")}}));
}
TEST(Refine, AntiDiagonalCutsU1) {
  auto u1 = tri(2, {{O, p2("1", "0"), p2("1", "1")}});
  AffineFunctional h{{1, 1}, -1};
  auto r = refine_along_hyperplane(u1, h);
  EXPECT_EQ(r.size(), 2u);
  EXPECT_TRUE(polyhedra_equal(r, u1));
  for (std::size_t i = 0; i < r.size(); ++i) {
    bool pos = false, neg = false;
    for (const auto& v : r.points(i)) {
      pos |= h(v) > 0;
      neg |= h(v) < 0;
    }
    EXPECT_FALSE(pos && neg);
  }
}
TEST(Refine, PositiveFunctionalIsNoOp) {
  AffineFunctional h{{1, 1}, 1};
  EXPECT_EQ(refine_along_hyperplane(step0(), h), step0());
}
TEST(Refine, QuadrilateralPiece) {
  // x = 1/2 cuts the triangle into a triangle and a quadrilateral.
  auto t = tri(2, {{O, p2("1", "0"), p2("0", "1")}});
  auto r = refine_along_hyperplane(t, AffineFunctional{{1, 0}, q("-1/2")});
  EXPECT_EQ(r.size(), 3u);
  EXPECT_EQ(total_measure(r), q("1/2"));
  EXPECT_TRUE(is_proper(r));
}

TEST(Desingularize, RegularInputUnchanged) { EXPECT_EQ(desingularize(step0()), step0()); }
TEST(Desingularize, ThirdsSegment) {
  auto t = tri(1, {{p1("1/3"), p1("2/3")}});
  auto d = desingularize(t);
  EXPECT_TRUE(is_regular(d));
  EXPECT_TRUE(polyhedra_equal(d, t));
  EXPECT_EQ(d, tri(1, {{p1("1/3"), p1("1/2")}, {p1("1/2"), p1("2/3")}}));
}
TEST(Desingularize, SingularSquare) {
  auto t = tri(2, {{O, p2("1", "0"), p2("1/2", "1")}, {O, p2("1/2", "1"), p2("0", "1")},
                   {p2("1", "0"), p2("1", "1"), p2("1/2", "1")}});
  auto d = desingularize(t);
  EXPECT_TRUE(is_regular(d));
  EXPECT_TRUE(polyhedra_equal(d, unit_cube(2)));
  EXPECT_TRUE(is_proper(d));
}
TEST(Desingularize, Cap) {
  auto t = tri(1, {{p1("1/5"), p1("2/5")}});
  EXPECT_THROW(desingularize(t, 0), CapExceeded);
}

TEST(PolyhedraEqual, Cases) {
  auto a = tri(1, {{p1("0"), p1("1/2")}});
  auto b = tri(1, {{p1("0"), p1("1/4")}, {p1("1/4"), p1("1/2")}});
  EXPECT_TRUE(polyhedra_equal(a, b));
  EXPECT_FALSE(polyhedra_equal(a, tri(1, {{p1("1/2"), p1("1")}})));
  auto l2 = tri(2, {{p2("0", "1"), p2("0", "1/2")}, {p2("0", "1/2"), O}, {p2("1", "0"), O}});
  EXPECT_TRUE(polyhedra_equal(l_shape(), l2));
  EXPECT_FALSE(polyhedra_equal(l_shape(), step0()));
}

TEST(Intersection, Triangles) {
  auto a = simplex({O, p2("1", "0"), p2("0", "1")});
  auto b = simplex({p2("1", "1"), p2("1", "0"), p2("0", "1")});
  auto v = intersection_vertices(a, b);
  EXPECT_EQ(v, (std::vector<Point>{p2("0", "1"), p2("1", "0")}));
  auto c = simplex({p2("1", "1"), p2("1", "1/2"), p2("1/2", "1")});
  EXPECT_TRUE(intersection_vertices(a, c).empty());
}

TEST(Proper, DetectsOverlap) {
  EXPECT_TRUE(is_proper(step0()));
  auto bad = tri(2, {{O, p2("1", "0"), p2("1", "1")}, {O, p2("1", "0"), p2("1/2", "1")}});
  EXPECT_FALSE(is_proper(bad));
}

TEST(Canonical, FacesDropped) {
  std::vector<Point> pool = {p2("1", "1"), O, p2("1", "0"), O};
  Triangulation t(2, pool, {{0, 1, 2}, {1, 2}, {3}});
  EXPECT_EQ(t.vertices().size(), 3u);
  EXPECT_EQ(t.size(), 1u);
  EXPECT_EQ(t.simplexes()[0], (SimplexIndices{0, 1, 2}));
  EXPECT_EQ(t.vertices()[0], O);
}

// Random blow-up sequences starting from the step-zero complex.
class GeometryProperties : public ::testing::Test {
 protected:
  std::mt19937 rng{99};

  Point random_point_in(const Triangulation& t) {
    std::uniform_int_distribution<std::size_t> pick(0, t.size() - 1);
    auto pts = t.points(pick(rng));
    std::uniform_int_distribution<long> w(0, 3);
    std::vector<long> ws;
    long total = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      ws.push_back(w(rng));
      total += ws.back();
    }
    if (total == 0) {
      ws[0] = 1;
      total = 1;
    }
    std::vector<Rational> c(t.ambient_dim(), 0);
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = 0; j < c.size(); ++j) c[j] += Rational(ws[i], total) * pts[i][j];
    return Point(std::move(c));
  }
};

TEST_F(GeometryProperties, FareyBlowUpsStayRegular) {
  for (int trial = 0; trial < 500; ++trial) {
    Triangulation t = trial % 2 ? step0() : unit_cube(1 + trial % 3);
    int steps = 1 + trial % 4;
    for (int s = 0; s < steps; ++s) {
      auto faces = t.all_faces();
      std::vector<SimplexIndices> edges;
      for (const auto& f : faces)
        if (f.size() >= 2) edges.push_back(f);
      std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
      Point b = farey_mediant(RationalSimplex(t.points(edges[pick(rng)])));
      Triangulation next = blow_up(t, b);
      ASSERT_TRUE(is_regular(next));
      if (s == steps - 1 && trial % 10 == 0) {
        EXPECT_TRUE(polyhedra_equal(next, t));
      }
      t = next;
    }
  }
}

TEST_F(GeometryProperties, BlowUpsAreSubdivisions) {
  for (int trial = 0; trial < 500; ++trial) {
    Triangulation t = trial % 2 ? step0() : unit_cube(2);
    Point b = random_point_in(t);
    Triangulation u = blow_up(t, b);
    EXPECT_EQ(total_measure(u), total_measure(t));
    Locator loc(t);
    for (std::size_t i = 0; i < u.size(); ++i) {
      auto frame_hosts = loc.find_all(centroid(u.points(i)));
      ASSERT_FALSE(frame_hosts.empty());
      bool inside = false;
      for (std::size_t h : frame_hosts) {
        bool all = true;
        for (const auto& v : u.points(i)) all = all && loc.frame(h).contains(v);
        inside = inside || all;
      }
      EXPECT_TRUE(inside);
    }
    if (trial % 25 == 0) {
      EXPECT_TRUE(polyhedra_equal(u, t));
    }
  }
}

TEST_F(GeometryProperties, SquareMeasureIsOne) {
  for (int trial = 0; trial < 500; ++trial) {
    Triangulation t = unit_cube(2);
    for (int s = 0; s < 1 + trial % 3; ++s) t = blow_up(t, random_point_in(t));
    EXPECT_EQ(total_measure(t), 1);
  }
}

TEST_F(GeometryProperties, DesingularizeIsRegular) {
  for (int trial = 0; trial < 500; ++trial) {
    Triangulation t = trial % 3 == 0 ? unit_cube(1) : unit_cube(2);
    for (int s = 0; s < 1 + trial % 2; ++s) t = blow_up(t, random_point_in(t));
    Triangulation d = desingularize(t);
    ASSERT_TRUE(is_regular(d));
    EXPECT_EQ(total_measure(d), total_measure(t));
    if (trial % 50 == 0) {
      EXPECT_TRUE(polyhedra_equal(d, t));
      EXPECT_TRUE(is_proper(d));
    }
  }
}

TEST_F(GeometryProperties, InteriorConnectivityIgnoresRetriangulation) {
  auto bow = tri(2, {{O, p2("1/2", "0"), p2("1/2", "1/2")}, {p2("1/2", "1/2"), p2("1", "1/2"), p2("1", "1")}});
  for (int trial = 0; trial < 100; ++trial) {
    Triangulation a = bow, b = step0();
    for (int s = 0; s < 2; ++s) {
      a = blow_up(a, random_point_in(a));
      b = blow_up(b, random_point_in(b));
    }
    EXPECT_FALSE(interior_connected(a));
    EXPECT_TRUE(interior_connected(b));
  }
}
