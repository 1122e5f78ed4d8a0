#include <gtest/gtest.h>

#include <set>

#include "support/fixtures.hpp"
#include "support/random_instances.hpp"

using namespace troplp;

namespace {

const Matrix<SymTrop> W = fixtures::running_example().W();

Vec pt(std::initializer_list<Rational> v) { return Vec(v); }

std::set<std::size_t> as_set(const std::vector<char>& J) {
  std::vector<std::size_t> m = members(J);
  return {m.begin(), m.end()};
}

// Arc from coordinate j to row i (1-based labels, as in the docs).
Arc in(std::size_t j, std::size_t i) { return Arc{i - 1, j - 1, true}; }
Arc out(std::size_t i, std::size_t j) { return Arc{i - 1, j - 1, false}; }

}  // namespace

TEST(Tangent, AtBasicPoint100) {
  TangentDigraph D = build_tangent(W, pt({1, 0, 0, 0}));
  EXPECT_EQ(D.hyperplanes(), (std::vector<std::size_t>{0, 1, 2}));
  std::vector<Arc> expect{in(4, 1), out(1, 1), in(3, 2), out(2, 4), in(2, 3), out(3, 4)};
  std::sort(expect.begin(), expect.end());
  EXPECT_EQ(D.arcs(), expect);
  EXPECT_EQ(classify(D).kind, PointKind::BasicPoint);
  // Leaving H3 moves along e^{2}.
  EXPECT_EQ(as_set(direction_from_basic_point(D, 2)), (std::set<std::size_t>{1}));
  // Matching H1 -> x1, H2 -> x3, H3 -> x2.
  EXPECT_EQ(tangent_matching(D), (std::vector<std::size_t>{0, 2, 1}));
}

TEST(Tangent, AtBasicPoint442) {
  TangentDigraph D = build_tangent(W, pt({4, 4, 2, 0}));
  EXPECT_EQ(D.hyperplanes(), (std::vector<std::size_t>{0, 1, 4}));
  EXPECT_EQ(classify(D).kind, PointKind::BasicPoint);
  EXPECT_EQ(as_set(direction_from_basic_point(D, 4)), (std::set<std::size_t>{3}));
}

TEST(Tangent, AtFirstBreakpoint) {
  TangentDigraph D = build_tangent(W, pt({2, 2, 0, 0}));
  EXPECT_EQ(D.hyperplanes(), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(D.arcs().size(), 5u);
  EXPECT_EQ(D.num_components(), 1u);
  EXPECT_EQ(D.in_degree(1), 1u);
  EXPECT_EQ(D.out_degree(1), 2u);
  Classification c = classify(D);
  EXPECT_EQ(c.kind, PointKind::Breakpoint);
  EXPECT_EQ(c.special_row, 1u);
  // H2 -> x4 is the new arc; dropping the old H2 -> x2 continues along J = {3,4}.
  EXPECT_EQ(as_set(direction_from_breakpoint(D, 1, out(2, 2))), (std::set<std::size_t>{2, 3}));
  EXPECT_EQ(as_set(direction_from_breakpoint(D, 1, out(2, 4))), (std::set<std::size_t>{0, 1, 2}));
}

TEST(Tangent, AtSecondBreakpoint) {
  TangentDigraph D = build_tangent(W, pt({1, 1, 0, 0}));
  Classification c = classify(D);
  EXPECT_EQ(c.kind, PointKind::Breakpoint);
  EXPECT_EQ(c.special_row, 0u);
  EXPECT_EQ(D.in_degree(0), 2u);
  EXPECT_EQ(as_set(direction_from_breakpoint(D, 0, in(4, 1))), (std::set<std::size_t>{0, 1}));
  EXPECT_EQ(as_set(direction_from_breakpoint(D, 0, in(2, 1))), (std::set<std::size_t>{0, 2, 3}));
  EXPECT_THROW(direction_from_breakpoint(D, 1, in(2, 1)), Error);
}

TEST(Tangent, OpenSegmentIsInterior) {
  for (Rational t : {Rational(1, 4), Rational(1, 2), Rational(9, 10)}) {
    TangentDigraph D = build_tangent(W, pt({1, t, 0, 0}));
    EXPECT_EQ(classify(D).kind, PointKind::Interior) << t;
    EXPECT_EQ(D.num_components(), 2u);
  }
}

TEST(Tangent, NoTightRows) {
  // (3,1,2): every row is strict.
  TangentDigraph D = build_tangent(W, pt({3, 1, 2, 0}));
  EXPECT_TRUE(D.hyperplanes().empty());
  EXPECT_TRUE(D.arcs().empty());
}

TEST(Tangent, MatchingAttainsPermanent) {
  Instance inst = fixtures::running_example();
  struct Case {
    std::vector<std::size_t> basis;
    Vec x;
  };
  for (const Case& c : {Case{{0, 1, 4}, {4, 4, 2}}, Case{{0, 1, 2}, {1, 0, 0}}, Case{{1, 2, 3}, {0, 0, 0}}}) {
    TangentDigraph D = build_tangent(inst.W(), homogeneous(c.x));
    ASSERT_EQ(D.hyperplanes(), c.basis);
    std::vector<std::size_t> match = tangent_matching(D);
    Matrix<SymTrop> AI(3, 3);
    for (std::size_t p = 0; p < 3; ++p)
      for (std::size_t j = 0; j < 3; ++j) AI(p, j) = inst.A(c.basis[p], j);
    Trop value = Trop::one();
    for (std::size_t j = 0; j < 3; ++j) {
      std::size_t p = std::lower_bound(c.basis.begin(), c.basis.end(), match[j]) - c.basis.begin();
      value *= AI(p, j).modulus();
    }
    EXPECT_EQ(value, tper(AI));
  }
}

TEST(Tangent, EditingAndQueries) {
  TangentDigraph D = build_tangent(W, pt({1, 0, 0, 0}));
  TangentDigraph E = D;
  E.remove_node(2);
  EXPECT_FALSE(E.has_node(2));
  EXPECT_EQ(E.num_components(), 2u);
  EXPECT_EQ(classify(E).kind, PointKind::Interior);
  E.add_arc(in(2, 3));
  E.add_arc(out(3, 4));
  EXPECT_TRUE(E == D);
  std::string dot = to_dot(D);
  EXPECT_NE(dot.find("x4 -> H1;"), std::string::npos);
  EXPECT_NE(dot.find("H1 -> x1;"), std::string::npos);
}

TEST(Tangent, RandomPointsGiveForests) {
  // Generic W: tangent digraphs at random points have no undirected cycle.
  gen::Rng rng(21);
  std::size_t checked = 0;
  while (checked < 200) {
    gen::Sample s = gen::standard_instance(rng, 3, 6);
    for (const auto& rec : s.enumeration.feasible) {
      TangentDigraph D = build_tangent(s.inst.W(), homogeneous(rec.point));
      std::size_t nodes = D.num_hyperplanes() + D.num_coords();
      ASSERT_EQ(D.arcs().size() + D.num_components(), nodes);
      ASSERT_EQ(classify(D).kind, PointKind::BasicPoint);
      ++checked;
    }
  }
}
