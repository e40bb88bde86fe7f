#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include <bricard/bonds.hpp>
#include <bricard/classifier.hpp>

#include "test_util.hpp"

using namespace bricard;
using std::numbers::pi;

namespace {

std::array<double, 4> spokes(std::mt19937_64& g) {
  return {testutil::uniform(g, 1, 3), testutil::uniform(g, 1, 3), testutil::uniform(g, 1, 3),
          testutil::uniform(g, 1, 3)};
}

// angles kept away from each other, from pi/2 and from pi - each other
std::pair<double, double> two_angles(std::mt19937_64& g) {
  for (;;) {
    double a = testutil::uniform(g, 0.3, 2.8), b = testutil::uniform(g, 0.3, 2.8);
    if (std::abs(a - b) > 0.2 && std::abs(a + b - pi) > 0.2 && std::abs(a - pi / 2) > 0.1 &&
        std::abs(b - pi / 2) > 0.1)
      return {a, b};
  }
}

PyramidFamily family(bool deltoid, bool rhomboid, bool general) {
  PyramidFamily f;
  f.is_deltoid = deltoid;
  f.is_rhomboid = rhomboid;
  f.is_general = general;
  return f;
}

}  // namespace

TEST(Parity, TableAndPropagation) {
  EXPECT_EQ(edge_parity(1, 6), Parity::Even);
  EXPECT_EQ(edge_parity(1, 3), Parity::Odd);
  EXPECT_EQ(edge_parity(4, 2), Parity::Even);
  EXPECT_EQ(edge_parity(6, 2), Parity::Odd);
  for (int v : {1, 3, 5})
    for (int w = 1; w <= 6; ++w)
      if (is_edge_pair(v, w)) EXPECT_EQ(edge_parity(v, w), edge_parity(partner(v), w));
  // opposite spokes share a parity, and each pyramid has two of each
  for (int v = 1; v <= 6; ++v) {
    Pyramid p = pyramid(VertexId(v));
    EXPECT_EQ(edge_parity(v, p.w[0]), edge_parity(v, p.w[2]));
    EXPECT_EQ(edge_parity(v, p.w[1]), edge_parity(v, p.w[3]));
    EXPECT_NE(edge_parity(v, p.w[0]), edge_parity(v, p.w[1]));
  }
  EXPECT_THROW(edge_parity(1, 2), DomainError);
}

TEST(ClassifyPyramid, EStar) {
  auto lab = estar_labeling();
  auto f1 = classify_pyramid(lab, VertexId(1));
  EXPECT_TRUE(f1.is_rhomboid);
  EXPECT_FALSE(f1.is_deltoid);
  EXPECT_FALSE(f1.is_lozenge);
  EXPECT_EQ(f1.rhomboid_mode, PairMode::Equal);

  auto f3 = classify_pyramid(lab, VertexId(3));
  EXPECT_TRUE(f3.is_lozenge);
  EXPECT_TRUE(f3.is_rhomboid);

  auto f5 = classify_pyramid(lab, VertexId(5));
  EXPECT_TRUE(f5.is_rhomboid);
  EXPECT_TRUE(f5.is_deltoid);
  EXPECT_EQ(f5.rhomboid_mode, PairMode::Supplementary);
  EXPECT_FALSE(f5.is_general);
}

TEST(ClassifyPyramid, ConstructedFamilies) {
  std::mt19937_64 g(31);
  for (int trial = 0; trial < 20; ++trial) {
    auto [a, b] = two_angles(g);
    int apex = 1 + trial % 6;
    auto d = classify_pyramid(testutil::pyramid_labeling(apex, spokes(g), {a, a, b, b}), VertexId(apex));
    EXPECT_TRUE(d.is_deltoid);
    EXPECT_FALSE(d.is_rhomboid);
    EXPECT_EQ(d.deltoid_mode, PairMode::Equal);
    EXPECT_NE(d.deltoid_parity, Parity::None);

    auto r = classify_pyramid(testutil::pyramid_labeling(apex, spokes(g), {a, b, a, b}), VertexId(apex));
    EXPECT_TRUE(r.is_rhomboid);
    EXPECT_FALSE(r.is_deltoid);
    EXPECT_FALSE(r.is_lozenge);

    auto s = classify_pyramid(testutil::pyramid_labeling(apex, spokes(g), {a, b, pi - a, pi - b}), VertexId(apex));
    EXPECT_TRUE(s.is_rhomboid);
    EXPECT_EQ(s.rhomboid_mode, PairMode::Supplementary);

    auto l = classify_pyramid(testutil::pyramid_labeling(apex, spokes(g), {a, a, a, a}), VertexId(apex));
    EXPECT_TRUE(l.is_lozenge);
    EXPECT_TRUE(l.is_rhomboid);

    auto gen = classify_pyramid(testutil::pyramid_labeling(apex, spokes(g), {a, b, a + 0.05, b + 0.11}),
                                VertexId(apex));
    EXPECT_TRUE(gen.is_general);
  }
}

TEST(ClassifyPyramid, DeltoidParityFollowsAxis) {
  // equal pairs meeting at w2 and w4 put the axis through w1 and w3
  auto lab = testutil::pyramid_labeling(1, {2, 1.5, 2, 1.7}, {0.9, 1.3, 1.3, 0.9});
  auto f = classify_pyramid(lab, VertexId(1));
  ASSERT_TRUE(f.is_deltoid);
  Pyramid p = pyramid(VertexId(1));
  EXPECT_EQ(f.deltoid_parity, edge_parity(1, p.w[0]));
  auto lab2 = testutil::pyramid_labeling(1, {2, 1.5, 2.2, 1.5}, {0.9, 0.9, 1.3, 1.3});
  auto f2 = classify_pyramid(lab2, VertexId(1));
  ASSERT_TRUE(f2.is_deltoid);
  EXPECT_EQ(f2.deltoid_parity, edge_parity(1, p.w[1]));
}

TEST(ClassifyPyramid, FlagInvariants) {
  std::mt19937_64 g(32);
  for (int trial = 0; trial < 200; ++trial) {
    auto lab = testutil::random_realization(g).measured_labeling();
    for (int v = 1; v <= 6; ++v) {
      auto f = classify_pyramid(lab, VertexId(v));
      EXPECT_TRUE(f.is_general || f.is_deltoid || f.is_rhomboid || f.is_lozenge);
      if (f.is_lozenge) EXPECT_TRUE(f.is_rhomboid);
    }
  }
  auto u = OctLabeling::uniform(1.0);
  for (int v = 1; v <= 6; ++v) EXPECT_TRUE(classify_pyramid(u, VertexId(v)).is_lozenge);
}

TEST(ClassifyPyramid, CyclicRelabelTransportsFlags) {
  std::mt19937_64 g(33);
  std::vector<OctLabeling> labs = {estar_labeling()};
  for (int k = 0; k < 5; ++k) labs.push_back(testutil::random_realization(g).measured_labeling());
  labs.push_back(testutil::pyramid_labeling(3, {1, 2, 1.5, 1.2}, {0.7, 0.7, 1.9, 1.9}));
  for (const auto& lab : labs)
    for (int k = 0; k < 6; ++k) {
      auto moved = cyclic_relabel(lab, k);
      for (int v = 1; v <= 6; ++v) {
        auto a = classify_pyramid(lab, VertexId(v));
        auto b = classify_pyramid(moved, VertexId(sigma(v, k)));
        EXPECT_EQ(a.str(), b.str());
        EXPECT_EQ(a.rhomboid_mode, b.rhomboid_mode);
      }
    }
}

TEST(FlatCount, Families) {
  std::mt19937_64 g(34);
  for (int trial = 0; trial < 20; ++trial) {
    auto [a, b] = two_angles(g);
    int apex = 1 + trial % 6;
    EXPECT_EQ(count_flat_pyramid_realizations(testutil::pyramid_labeling(apex, spokes(g), {a, a, b, b}),
                                              VertexId(apex)),
              2);
    EXPECT_EQ(count_flat_pyramid_realizations(testutil::pyramid_labeling(apex, spokes(g), {a, b, a, b}),
                                              VertexId(apex)),
              2);
    EXPECT_EQ(count_flat_pyramid_realizations(testutil::pyramid_labeling(apex, spokes(g), {a, a, a, a}),
                                              VertexId(apex)),
              3);
  }
  EXPECT_EQ(count_flat_pyramid_realizations(estar_labeling(), VertexId(1)), 2);
}

TEST(FlatCount, RangeAndLozengeOnly) {
  std::mt19937_64 g(35);
  for (int trial = 0; trial < 200; ++trial) {
    auto lab = testutil::random_realization(g).measured_labeling();
    for (int v = 1; v <= 6; ++v) {
      int n = count_flat_pyramid_realizations(lab, VertexId(v));
      EXPECT_GE(n, 0);
      EXPECT_LE(n, 3);
      if (n == 3) EXPECT_TRUE(classify_pyramid(lab, VertexId(v)).is_lozenge);
    }
  }
}

TEST(Type1, Examples) {
  EXPECT_TRUE(check_type1(estar_labeling()).satisfied);
  EXPECT_EQ(check_type1(estar_labeling()).witnesses.size(), 6u);
  EXPECT_TRUE(check_type1(OctLabeling::uniform(3.0)).satisfied);
  auto m = estar_labeling().to_map();
  m["3-5"] = 11.1;
  EXPECT_FALSE(check_type1(OctLabeling::from_map(m)).satisfied);
}

TEST(Type2, Examples) {
  auto r = check_type2(estar_labeling());
  EXPECT_TRUE(r.satisfied);
  EXPECT_TRUE(check_type2_pair(estar_labeling(), 12));
  EXPECT_FALSE(check_type2_pair(estar_labeling(), 56));
  EXPECT_NE(std::find(r.fixed_pairs.begin(), r.fixed_pairs.end(), 12), r.fixed_pairs.end());
  auto u = check_type2(OctLabeling::uniform(1.0));
  EXPECT_EQ(u.fixed_pairs, (std::vector<int>{12, 34, 56}));
}

TEST(Type2, ReflectionOracle) {
  // reflection z -> -z of a configuration with 1, 2 on the plane and 3/4, 5/6 mirrored
  std::mt19937_64 g(36);
  for (int trial = 0; trial < 10; ++trial) {
    auto U = [&] { return testutil::uniform(g, -2, 2); };
    Vec3 p1(U(), U(), 0), p2(U(), U(), 0), p3(U(), U(), U()), p5(U(), U(), U());
    auto m = [](const Vec3& p) { return Vec3(p.x(), p.y(), -p.z()); };
    Realization r({p1, p2, p3, m(p3), p5, m(p5)});
    auto lab = r.measured_labeling();
    EXPECT_TRUE(check_type2_pair(lab, 12, 1e-9));
  }
}

TEST(Type3, Examples) {
  auto r = check_type3(estar_labeling());
  EXPECT_TRUE(r.satisfied);
  std::array<int, 4> eta = {1, -1, -1, 1};
  auto& w12 = r.eta.at(12);
  EXPECT_NE(std::find(w12.begin(), w12.end(), eta), w12.end());
  for (const auto& [q, list] : r.eta)
    for (const auto& s : list) EXPECT_EQ(s[0] + s[1] + s[2] + s[3], 0);
  // sides of 56 are all 20 and sides of 34 all 13: every balanced sign vector works
  EXPECT_EQ(r.eta.at(56).size(), 6u);
  EXPECT_EQ(r.eta.at(34).size(), 6u);

  auto gen = testutil::pyramid_labeling(1, {2, 1.5, 2, 1.7}, {0.9, 1.3, 1.1, 0.7});
  EXPECT_FALSE(check_type3(gen).satisfied);
}

TEST(Types, ScaleInvariant) {
  std::mt19937_64 g(37);
  std::vector<OctLabeling> labs = {estar_labeling(), OctLabeling::uniform(1.0)};
  for (int k = 0; k < 5; ++k) labs.push_back(testutil::random_realization(g).measured_labeling());
  for (const auto& lab : labs)
    for (double s : {1e-3, 0.5, 7.0, 1e4}) {
      std::array<double, 12> a = lab.lengths();
      for (double& x : a) x *= s;
      OctLabeling scaled(a);
      EXPECT_EQ(check_type1(lab).satisfied, check_type1(scaled).satisfied);
      EXPECT_EQ(check_type2(lab).fixed_pairs, check_type2(scaled).fixed_pairs);
      EXPECT_EQ(check_type3(lab).satisfied, check_type3(scaled).satisfied);
    }
}

TEST(Types, TypeOneZeroesYAndZEquations) {
  std::mt19937_64 g(38);
  for (int trial = 0; trial < 20; ++trial) {
    // opposite sides of every quadrilateral equal: six free lengths
    double l[6];
    for (double& x : l) x = testutil::uniform(g, 5, 6);
    std::array<double, 12> a{};
    for (const auto& q : all_quadrilaterals()) {
      auto e = q.edges();
      int base = q.label == 12 ? 0 : q.label == 34 ? 2 : 4;
      a[e[0].index()] = a[e[2].index()] = l[base];
      a[e[1].index()] = a[e[3].index()] = l[base + 1];
    }
    OctLabeling lab(a);
    ASSERT_TRUE(check_type1(lab).satisfied);
    for (int q : {12, 34, 56}) {
      EXPECT_NEAR(length_equation(named_bond({q, BondLetter::Y, false})).evaluate(lab), 0.0, 1e-12);
      EXPECT_NEAR(length_equation(named_bond({q, BondLetter::Z, false})).evaluate(lab), 0.0, 1e-12);
    }
  }
}

TEST(ClassifyOctahedron, EStarAndGeneric) {
  auto r = classify_octahedron(estar_labeling());
  EXPECT_TRUE(r.type1.satisfied);
  EXPECT_TRUE(r.type2.satisfied);
  EXPECT_TRUE(r.type3.satisfied);
  EXPECT_EQ(r.seed_modes, (std::vector<std::string>{"line", "plane", "flat"}));
  std::mt19937_64 g(39);
  for (int trial = 0; trial < 100; ++trial)
    EXPECT_FALSE(classify_octahedron(testutil::random_realization(g).measured_labeling()).any());
  auto u = classify_octahedron(OctLabeling::uniform(1.0));
  EXPECT_TRUE(u.type1.satisfied);
  EXPECT_TRUE(u.type2.satisfied);
  for (const auto& f : u.families) EXPECT_TRUE(f.is_lozenge);
}

TEST(Multiplicities, Examples) {
  std::map<int, PyramidFamily> rh;
  for (int v = 1; v <= 6; ++v) rh[v] = family(false, true, false);
  EXPECT_TRUE(validate_multiplicities(rh, MultiplicityAssignment::by_quadrilateral(2, 2, 2)));

  // a deltoid with spokes (1,4,1,4)
  std::map<int, PyramidFamily> d = {{1, family(true, false, false)}};
  MultiplicityAssignment m14;
  Pyramid p = pyramid(VertexId(1));
  for (auto& x : m14.m) x = 2;
  m14.m[Edge(1, p.w[0]).index()] = m14.m[Edge(1, p.w[2]).index()] = 1;
  m14.m[Edge(1, p.w[1]).index()] = m14.m[Edge(1, p.w[3]).index()] = 4;
  EXPECT_FALSE(validate_multiplicities(d, m14));

  // quadrilateral 12 doubled: apexes 1, 2 rhomboid, the rest deltoid
  std::map<int, PyramidFamily> caseB = {{1, family(false, true, false)}, {2, family(false, true, false)},
                                        {3, family(true, false, false)}, {4, family(true, false, false)},
                                        {5, family(true, false, false)}, {6, family(true, false, false)}};
  EXPECT_TRUE(validate_multiplicities(caseB, MultiplicityAssignment::by_quadrilateral(2, 1, 1)));
  // swapping roles breaks it: apex 1 sees 2s and 1s
  EXPECT_FALSE(validate_multiplicities(caseB, MultiplicityAssignment::by_quadrilateral(1, 2, 1)));
}

TEST(Multiplicities, StructuralRules) {
  std::map<int, PyramidFamily> none;
  EXPECT_TRUE(validate_multiplicities(none, MultiplicityAssignment::by_quadrilateral(4, 2, 2)));
  EXPECT_FALSE(validate_multiplicities(none, MultiplicityAssignment::by_quadrilateral(3, 3, 3)));
  EXPECT_FALSE(validate_multiplicities(none, MultiplicityAssignment::by_quadrilateral(4, 1, 1)));
  auto broken = MultiplicityAssignment::by_quadrilateral(2, 2, 2);
  broken.m[0] = 1;  // not constant on its quadrilateral
  EXPECT_FALSE(validate_multiplicities(none, broken));
  std::map<int, PyramidFamily> gen;
  for (int v = 1; v <= 6; ++v) gen[v] = family(false, false, true);
  EXPECT_TRUE(validate_multiplicities(gen, MultiplicityAssignment::by_quadrilateral(4, 4, 4)));
  EXPECT_FALSE(validate_multiplicities(gen, MultiplicityAssignment::by_quadrilateral(1, 1, 1)));
}
