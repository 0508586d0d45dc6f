#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include <unistd.h>

#include "crl/crl.hpp"
#include "oracles.hpp"

using crl::BinaryForm;
using crl::FactoredForm;
using crl::LinearForm;
using crl::Partition;
using crl::Poly;
using crl::Rational;

namespace {

Partition P(std::vector<int> v) { return Partition(std::move(v)); }
Poly Z(int j) { return Poly::z(j); }

BinaryForm form(std::vector<int> a) {
  std::vector<Rational> c(a.begin(), a.end());
  return BinaryForm(std::move(c));
}

LinearForm L(int u, int v) { return {Rational(u), Rational(v)}; }

const std::vector<Poly>& ideal(const Partition& lambda) {
  static std::map<Partition, std::vector<Poly>> memo;
  auto it = memo.find(lambda);
  if (it == memo.end()) it = memo.emplace(lambda, crl::ideal_of_X(lambda)).first;
  return it->second;
}

bool is_ones(const Partition& p) { return p.num_parts() == p.d(); }

}  // namespace

TEST(IdealOfX, Examples) {
  EXPECT_EQ(ideal(P({2})), std::vector<Poly>{Z(1) * Z(1) - Z(0) * Z(2) * 4});
  EXPECT_TRUE(ideal(P({1, 1})).empty());
  std::vector<Poly> cubic_cone{Z(1) * Z(1) - Z(0) * Z(2) * 3, Z(1) * Z(2) - Z(0) * Z(3) * 9,
                               Z(2) * Z(2) - Z(1) * Z(3) * 3};
  EXPECT_TRUE(crl::testing::same_ideal(ideal(P({3})), cubic_cone));
}

TEST(IdealOfX, CubicDiscriminant) {
  const Poly classical = Z(0) * Z(0) * Z(3) * Z(3) * 27 - Z(0) * Z(1) * Z(2) * Z(3) * 18 +
                         Z(0) * Z(2) * Z(2) * Z(2) * 4 + Z(1) * Z(1) * Z(1) * Z(3) * 4 - Z(1) * Z(1) * Z(2) * Z(2);
  const Poly oracle = crl::testing::partials_resultant(3);
  EXPECT_TRUE(crl::testing::same_ideal({oracle}, {classical}));
  EXPECT_TRUE(crl::testing::same_ideal(ideal(P({1, 2})), {oracle}));
  ASSERT_EQ(ideal(P({1, 2})).size(), 1u);
  EXPECT_EQ(ideal(P({1, 2}))[0], -classical);  // primitive, positive grevlex lead z1^2 z2^2
}

TEST(IdealOfX, QuarticDiscriminantMatchesResultant) {
  const auto& gens = ideal(P({2, 1, 1}));
  ASSERT_EQ(gens.size(), 1u);
  EXPECT_TRUE(crl::testing::same_ideal(gens, {crl::testing::partials_resultant(4)}));
}

TEST(IdealOfX, WeightedGradingThroughDegreeSix) {
  for (int d = 1; d <= 6; ++d)
    for (const auto& lambda : crl::all_partitions(d))
      for (const auto& g : ideal(lambda)) {
        auto w = crl::weighted_degree(g, [](crl::Var v) -> long { return v.j(); });
        EXPECT_TRUE(w.homogeneous()) << lambda.to_string() << ": " << g.to_string();
        auto h = crl::weighted_degree(g, [](crl::Var) -> long { return 1; });
        EXPECT_TRUE(h.homogeneous()) << lambda.to_string() << ": " << g.to_string();
      }
}

TEST(IdealOfX, VanishesOnMembersOnly) {
  std::mt19937_64 rng(31337);
  for (int d = 1; d <= 6; ++d)
    for (const auto& lambda : crl::all_partitions(d)) {
      const auto& gens = ideal(lambda);
      for (int trial = 0; trial < 20; ++trial) {
        auto f = crl::testing::random_factored_form(lambda, rng);
        EXPECT_TRUE(crl::vanishes_on(gens, f.expand())) << lambda.to_string();
      }
      if (is_ones(lambda)) continue;
      for (int trial = 0; trial < 20; ++trial) {
        auto f = crl::testing::random_generic_form(d, rng);
        EXPECT_FALSE(crl::vanishes_on(gens, f)) << lambda.to_string();
      }
    }
}

TEST(IdealOfX, MembershipPathsAgree) {
  std::mt19937_64 rng(8);
  for (int d = 1; d <= 6; ++d) {
    const auto parts = crl::all_partitions(d);
    for (const auto& mu : parts) {
      auto f = crl::testing::random_factored_form(mu, rng).expand();
      for (const auto& lambda : parts) EXPECT_NO_THROW(crl::is_member(f, lambda, ideal(lambda)));
    }
  }
}

TEST(IdealOfX, ResourceCapsPropagate) {
  crl::GroebnerLimits tiny;
  tiny.max_pairs = 2;
  EXPECT_THROW(crl::ideal_of_X(P({3, 1}), tiny), crl::ResourceError);
}

TEST(MultiplicityPartition, Examples) {
  EXPECT_EQ(crl::multiplicity_partition(form({0, 0, 1, 0, 0})), P({2, 2}));
  EXPECT_EQ(crl::multiplicity_partition(form({1, 1, -1, -1})), P({1, 2}));
  EXPECT_EQ(crl::multiplicity_partition(form({0, 0, 0, 1})), P({3}));
  EXPECT_EQ(crl::multiplicity_partition(form({1, 0, 0, 1})), P({1, 1, 1}));
  EXPECT_THROW(form({0, 0, 0}), crl::DomainError);
}

TEST(MultiplicityPartition, RecoversFactoredData) {
  std::mt19937_64 rng(77);
  for (int d = 1; d <= 8; ++d)
    for (const auto& mu : crl::all_partitions(d))
      for (int trial = 0; trial < 5; ++trial) {
        auto f = crl::testing::random_factored_form(mu, rng, 7);
        EXPECT_EQ(crl::multiplicity_partition(f.expand()), mu);
      }
}

TEST(IsMember, Examples) {
  EXPECT_TRUE(crl::is_member(form({1, 1, -1, -1}), P({1, 2})));
  EXPECT_FALSE(crl::is_member(form({1, 0, 0, 1}), P({1, 2})));
  std::mt19937_64 rng(3);
  for (int d = 1; d <= 6; ++d)
    EXPECT_TRUE(crl::is_member(crl::testing::random_generic_form(d, rng), Partition(std::vector<int>(d, 1))));
  EXPECT_THROW(crl::is_member(form({1, 0, 1}), P({1, 2})), crl::DomainError);
}

TEST(FiberPoints, Examples) {
  const LinearForm l1 = L(1, 1), l2 = L(1, -1);
  FactoredForm f({{l1, 2}, {l2, 2}});
  auto pts = crl::fiber_points(f, P({1, 1, 2}));
  ASSERT_EQ(pts.size(), 2u);
  const std::vector<Rational> l1sq = crl::multiply_coeffs({1, 1}, {1, 1}), l2sq = crl::multiply_coeffs({1, -1}, {1, -1});
  crl::FiberPoint a{{{1, l2sq}, {2, {1, 1}}}}, b{{{1, l1sq}, {2, {1, -1}}}};
  EXPECT_TRUE((pts[0] == a && pts[1] == b) || (pts[0] == b && pts[1] == a));

  FactoredForm distinct({{L(1, 0), 1}, {L(0, 1), 1}, {L(1, 2), 1}});
  EXPECT_EQ(crl::fiber_points(distinct, P({1, 1, 1})).size(), 1u);

  FactoredForm fifth({{L(2, 3), 5}});
  auto one = crl::fiber_points(fifth, P({1, 1, 1, 2}));
  ASSERT_EQ(one.size(), 1u);
  std::vector<Rational> cube{1};
  for (int k = 0; k < 3; ++k) cube = crl::multiply_coeffs(cube, {1, Rational(3, 2)});
  EXPECT_EQ(one[0].forms.at(1), cube);
  EXPECT_EQ(one[0].forms.at(2), (std::vector<Rational>{1, Rational(3, 2)}));

  EXPECT_TRUE(crl::fiber_points(distinct, P({1, 2})).empty());
}

TEST(FiberPoints, CountEqualsSplittingsAndImagesMatch) {
  std::mt19937_64 rng(2718);
  for (int d = 1; d <= 6; ++d)
    for (const auto& mu : crl::all_partitions(d)) {
      auto f = crl::testing::random_factored_form(mu, rng);
      const auto expanded = f.expand();
      for (const auto& lambda : crl::all_partitions(d)) {
        const auto pts = crl::fiber_points(f, lambda);
        EXPECT_EQ(pts.size(), crl::splittings(mu, lambda).size()) << mu.to_string() << " / " << lambda.to_string();
        for (const auto& p : pts) {
          EXPECT_TRUE(crl::fiber_image(p).proportional_to(expanded));
          for (const auto& [r, g] : p.forms) EXPECT_EQ(static_cast<int>(g.size()) - 1, lambda.multiplicity(r));
        }
        for (std::size_t i = 0; i < pts.size(); ++i)
          for (std::size_t k = i + 1; k < pts.size(); ++k) EXPECT_FALSE(pts[i] == pts[k]);
      }
    }
}

TEST(ClassifyPoint, Examples) {
  const auto lam = P({1, 1, 1, 2});
  FactoredForm generic({{L(1, 0), 1}, {L(0, 1), 1}, {L(1, 1), 1}, {L(1, -1), 2}});
  EXPECT_TRUE(crl::classify_point(generic, lam).nonsingular);

  FactoredForm two({{L(1, 0), 1}, {L(0, 1), 2}, {L(1, 1), 2}});
  auto a = crl::classify_point(two, lam);
  EXPECT_EQ(a.fiber_count, 2);
  EXPECT_FALSE(a.tangent_degenerate);

  FactoredForm star({{L(1, 0), 2}, {L(0, 1), 3}});
  auto b = crl::classify_point(star, lam);
  EXPECT_EQ(b.fiber_count, 2);
  EXPECT_TRUE(b.tangent_degenerate);
  EXPECT_EQ(crl::classify_point(star.expand(), lam), b);

  FactoredForm outside({{L(1, 0), 1}, {L(0, 1), 1}, {L(1, 1), 1}, {L(1, 2), 1}, {L(1, 3), 1}});
  EXPECT_THROW(crl::classify_point(outside, lam), crl::DomainError);
}

TEST(SingularDiagramTest, DegreeFiveLabels) {
  const auto diag = crl::singular_diagram(5);
  const auto lam = P({1, 1, 1, 2});
  const std::map<Partition, std::string> want{
      {P({1, 1, 3}), "*"}, {P({1, 2, 2}), "2"}, {P({1, 4}), "*"}, {P({2, 3}), "2*"}, {P({5}), "*"}};
  int edges = 0;
  for (const auto& e : diag.edges) {
    if (!(e.upper == lam)) continue;
    ++edges;
    auto it = want.find(e.lower);
    ASSERT_NE(it, want.end()) << e.lower.to_string();
    EXPECT_EQ(e.label.label(), it->second) << e.lower.to_string();
    EXPECT_FALSE(e.label.nonsingular);
  }
  EXPECT_EQ(edges, 5);
  for (const auto& n : diag.nodes) {
    if (n.partition == lam) {
      EXPECT_EQ(n.dimension, 4);
    }
  }

  const auto* dashed = diag.find(P({1, 1, 3}), P({2, 3}));
  ASSERT_NE(dashed, nullptr);
  EXPECT_TRUE(dashed->label.nonsingular);
  EXPECT_EQ(diag.find(P({1, 1, 3}), P({1, 4}))->label.label(), "*");
  EXPECT_EQ(diag.find(P({1, 1, 3}), P({5}))->label.label(), "*");
  EXPECT_EQ(diag.nodes.size(), 7u);
}

TEST(SingularDiagramTest, DegreeTwoAndRenderers) {
  const auto diag = crl::singular_diagram(2);
  ASSERT_EQ(diag.edges.size(), 1u);
  EXPECT_TRUE(diag.edges[0].label.nonsingular);

  const auto dot = crl::diagram_to_dot(crl::singular_diagram(5));
  EXPECT_NE(dot.find("\"2,1,1,1\" -> \"3,2\" [arrowhead=dot, label=\"2*\"];"), std::string::npos);
  EXPECT_NE(dot.find("\"3,1,1\" -> \"3,2\" [style=dashed, arrowhead=none];"), std::string::npos);
  const auto j = crl::diagram_to_json(diag);
  EXPECT_EQ(j.at("schema"), "crl.diagram/1");
  EXPECT_EQ(j.at("edges").size(), 1u);
  EXPECT_THROW(crl::singular_diagram(0), crl::DomainError);
}

TEST(IsSmooth, Examples) {
  EXPECT_TRUE(crl::is_smooth(P({2, 2})));
  EXPECT_FALSE(crl::is_smooth(P({1, 2})));
  EXPECT_TRUE(crl::is_smooth(P({1, 1, 1, 1, 1})));
}

TEST(IdealCacheTest, RoundTripAndVersionCheck) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("crl_cache_test_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  crl::IdealCache cache(dir);
  const auto lam = P({2, 1});
  EXPECT_FALSE(cache.load(lam).has_value());
  const auto gens = cache.get_or_compute(lam);
  EXPECT_EQ(gens, ideal(lam));
  EXPECT_TRUE(fs::exists(dir / "ideal_2-1.json"));
  EXPECT_EQ(cache.load(lam), gens);
  EXPECT_FALSE(cache.load(P({3})).has_value());

  auto j = crl::ideal_to_json(lam, gens);
  j["engine"] = "other";
  std::ofstream(dir / "ideal_2-1.json") << j.dump();
  EXPECT_FALSE(cache.load(lam).has_value());
  std::ofstream(dir / "ideal_2-1.json") << "{not json";
  EXPECT_FALSE(cache.load(lam).has_value());
  fs::remove_all(dir);
}
