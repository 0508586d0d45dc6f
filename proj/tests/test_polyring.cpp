#include <gtest/gtest.h>

#include <random>

#include "crl/poly_json.hpp"
#include "crl/polyring.hpp"

using crl::Monomial;
using crl::MonomialOrder;
using crl::Poly;
using crl::Rational;
using crl::Var;

namespace {

const std::vector<Var>& sample_vars() {
  static const std::vector<Var> vs{Var::w(1, 1), Var::w(2, 0), Var::w(2, 1), Var::z(1), Var::z(2), Var::aux("x")};
  return vs;
}

Monomial random_monomial(std::mt19937_64& rng, int max_exp = 3) {
  std::vector<Monomial::Entry> e;
  std::uniform_int_distribution<int> ex(0, max_exp);
  for (Var v : sample_vars()) e.emplace_back(v, static_cast<std::uint32_t>(ex(rng)));
  return Monomial::from_entries(std::move(e));
}

Poly random_poly(std::mt19937_64& rng, int terms = 4) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 4);
  Poly p;
  for (int i = 0; i < terms; ++i) {
    std::vector<Monomial::Entry> e;
    std::uniform_int_distribution<int> ex(0, 2);
    for (Var v : sample_vars())
      if (rng() % 3 == 0) e.emplace_back(v, static_cast<std::uint32_t>(ex(rng)));
    Rational c(num(rng), den(rng));
    c.canonicalize();
    p.add_term(Monomial::from_entries(std::move(e)), c);
  }
  return p;
}

}  // namespace

TEST(Var, KeyStringRoundTrip) {
  for (Var v : {Var::w(2, 1), Var::w(10, 3), Var::z(0), Var::z(7), Var::aux("x")})
    EXPECT_EQ(Var::parse(v.to_key_string()), v);
  EXPECT_THROW(Var::parse("Q:1"), crl::DomainError);
  EXPECT_THROW(Var::parse("W:1"), crl::DomainError);
  EXPECT_THROW(Var::w(0, 0), crl::DomainError);
}

TEST(Var, DefaultRankingPutsWBeforeZ) {
  EXPECT_LT(Var::w(1, 0), Var::w(1, 1));
  EXPECT_LT(Var::w(1, 5), Var::w(2, 0));
  EXPECT_LT(Var::w(9, 9), Var::z(0));
  EXPECT_LT(Var::z(1), Var::z(2));
  EXPECT_LT(Var::z(100), Var::aux("y"));
}

TEST(Arith, Examples) {
  const Poly a = Poly::w(2, 0), b = Poly::w(3, 0);
  EXPECT_EQ((a + b) * (a - b), crl::pow(a, 2) - crl::pow(b, 2));
  EXPECT_EQ(crl::pow(a, 0), Poly(1));

  const Poly x(Var::aux("x")), y(Var::aux("y"));
  const Poly b0 = Poly::w(2, 0), b1 = Poly::w(2, 1);
  const Poly sq = crl::pow(b0 * x + b1 * y, 2);
  EXPECT_EQ(sq, b0 * b0 * x * x + Poly(2) * b0 * b1 * x * y + b1 * b1 * y * y);
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_EQ(-(a + 1), Poly(-1) - a);
  EXPECT_EQ((a * 3).scaled(Rational(1, 3)), a);
}

TEST(Substitute, Examples) {
  const Poly p = crl::pow(Poly::w(2, 0), 2) * crl::pow(Poly::w(3, 0), 3);
  EXPECT_EQ(crl::substitute(p, std::map<Var, Poly>{{Var::w(2, 0), Poly(1)}, {Var::w(3, 0), Poly(1)}}), Poly(1));

  const Var w = Var::aux("w");
  const Poly q = Poly::z(1) - Poly(w) * 2;
  EXPECT_TRUE(crl::substitute(q, std::map<Var, Poly>{{w, Poly::z(1).scaled(Rational(1, 2))}}).is_zero());

  // simultaneous, not sequential
  const Poly swap = crl::substitute(Poly::z(1) - Poly::z(2), std::map<Var, Poly>{{Var::z(1), Poly::z(2)}, {Var::z(2), Poly::z(1)}});
  EXPECT_EQ(swap, Poly::z(2) - Poly::z(1));
}

TEST(Differentiate, Examples) {
  const Var w = Var::aux("w");
  EXPECT_TRUE(crl::differentiate(Poly(w) * Poly(w), Var::z(1)).is_zero());
  EXPECT_EQ(crl::differentiate(crl::pow(Poly::z(1), 2) - Poly::z(2) * 4, Var::z(1)), Poly::z(1) * 2);
  const Poly theta = Poly::w(2, 1) * 2 + 1;
  EXPECT_EQ(crl::differentiate(theta * Poly::z(3) - Poly::w(2, 1), Var::z(3)), theta);
}

TEST(WeightedDegree, Examples) {
  auto omega = [](Var v) -> long { return v.kind() == crl::VarKind::Z ? v.j() : 0; };
  auto omega_tilde = [](Var v) -> long { return v.kind() == crl::VarKind::Z ? v.j() : v.t(); };
  using S = crl::WeightedDegree::Status;

  const Poly g = Poly::z(2) - crl::pow(Poly::w(2, 1), 2);
  EXPECT_EQ(crl::weighted_degree(g, omega_tilde), (crl::WeightedDegree{S::Homogeneous, 2}));
  const Poly disc = crl::pow(Poly::z(1), 2) - Poly::z(0) * Poly::z(2) * 4;
  EXPECT_EQ(crl::weighted_degree(disc, omega), (crl::WeightedDegree{S::Homogeneous, 2}));
  EXPECT_EQ(crl::weighted_degree(Poly::z(1) + Poly::z(2), omega).status, S::NotHomogeneous);
  EXPECT_EQ(crl::weighted_degree(Poly(), omega).status, S::Zero);
  EXPECT_TRUE(crl::weighted_degree(Poly(), omega).homogeneous());
}

TEST(Homogenize, Examples) {
  const Var z0 = Var::z(0);
  EXPECT_EQ(crl::normalize_and_homogenize(crl::pow(Poly::z(1), 2) - Poly::z(2) * 4, z0),
            crl::pow(Poly::z(1), 2) - Poly::z(0) * Poly::z(2) * 4);
  EXPECT_EQ(crl::normalize_and_homogenize(Poly(5), z0), Poly(1));
  EXPECT_EQ(crl::normalize_and_homogenize(Poly::z(1).scaled(Rational(1, 2)) - Poly::z(2), z0),
            Poly::z(1) - Poly::z(2) * 2);
  EXPECT_EQ(crl::normalize_and_homogenize(Poly::z(1).scaled(Rational(1, 2)) - Poly::z(2) * Poly::z(1), z0),
            Poly::z(1) * Poly::z(2) * 2 - Poly::z(0) * Poly::z(1));
  EXPECT_THROW(crl::normalize_and_homogenize(Poly::z(0), z0), crl::DomainError);
}

TEST(Homogenize, ConstantNormalizesToOne) {
  // a nonzero constant is a unit; its primitive form is 1
  EXPECT_EQ(crl::primitive(Poly(-5)), Poly(1));
}

TEST(Homogenize, DehomogenizingRecoversPrimitiveInput) {
  std::mt19937_64 rng(11);
  const Var h = Var::aux("h");
  for (int i = 0; i < 200; ++i) {
    const Poly p = random_poly(rng);
    if (p.is_zero()) continue;
    const Poly hp = crl::normalize_and_homogenize(p, h);
    const auto deg = hp.total_degree();
    for (const auto& [m, c] : hp.terms()) EXPECT_EQ(m.total_degree(), deg);
    EXPECT_EQ(crl::substitute(hp, std::map<Var, Poly>{{h, Poly(1)}}), crl::primitive(p));
  }
}

TEST(RingProperties, AxiomsOnRandomPolys) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    const Poly a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a + b, b + a);
    EXPECT_TRUE((a - a).is_zero());
    const Poly ab = a * b;
    for (const auto& [m, coef] : ab.terms()) EXPECT_NE(coef, 0);
  }
}

TEST(RingProperties, SubstitutionIsHomomorphism) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 60; ++i) {
    const Poly p = random_poly(rng, 3), q = random_poly(rng, 3);
    std::map<Var, Poly> b{{Var::z(1), random_poly(rng, 2)}, {Var::w(2, 0), random_poly(rng, 2)}};
    EXPECT_EQ(crl::substitute(p * q, b), crl::substitute(p, b) * crl::substitute(q, b));
    EXPECT_EQ(crl::substitute(p + q, b), crl::substitute(p, b) + crl::substitute(q, b));
  }
}

TEST(RingProperties, LeibnizRule) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const Poly p = random_poly(rng), q = random_poly(rng);
    for (Var v : sample_vars())
      EXPECT_EQ(crl::differentiate(p * q, v), crl::differentiate(p, v) * q + p * crl::differentiate(q, v));
  }
}

TEST(RingProperties, EvaluateAgreesWithSubstitute) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 50; ++i) {
    const Poly p = random_poly(rng);
    std::map<Var, Rational> pt;
    for (Var v : sample_vars()) pt.emplace(v, Rational(static_cast<long>(rng() % 7) - 3, 2));
    EXPECT_EQ(Poly(crl::evaluate(p, pt)), crl::substitute(p, pt));
  }
}

TEST(MonomialOrderProperties, TotalMultiplicativeWellOrder) {
  std::mt19937_64 rng(5);
  const std::vector<MonomialOrder> orders{
      MonomialOrder::lex(), MonomialOrder::grevlex(),
      MonomialOrder::grevlex({Var::z(2), Var::w(1, 1)}),
      MonomialOrder::block({Var::w(1, 1), Var::w(2, 0), Var::w(2, 1)}, {Var::z(1), Var::z(2)}),
      MonomialOrder::block({Var::z(1)}, {}, MonomialOrder::Kind::Lex, MonomialOrder::Kind::Grevlex)};
  for (const auto& ord : orders) {
    for (int i = 0; i < 300; ++i) {
      const Monomial a = random_monomial(rng), b = random_monomial(rng), c = random_monomial(rng);
      const auto ab = ord.compare(a, b);
      EXPECT_EQ(ab == 0, a == b);
      EXPECT_EQ(ord.compare(b, a), 0 <=> ab);
      if (ab < 0) {
        EXPECT_TRUE(ord.compare(a * c, b * c) < 0);
      }
      EXPECT_TRUE(ord.compare(Monomial{}, a) <= 0);
      if (ord.less(a, b) && ord.less(b, c)) {
        EXPECT_TRUE(ord.less(a, c));
      }
    }
  }
}

TEST(MonomialOrderProperties, BlockEliminatesFrontVariables) {
  const auto ord = MonomialOrder::block({Var::w(1, 1)}, {Var::z(1), Var::z(2)});
  const Monomial w(Var::w(1, 1)), big = Monomial::from_entries({{Var::z(1), 9}, {Var::z(2), 9}});
  EXPECT_TRUE(ord.less(big, w));
  // grevlex: x1*x3 > x2^2 style tie-break on the last variable
  const auto g = MonomialOrder::grevlex({Var::z(1), Var::z(2), Var::z(3)});
  EXPECT_TRUE(g.less(Monomial(Var::z(2), 2), Monomial::from_entries({{Var::z(1), 1}, {Var::z(3), 1}})) == false);
  EXPECT_TRUE(g.less(Monomial::from_entries({{Var::z(1), 1}, {Var::z(3), 1}}), Monomial(Var::z(2), 2)));
}

TEST(PolyJson, SchemaAndExactRoundTrip) {
  const Poly p = Poly::w(2, 1) * Rational(-3, 7) + crl::pow(Poly::z(1), 2);
  const auto j = crl::poly_to_json(p);
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[0]["c"], "1/1");
  EXPECT_EQ(j[0]["m"]["Z:1"], 2);
  EXPECT_EQ(j[1]["c"], "-3/7");
  EXPECT_EQ(j[1]["m"]["W:2:1"], 1);

  std::mt19937_64 rng(6);
  for (int i = 0; i < 100; ++i) {
    const Poly q = random_poly(rng, 6);
    const std::string text = crl::poly_to_json(q).dump();
    const Poly back = crl::poly_from_json(nlohmann::json::parse(text));
    EXPECT_EQ(back, q);
    EXPECT_EQ(crl::poly_to_json(back).dump(), text);
  }
  EXPECT_THROW(crl::poly_from_json(nlohmann::json::parse(R"([{"c": "1/0", "m": {}}])")), crl::DomainError);
  EXPECT_THROW(crl::poly_from_json(nlohmann::json::parse(R"([{"c": 3, "m": {}}])")), crl::DomainError);
}
