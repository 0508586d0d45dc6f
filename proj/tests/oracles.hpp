#pragma once

// Test-only oracles, independent of the library code paths they check.

#include <random>
#include <set>
#include <vector>

#include "crl/crl.hpp"

namespace crl::testing {

/// Splittings by brute force: assign every (labeled) part of lambda to a
/// slot of mu, keep assignments whose slot sums match, forget labels.
inline std::set<std::vector<std::vector<int>>> brute_force_splittings(const Partition& mu, const Partition& lambda) {
  std::set<std::vector<std::vector<int>>> out;
  const auto& parts = lambda.parts();
  const auto& slots = mu.parts();
  const std::size_t e = parts.size(), c = slots.size();
  std::vector<std::size_t> assign(e, 0);
  while (true) {
    std::vector<std::vector<int>> blocks(c);
    std::vector<int> sums(c, 0);
    for (std::size_t i = 0; i < e; ++i) {
      blocks[assign[i]].push_back(parts[i]);
      sums[assign[i]] += parts[i];
    }
    if (sums == slots) {
      for (auto& b : blocks) std::sort(b.begin(), b.end(), std::greater<>());
      out.insert(blocks);
    }
    std::size_t pos = 0;
    while (pos < e && ++assign[pos] == c) assign[pos++] = 0;
    if (pos == e) break;
  }
  return out;
}

/// Coarsenings by enumerating set partitions of the labeled parts as
/// restricted growth strings.
inline std::set<Partition> brute_force_coarsenings(const Partition& lambda) {
  std::set<Partition> out;
  const auto& parts = lambda.parts();
  const std::size_t e = parts.size();
  std::vector<std::size_t> rgs(e, 0);
  auto rec = [&](auto&& self, std::size_t i, std::size_t blocks) -> void {
    if (i == e) {
      std::vector<int> sums(blocks, 0);
      for (std::size_t k = 0; k < e; ++k) sums[rgs[k]] += parts[k];
      out.insert(Partition(sums));
      return;
    }
    for (std::size_t b = 0; b <= blocks; ++b) {
      rgs[i] = b;
      self(self, i + 1, b == blocks ? blocks + 1 : blocks);
    }
  };
  rec(rec, 0, 0);
  return out;
}

/// Determinant by cofactor expansion along the first row.
inline Poly determinant(const std::vector<std::vector<Poly>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  Poly det;
  for (std::size_t col = 0; col < n; ++col) {
    if (m[0][col].is_zero()) continue;
    std::vector<std::vector<Poly>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Poly> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != col) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    Poly term = m[0][col] * determinant(minor);
    if (col % 2) det -= term; else det += term;
  }
  return det;
}

/// Sylvester resultant of two binary forms given by coefficient lists
/// (f_0 x^m + f_1 x^{m-1} y + ...).
inline Poly sylvester_resultant(const std::vector<Poly>& f, const std::vector<Poly>& g) {
  const std::size_t m = f.size() - 1, n = g.size() - 1, size = m + n;
  std::vector<std::vector<Poly>> s(size, std::vector<Poly>(size));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k <= m; ++k) s[r][r + k] = f[k];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k <= n; ++k) s[n + r][r + k] = g[k];
  return determinant(s);
}

/// Discriminant-type oracle for the generic binary form of degree d in
/// coefficients z_0..z_d: Res(dF/dx, dF/dy).
inline Poly partials_resultant(int d) {
  std::vector<Poly> fx, fy;
  for (int j = 0; j < d; ++j) fx.push_back(Poly::z(j).scaled(Rational(d - j)));
  for (int j = 1; j <= d; ++j) fy.push_back(Poly::z(j).scaled(Rational(j)));
  return sylvester_resultant(fx, fy);
}

/// Random factored form with multiplicities `mu` and pairwise
/// non-proportional integer linear factors.
inline FactoredForm random_factored_form(const Partition& mu, std::mt19937_64& rng, int bound = 5) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  std::vector<std::pair<LinearForm, int>> factors;
  for (int m : mu.parts()) {
    while (true) {
      LinearForm l{Rational(dist(rng)), Rational(dist(rng))};
      if (l.u == 0 && l.v == 0) continue;
      bool clash = std::any_of(factors.begin(), factors.end(), [&](const auto& f) { return proportional(f.first, l); });
      if (clash) continue;
      factors.emplace_back(l, m);
      break;
    }
  }
  std::shuffle(factors.begin(), factors.end(), rng);
  return FactoredForm(std::move(factors), Rational(1 + static_cast<int>(rng() % 3)));
}

/// Random integer form whose roots are all simple.
inline BinaryForm random_generic_form(int d, std::mt19937_64& rng, int bound = 20) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  while (true) {
    std::vector<Rational> a;
    for (int j = 0; j <= d; ++j) a.emplace_back(dist(rng));
    if (std::all_of(a.begin(), a.end(), [](const Rational& q) { return q == 0; })) continue;
    BinaryForm f(a);
    if (multiplicity_partition(f).num_parts() == d) return f;
  }
}

/// Ideal equality by mutual normal-form membership.
inline bool same_ideal(const std::vector<Poly>& a, const std::vector<Poly>& b) {
  if (a.empty() || b.empty()) return a.empty() && b.empty();
  const auto order = MonomialOrder::grevlex();
  const IdealBasis ga = buchberger(a, order), gb = buchberger(b, order);
  for (const auto& p : a)
    if (!normal_form(p, gb).is_zero()) return false;
  for (const auto& p : b)
    if (!normal_form(p, ga).is_zero()) return false;
  return true;
}

/// A graph ideal {z_j - p_j(w)} with the parametrization kept for checks.
struct GraphIdeal {
  std::vector<Poly> gens;
  std::vector<Var> drop;
  std::map<Var, Poly> param;  // z_j -> p_j
  bool monomial = false;      // every p_j a monomial
};

/// Random graph ideal: 1..4 W variables, 2..3 Z variables, each p_j with at
/// most three terms. Half of the draws use monomial parametrizations, whose
/// kernels contain known binomials; those and one-variable curves go up to
/// degree 4. Other multi-variable draws stay at degree <= 2, since dense
/// implicit surfaces of higher degree are out of reach for exact Buchberger.
inline GraphIdeal random_graph_ideal(std::mt19937_64& rng) {
  GraphIdeal g;
  const int k = 1 + static_cast<int>(rng() % 4);
  const int m = 2 + static_cast<int>(rng() % 2);
  g.monomial = rng() % 2 == 0;
  for (int t = 0; t < k; ++t) g.drop.push_back(Var::w(1, t));
  std::uniform_int_distribution<int> coeff(-3, 3);
  auto random_monomial = [&](int max_deg) {
    std::vector<Monomial::Entry> es;
    int left = max_deg;
    for (Var v : g.drop) {
      const int e = static_cast<int>(rng() % static_cast<unsigned>(left + 1));
      left -= e;
      if (e) es.push_back({v, static_cast<std::uint32_t>(e)});
    }
    return Monomial::from_entries(std::move(es));
  };
  for (int j = 1; j <= m; ++j) {
    Poly p;
    while (p.is_zero() || p.total_degree() == 0) {
      p = Poly();
      const int terms = g.monomial ? 1 : 1 + static_cast<int>(rng() % 3);
      for (int i = 0; i < terms; ++i) {
        const int c = g.monomial ? 1 : coeff(rng);
        p += Poly(random_monomial(g.monomial || k == 1 ? 4 : 2), Rational(c));
      }
    }
    g.param.emplace(Var::z(j), p);
    g.gens.push_back(Poly::z(j) - p);
  }
  return g;
}

/// Kernel binomials z^u - z^v of a monomial parametrization, found by
/// searching small exponent vectors.
inline std::vector<Poly> kernel_binomials(const GraphIdeal& g, int max_exp = 4) {
  std::vector<Poly> out;
  std::map<Monomial, Monomial> seen;  // image -> first preimage
  std::vector<Var> zs;
  for (const auto& [z, p] : g.param) zs.push_back(z);
  std::vector<int> u(zs.size(), 0);
  while (true) {
    std::vector<Monomial::Entry> es;
    for (std::size_t i = 0; i < zs.size(); ++i)
      if (u[i]) es.push_back({zs[i], static_cast<std::uint32_t>(u[i])});
    const Monomial zu = Monomial::from_entries(es);
    const Poly image = substitute(Poly(zu, Rational(1)), g.param);
    const Monomial key = image.terms().begin()->first;
    auto [it, fresh] = seen.emplace(key, zu);
    if (!fresh) out.push_back(Poly(zu, Rational(1)) - Poly(it->second, Rational(1)));
    std::size_t pos = 0;
    while (pos < u.size() && ++u[pos] > max_exp) u[pos++] = 0;
    if (pos == u.size()) break;
  }
  return out;
}

/// Elimination versus substitution on a graph ideal: every generator of the
/// eliminated ideal vanishes under z_j -> p_j; random z-polynomials with
/// nonzero image are not members; known kernel binomials are members.
inline bool check_graph_elimination(const GraphIdeal& g, std::mt19937_64& rng, std::string* why = nullptr) {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  const auto elim = eliminate(g.gens, g.drop);
  for (const auto& q : elim) {
    for (Var v : g.drop)
      if (q.contains(v)) return fail("dropped variable survives in " + q.to_string());
    if (!substitute(q, g.param).is_zero()) return fail("generator not in kernel: " + q.to_string());
  }
  std::vector<Poly> kernel = g.monomial ? kernel_binomials(g) : std::vector<Poly>{};
  if (elim.empty()) {
    for (const auto& b : kernel)
      if (!substitute(b, g.param).is_zero()) return fail("bad binomial");
    if (!kernel.empty()) return fail("zero elimination but kernel binomial " + kernel.front().to_string());
    return true;
  }
  const IdealBasis basis = buchberger(elim, MonomialOrder::grevlex());
  for (const auto& b : kernel)
    if (!normal_form(b, basis).is_zero()) return fail("kernel binomial not a member: " + b.to_string());
  std::uniform_int_distribution<int> coeff(-4, 4);
  for (int trial = 0; trial < 10; ++trial) {
    Poly q;
    for (int i = 0; i < 3; ++i) {
      std::vector<Monomial::Entry> es;
      for (const auto& [z, p] : g.param) {
        const auto e = static_cast<std::uint32_t>(rng() % 3);
        if (e) es.push_back({z, e});
      }
      q += Poly(Monomial::from_entries(es), Rational(coeff(rng)));
    }
    const bool in_kernel = substitute(q, g.param).is_zero();
    const bool member = normal_form(q, basis).is_zero();
    if (in_kernel != member) return fail("membership disagrees for " + q.to_string());
    // Multiples of generators stay members.
    const Poly multiple = q * elim[static_cast<std::size_t>(rng() % elim.size())];
    if (!normal_form(multiple, basis).is_zero()) return fail("ideal element not reduced to zero");
  }
  return true;
}

}  // namespace crl::testing
