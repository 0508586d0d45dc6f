#pragma once

// Chart-local equations of the incidence scheme Gamma_lambda: the 2 x (d+1)
// matrix (phi_alpha), its generator set theta_{alpha_0} z_j - theta_j, and
// the exact identities they satisfy.

#include <random>
#include <vector>

#include "crl/partitions.hpp"
#include "crl/polyring.hpp"
#include "crl/theta.hpp"

namespace crl {

struct ChartMatrix {
  ChartIndex alpha;
  std::vector<Poly> top_row;     // theta_{0,alpha} .. theta_{d,alpha}
  std::vector<Poly> bottom_row;  // z_0 .. 1 .. z_d, the 1 at alpha_0

  /// The 2x2 minor on columns j and l.
  Poly minor(std::size_t j, std::size_t l) const {
    return top_row.at(j) * bottom_row.at(l) - top_row.at(l) * bottom_row.at(j);
  }
};

struct GeneratorSet {
  ChartIndex alpha;
  std::vector<int> indices;  // j for each generator, j != alpha_0, ascending
  std::vector<Poly> gens;    // theta_{alpha_0} z_j - theta_j
};

inline ChartMatrix chart_matrix(const Partition& lambda, const ChartIndex& alpha) {
  ChartMatrix m{alpha, theta_chart_all(lambda, alpha), {}};
  for (int j = 0; j <= lambda.d(); ++j) m.bottom_row.push_back(j == alpha.alpha0() ? Poly(1) : Poly::z(j));
  return m;
}

inline GeneratorSet generators_from_matrix(const ChartMatrix& m) {
  GeneratorSet g{m.alpha, {}, {}};
  const auto a0 = static_cast<std::size_t>(m.alpha.alpha0());
  const Poly& unit = m.top_row[a0];
  for (std::size_t j = 0; j < m.top_row.size(); ++j) {
    if (j == a0) continue;
    g.indices.push_back(static_cast<int>(j));
    g.gens.push_back(unit * m.bottom_row[j] - m.top_row[j]);
  }
  return g;
}

inline GeneratorSet chart_generators(const Partition& lambda, const ChartIndex& alpha) {
  return generators_from_matrix(chart_matrix(lambda, alpha));
}

/// Checks theta_j z_l - theta_l z_j = z_j g_l - z_l g_j exactly for every pair
/// of columns, with g_k = theta_{alpha_0} z_k - theta_k (and z_{alpha_0} = 1,
/// g_{alpha_0} = 0), so every 2x2 minor lies in the ideal of the generators.
inline bool minor_identity_check(const ChartMatrix& m) {
  const std::size_t n = m.top_row.size();
  const auto a0 = static_cast<std::size_t>(m.alpha.alpha0());
  const Poly& unit = m.top_row[a0];
  std::vector<Poly> g(n);
  for (std::size_t k = 0; k < n; ++k) g[k] = unit * m.bottom_row[k] - m.top_row[k];
  if (!g[a0].is_zero()) return false;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t l = j; l < n; ++l) {
      const Poly rhs = m.bottom_row[j] * g[l] - m.bottom_row[l] * g[j];
      if (m.minor(j, l) != rhs) return false;
    }
  return true;
}

inline bool minor_identity_check(const Partition& lambda, const ChartIndex& alpha) {
  return minor_identity_check(chart_matrix(lambda, alpha));
}

/// The Jacobian of the generators with respect to {z_l : l != alpha_0} is
/// theta_{alpha_0} times the identity.
inline bool jacobian_submatrix_check(const Partition& lambda, const ChartIndex& alpha) {
  const ChartMatrix m = chart_matrix(lambda, alpha);
  const GeneratorSet gs = generators_from_matrix(m);
  const Poly& unit = m.top_row[static_cast<std::size_t>(alpha.alpha0())];
  for (std::size_t row = 0; row < gs.gens.size(); ++row)
    for (std::size_t col = 0; col < gs.indices.size(); ++col) {
      const Poly dz = differentiate(gs.gens[row], Var::z(gs.indices[col]));
      if (dz != (row == col ? unit : Poly())) return false;
    }
  return true;
}

/// Random integer chart point: each coordinate W(r,t), t != alpha_r,
/// uniform in [-bound, bound].
inline std::map<Var, Rational> random_chart_point(const Partition& lambda, const ChartIndex& alpha, int bound,
                                                  std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  std::map<Var, Rational> pt;
  for (Var v : chart_coordinates(lambda, alpha)) pt.emplace(v, Rational(dist(rng)));
  return pt;
}

struct SampleResult {
  bool ok = true;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::map<Var, Rational> counterexample;  // set when !ok
};

/// Samples chart points and checks that the theta row of (phi_alpha) never
/// vanishes identically there. The z row always holds the constant 1.
inline SampleResult row_nonvanishing_sample(const Partition& lambda, const ChartIndex& alpha, std::size_t trials,
                                            std::uint64_t seed, int bound = 10) {
  if (trials < 1) throw DomainError("need at least one trial");
  const ChartMatrix m = chart_matrix(lambda, alpha);
  SampleResult res{true, trials, seed, {}};
  if (m.bottom_row.at(static_cast<std::size_t>(alpha.alpha0())) != Poly(1)) {
    res.ok = false;
    return res;
  }
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < trials; ++i) {
    auto pt = random_chart_point(lambda, alpha, bound, rng);
    bool nonzero = false;
    for (const auto& theta : m.top_row) {
      if (evaluate(theta, pt) != 0) {
        nonzero = true;
        break;
      }
    }
    if (!nonzero) {
      res.ok = false;
      res.counterexample = std::move(pt);
      return res;
    }
  }
  return res;
}

/// A point of T in homogeneous coordinates: the form (a_0..a_d) and one
/// coefficient vector (b_{r,0}..b_{r,e_r}) per distinct part r.
struct HomogeneousPoint {
  std::vector<Rational> form;
  std::map<int, std::vector<Rational>> factors;
};

/// Whether the point lies in the chart U_alpha.
inline bool in_chart(const HomogeneousPoint& q, const ChartIndex& alpha) {
  if (q.form.at(static_cast<std::size_t>(alpha.alpha0())) == 0) return false;
  for (const auto& [r, b] : q.factors)
    if (b.at(static_cast<std::size_t>(alpha[r])) == 0) return false;
  return true;
}

/// Affine chart coordinates of q: W(r,t) = b_{r,t}/b_{r,alpha_r} and
/// Z(j) = a_j/a_{alpha_0}. Requires in_chart(q, alpha).
inline std::map<Var, Rational> chart_coordinates_of(const HomogeneousPoint& q, const ChartIndex& alpha) {
  if (!in_chart(q, alpha)) throw DomainError("point not in chart " + alpha.to_string());
  std::map<Var, Rational> pt;
  const Rational& a0 = q.form[static_cast<std::size_t>(alpha.alpha0())];
  for (std::size_t j = 0; j < q.form.size(); ++j)
    if (static_cast<int>(j) != alpha.alpha0()) pt.emplace(Var::z(static_cast<int>(j)), q.form[j] / a0);
  for (const auto& [r, b] : q.factors) {
    const Rational& pivot = b[static_cast<std::size_t>(alpha[r])];
    for (std::size_t t = 0; t < b.size(); ++t)
      if (static_cast<int>(t) != alpha[r]) pt.emplace(Var::w(r, static_cast<int>(t)), b[t] / pivot);
  }
  return pt;
}

/// Whether every 2x2 minor of (phi_alpha) vanishes at q.
inline bool minors_vanish_at(const ChartMatrix& m, const HomogeneousPoint& q) {
  const auto pt = chart_coordinates_of(q, m.alpha);
  std::vector<Rational> top, bottom;
  for (const auto& p : m.top_row) top.push_back(evaluate(p, pt));
  for (const auto& p : m.bottom_row) bottom.push_back(evaluate(p, pt));
  for (std::size_t j = 0; j < top.size(); ++j)
    for (std::size_t l = j + 1; l < top.size(); ++l)
      if (top[j] * bottom[l] - top[l] * bottom[j] != 0) return false;
  return true;
}

}  // namespace crl
