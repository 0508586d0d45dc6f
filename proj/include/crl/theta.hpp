#pragma once

// Coefficient polynomials Theta_0..Theta_d of the product prod_r G_r^r, where
// G_r = sum_t W(r,t) x^{e_r - t} y^t is a generic binary form of degree e_r,
// and their restrictions to the affine charts of the parameter space.

#include <string>
#include <vector>

#include "crl/partitions.hpp"
#include "crl/polyring.hpp"

namespace crl {

/// One exponent row nu_r = (nu_{r,0}..nu_{r,e_r}) per distinct part r of
/// lambda, rows in ascending r.
struct MultiExponent {
  std::vector<int> rows;              // the r values
  std::vector<std::vector<int>> nu;   // nu[k] belongs to rows[k]

  Monomial monomial() const {
    std::vector<Monomial::Entry> entries;
    for (std::size_t k = 0; k < rows.size(); ++k)
      for (std::size_t t = 0; t < nu[k].size(); ++t)
        if (nu[k][t]) entries.emplace_back(Var::w(rows[k], static_cast<int>(t)), static_cast<std::uint32_t>(nu[k][t]));
    return Monomial::from_entries(std::move(entries));
  }

  friend bool operator==(const MultiExponent&, const MultiExponent&) = default;
};

/// The multi-exponents nu with sum_t nu_{r,t} = r for every row and
/// sum_{r,t} t * nu_{r,t} = j, in lexicographic order of the flattened rows.
inline std::vector<MultiExponent> multi_exponents(const Partition& lambda, int j) {
  if (j < 0 || j > lambda.d())
    throw DomainError("weight " + std::to_string(j) + " outside 0.." + std::to_string(lambda.d()));

  MultiExponent cur;
  cur.rows = lambda.distinct_parts();
  for (int r : cur.rows) cur.nu.emplace_back(static_cast<std::size_t>(lambda.multiplicity(r)) + 1, 0);

  // Largest weight still reachable from row k onwards (everything in the
  // last slot of each row).
  std::vector<int> tail_max(cur.rows.size() + 1, 0);
  for (std::size_t k = cur.rows.size(); k-- > 0;)
    tail_max[k] = tail_max[k + 1] + cur.rows[k] * lambda.multiplicity(cur.rows[k]);

  std::vector<MultiExponent> out;
  auto rec = [&](auto&& self, std::size_t k, std::size_t t, int row_left, int weight_left) -> void {
    if (k == cur.rows.size()) {
      if (weight_left == 0) out.push_back(cur);
      return;
    }
    auto& row = cur.nu[k];
    const int last = static_cast<int>(row.size()) - 1;
    if (static_cast<int>(t) == last) {
      // remaining mass must go to the last slot
      const int w = row_left * last;
      if (w > weight_left) return;
      if (weight_left - w > tail_max[k + 1]) return;
      row[t] = row_left;
      self(self, k + 1, 0, k + 1 < cur.rows.size() ? cur.rows[k + 1] : 0, weight_left - w);
      row[t] = 0;
      return;
    }
    for (int v = 0; v <= row_left; ++v) {
      const int w = v * static_cast<int>(t);
      if (w > weight_left) break;
      // the rest of this row contributes at most (row_left - v) * last
      if (weight_left - w > (row_left - v) * last + tail_max[k + 1]) continue;
      row[t] = v;
      self(self, k, t + 1, row_left - v, weight_left - w);
      row[t] = 0;
    }
  };
  if (!cur.rows.empty()) rec(rec, 0, 0, cur.rows[0], j);
  return out;
}

inline Integer factorial(long n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

/// Number of ways the expansion of prod_r G_r^r produces W^nu: the product
/// over rows of the multinomial r! / prod_{t=0..e_r} nu_{r,t}!.
inline Integer beta(const MultiExponent& nu) {
  Integer b = 1;
  for (std::size_t k = 0; k < nu.rows.size(); ++k) {
    Integer row = factorial(nu.rows[k]);
    for (int v : nu.nu[k]) row /= factorial(v);
    b *= row;
  }
  return b;
}

inline std::vector<Poly> theta_polys(const Partition& lambda) {
  std::vector<Poly> out;
  out.reserve(static_cast<std::size_t>(lambda.d()) + 1);
  for (int j = 0; j <= lambda.d(); ++j) {
    Poly theta;
    for (const auto& nu : multi_exponents(lambda, j)) theta.add_term(nu.monomial(), Rational(beta(nu)));
    out.push_back(std::move(theta));
  }
  return out;
}

/// A chart index alpha = (alpha_0..alpha_d) with 0 <= alpha_0 <= d and
/// 0 <= alpha_r <= e_r; alpha_r = 0 whenever e_r = 0.
class ChartIndex {
 public:
  ChartIndex() = default;
  ChartIndex(const Partition& lambda, std::vector<int> alpha) : alpha_(std::move(alpha)) {
    const int d = lambda.d();
    if (alpha_.size() != static_cast<std::size_t>(d) + 1)
      throw DomainError("chart index needs " + std::to_string(d + 1) + " entries, got " + std::to_string(alpha_.size()));
    for (int r = 0; r <= d; ++r) {
      const int bound = r == 0 ? d : lambda.multiplicity(r);
      const int a = alpha_[static_cast<std::size_t>(r)];
      if (a < 0 || a > bound)
        throw DomainError("chart entry alpha_" + std::to_string(r) + " = " + std::to_string(a) + " outside 0.." +
                          std::to_string(bound));
    }
  }

  /// The chart 0 = (0,...,0).
  static ChartIndex origin(const Partition& lambda) {
    return ChartIndex(lambda, std::vector<int>(static_cast<std::size_t>(lambda.d()) + 1, 0));
  }

  int operator[](int r) const { return alpha_.at(static_cast<std::size_t>(r)); }
  int alpha0() const { return alpha_.at(0); }
  const std::vector<int>& values() const noexcept { return alpha_; }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < alpha_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(alpha_[i]);
    }
    return s;
  }

  friend bool operator==(const ChartIndex&, const ChartIndex&) = default;

 private:
  std::vector<int> alpha_;
};

/// Every chart index of lambda, alpha_0 varying slowest.
inline std::vector<ChartIndex> all_charts(const Partition& lambda) {
  const int d = lambda.d();
  std::vector<int> bounds(static_cast<std::size_t>(d) + 1);
  bounds[0] = d;
  for (int r = 1; r <= d; ++r) bounds[static_cast<std::size_t>(r)] = lambda.multiplicity(r);
  std::vector<ChartIndex> out;
  std::vector<int> cur(bounds.size(), 0);
  while (true) {
    out.emplace_back(lambda, cur);
    std::size_t pos = cur.size();
    while (pos > 0) {
      --pos;
      if (cur[pos] < bounds[pos]) {
        ++cur[pos];
        break;
      }
      cur[pos] = 0;
      if (pos == 0) return out;
    }
  }
}

/// The remaining W(r,t) with t != alpha_r: affine coordinates on the chart.
inline std::vector<Var> chart_coordinates(const Partition& lambda, const ChartIndex& alpha) {
  std::vector<Var> vs;
  for (int r : lambda.distinct_parts())
    for (int t = 0; t <= lambda.multiplicity(r); ++t)
      if (t != alpha[r]) vs.push_back(Var::w(r, t));
  return vs;
}

inline std::map<Var, Poly> chart_dehomogenization(const Partition& lambda, const ChartIndex& alpha) {
  std::map<Var, Poly> b;
  for (int r : lambda.distinct_parts()) b.emplace(Var::w(r, alpha[r]), Poly(1));
  return b;
}

/// All theta_{j,alpha}, j = 0..d.
inline std::vector<Poly> theta_chart_all(const Partition& lambda, const ChartIndex& alpha) {
  const auto bindings = chart_dehomogenization(lambda, alpha);
  std::vector<Poly> out;
  for (const auto& theta : theta_polys(lambda)) out.push_back(substitute(theta, bindings));
  return out;
}

inline Poly theta_chart(const Partition& lambda, const ChartIndex& alpha, int j) {
  if (j < 0 || j > lambda.d()) throw DomainError("theta index out of range");
  Poly theta;
  for (const auto& nu : multi_exponents(lambda, j)) theta.add_term(nu.monomial(), Rational(beta(nu)));
  return substitute(theta, chart_dehomogenization(lambda, alpha));
}

/// Coefficients of x^{d-j} y^j in the fully expanded symbolic product
/// prod_r (sum_t W(r,t) x^{e_r - t} y^t)^r. Independent of the
/// multi-exponent formula; used to cross-check theta_polys.
inline std::vector<Poly> product_expansion_oracle(const Partition& lambda) {
  const Var x = Var::aux("x"), y = Var::aux("y");
  Poly product(1);
  for (int r : lambda.distinct_parts()) {
    const int e = lambda.multiplicity(r);
    Poly g;
    for (int t = 0; t <= e; ++t)
      g += Poly::w(r, t) * pow(Poly(x), static_cast<unsigned>(e - t)) * pow(Poly(y), static_cast<unsigned>(t));
    for (int k = 0; k < r; ++k) product *= g;
  }
  std::vector<Poly> out(static_cast<std::size_t>(lambda.d()) + 1);
  for (const auto& [m, c] : product.terms()) {
    const auto j = m.degree(y);
    out.at(j).add_term(m.without(x).without(y), c);
  }
  return out;
}

}  // namespace crl
