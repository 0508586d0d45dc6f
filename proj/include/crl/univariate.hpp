#pragma once

// Dense univariate polynomials over Q, enough for gcds and squarefree
// decomposition.

#include <utility>
#include <vector>

#include "crl/errors.hpp"
#include "crl/polyring.hpp"

namespace crl {

/// coeffs[i] is the coefficient of x^i; no trailing zeros.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  const std::vector<Rational>& coeffs() const noexcept { return c_; }
  bool is_zero() const noexcept { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  const Rational& lead() const { return c_.back(); }

  UPoly derivative() const {
    std::vector<Rational> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
    return UPoly(std::move(d));
  }

  UPoly monic() const {
    if (is_zero()) return *this;
    UPoly m = *this;
    const Rational l = lead();
    for (auto& x : m.c_) x /= l;
    return m;
  }

  /// Quotient and remainder of Euclidean division.
  static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw DomainError("division by the zero polynomial");
    std::vector<Rational> rem = a.c_;
    const int db = b.degree();
    std::vector<Rational> quo(a.degree() >= db ? static_cast<std::size_t>(a.degree() - db + 1) : 0);
    for (int k = a.degree(); k >= db; --k) {
      const Rational q = rem[static_cast<std::size_t>(k)] / b.lead();
      quo[static_cast<std::size_t>(k - db)] = q;
      if (q == 0) continue;
      for (int i = 0; i <= db; ++i) rem[static_cast<std::size_t>(k - db + i)] -= q * b.c_[static_cast<std::size_t>(i)];
    }
    return {UPoly(std::move(quo)), UPoly(std::move(rem))};
  }

  /// Monic gcd (zero when both are zero).
  static UPoly gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
      UPoly r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  /// Exact quotient; throws if the division leaves a remainder.
  UPoly exact_div(const UPoly& b) const {
    auto [q, r] = divmod(*this, b);
    if (!r.is_zero()) throw DomainError("inexact polynomial division");
    return q;
  }

  friend UPoly operator-(const UPoly& a, const UPoly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
    return UPoly(std::move(c));
  }

  friend bool operator==(const UPoly&, const UPoly&) = default;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

/// Yun's squarefree decomposition of a nonconstant f: monic, squarefree,
/// pairwise coprime P_1, P_2, ... with f = lc(f) * prod_i P_i^i. Entry i-1
/// holds P_i (possibly 1).
inline std::vector<UPoly> squarefree_decomposition(const UPoly& f) {
  if (f.degree() < 1) return {};
  std::vector<UPoly> out;
  const UPoly df = f.derivative();
  const UPoly a0 = UPoly::gcd(f, df);
  UPoly b = f.exact_div(a0);
  UPoly c = df.exact_div(a0);
  UPoly d = c - b.derivative();
  while (b.degree() > 0) {
    UPoly a = UPoly::gcd(b, d);
    out.push_back(a);
    b = b.exact_div(a);
    c = d.exact_div(a);
    d = c - b.derivative();
  }
  return out;
}

}  // namespace crl
