#pragma once

// Sparse multivariate polynomials with exact rational coefficients over the
// variable universe {W(r,t), Z(j), auxiliary named variables}.

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "crl/errors.hpp"

namespace crl {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational parse_rational(std::string_view s) {
  Rational q;
  if (s.empty() || q.set_str(std::string(s), 10) != 0)
    throw DomainError("cannot parse rational '" + std::string(s) + "'");
  if (q.get_den() == 0) throw DomainError("zero denominator in '" + std::string(s) + "'");
  q.canonicalize();
  return q;
}

/// "num/den" with den >= 1 always present.
inline std::string rational_to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

enum class VarKind : std::uint8_t { W = 0, Z = 1, Aux = 2 };

namespace detail {
class AuxRegistry {
 public:
  static AuxRegistry& instance() {
    static AuxRegistry reg;
    return reg;
  }
  std::uint32_t intern(std::string_view name) {
    std::lock_guard lock(mu_);
    auto it = ids_.find(std::string(name));
    if (it != ids_.end()) return it->second;
    auto id = static_cast<std::uint32_t>(names_.size());
    names_.emplace_back(name);
    ids_.emplace(std::string(name), id);
    return id;
  }
  std::string name(std::uint32_t id) {
    std::lock_guard lock(mu_);
    return names_.at(id);
  }

 private:
  std::mutex mu_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> ids_;
};
}  // namespace detail

/// A variable packed into 32 bits: kind in the top two bits. The natural
/// order of the key puts every W(r,t) (by r, then t) before every Z(j) (by j)
/// before auxiliary variables (by interning order).
class Var {
 public:
  static constexpr std::uint32_t kIndexLimit = 1u << 14;

  static Var w(int r, int t) {
    if (r < 1 || t < 0 || static_cast<std::uint32_t>(r) >= kIndexLimit ||
        static_cast<std::uint32_t>(t) >= kIndexLimit)
      throw DomainError("W variable index out of range");
    return Var((0u << 30) | (static_cast<std::uint32_t>(r) << 14) | static_cast<std::uint32_t>(t));
  }
  static Var z(int j) {
    if (j < 0 || static_cast<std::uint32_t>(j) >= (1u << 30)) throw DomainError("Z variable index out of range");
    return Var((1u << 30) | static_cast<std::uint32_t>(j));
  }
  static Var aux(std::string_view name) {
    if (name.empty()) throw DomainError("auxiliary variable needs a name");
    return Var((2u << 30) | detail::AuxRegistry::instance().intern(name));
  }

  /// Inverse of to_key_string: "W:2:1", "Z:3", "A:x".
  static Var parse(std::string_view s) {
    auto bad = [&] { return DomainError("cannot parse variable '" + std::string(s) + "'"); };
    auto to_int = [&](std::string_view t) {
      if (t.empty() || t.size() > 9) throw bad();
      int v = 0;
      for (char c : t) {
        if (c < '0' || c > '9') throw bad();
        v = v * 10 + (c - '0');
      }
      return v;
    };
    if (s.size() < 3 || s[1] != ':') throw bad();
    std::string_view rest = s.substr(2);
    switch (s[0]) {
      case 'W': {
        auto colon = rest.find(':');
        if (colon == std::string_view::npos) throw bad();
        return w(to_int(rest.substr(0, colon)), to_int(rest.substr(colon + 1)));
      }
      case 'Z':
        return z(to_int(rest));
      case 'A':
        return aux(rest);
      default:
        throw bad();
    }
  }

  VarKind kind() const noexcept { return static_cast<VarKind>(key_ >> 30); }
  int r() const noexcept { return static_cast<int>((key_ >> 14) & (kIndexLimit - 1)); }
  int t() const noexcept { return static_cast<int>(key_ & (kIndexLimit - 1)); }
  int j() const noexcept { return static_cast<int>(key_ & ((1u << 30) - 1)); }
  std::string name() const { return detail::AuxRegistry::instance().name(key_ & ((1u << 30) - 1)); }
  std::uint32_t key() const noexcept { return key_; }

  std::string to_key_string() const {
    switch (kind()) {
      case VarKind::W:
        return "W:" + std::to_string(r()) + ":" + std::to_string(t());
      case VarKind::Z:
        return "Z:" + std::to_string(j());
      default:
        return "A:" + name();
    }
  }
  /// Display form: W2_1, z3, or the auxiliary name.
  std::string to_string() const {
    switch (kind()) {
      case VarKind::W:
        return "W" + std::to_string(r()) + "_" + std::to_string(t());
      case VarKind::Z:
        return "z" + std::to_string(j());
      default:
        return name();
    }
  }

  friend bool operator==(Var, Var) = default;
  friend auto operator<=>(Var a, Var b) { return a.key_ <=> b.key_; }

 private:
  explicit Var(std::uint32_t key) : key_(key) {}
  std::uint32_t key_;
};

/// Sparse power product; only nonzero exponents are stored, sorted by Var.
class Monomial {
 public:
  using Entry = std::pair<Var, std::uint32_t>;

  Monomial() = default;
  explicit Monomial(Var v, std::uint32_t e = 1) {
    if (e) entries_.emplace_back(v, e);
  }
  /// Entries may be unsorted and contain repeats or zeros.
  static Monomial from_entries(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
    Monomial m;
    for (const auto& [v, e] : entries) {
      if (!m.entries_.empty() && m.entries_.back().first == v)
        m.entries_.back().second += e;
      else
        m.entries_.emplace_back(v, e);
    }
    std::erase_if(m.entries_, [](const Entry& x) { return x.second == 0; });
    return m;
  }

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  bool is_one() const noexcept { return entries_.empty(); }

  std::uint32_t degree(Var v) const noexcept {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), v,
                               [](const Entry& a, Var b) { return a.first < b; });
    return (it != entries_.end() && it->first == v) ? it->second : 0;
  }
  std::uint64_t total_degree() const noexcept {
    std::uint64_t s = 0;
    for (const auto& [v, e] : entries_) s += e;
    return s;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m;
    m.entries_.reserve(a.entries_.size() + b.entries_.size());
    auto i = a.entries_.begin(), j = b.entries_.begin();
    while (i != a.entries_.end() || j != b.entries_.end()) {
      if (j == b.entries_.end() || (i != a.entries_.end() && i->first < j->first)) {
        m.entries_.push_back(*i++);
      } else if (i == a.entries_.end() || j->first < i->first) {
        m.entries_.push_back(*j++);
      } else {
        m.entries_.emplace_back(i->first, i->second + j->second);
        ++i, ++j;
      }
    }
    return m;
  }

  bool divides(const Monomial& other) const noexcept {
    for (const auto& [v, e] : entries_)
      if (other.degree(v) < e) return false;
    return true;
  }

  /// this / other; requires other.divides(*this).
  Monomial quotient(const Monomial& other) const {
    std::vector<Entry> out;
    for (const auto& [v, e] : entries_) {
      std::uint32_t f = other.degree(v);
      if (f > e) throw DomainError("monomial quotient is not exact");
      if (e > f) out.emplace_back(v, e - f);
    }
    Monomial m;
    m.entries_ = std::move(out);
    if (!other.divides(*this)) throw DomainError("monomial quotient is not exact");
    return m;
  }

  static Monomial lcm(const Monomial& a, const Monomial& b) {
    std::vector<Entry> out = a.entries_;
    for (const auto& [v, e] : b.entries_) {
      auto it = std::find_if(out.begin(), out.end(), [v](const Entry& x) { return x.first == v; });
      if (it == out.end())
        out.emplace_back(v, e);
      else
        it->second = std::max(it->second, e);
    }
    return from_entries(std::move(out));
  }

  /// Copy without variable v.
  Monomial without(Var v) const {
    Monomial m = *this;
    std::erase_if(m.entries_, [v](const Entry& x) { return x.first == v; });
    return m;
  }

  std::string to_string() const {
    if (entries_.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (i) s += '*';
      s += entries_[i].first.to_string();
      if (entries_[i].second != 1) s += "^" + std::to_string(entries_[i].second);
    }
    return s;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial& a, const Monomial& b) {
    return std::lexicographical_compare_three_way(
        a.entries_.begin(), a.entries_.end(), b.entries_.begin(), b.entries_.end(),
        [](const Entry& x, const Entry& y) {
          if (auto c = x.first <=> y.first; c != 0) return c;
          return x.second <=> y.second;
        });
  }

 private:
  std::vector<Entry> entries_;
};

/// A total multiplicative well-order on monomials.
///
/// Variables are ranked by the priority sequences given at construction;
/// variables not listed rank below all listed ones, ordered by Var key.
/// For BLOCK the unlisted variables join the back block.
class MonomialOrder {
 public:
  enum class Kind { Lex, Grevlex, Block };

  static MonomialOrder lex(std::vector<Var> priority = {}) {
    return MonomialOrder(Kind::Lex, std::move(priority), {}, Kind::Lex, Kind::Lex);
  }
  static MonomialOrder grevlex(std::vector<Var> priority = {}) {
    return MonomialOrder(Kind::Grevlex, std::move(priority), {}, Kind::Grevlex, Kind::Grevlex);
  }
  /// Any monomial involving a front variable beats every monomial in the
  /// back variables alone. Sub-orders must be Lex or Grevlex.
  static MonomialOrder block(std::vector<Var> front, std::vector<Var> back, Kind front_order = Kind::Grevlex,
                             Kind back_order = Kind::Grevlex) {
    if (front_order == Kind::Block || back_order == Kind::Block)
      throw DomainError("block sub-orders must be lex or grevlex");
    return MonomialOrder(Kind::Block, std::move(front), std::move(back), front_order, back_order);
  }

  Kind kind() const noexcept { return kind_; }
  Kind front_order() const noexcept { return front_kind_; }
  Kind back_order() const noexcept { return back_kind_; }
  const std::vector<Var>& front() const noexcept { return front_; }
  const std::vector<Var>& back() const noexcept { return back_; }

  /// Ranks `vars` (deduplicated) from highest to lowest priority and
  /// returns the number of them that belong to the front block (all of
  /// them for Lex/Grevlex).
  std::pair<std::vector<Var>, std::size_t> arrange(std::vector<Var> vars) const {
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    std::vector<Var> ranked;
    auto take_listed = [&](const std::vector<Var>& listed) {
      for (Var v : listed) {
        if (std::find(ranked.begin(), ranked.end(), v) == ranked.end()) ranked.push_back(v);
      }
    };
    take_listed(front_);
    std::size_t split = ranked.size();
    take_listed(back_);
    for (Var v : vars)
      if (std::find(ranked.begin(), ranked.end(), v) == ranked.end()) ranked.push_back(v);
    if (kind_ != Kind::Block) split = ranked.size();
    return {ranked, split};
  }

  std::strong_ordering compare(const Monomial& a, const Monomial& b) const {
    std::vector<Var> vars;
    for (const auto& [v, e] : a.entries()) vars.push_back(v);
    for (const auto& [v, e] : b.entries()) vars.push_back(v);
    auto [ranked, split] = arrange(std::move(vars));
    std::vector<std::uint32_t> ea(ranked.size()), eb(ranked.size());
    for (std::size_t i = 0; i < ranked.size(); ++i) {
      ea[i] = a.degree(ranked[i]);
      eb[i] = b.degree(ranked[i]);
    }
    return compare_dense(ea.data(), eb.data(), ranked.size(), split);
  }

  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }

  /// Compares dense exponent vectors laid out by arrange().
  template <class E>
  std::strong_ordering compare_dense(const E* a, const E* b, std::size_t n, std::size_t split) const {
    if (kind_ == Kind::Block) {
      if (auto c = compare_range(front_kind_, a, b, 0, split); c != 0) return c;
      return compare_range(back_kind_, a, b, split, n);
    }
    return compare_range(kind_, a, b, 0, n);
  }

 private:
  MonomialOrder(Kind k, std::vector<Var> front, std::vector<Var> back, Kind fk, Kind bk)
      : kind_(k), front_(std::move(front)), back_(std::move(back)), front_kind_(fk), back_kind_(bk) {}

  template <class E>
  static std::strong_ordering compare_range(Kind k, const E* a, const E* b, std::size_t lo, std::size_t hi) {
    if (k == Kind::Lex) {
      for (std::size_t i = lo; i < hi; ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? std::strong_ordering::less : std::strong_ordering::greater;
      return std::strong_ordering::equal;
    }
    std::uint64_t da = 0, db = 0;
    for (std::size_t i = lo; i < hi; ++i) da += a[i], db += b[i];
    if (da != db) return da < db ? std::strong_ordering::less : std::strong_ordering::greater;
    for (std::size_t i = hi; i > lo; --i)
      if (a[i - 1] != b[i - 1]) return a[i - 1] > b[i - 1] ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  Kind kind_;
  std::vector<Var> front_, back_;
  Kind front_kind_, back_kind_;
};

class Poly {
 public:
  using Terms = std::map<Monomial, Rational>;

  Poly() = default;
  Poly(const Rational& c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) terms_.emplace(Monomial{}, c);
  }
  Poly(long c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  Poly(int c) : Poly(Rational(c)) {}   // NOLINT(google-explicit-constructor)
  Poly(Var v) { terms_.emplace(Monomial(v), Rational(1)); }  // NOLINT(google-explicit-constructor)
  Poly(const Monomial& m, const Rational& c) {
    if (c != 0) terms_.emplace(m, c);
  }

  static Poly w(int r, int t) { return Poly(Var::w(r, t)); }
  static Poly z(int j) { return Poly(Var::z(j)); }

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }
  Rational constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Rational(0) : it->second;
  }
  Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  std::uint64_t total_degree() const noexcept {
    std::uint64_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
    return d;
  }
  std::uint32_t degree(Var v) const noexcept {
    std::uint32_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree(v));
    return d;
  }
  bool contains(Var v) const noexcept { return degree(v) > 0; }

  std::vector<Var> variables() const {
    std::vector<Var> vs;
    for (const auto& [m, c] : terms_)
      for (const auto& [v, e] : m.entries()) vs.push_back(v);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
  }

  /// Leading monomial and coefficient under `order`; requires nonzero.
  std::pair<Monomial, Rational> leading_term(const MonomialOrder& order) const {
    if (terms_.empty()) throw DomainError("zero polynomial has no leading term");
    auto best = terms_.begin();
    for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
      if (order.less(best->first, it->first)) best = it;
    return *best;
  }

  void add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Poly& operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) {
    for (auto& [m, c] : a.terms_) c = -c;
    return a;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
    return out;
  }

  Poly scaled(const Rational& s) const {
    if (s == 0) return {};
    Poly out = *this;
    for (auto& [m, c] : out.terms_) c *= s;
    return out;
  }
  Poly times(const Monomial& m) const {
    Poly out;
    for (const auto& [mm, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), mm * m, c);
    return out;
  }

  friend bool operator==(const Poly&, const Poly&) = default;

  /// Terms listed from largest to smallest under `order` (grevlex by default).
  std::vector<std::pair<Monomial, Rational>> sorted_terms(const MonomialOrder& order = MonomialOrder::grevlex()) const {
    std::vector<std::pair<Monomial, Rational>> v(terms_.begin(), terms_.end());
    std::stable_sort(v.begin(), v.end(), [&](const auto& x, const auto& y) { return order.less(y.first, x.first); });
    return v;
  }

  std::string to_string(const MonomialOrder& order = MonomialOrder::grevlex()) const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : sorted_terms(order)) {
      Rational a = abs(c);
      if (first) {
        if (c < 0) s += "-";
      } else {
        s += c < 0 ? " - " : " + ";
      }
      first = false;
      if (m.is_one()) {
        s += a.get_str();
      } else {
        if (a != 1) s += a.get_str() + "*";
        s += m.to_string();
      }
    }
    return s;
  }

 private:
  Terms terms_;
};

inline Poly pow(const Poly& p, unsigned e) {
  Poly result(1);
  Poly base = p;
  while (e) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e) base *= base;
  }
  return result;
}

/// Simultaneous substitution of the bound variables.
inline Poly substitute(const Poly& p, const std::map<Var, Poly>& bindings) {
  std::map<std::pair<Var, std::uint32_t>, Poly> power_cache;
  auto power = [&](Var v, std::uint32_t e) -> const Poly& {
    auto key = std::make_pair(v, e);
    auto it = power_cache.find(key);
    if (it == power_cache.end()) it = power_cache.emplace(key, pow(bindings.at(v), e)).first;
    return it->second;
  };
  Poly out;
  for (const auto& [m, c] : p.terms()) {
    std::vector<Monomial::Entry> kept;
    Poly factor(c);
    for (const auto& [v, e] : m.entries()) {
      if (bindings.contains(v))
        factor *= power(v, e);
      else
        kept.emplace_back(v, e);
    }
    out += factor.times(Monomial::from_entries(std::move(kept)));
  }
  return out;
}

inline Poly substitute(const Poly& p, const std::map<Var, Rational>& values) {
  std::map<Var, Poly> b;
  for (const auto& [v, q] : values) b.emplace(v, Poly(q));
  return substitute(p, b);
}

/// Evaluates p at a point; every variable of p must be bound.
inline Rational evaluate(const Poly& p, const std::map<Var, Rational>& point) {
  Rational sum = 0;
  for (const auto& [m, c] : p.terms()) {
    Rational t = c;
    for (const auto& [v, e] : m.entries()) {
      auto it = point.find(v);
      if (it == point.end()) throw DomainError("evaluate: unbound variable " + v.to_string());
      Rational pw;
      mpz_pow_ui(pw.get_num_mpz_t(), it->second.get_num_mpz_t(), e);
      mpz_pow_ui(pw.get_den_mpz_t(), it->second.get_den_mpz_t(), e);
      t *= pw;
    }
    sum += t;
  }
  return sum;
}

inline Poly differentiate(const Poly& p, Var v) {
  Poly out;
  for (const auto& [m, c] : p.terms()) {
    std::uint32_t e = m.degree(v);
    if (e == 0) continue;
    std::vector<Monomial::Entry> entries = m.entries();
    for (auto& [u, f] : entries)
      if (u == v) --f;
    out.add_term(Monomial::from_entries(std::move(entries)), c * e);
  }
  return out;
}

/// Result of a weighted homogeneity test.
struct WeightedDegree {
  enum class Status { Zero, Homogeneous, NotHomogeneous };
  Status status = Status::Zero;
  long degree = 0;  // meaningful only when Homogeneous

  bool homogeneous() const noexcept { return status != Status::NotHomogeneous; }
  friend bool operator==(const WeightedDegree&, const WeightedDegree&) = default;
};

inline WeightedDegree weighted_degree(const Poly& p, const std::function<long(Var)>& weight) {
  WeightedDegree out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    long w = 0;
    for (const auto& [v, e] : m.entries()) w += weight(v) * static_cast<long>(e);
    if (first) {
      out = {WeightedDegree::Status::Homogeneous, w};
      first = false;
    } else if (w != out.degree) {
      return {WeightedDegree::Status::NotHomogeneous, 0};
    }
  }
  return out;
}

/// Scales p to coprime integer coefficients with a positive leading
/// coefficient under `order`. The zero polynomial is returned unchanged.
inline Poly primitive(const Poly& p, const MonomialOrder& order = MonomialOrder::grevlex()) {
  if (p.is_zero()) return p;
  Integer num_gcd = 0, den_lcm = 1;
  for (const auto& [m, c] : p.terms()) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (p.leading_term(order).second < 0) scale = -scale;
  return p.scaled(scale);
}

/// Primitive normalization followed by homogenization with `hvar` up to the
/// total degree of p.
inline Poly normalize_and_homogenize(const Poly& p, Var hvar) {
  if (p.contains(hvar)) throw DomainError("homogenizing variable already occurs in the polynomial");
  Poly q = primitive(p);
  const std::uint64_t top = q.total_degree();
  Poly out;
  for (const auto& [m, c] : q.terms())
    out.add_term(m * Monomial(hvar, static_cast<std::uint32_t>(top - m.total_degree())), c);
  return out;
}

}  // namespace crl
