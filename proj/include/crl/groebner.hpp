#pragma once

// Buchberger's algorithm over the rationals, with Gebauer-Moeller pair
// criteria and the normal selection strategy, plus normal forms and
// elimination ideals.
//
// Internally polynomials live in a dense-exponent representation over the
// variables that actually occur, with primitive integer coefficients;
// reductions are fraction-free.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "crl/errors.hpp"
#include "crl/polyring.hpp"

namespace crl {

struct GroebnerLimits {
  std::uint64_t max_pairs = 1'000'000;
  std::uint64_t max_terms = 10'000'000;
};

/// Positive integer weights for S-pair selection; unlisted variables weigh 1.
/// When every input is quasi-homogeneous under the weights, pairs are taken
/// by the weighted degree of their lcm, so the computation proceeds degree
/// by degree. Otherwise the smallest lcm in the monomial order goes first.
using SelectionWeights = std::map<Var, std::uint64_t>;

struct GroebnerStats {
  std::uint64_t pairs_considered = 0;
  std::uint64_t pairs_reduced = 0;
  std::uint64_t zero_reductions = 0;
  std::uint64_t basis_size = 0;
};

struct IdealBasis {
  std::vector<Poly> gens;
  MonomialOrder order = MonomialOrder::grevlex();
  bool is_groebner = false;
};

namespace detail {

using Exp = std::uint16_t;

/// The variables of a computation ranked by a monomial order.
class Ring {
 public:
  Ring(const MonomialOrder& order, const std::vector<Var>& present) : order_(order) {
    auto [ranked, split] = order.arrange(present);
    std::set<Var> have(present.begin(), present.end());
    for (std::size_t i = 0; i < ranked.size(); ++i) {
      if (!have.contains(ranked[i])) continue;
      if (i < split) ++split_;
      vars_.push_back(ranked[i]);
    }
    if (order.kind() != MonomialOrder::Kind::Block) split_ = vars_.size();
    for (std::size_t i = 0; i < vars_.size(); ++i) index_.emplace(vars_[i], i);
  }

  std::size_t n() const noexcept { return vars_.size(); }
  std::size_t split() const noexcept { return split_; }
  const std::vector<Var>& vars() const noexcept { return vars_; }
  std::size_t index(Var v) const { return index_.at(v); }
  bool has(Var v) const { return index_.contains(v); }

  std::strong_ordering cmp(const Exp* a, const Exp* b) const {
    return order_.compare_dense(a, b, vars_.size(), split_);
  }

 private:
  const MonomialOrder& order_;
  std::vector<Var> vars_;
  std::map<Var, std::size_t> index_;
  std::size_t split_ = 0;
};

/// Terms sorted from largest to smallest; exponents stored row-major.
struct DPoly {
  std::vector<Exp> exps;
  std::vector<Integer> coefs;

  std::size_t size() const noexcept { return coefs.size(); }
  bool empty() const noexcept { return coefs.empty(); }
  const Exp* exp(std::size_t i, std::size_t n) const { return exps.data() + i * n; }
};

inline std::uint64_t degree_of(const Exp* e, std::size_t n) {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < n; ++i) s += e[i];
  return s;
}

inline bool divides(const Exp* a, const Exp* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline std::uint64_t divmask(const Exp* e, std::size_t n) {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (e[i]) m |= std::uint64_t{1} << (i % 64);
  return m;
}

inline void add_exps(const Exp* a, const Exp* b, Exp* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const unsigned s = unsigned{a[i]} + unsigned{b[i]};
    if (s > std::numeric_limits<Exp>::max()) throw ResourceError("exponent overflow in Groebner engine");
    out[i] = static_cast<Exp>(s);
  }
}

inline Integer content(const DPoly& p) {
  Integer g = 0;
  for (const auto& c : p.coefs) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

/// Divides by the content and makes the leading coefficient positive.
inline void make_primitive(DPoly& p) {
  if (p.empty()) return;
  Integer g = content(p);
  if (p.coefs[0] < 0) g = -g;
  if (g != 1)
    for (auto& c : p.coefs) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

inline DPoly to_dense(const Poly& p, const Ring& ring, Rational* scale_out = nullptr) {
  const std::size_t n = ring.n();
  Integer den = 1;
  for (const auto& [m, c] : p.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  struct Row {
    std::vector<Exp> e;
    Integer c;
  };
  std::vector<Row> rows;
  rows.reserve(p.size());
  for (const auto& [m, c] : p.terms()) {
    Row row{std::vector<Exp>(n, 0), Integer(c * den)};
    for (const auto& [v, e] : m.entries()) {
      if (e > std::numeric_limits<Exp>::max()) throw ResourceError("exponent too large for Groebner engine");
      row.e[ring.index(v)] = static_cast<Exp>(e);
    }
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(), [&](const Row& a, const Row& b) { return ring.cmp(a.e.data(), b.e.data()) > 0; });
  DPoly out;
  out.exps.reserve(rows.size() * n);
  for (auto& r : rows) {
    out.exps.insert(out.exps.end(), r.e.begin(), r.e.end());
    out.coefs.push_back(std::move(r.c));
  }
  if (scale_out) *scale_out = Rational(den);
  return out;
}

inline Poly from_dense(const DPoly& p, const Ring& ring, const Rational& divisor = Rational(1)) {
  const std::size_t n = ring.n();
  Poly out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::vector<Monomial::Entry> entries;
    const Exp* e = p.exp(i, n);
    for (std::size_t k = 0; k < n; ++k)
      if (e[k]) entries.emplace_back(ring.vars()[k], e[k]);
    out.add_term(Monomial::from_entries(std::move(entries)), Rational(p.coefs[i]) / divisor);
  }
  return out;
}

/// Computes a*p - b*shift*g where the leading terms are known to cancel;
/// the leading terms of both operands are skipped.
inline DPoly combine_skip_lead(const DPoly& p, const Integer& a, const DPoly& g, const Integer& b, const Exp* shift,
                               const Ring& ring, std::size_t p_start = 0) {
  const std::size_t n = ring.n();
  DPoly out;
  out.exps.reserve((p.size() + g.size()) * n);
  out.coefs.reserve(p.size() + g.size());
  std::vector<Exp> buf(n);
  std::size_t i = p_start + 1, j = 1;
  bool have_shifted = false;
  auto load = [&] {
    if (j < g.size()) {
      add_exps(g.exp(j, n), shift, buf.data(), n);
      have_shifted = true;
    } else {
      have_shifted = false;
    }
  };
  load();
  Integer tmp;
  while (i < p.size() || have_shifted) {
    int c;
    if (i >= p.size())
      c = -1;
    else if (!have_shifted)
      c = 1;
    else {
      auto o = ring.cmp(p.exp(i, n), buf.data());
      c = o > 0 ? 1 : (o < 0 ? -1 : 0);
    }
    if (c > 0) {
      out.exps.insert(out.exps.end(), p.exp(i, n), p.exp(i, n) + n);
      out.coefs.push_back(a == 1 ? p.coefs[i] : Integer(a * p.coefs[i]));
      ++i;
    } else if (c < 0) {
      out.exps.insert(out.exps.end(), buf.begin(), buf.end());
      out.coefs.push_back(Integer(-(b * g.coefs[j])));
      ++j;
      load();
    } else {
      tmp = a * p.coefs[i];
      mpz_submul(tmp.get_mpz_t(), b.get_mpz_t(), g.coefs[j].get_mpz_t());
      if (tmp != 0) {
        out.exps.insert(out.exps.end(), buf.begin(), buf.end());
        out.coefs.push_back(tmp);
      }
      ++i, ++j;
      load();
    }
  }
  return out;
}

struct Reducer {
  const DPoly* poly;
  std::uint64_t mask;
};

/// Full reduction of p modulo the reducers. When `scale` is given, it is
/// updated so that (returned remainder) = scale * (p - ideal element),
/// starting from its incoming value.
inline DPoly reduce(DPoly p, const std::vector<Reducer>& reducers, const Ring& ring, const GroebnerLimits& limits,
                    Rational* scale = nullptr) {
  const std::size_t n = ring.n();
  DPoly rem;
  std::vector<Exp> shift(n);
  std::size_t steps = 0;
  std::size_t start = 0;  // p's terms before `start` have moved to rem
  auto content_from = [&](const DPoly& q, std::size_t from) {
    Integer g = 0;
    for (std::size_t k = from; k < q.size() && g != 1; ++k) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.coefs[k].get_mpz_t());
    return g;
  };
  while (start < p.size()) {
    const Exp* lead = p.exp(start, n);
    const std::uint64_t lmask = divmask(lead, n);
    const DPoly* g = nullptr;
    for (const auto& r : reducers) {
      if ((r.mask & ~lmask) != 0) continue;
      if (divides(r.poly->exp(0, n), lead, n)) {
        g = r.poly;
        break;
      }
    }
    if (!g) {
      rem.exps.insert(rem.exps.end(), lead, lead + n);
      rem.coefs.push_back(std::move(p.coefs[start]));
      ++start;
      continue;
    }
    const Exp* glead = g->exp(0, n);
    for (std::size_t k = 0; k < n; ++k) shift[k] = static_cast<Exp>(lead[k] - glead[k]);
    Integer gg;
    mpz_gcd(gg.get_mpz_t(), p.coefs[start].get_mpz_t(), g->coefs[0].get_mpz_t());
    Integer a = g->coefs[0] / gg;
    Integer b = p.coefs[start] / gg;
    if (a < 0) a = -a, b = -b;
    p = combine_skip_lead(p, a, *g, b, shift.data(), ring, start);
    start = 0;
    if (a != 1) {
      for (auto& c : rem.coefs) c *= a;
      if (scale) *scale *= a;
    }
    if (p.size() + rem.size() > limits.max_terms)
      throw ResourceError("term cap exceeded during reduction (" + std::to_string(p.size() + rem.size()) + " terms)");
    if (++steps % 32 == 0 && !rem.empty()) {
      Integer g1 = content_from(p, 0);
      mpz_gcd(g1.get_mpz_t(), g1.get_mpz_t(), content_from(rem, 0).get_mpz_t());
      if (g1 > 1) {
        for (auto& c : p.coefs) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g1.get_mpz_t());
        for (auto& c : rem.coefs) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g1.get_mpz_t());
        if (scale) *scale /= g1;
      }
    } else if (steps % 32 == 0) {
      Integer g1 = content_from(p, 0);
      if (g1 > 1) {
        for (auto& c : p.coefs) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g1.get_mpz_t());
        if (scale) *scale /= g1;
      }
    }
  }
  return rem;
}

inline std::vector<Var> collect_vars(const std::vector<const Poly*>& polys) {
  std::vector<Var> vs;
  for (const Poly* p : polys)
    for (Var v : p->variables()) vs.push_back(v);
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

class Engine {
 public:
  Engine(const Ring& ring, const GroebnerLimits& limits, const SelectionWeights& weights = {})
      : ring_(ring), limits_(limits), weights_(ring.n(), 1) {
    for (const auto& [v, w] : weights) {
      if (w == 0) throw DomainError("selection weights must be positive");
      if (ring.has(v)) weights_[ring.index(v)] = w;
    }
  }

  void run(std::vector<DPoly> input) {
    for (auto& p : input) {
      make_primitive(p);
      by_degree_ = by_degree_ && homogeneous(p);
      if (!p.empty()) pending_.push_back(std::move(p));
    }
    // Reduce the inputs against each other before entering the pair loop,
    // smallest leading monomial first.
    std::sort(pending_.begin(), pending_.end(),
              [&](const DPoly& a, const DPoly& b) { return ring_.cmp(a.exp(0, n()), b.exp(0, n())) < 0; });
    for (auto& p : pending_) {
      DPoly h = reduce(std::move(p), reducers(), ring_, limits_);
      make_primitive(h);
      if (!h.empty()) insert(std::move(h));
    }
    pending_.clear();

    while (!pairs_.empty()) {
      auto best = select_pair();
      Pair pr = pairs_[best];
      pairs_.erase(pairs_.begin() + static_cast<std::ptrdiff_t>(best));
      if (++stats_.pairs_reduced > limits_.max_pairs)
        throw ResourceError("S-pair cap of " + std::to_string(limits_.max_pairs) + " exceeded");
      DPoly s = spoly(polys_[pr.i], polys_[pr.j]);
      DPoly h = reduce(std::move(s), reducers(), ring_, limits_);
      make_primitive(h);
      if (h.empty()) {
        ++stats_.zero_reductions;
        continue;
      }
      insert(std::move(h));
    }
  }

  /// Reduced basis: minimal leading terms, tails fully reduced, primitive,
  /// ascending by leading monomial.
  std::vector<DPoly> reduced_basis() const {
    std::vector<const DPoly*> minimal;
    for (std::size_t i = 0; i < polys_.size(); ++i) {
      if (!active_[i]) continue;
      bool redundant = false;
      for (std::size_t k = 0; k < polys_.size() && !redundant; ++k) {
        if (k == i || !active_[k]) continue;
        if (divides(polys_[k].exp(0, n()), polys_[i].exp(0, n()), n())) {
          // equal leading monomials cannot both be active, keep the lower index
          redundant = ring_.cmp(polys_[k].exp(0, n()), polys_[i].exp(0, n())) != 0 || k < i;
        }
      }
      if (!redundant) minimal.push_back(&polys_[i]);
    }
    std::vector<DPoly> out;
    for (const DPoly* p : minimal) {
      std::vector<Reducer> others;
      for (const DPoly* q : minimal)
        if (q != p) others.push_back({q, divmask(q->exp(0, n()), n())});
      // the leading term is irreducible by the others; reduce the tail
      DPoly tail;
      tail.exps.assign(p->exps.begin() + static_cast<std::ptrdiff_t>(n()), p->exps.end());
      tail.coefs.assign(p->coefs.begin() + 1, p->coefs.end());
      Rational scale = 1;
      DPoly red = reduce(std::move(tail), others, ring_, limits_, &scale);
      // p_reduced = lc * scale * lm + red  (all scaled by `scale`)
      DPoly full;
      full.exps.assign(p->exps.begin(), p->exps.begin() + static_cast<std::ptrdiff_t>(n()));
      Rational lead = Rational(p->coefs[0]) * scale;
      Integer dens = lead.get_den();
      full.coefs.push_back(lead.get_num());
      for (auto& c : red.coefs) c *= dens;
      full.exps.insert(full.exps.end(), red.exps.begin(), red.exps.end());
      for (auto& c : red.coefs) full.coefs.push_back(std::move(c));
      make_primitive(full);
      out.push_back(std::move(full));
    }
    std::sort(out.begin(), out.end(),
              [&](const DPoly& a, const DPoly& b) { return ring_.cmp(a.exp(0, n()), b.exp(0, n())) < 0; });
    return out;
  }

  const GroebnerStats& stats() const noexcept { return stats_; }

 private:
  struct Pair {
    std::size_t i, j;
    std::vector<Exp> lcm;
    std::uint64_t degree;
  };

  std::size_t n() const noexcept { return ring_.n(); }

  /// Active elements, smallest leading monomial first.
  std::vector<Reducer> reducers() const {
    std::vector<Reducer> rs;
    for (std::size_t i = 0; i < polys_.size(); ++i)
      if (active_[i]) rs.push_back({&polys_[i], masks_[i]});
    std::sort(rs.begin(), rs.end(),
              [&](const Reducer& x, const Reducer& y) { return ring_.cmp(x.poly->exp(0, n()), y.poly->exp(0, n())) < 0; });
    return rs;
  }

  std::vector<Exp> lcm_of(std::size_t a, std::size_t b) const {
    std::vector<Exp> l(n());
    const Exp* x = polys_[a].exp(0, n());
    const Exp* y = polys_[b].exp(0, n());
    for (std::size_t k = 0; k < n(); ++k) l[k] = std::max(x[k], y[k]);
    return l;
  }

  bool coprime(std::size_t a, std::size_t b) const {
    const Exp* x = polys_[a].exp(0, n());
    const Exp* y = polys_[b].exp(0, n());
    for (std::size_t k = 0; k < n(); ++k)
      if (x[k] && y[k]) return false;
    return true;
  }

  std::size_t select_pair() const {
    std::size_t best = 0;
    for (std::size_t k = 1; k < pairs_.size(); ++k) {
      const auto& a = pairs_[k];
      const auto& b = pairs_[best];
      if (by_degree_ && a.degree != b.degree) {
        if (a.degree < b.degree) best = k;
      } else if (ring_.cmp(a.lcm.data(), b.lcm.data()) < 0) {
        best = k;
      }
    }
    return best;
  }

  DPoly spoly(const DPoly& f, const DPoly& g) const {
    const std::size_t nn = n();
    std::vector<Exp> sf(nn), sg(nn);
    const Exp* lf = f.exp(0, nn);
    const Exp* lg = g.exp(0, nn);
    for (std::size_t k = 0; k < nn; ++k) {
      const Exp l = std::max(lf[k], lg[k]);
      sf[k] = static_cast<Exp>(l - lf[k]);
      sg[k] = static_cast<Exp>(l - lg[k]);
    }
    Integer gg;
    mpz_gcd(gg.get_mpz_t(), f.coefs[0].get_mpz_t(), g.coefs[0].get_mpz_t());
    const Integer a = g.coefs[0] / gg;  // multiplies sf*f
    const Integer b = f.coefs[0] / gg;  // multiplies sg*g
    // shift f by sf first, then combine
    DPoly fs;
    fs.exps.resize(f.exps.size());
    fs.coefs = f.coefs;
    for (std::size_t i = 0; i < f.size(); ++i) add_exps(f.exp(i, nn), sf.data(), fs.exps.data() + i * nn, nn);
    return combine_skip_lead(fs, a, g, b, sg.data(), ring_);
  }

  std::uint64_t weight(const Exp* e) const {
    std::uint64_t w = 0;
    for (std::size_t k = 0; k < n(); ++k) w += weights_[k] * e[k];
    return w;
  }

  bool homogeneous(const DPoly& p) const {
    for (std::size_t i = 1; i < p.size(); ++i)
      if (weight(p.exp(i, n())) != weight(p.exp(0, n()))) return false;
    return true;
  }

  /// Adds h to the basis and updates the pair set (Gebauer-Moeller).
  void insert(DPoly h) {
    const std::size_t nn = n();
    const std::size_t t = polys_.size();
    polys_.push_back(std::move(h));
    masks_.push_back(divmask(polys_[t].exp(0, nn), nn));
    active_.push_back(true);
    std::uint64_t total_terms = 0;
    for (std::size_t i = 0; i < polys_.size(); ++i)
      if (active_[i]) total_terms += polys_[i].size();
    if (total_terms > limits_.max_terms)
      throw ResourceError("term cap exceeded by basis (" + std::to_string(total_terms) + " terms)");

    const Exp* ht = polys_[t].exp(0, nn);

    // Drop old pairs whose lcm is divisible by lm(h) strictly (B criterion).
    std::erase_if(pairs_, [&](const Pair& p) {
      if (!divides(ht, p.lcm.data(), nn)) return false;
      auto li = lcm_of(p.i, t);
      auto lj = lcm_of(p.j, t);
      return li != p.lcm && lj != p.lcm;
    });

    // Candidate new pairs (h, g) for active g.
    struct Cand {
      std::size_t g;
      std::vector<Exp> lcm;
      bool coprime;
    };
    std::vector<Cand> cands;
    for (std::size_t g = 0; g < t; ++g) {
      if (!active_[g]) continue;
      cands.push_back({g, lcm_of(g, t), coprime(g, t)});
    }
    // M criterion: discard (h,g) if some other candidate lcm properly divides it.
    std::vector<bool> keep(cands.size(), true);
    for (std::size_t a = 0; a < cands.size(); ++a) {
      for (std::size_t b = 0; b < cands.size(); ++b) {
        if (a == b || !keep[b]) continue;
        if (divides(cands[b].lcm.data(), cands[a].lcm.data(), nn) && cands[b].lcm != cands[a].lcm) {
          keep[a] = false;
          break;
        }
      }
    }
    // F criterion: among equal lcms keep one, preferring a coprime one.
    for (std::size_t a = 0; a < cands.size(); ++a) {
      if (!keep[a]) continue;
      for (std::size_t b = a + 1; b < cands.size(); ++b) {
        if (!keep[b] || cands[b].lcm != cands[a].lcm) continue;
        if (cands[b].coprime && !cands[a].coprime) {
          keep[a] = false;
          break;
        }
        keep[b] = false;
      }
    }
    for (std::size_t a = 0; a < cands.size(); ++a) {
      if (!keep[a]) continue;
      ++stats_.pairs_considered;
      if (cands[a].coprime) continue;  // product criterion
      const std::uint64_t deg = weight(cands[a].lcm.data());
      pairs_.push_back({cands[a].g, t, std::move(cands[a].lcm), deg});
    }

    // Older elements whose leading monomial is divisible by lm(h) stop being
    // reducers or pair partners.
    for (std::size_t g = 0; g < t; ++g)
      if (active_[g] && divides(ht, polys_[g].exp(0, nn), nn)) active_[g] = false;
    stats_.basis_size = polys_.size();
  }

  const Ring& ring_;
  GroebnerLimits limits_;
  std::vector<std::uint64_t> weights_;
  bool by_degree_ = true;
  std::vector<DPoly> pending_;
  std::vector<DPoly> polys_;
  std::vector<std::uint64_t> masks_;
  std::vector<bool> active_;
  std::vector<Pair> pairs_;
  GroebnerStats stats_;
};

}  // namespace detail

/// Reduced Groebner basis of the ideal generated by `gens`.
inline IdealBasis buchberger(const std::vector<Poly>& gens, const MonomialOrder& order,
                             const GroebnerLimits& limits = {}, GroebnerStats* stats = nullptr,
                             const SelectionWeights& weights = {}) {
  std::vector<const Poly*> ptrs;
  for (const auto& g : gens) ptrs.push_back(&g);
  detail::Ring ring(order, detail::collect_vars(ptrs));
  std::vector<detail::DPoly> input;
  for (const auto& g : gens)
    if (!g.is_zero()) input.push_back(detail::to_dense(g, ring));
  detail::Engine engine(ring, limits, weights);
  engine.run(std::move(input));
  IdealBasis out{{}, order, true};
  for (const auto& p : engine.reduced_basis()) out.gens.push_back(detail::from_dense(p, ring));
  if (stats) *stats = engine.stats();
  return out;
}

/// Remainder of p on division by the basis: no term of the result is
/// divisible by a leading monomial of the basis, and p - result lies in the
/// ideal. Exact over the rationals.
inline Poly normal_form(const Poly& p, const IdealBasis& basis, const GroebnerLimits& limits = {}) {
  if (basis.gens.empty()) throw DomainError("normal_form needs a nonempty basis");
  std::vector<const Poly*> ptrs{&p};
  for (const auto& g : basis.gens) ptrs.push_back(&g);
  detail::Ring ring(basis.order, detail::collect_vars(ptrs));
  std::vector<detail::DPoly> dense;
  for (const auto& g : basis.gens) {
    if (g.is_zero()) continue;
    dense.push_back(detail::to_dense(g, ring));
    detail::make_primitive(dense.back());
  }
  std::vector<detail::Reducer> reducers;
  for (const auto& d : dense) reducers.push_back({&d, detail::divmask(d.exp(0, ring.n()), ring.n())});
  Rational scale;
  detail::DPoly dp = detail::to_dense(p, ring, &scale);
  detail::DPoly rem = detail::reduce(std::move(dp), reducers, ring, limits, &scale);
  return detail::from_dense(rem, ring, scale);
}

/// The S-polynomial of f and g under `order`, over the rationals.
inline Poly s_polynomial(const Poly& f, const Poly& g, const MonomialOrder& order) {
  auto [mf, cf] = f.leading_term(order);
  auto [mg, cg] = g.leading_term(order);
  const Monomial l = Monomial::lcm(mf, mg);
  return f.times(l.quotient(mf)).scaled(1 / cf) - g.times(l.quotient(mg)).scaled(1 / cg);
}

/// Buchberger's criterion: every S-polynomial of basis pairs reduces to 0.
inline bool verify_groebner(const IdealBasis& basis, const GroebnerLimits& limits = {}) {
  for (std::size_t i = 0; i < basis.gens.size(); ++i)
    for (std::size_t j = i + 1; j < basis.gens.size(); ++j)
      if (!normal_form(s_polynomial(basis.gens[i], basis.gens[j], basis.order), basis, limits).is_zero())
        return false;
  return true;
}

/// Elimination order used by eliminate(): drop_vars greatest. With
/// use_lex, a pure lex order with drop_vars first; otherwise a block order
/// with grevlex in each block.
inline MonomialOrder elimination_order(const std::vector<Var>& drop_vars, const std::vector<Var>& keep_vars,
                                       bool use_lex = false) {
  if (use_lex) {
    std::vector<Var> all = drop_vars;
    all.insert(all.end(), keep_vars.begin(), keep_vars.end());
    return MonomialOrder::lex(std::move(all));
  }
  return MonomialOrder::block(drop_vars, keep_vars);
}

struct EliminationOptions {
  bool use_lex = false;
  GroebnerLimits limits{};
  SelectionWeights weights{};
};

/// Generators of the intersection of <gens> with the subring free of
/// drop_vars: the members of the reduced basis under an elimination order
/// that avoid every dropped variable.
inline std::vector<Poly> eliminate(const std::vector<Poly>& gens, const std::vector<Var>& drop_vars,
                                   const EliminationOptions& opts = {}, GroebnerStats* stats = nullptr) {
  std::vector<const Poly*> ptrs;
  for (const auto& g : gens) ptrs.push_back(&g);
  std::vector<Var> all = detail::collect_vars(ptrs);
  std::vector<Var> drop(drop_vars.begin(), drop_vars.end());
  std::sort(drop.begin(), drop.end());
  std::vector<Var> keep;
  std::set_difference(all.begin(), all.end(), drop.begin(), drop.end(), std::back_inserter(keep));
  const MonomialOrder order = elimination_order(drop, keep, opts.use_lex);
  const IdealBasis gb = buchberger(gens, order, opts.limits, stats, opts.weights);
  std::vector<Poly> out;
  for (const auto& g : gb.gens) {
    bool free = std::none_of(drop.begin(), drop.end(), [&](Var v) { return g.contains(v); });
    if (free) out.push_back(primitive(g, MonomialOrder::grevlex(keep)));
  }
  return out;
}

}  // namespace crl
