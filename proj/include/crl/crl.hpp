#pragma once

// Coincident root loci X_lambda: defining ideals by elimination, membership,
// multiplicity partitions of binary forms, fibers of the multiplication map
// and the classification of singular strata.

#include <json.hpp>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "crl/errors.hpp"
#include "crl/gamma.hpp"
#include "crl/groebner.hpp"
#include "crl/partitions.hpp"
#include "crl/poly_json.hpp"
#include "crl/polyring.hpp"
#include "crl/theta.hpp"
#include "crl/univariate.hpp"

namespace crl {

inline constexpr const char* kEngineVersion = "crl-buchberger-1";

/// F(x,y) = sum_j a_j x^{d-j} y^j.
class BinaryForm {
 public:
  explicit BinaryForm(std::vector<Rational> coeffs) : a_(std::move(coeffs)) {
    if (a_.size() < 2) throw DomainError("binary form needs degree >= 1");
    if (std::all_of(a_.begin(), a_.end(), [](const Rational& q) { return q == 0; }))
      throw DomainError("the zero form is not a point of projective space");
  }
  int degree() const noexcept { return static_cast<int>(a_.size()) - 1; }
  const std::vector<Rational>& coeffs() const noexcept { return a_; }
  const Rational& operator[](int j) const { return a_.at(static_cast<std::size_t>(j)); }

  /// The point z_j = a_j.
  std::map<Var, Rational> as_point() const {
    std::map<Var, Rational> pt;
    for (std::size_t j = 0; j < a_.size(); ++j) pt.emplace(Var::z(static_cast<int>(j)), a_[j]);
    return pt;
  }

  /// Whether the two forms agree up to a nonzero scalar.
  bool proportional_to(const BinaryForm& o) const {
    if (o.a_.size() != a_.size()) return false;
    for (std::size_t i = 0; i < a_.size(); ++i)
      for (std::size_t k = i + 1; k < a_.size(); ++k)
        if (a_[i] * o.a_[k] != a_[k] * o.a_[i]) return false;
    for (std::size_t i = 0; i < a_.size(); ++i)
      if ((a_[i] == 0) != (o.a_[i] == 0)) return false;
    return true;
  }

 private:
  std::vector<Rational> a_;
};

/// u*x + v*y.
struct LinearForm {
  Rational u, v;
};

inline bool proportional(const LinearForm& a, const LinearForm& b) { return a.u * b.v == a.v * b.u; }

/// Coefficient vectors (index = power of y) of products of binary forms.
inline std::vector<Rational> multiply_coeffs(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) c[i + k] += a[i] * b[k];
  return c;
}

/// scalar * prod_i L_i^{m_i}, with pairwise non-proportional L_i.
class FactoredForm {
 public:
  FactoredForm(std::vector<std::pair<LinearForm, int>> factors, Rational scalar = 1)
      : factors_(std::move(factors)), scalar_(std::move(scalar)) {
    if (factors_.empty()) throw DomainError("factored form needs at least one factor");
    if (scalar_ == 0) throw DomainError("factored form needs a nonzero scalar");
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      const auto& [l, m] = factors_[i];
      if (m < 1) throw DomainError("factor multiplicities must be positive");
      if (l.u == 0 && l.v == 0) throw DomainError("zero linear factor");
      for (std::size_t k = 0; k < i; ++k)
        if (proportional(l, factors_[k].first)) throw DomainError("linear factors must be pairwise non-proportional");
    }
  }

  const std::vector<std::pair<LinearForm, int>>& factors() const noexcept { return factors_; }
  const Rational& scalar() const noexcept { return scalar_; }
  int degree() const {
    int d = 0;
    for (const auto& f : factors_) d += f.second;
    return d;
  }

  /// Multiplicities as a partition (the form's root-multiplicity partition).
  Partition multiplicities() const {
    std::vector<int> ms;
    for (const auto& f : factors_) ms.push_back(f.second);
    return Partition(ms);
  }

  BinaryForm expand() const {
    std::vector<Rational> c{scalar_};
    for (const auto& [l, m] : factors_)
      for (int k = 0; k < m; ++k) c = multiply_coeffs(c, {l.u, l.v});
    return BinaryForm(std::move(c));
  }

 private:
  std::vector<std::pair<LinearForm, int>> factors_;
  Rational scalar_;
};

/// Root multiplicities of F on the projective line, the point (1:0)
/// included, via Yun's decomposition of F(x,1).
inline Partition multiplicity_partition(const BinaryForm& f) {
  const int d = f.degree();
  std::vector<Rational> dehom(static_cast<std::size_t>(d) + 1);
  for (int j = 0; j <= d; ++j) dehom[static_cast<std::size_t>(d - j)] = f[j];
  const UPoly g(std::move(dehom));
  std::vector<int> parts;
  const int at_infinity = d - g.degree();
  if (at_infinity > 0) parts.push_back(at_infinity);
  const auto sqf = squarefree_decomposition(g);
  for (std::size_t i = 0; i < sqf.size(); ++i)
    parts.insert(parts.end(), static_cast<std::size_t>(sqf[i].degree()), static_cast<int>(i) + 1);
  return Partition(std::move(parts));
}

inline bool is_member(const BinaryForm& f, const Partition& lambda) {
  if (f.degree() != lambda.d())
    throw DomainError("form of degree " + std::to_string(f.degree()) + " vs partition of " + std::to_string(lambda.d()));
  return !splittings(multiplicity_partition(f), lambda).empty();
}

/// Whether every generator vanishes at the coefficient point of f.
inline bool vanishes_on(const std::vector<Poly>& gens, const BinaryForm& f) {
  const auto pt = f.as_point();
  return std::all_of(gens.begin(), gens.end(), [&](const Poly& g) { return evaluate(g, pt) == 0; });
}

/// Membership through splittings, cross-checked against the generators of
/// the ideal. A disagreement means the ideal is wrong and is reported as a
/// logic error.
inline bool is_member(const BinaryForm& f, const Partition& lambda, const std::vector<Poly>& ideal) {
  const bool combinatorial = is_member(f, lambda);
  if (combinatorial != vanishes_on(ideal, f))
    throw std::logic_error("membership disagreement between splittings and ideal for (" + lambda.to_string() + ")");
  return combinatorial;
}

/// A point of the parameter space: one form G_r of degree e_r per distinct
/// part r, each scaled so that its first nonzero coefficient is 1.
struct FiberPoint {
  std::map<int, std::vector<Rational>> forms;
  friend bool operator==(const FiberPoint&, const FiberPoint&) = default;
};

/// prod_r G_r^r.
inline BinaryForm fiber_image(const FiberPoint& p) {
  std::vector<Rational> c{Rational(1)};
  for (const auto& [r, g] : p.forms)
    for (int k = 0; k < r; ++k) c = multiply_coeffs(c, g);
  return BinaryForm(std::move(c));
}

/// The preimages of F under (G_r) -> prod G_r^r, one per splitting of F's
/// multiplicity partition into lambda. Empty when that partition is not a
/// coarsening of lambda.
inline std::vector<FiberPoint> fiber_points(const FactoredForm& f, const Partition& lambda) {
  if (f.degree() != lambda.d()) throw DomainError("degree mismatch between form and partition");
  const auto& factors = f.factors();
  // slot k of mu corresponds to the factor order[k]
  std::vector<std::size_t> order(factors.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return factors[a].second > factors[b].second; });
  const Partition mu = f.multiplicities();

  std::vector<FiberPoint> out;
  for (const auto& s : splittings(mu, lambda)) {
    FiberPoint pt;
    for (int r : lambda.distinct_parts()) {
      std::vector<Rational> g{Rational(1)};
      for (std::size_t k = 0; k < s.blocks.size(); ++k) {
        const auto& l = factors[order[k]].first;
        for (int part : s.blocks[k].parts())
          if (part == r) g = multiply_coeffs(g, {l.u, l.v});
      }
      auto pivot = std::find_if(g.begin(), g.end(), [](const Rational& q) { return q != 0; });
      const Rational inv = 1 / *pivot;
      for (auto& q : g) q *= inv;
      pt.forms.emplace(r, std::move(g));
    }
    out.push_back(std::move(pt));
  }
  return out;
}

inline StratumLabel classify_point(const Partition& mu, const Partition& lambda) {
  if (splittings(mu, lambda).empty())
    throw DomainError("form with multiplicities (" + mu.to_string() + ") is not in X_(" + lambda.to_string() + ")");
  return classify_stratum(lambda, mu);
}

inline StratumLabel classify_point(const FactoredForm& f, const Partition& lambda) {
  if (f.degree() != lambda.d()) throw DomainError("degree mismatch between form and partition");
  return classify_point(f.multiplicities(), lambda);
}

inline StratumLabel classify_point(const BinaryForm& f, const Partition& lambda) {
  if (f.degree() != lambda.d()) throw DomainError("degree mismatch between form and partition");
  return classify_point(multiplicity_partition(f), lambda);
}

inline bool is_smooth(const Partition& lambda) { return is_even(lambda); }

/// The affine generators z_j - theta_{j,0}, j = 1..d, on the chart 0
/// (where theta_{0,0} = 1).
inline std::vector<Poly> origin_chart_generators(const Partition& lambda) {
  const auto thetas = theta_chart_all(lambda, ChartIndex::origin(lambda));
  std::vector<Poly> gens;
  for (int j = 1; j <= lambda.d(); ++j) gens.push_back(Poly::z(j) - thetas[static_cast<std::size_t>(j)]);
  return gens;
}

/// Generators of I(X_lambda) in Q[z_0..z_d]: the W coordinates are
/// eliminated from the chart-0 generators and the resulting Groebner basis
/// (graded in z) is homogenized in z_0.
inline std::vector<Poly> ideal_of_X(const Partition& lambda, const GroebnerLimits& limits = {},
                                    GroebnerStats* stats = nullptr) {
  const auto gens = origin_chart_generators(lambda);
  const auto drop = chart_coordinates(lambda, ChartIndex::origin(lambda));
  EliminationOptions opts;
  opts.limits = limits;
  // the generators are quasi-homogeneous for weight(z_j) = j, weight(W(r,t)) = t
  for (Var v : drop) opts.weights.emplace(v, static_cast<std::uint64_t>(v.t()));
  for (int j = 1; j <= lambda.d(); ++j) opts.weights.emplace(Var::z(j), static_cast<std::uint64_t>(j));
  std::vector<Poly> out;
  for (const auto& g : eliminate(gens, drop, opts, stats)) out.push_back(normalize_and_homogenize(g, Var::z(0)));
  return out;
}

inline nlohmann::json ideal_to_json(const Partition& lambda, const std::vector<Poly>& gens) {
  return {{"schema", "crl.ideal/1"},
          {"engine", kEngineVersion},
          {"partition", lambda.parts()},
          {"generators", polys_to_json(gens)}};
}

/// Disk cache of ideal_of_X results: <dir>/ideal_<parts joined by '-'>.json,
/// keyed by partition and engine version, written by atomic rename.
class IdealCache {
 public:
  explicit IdealCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  std::filesystem::path path_for(const Partition& lambda) const {
    return dir_ / ("ideal_" + lambda.to_string('-') + ".json");
  }

  std::optional<std::vector<Poly>> load(const Partition& lambda) const {
    std::ifstream in(path_for(lambda));
    if (!in) return std::nullopt;
    try {
      const auto j = nlohmann::json::parse(in);
      if (j.value("engine", "") != kEngineVersion) return std::nullopt;
      if (j.at("partition").get<std::vector<int>>() != lambda.parts()) return std::nullopt;
      return polys_from_json(j.at("generators"));
    } catch (const std::exception&) {
      return std::nullopt;  // unreadable entries are recomputed
    }
  }

  void store(const Partition& lambda, const std::vector<Poly>& gens) const {
    std::filesystem::create_directories(dir_);
    static std::atomic<unsigned> counter{0};
    const auto final_path = path_for(lambda);
    std::ostringstream tmp_name;
    tmp_name << final_path.filename().string() << ".tmp." << std::hash<std::thread::id>{}(std::this_thread::get_id())
             << "." << counter++;
    const auto tmp = dir_ / tmp_name.str();
    {
      std::ofstream out(tmp);
      out << ideal_to_json(lambda, gens).dump(1) << '\n';
      if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
    }
    std::filesystem::rename(tmp, final_path);
  }

  std::vector<Poly> get_or_compute(const Partition& lambda, const GroebnerLimits& limits = {}) const {
    if (auto hit = load(lambda)) return *hit;
    auto gens = ideal_of_X(lambda, limits);
    store(lambda, gens);
    return gens;
  }

 private:
  std::filesystem::path dir_;
};

/// Nodes and labeled edges of the stratification diagram for degree d.
struct SingularDiagram {
  struct Node {
    Partition partition;
    int dimension;
  };
  struct Edge {
    Partition upper;  // lambda
    Partition lower;  // mu, a proper coarsening
    StratumLabel label;
  };
  int d = 0;
  std::vector<Node> nodes;  // finest first
  std::vector<Edge> edges;

  const Edge* find(const Partition& upper, const Partition& lower) const {
    for (const auto& e : edges)
      if (e.upper == upper && e.lower == lower) return &e;
    return nullptr;
  }
};

inline SingularDiagram singular_diagram(int d) {
  if (d < 1) throw DomainError("diagram degree must be positive");
  SingularDiagram diag;
  diag.d = d;
  auto parts = all_partitions(d);
  std::reverse(parts.begin(), parts.end());
  for (const auto& lambda : parts) {
    diag.nodes.push_back({lambda, lambda.num_parts()});
    auto coarse = coarsenings(lambda, true);
    std::vector<Partition> lower(coarse.rbegin(), coarse.rend());
    for (const auto& mu : lower) diag.edges.push_back({lambda, mu, classify_stratum(lambda, mu)});
  }
  return diag;
}

inline std::string paren(const Partition& p) { return "(" + p.to_string() + ")"; }

inline std::string diagram_to_text(const SingularDiagram& diag) {
  std::ostringstream os;
  os << "singular strata for d = " << diag.d << "\n";
  for (const auto& node : diag.nodes) {
    os << paren(node.partition) << "  dim " << node.dimension << (is_even(node.partition) ? "  smooth" : "  singular")
       << "\n";
    for (const auto& e : diag.edges) {
      if (!(e.upper == node.partition)) continue;
      os << "  -> " << paren(e.lower) << "  ";
      if (e.label.nonsingular)
        os << "dashed";
      else
        os << "singular " << e.label.label();
      os << "  (fibers " << e.label.fiber_count << ")\n";
    }
  }
  return os.str();
}

inline nlohmann::json diagram_to_json(const SingularDiagram& diag) {
  nlohmann::json nodes = nlohmann::json::array(), edges = nlohmann::json::array();
  for (const auto& n : diag.nodes)
    nodes.push_back({{"partition", n.partition.parts()}, {"dim", n.dimension}, {"smooth", is_even(n.partition)}});
  for (const auto& e : diag.edges)
    edges.push_back({{"from", e.upper.parts()},
                     {"to", e.lower.parts()},
                     {"fiber_count", e.label.fiber_count},
                     {"tangent_degenerate", e.label.tangent_degenerate},
                     {"nonsingular", e.label.nonsingular},
                     {"label", e.label.label()}});
  return {{"schema", "crl.diagram/1"}, {"d", diag.d}, {"nodes", nodes}, {"edges", edges}};
}

/// Graphviz rendering: one rank per dimension, dashed edges for nonsingular
/// strata, dot-headed labeled edges for singular ones.
inline std::string diagram_to_dot(const SingularDiagram& diag) {
  auto id = [](const Partition& p) { return "\"" + p.to_string() + "\""; };
  std::ostringstream os;
  os << "digraph crl_" << diag.d << " {\n";
  os << "  rankdir=TB;\n  node [shape=plaintext];\n";
  for (int dim = diag.d; dim >= 1; --dim) {
    os << "  { rank=same;";
    for (const auto& n : diag.nodes)
      if (n.dimension == dim) os << " " << id(n.partition) << ";";
    os << " }\n";
  }
  for (const auto& n : diag.nodes) os << "  " << id(n.partition) << " [label=\"" << paren(n.partition) << "\"];\n";
  for (const auto& e : diag.edges) {
    os << "  " << id(e.upper) << " -> " << id(e.lower);
    if (e.label.nonsingular)
      os << " [style=dashed, arrowhead=none];\n";
    else
      os << " [arrowhead=dot, label=\"" << e.label.label() << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace crl
