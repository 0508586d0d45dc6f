#pragma once

// Property suites runnable from the command line. Each suite returns one
// result per property with a short failure description.

#include <chrono>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "crl/crl.hpp"

namespace crl {

struct CheckResult {
  std::string suite;
  std::string name;
  bool ok = true;
  std::string detail;  // first failure, if any
  double seconds = 0;
};

struct CheckOptions {
  int dmax = 5;
  std::uint64_t seed = 20240601;
  std::size_t samples = 50;
  GroebnerLimits limits{};
  const IdealCache* cache = nullptr;
};

namespace detail {

inline std::vector<int> distinct_ints(std::size_t n, std::mt19937_64& rng, int bound) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  std::vector<int> v;
  while (v.size() < n) {
    int x = dist(rng);
    if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
  }
  return v;
}

/// scalar * prod (x + c_i y)^{m_i}, possibly with one factor y^{m}.
inline FactoredForm sample_factored(const Partition& mu, std::mt19937_64& rng) {
  const auto& ms = mu.parts();
  const auto cs = distinct_ints(ms.size(), rng, 6);
  const bool use_infinity = rng() % 4 == 0;
  std::vector<std::pair<LinearForm, int>> factors;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    LinearForm l = (use_infinity && i == 0) ? LinearForm{Rational(0), Rational(1)}
                                            : LinearForm{Rational(1), Rational(cs[i])};
    factors.emplace_back(l, ms[i]);
  }
  return FactoredForm(std::move(factors), Rational(1 + static_cast<int>(rng() % 3)));
}

inline BinaryForm sample_generic(int d, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(-9, 9);
  while (true) {
    std::vector<Rational> a;
    for (int j = 0; j <= d; ++j) a.emplace_back(dist(rng));
    if (std::all_of(a.begin(), a.end(), [](const Rational& q) { return q == 0; })) continue;
    BinaryForm f(std::move(a));
    if (multiplicity_partition(f).num_parts() == d) return f;
  }
}

class SuiteRunner {
 public:
  SuiteRunner(std::string suite, std::vector<CheckResult>& out) : suite_(std::move(suite)), out_(out) {}

  /// Runs one property; `body` returns an empty string on success.
  void run(const std::string& name, const std::function<std::string()>& body) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult r{suite_, name, true, "", 0};
    try {
      r.detail = body();
      r.ok = r.detail.empty();
    } catch (const ResourceError& e) {
      r.ok = false;
      r.detail = std::string("resource cap exceeded: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out_.push_back(std::move(r));
  }

 private:
  std::string suite_;
  std::vector<CheckResult>& out_;
};

inline std::vector<Poly> ideal_for(const Partition& lambda, const CheckOptions& opt) {
  return opt.cache ? opt.cache->get_or_compute(lambda, opt.limits) : ideal_of_X(lambda, opt.limits);
}

inline void partitions_suite(const CheckOptions& opt, std::vector<CheckResult>& out) {
  SuiteRunner s("partitions", out);
  s.run("smooth iff even", [&]() -> std::string {
    for (int d = 1; d <= opt.dmax; ++d)
      for (const auto& lambda : all_partitions(d)) {
        bool all_ok = true, codim_one = false;
        for (const auto& mu : coarsenings(lambda, true)) {
          const auto l = classify_stratum(lambda, mu);
          all_ok = all_ok && l.nonsingular;
          if (!l.nonsingular && mu.num_parts() + 1 == lambda.num_parts()) codim_one = true;
        }
        if (all_ok != is_even(lambda)) return "classification disagrees with evenness at (" + lambda.to_string() + ")";
        if (!is_even(lambda) && !codim_one) return "no codimension-one singular stratum at (" + lambda.to_string() + ")";
      }
    return "";
  });
  s.run("splitting blocks", [&]() -> std::string {
    for (int d = 1; d <= opt.dmax; ++d)
      for (const auto& lambda : all_partitions(d))
        for (const auto& mu : coarsenings(lambda, false)) {
          const auto splits = splittings(mu, lambda);
          if (splits.empty()) return "coarsening without splitting: (" + mu.to_string() + ")";
          for (const auto& sp : splits)
            for (std::size_t k = 0; k < sp.blocks.size(); ++k)
              if (sp.blocks[k].d() != mu.parts()[k]) return "block sum mismatch for (" + mu.to_string() + ")";
        }
    return "";
  });
}

inline void theta_suite(const CheckOptions& opt, std::vector<CheckResult>& out) {
  SuiteRunner s("theta", out);
  s.run("oracle equivalence", [&]() -> std::string {
    for (int d = 1; d <= opt.dmax; ++d)
      for (const auto& lambda : all_partitions(d))
        if (theta_polys(lambda) != product_expansion_oracle(lambda)) return "mismatch at (" + lambda.to_string() + ")";
    return "";
  });
  s.run("weighted homogeneity", [&]() -> std::string {
    for (int d = 1; d <= opt.dmax; ++d)
      for (const auto& lambda : all_partitions(d)) {
        const auto th = theta_polys(lambda);
        for (int j = 0; j <= d; ++j) {
          const auto w = weighted_degree(th[static_cast<std::size_t>(j)], [](Var v) -> long { return v.t(); });
          if (w.status != WeightedDegree::Status::Homogeneous || w.degree != j)
            return "theta_" + std::to_string(j) + " of (" + lambda.to_string() + ")";
        }
      }
    return "";
  });
}

inline void gamma_suite(const CheckOptions& opt, std::vector<CheckResult>& out) {
  SuiteRunner s("gamma", out);
  s.run("minor identity and jacobian", [&]() -> std::string {
    for (int d = 1; d <= opt.dmax; ++d)
      for (const auto& lambda : all_partitions(d))
        for (const auto& alpha : all_charts(lambda)) {
          if (!minor_identity_check(lambda, alpha)) return "minor identity at (" + lambda.to_string() + ") " + alpha.to_string();
          if (!jacobian_submatrix_check(lambda, alpha)) return "jacobian at (" + lambda.to_string() + ") " + alpha.to_string();
        }
    return "";
  });
  s.run("row nonvanishing", [&]() -> std::string {
    for (int d = 1; d <= opt.dmax; ++d)
      for (const auto& lambda : all_partitions(d))
        for (const auto& alpha : all_charts(lambda)) {
          const auto r = row_nonvanishing_sample(lambda, alpha, opt.samples, opt.seed);
          if (!r.ok)
            return "theta row vanishes at (" + lambda.to_string() + ") " + alpha.to_string() + ", seed " +
                   std::to_string(r.seed);
        }
    return "";
  });
}

inline void groebner_suite(const CheckOptions& opt, std::vector<CheckResult>& out) {
  SuiteRunner s("groebner", out);
  s.run("certificates on ideals", [&]() -> std::string {
    for (int d = 1; d <= std::min(opt.dmax, 4); ++d)
      for (const auto& lambda : all_partitions(d)) {
        const auto gens = ideal_for(lambda, opt);
        if (gens.empty()) continue;
        const IdealBasis b = buchberger(gens, MonomialOrder::grevlex(), opt.limits);
        if (!verify_groebner(b, opt.limits)) return "S-polynomial certificate fails at (" + lambda.to_string() + ")";
        if (buchberger(b.gens, b.order, opt.limits).gens != b.gens) return "not idempotent at (" + lambda.to_string() + ")";
        for (const auto& g : gens)
          if (!normal_form(g, b, opt.limits).is_zero()) return "generator not reduced at (" + lambda.to_string() + ")";
      }
    return "";
  });
  s.run("eliminated generators vanish on the parametrization", [&]() -> std::string {
    for (int d = 2; d <= std::min(opt.dmax, 4); ++d)
      for (const auto& lambda : all_partitions(d)) {
        const auto gens = ideal_for(lambda, opt);
        std::map<Var, Poly> param;
        const auto thetas = theta_chart_all(lambda, ChartIndex::origin(lambda));
        param.emplace(Var::z(0), Poly(1));
        for (int j = 1; j <= d; ++j) param.emplace(Var::z(j), thetas[static_cast<std::size_t>(j)]);
        for (const auto& g : gens)
          if (!substitute(g, param).is_zero()) return "generator not in kernel at (" + lambda.to_string() + ")";
      }
    return "";
  });
}

inline void crl_suite(const CheckOptions& opt, std::vector<CheckResult>& out) {
  SuiteRunner s("crl", out);
  s.run("vanishing and non-vanishing", [&]() -> std::string {
    std::mt19937_64 rng(opt.seed);
    for (int d = 1; d <= opt.dmax; ++d)
      for (const auto& lambda : all_partitions(d)) {
        const auto gens = ideal_for(lambda, opt);
        for (std::size_t i = 0; i < opt.samples; ++i)
          if (!vanishes_on(gens, sample_factored(lambda, rng).expand()))
            return "generator nonzero on a member of (" + lambda.to_string() + ")";
        if (lambda.num_parts() == d) continue;
        for (std::size_t i = 0; i < opt.samples; ++i)
          if (vanishes_on(gens, sample_generic(d, rng))) return "generic form in (" + lambda.to_string() + ")";
      }
    return "";
  });
  s.run("weighted grading", [&]() -> std::string {
    for (int d = 1; d <= opt.dmax; ++d)
      for (const auto& lambda : all_partitions(d))
        for (const auto& g : ideal_for(lambda, opt))
          if (!weighted_degree(g, [](Var v) -> long { return v.j(); }).homogeneous())
            return "not weighted-homogeneous at (" + lambda.to_string() + "): " + g.to_string();
    return "";
  });
  s.run("fibers equal splittings", [&]() -> std::string {
    std::mt19937_64 rng(opt.seed + 1);
    for (int d = 1; d <= opt.dmax; ++d)
      for (const auto& mu : all_partitions(d)) {
        const auto f = sample_factored(mu, rng);
        const auto image = f.expand();
        if (multiplicity_partition(image) != mu) return "multiplicities not recovered for (" + mu.to_string() + ")";
        for (const auto& lambda : all_partitions(d)) {
          const auto pts = fiber_points(f, lambda);
          if (pts.size() != splittings(mu, lambda).size())
            return "fiber count at (" + mu.to_string() + ") in (" + lambda.to_string() + ")";
          for (const auto& p : pts)
            if (!fiber_image(p).proportional_to(image)) return "fiber image mismatch";
        }
      }
    return "";
  });
  s.run("membership paths agree", [&]() -> std::string {
    std::mt19937_64 rng(opt.seed + 2);
    for (int d = 1; d <= opt.dmax; ++d) {
      const auto parts = all_partitions(d);
      for (const auto& lambda : parts) {
        const auto gens = ideal_for(lambda, opt);
        for (const auto& mu : parts) {
          const auto f = sample_factored(mu, rng).expand();
          if (is_member(f, lambda) != vanishes_on(gens, f))
            return "disagreement for (" + mu.to_string() + ") in (" + lambda.to_string() + ")";
        }
      }
    }
    return "";
  });
}

}  // namespace detail

inline const std::vector<std::string>& check_suite_names() {
  static const std::vector<std::string> names{"partitions", "theta", "gamma", "groebner", "crl"};
  return names;
}

/// Runs the named suite, or every suite for "all".
inline std::vector<CheckResult> run_checks(const std::string& suite, const CheckOptions& opt) {
  if (opt.dmax < 1) throw DomainError("dmax must be positive");
  std::vector<CheckResult> out;
  const bool all = suite == "all";
  bool known = all;
  auto want = [&](const char* name) {
    const bool hit = all || suite == name;
    known = known || hit;
    return hit;
  };
  if (want("partitions")) detail::partitions_suite(opt, out);
  if (want("theta")) detail::theta_suite(opt, out);
  if (want("gamma")) detail::gamma_suite(opt, out);
  if (want("groebner")) detail::groebner_suite(opt, out);
  if (want("crl")) detail::crl_suite(opt, out);
  if (!known) throw DomainError("unknown check suite '" + suite + "'");
  return out;
}

}  // namespace crl
