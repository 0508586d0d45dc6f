// Command-line front end: crl <subcommand> [options]
//
// Exit codes: 0 success, 1 domain or usage error, 2 resource cap exceeded,
// 3 a check suite failed.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "crl/checks.hpp"
#include "crl/crl.hpp"

namespace {

using nlohmann::json;

constexpr std::uint64_t kDefaultSeed = 20240601;

struct Options {
  std::string partition;
  std::string chart;
  std::string format = "text";
  std::uint64_t seed = kDefaultSeed;
  int dmax = 5;
  int d = 0;
  std::uint64_t max_pairs = crl::GroebnerLimits{}.max_pairs;
  std::uint64_t max_terms = crl::GroebnerLimits{}.max_terms;
  std::string cache_dir;
  std::string form;
  std::string factors;
  std::string in;
  std::string drop;
  std::string order = "block-grevlex";
  std::string suite = "all";
  std::size_t samples = 50;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::uint64_t env_or(const char* name, std::uint64_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  try {
    std::size_t pos = 0;
    const auto x = std::stoull(v, &pos);
    if (pos != std::string(v).size()) throw std::invalid_argument(name);
    return x;
  } catch (const std::exception&) {
    throw crl::DomainError(std::string("environment variable ") + name + " is not a nonnegative integer");
  }
}

crl::Partition need_partition(const Options& o) {
  if (o.partition.empty()) throw crl::DomainError("--partition is required");
  return crl::parse_partition(o.partition);
}

crl::ChartIndex chart_of(const Options& o, const crl::Partition& lambda) {
  if (o.chart.empty()) return crl::ChartIndex::origin(lambda);
  std::vector<int> a;
  for (const auto& tok : split(o.chart, ',')) {
    const auto t = trim(tok);
    try {
      std::size_t pos = 0;
      a.push_back(std::stoi(t, &pos));
      if (pos != t.size()) throw std::invalid_argument(t);
    } catch (const std::exception&) {
      throw crl::DomainError("bad chart entry '" + t + "'");
    }
  }
  return crl::ChartIndex(lambda, std::move(a));
}

crl::BinaryForm parse_form(const std::string& s) {
  std::vector<crl::Rational> a;
  for (const auto& tok : split(s, ',')) a.push_back(crl::parse_rational(trim(tok)));
  return crl::BinaryForm(std::move(a));
}

/// "u,v^m;u,v^m;..." meaning prod (u x + v y)^m; "^m" defaults to 1.
crl::FactoredForm parse_factors(const std::string& s) {
  std::vector<std::pair<crl::LinearForm, int>> factors;
  for (const auto& raw : split(s, ';')) {
    std::string tok = trim(raw);
    int m = 1;
    if (const auto caret = tok.find('^'); caret != std::string::npos) {
      const auto ms = trim(tok.substr(caret + 1));
      try {
        std::size_t pos = 0;
        m = std::stoi(ms, &pos);
        if (pos != ms.size()) throw std::invalid_argument(ms);
      } catch (const std::exception&) {
        throw crl::DomainError("bad multiplicity '" + ms + "'");
      }
      tok = tok.substr(0, caret);
    }
    const auto uv = split(tok, ',');
    if (uv.size() != 2) throw crl::DomainError("linear factor must be 'u,v', got '" + tok + "'");
    factors.emplace_back(crl::LinearForm{crl::parse_rational(trim(uv[0])), crl::parse_rational(trim(uv[1]))}, m);
  }
  return crl::FactoredForm(std::move(factors));
}

crl::GroebnerLimits limits_of(const Options& o) { return {o.max_pairs, o.max_terms}; }

std::optional<crl::IdealCache> cache_of(const Options& o) {
  if (o.cache_dir.empty()) return std::nullopt;
  return crl::IdealCache(o.cache_dir);
}

json coeffs_json(const std::vector<crl::Rational>& v) {
  json a = json::array();
  for (const auto& q : v) a.push_back(crl::rational_to_string(q));
  return a;
}

std::string coeffs_text(const std::vector<crl::Rational>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += v[i].get_str();
  }
  return s;
}

json label_json(const crl::StratumLabel& l) {
  return {{"fiber_count", l.fiber_count},
          {"tangent_degenerate", l.tangent_degenerate},
          {"nonsingular", l.nonsingular},
          {"label", l.label()}};
}

void require_format(const Options& o, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed)
    if (o.format == f) return;
  throw crl::DomainError("format '" + o.format + "' not available for this command");
}

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

int cmd_theta(const Options& o) {
  require_format(o, {"text", "json"});
  const auto lambda = need_partition(o);
  const bool charted = !o.chart.empty();
  const auto alpha = chart_of(o, lambda);
  const auto th = charted ? crl::theta_chart_all(lambda, alpha) : crl::theta_polys(lambda);
  if (o.format == "json") {
    json j{{"schema", "crl.theta/1"}, {"partition", lambda.parts()}, {"theta", crl::polys_to_json(th)}};
    if (charted) j["chart"] = alpha.values();
    print_json(j);
  } else {
    for (std::size_t i = 0; i < th.size(); ++i) std::cout << "theta_" << i << " = " << th[i].to_string() << '\n';
  }
  return 0;
}

int cmd_generators(const Options& o) {
  require_format(o, {"text", "json"});
  const auto lambda = need_partition(o);
  const auto alpha = chart_of(o, lambda);
  const auto gs = crl::chart_generators(lambda, alpha);
  if (o.format == "json") {
    print_json({{"schema", "crl.generators/1"},
                {"partition", lambda.parts()},
                {"chart", alpha.values()},
                {"indices", gs.indices},
                {"generators", crl::polys_to_json(gs.gens)}});
  } else {
    for (std::size_t i = 0; i < gs.gens.size(); ++i)
      std::cout << "g_" << gs.indices[i] << " = " << gs.gens[i].to_string() << '\n';
  }
  return 0;
}

std::vector<crl::Poly> ideal_gens(const Options& o, const crl::Partition& lambda) {
  if (auto cache = cache_of(o)) return cache->get_or_compute(lambda, limits_of(o));
  return crl::ideal_of_X(lambda, limits_of(o));
}

int cmd_ideal(const Options& o) {
  require_format(o, {"text", "json"});
  const auto lambda = need_partition(o);
  const auto gens = ideal_gens(o, lambda);
  if (o.format == "json") {
    print_json(crl::ideal_to_json(lambda, gens));
  } else {
    if (gens.empty()) std::cout << "(zero ideal)\n";
    for (const auto& g : gens) std::cout << g.to_string() << '\n';
  }
  return 0;
}

crl::BinaryForm form_of(const Options& o) {
  if (!o.form.empty() && !o.factors.empty()) throw crl::DomainError("give either --form or --factors, not both");
  if (!o.form.empty()) return parse_form(o.form);
  if (!o.factors.empty()) return parse_factors(o.factors).expand();
  throw crl::DomainError("--form or --factors is required");
}

int cmd_member(const Options& o) {
  require_format(o, {"text", "json"});
  const auto lambda = need_partition(o);
  const auto f = form_of(o);
  const auto mu = crl::multiplicity_partition(f);
  bool member = crl::is_member(f, lambda);
  bool cross_checked = false;
  if (auto cache = cache_of(o)) {
    if (auto gens = cache->load(lambda)) {
      member = crl::is_member(f, lambda, *gens);
      cross_checked = true;
    }
  }
  if (o.format == "json") {
    print_json({{"schema", "crl.member/1"},
                {"partition", lambda.parts()},
                {"form", coeffs_json(f.coeffs())},
                {"multiplicities", mu.parts()},
                {"member", member},
                {"ideal_checked", cross_checked}});
  } else {
    std::cout << (member ? "true" : "false") << '\n';
  }
  return 0;
}

int cmd_fiber(const Options& o) {
  require_format(o, {"text", "json"});
  const auto lambda = need_partition(o);
  if (o.factors.empty()) throw crl::DomainError("--factors is required");
  const auto f = parse_factors(o.factors);
  const auto pts = crl::fiber_points(f, lambda);
  if (o.format == "json") {
    json arr = json::array();
    for (const auto& p : pts) {
      json forms = json::object();
      for (const auto& [r, g] : p.forms) forms[std::to_string(r)] = coeffs_json(g);
      arr.push_back(forms);
    }
    print_json({{"schema", "crl.fiber/1"},
                {"partition", lambda.parts()},
                {"multiplicities", f.multiplicities().parts()},
                {"points", arr}});
  } else {
    std::cout << pts.size() << " point" << (pts.size() == 1 ? "" : "s") << '\n';
    for (const auto& p : pts) {
      bool first = true;
      for (const auto& [r, g] : p.forms) {
        std::cout << (first ? "" : "  ") << "G_" << r << " = (" << coeffs_text(g) << ")";
        first = false;
      }
      std::cout << '\n';
    }
  }
  return 0;
}

int cmd_classify(const Options& o) {
  require_format(o, {"text", "json"});
  const auto lambda = need_partition(o);
  const auto f = form_of(o);
  const auto mu = crl::multiplicity_partition(f);
  const auto label = crl::classify_point(mu, lambda);
  if (o.format == "json") {
    json j = label_json(label);
    j["schema"] = "crl.classify/1";
    j["partition"] = lambda.parts();
    j["multiplicities"] = mu.parts();
    print_json(j);
  } else {
    std::cout << "stratum " << crl::paren(mu) << ": "
              << (label.nonsingular ? "nonsingular" : "singular " + label.label()) << " (fibers "
              << label.fiber_count << ")\n";
  }
  return 0;
}

int cmd_diagram(const Options& o) {
  require_format(o, {"text", "json", "dot"});
  if (o.d < 1) throw crl::DomainError("--d must be a positive integer");
  const auto diag = crl::singular_diagram(o.d);
  if (o.format == "json")
    print_json(crl::diagram_to_json(diag));
  else if (o.format == "dot")
    std::cout << crl::diagram_to_dot(diag);
  else
    std::cout << crl::diagram_to_text(diag);
  return 0;
}

int cmd_smooth(const Options& o) {
  require_format(o, {"text", "json"});
  const auto lambda = need_partition(o);
  const bool smooth = crl::is_smooth(lambda);
  if (o.format == "json")
    print_json({{"schema", "crl.smooth/1"}, {"partition", lambda.parts()}, {"smooth", smooth}});
  else
    std::cout << (smooth ? "true" : "false") << '\n';
  return 0;
}

int cmd_check(const Options& o) {
  require_format(o, {"text", "json"});
  crl::CheckOptions opt;
  opt.dmax = o.dmax;
  opt.seed = o.seed;
  opt.samples = o.samples;
  opt.limits = limits_of(o);
  const auto cache = cache_of(o);
  if (cache) opt.cache = &*cache;
  const auto results = crl::run_checks(o.suite, opt);
  bool ok = true;
  json arr = json::array();
  for (const auto& r : results) {
    ok = ok && r.ok;
    if (o.format == "json")
      arr.push_back({{"suite", r.suite}, {"name", r.name}, {"ok", r.ok}, {"detail", r.detail}});
    else
      std::cout << (r.ok ? "PASS " : "FAIL ") << r.suite << ": " << r.name << (r.ok ? "" : " -- " + r.detail) << '\n';
  }
  if (o.format == "json")
    print_json({{"schema", "crl.check/1"}, {"dmax", o.dmax}, {"seed", o.seed}, {"ok", ok}, {"results", arr}});
  return ok ? 0 : 3;
}

std::vector<crl::Var> parse_drop(const std::string& spec, const std::vector<crl::Poly>& gens) {
  std::vector<crl::Var> present;
  for (const auto& g : gens)
    for (crl::Var v : g.variables()) present.push_back(v);
  std::sort(present.begin(), present.end());
  present.erase(std::unique(present.begin(), present.end()), present.end());
  std::vector<crl::Var> out;
  for (const auto& raw : split(spec, ',')) {
    const auto tok = trim(raw);
    if (tok.empty()) continue;
    if (tok.size() >= 2 && tok.ends_with(":*")) {
      const std::string kind = tok.substr(0, tok.size() - 2);
      crl::VarKind k;
      if (kind == "W") k = crl::VarKind::W;
      else if (kind == "Z") k = crl::VarKind::Z;
      else if (kind == "A") k = crl::VarKind::Aux;
      else throw crl::DomainError("unknown variable family '" + tok + "'");
      for (crl::Var v : present)
        if (v.kind() == k) out.push_back(v);
    } else {
      out.push_back(crl::Var::parse(tok));
    }
  }
  return out;
}

int cmd_eliminate(const Options& o) {
  require_format(o, {"text", "json"});
  if (o.in.empty()) throw crl::DomainError("--in is required");
  json input;
  try {
    if (o.in == "-") {
      input = json::parse(std::cin);
    } else {
      std::ifstream f(o.in);
      if (!f) throw crl::DomainError("cannot read " + o.in);
      input = json::parse(f);
    }
  } catch (const json::exception& e) {
    throw crl::DomainError(std::string("invalid JSON input: ") + e.what());
  }
  const auto gens = crl::polys_from_json(input.is_object() ? input.at("generators") : input);
  crl::EliminationOptions opts;
  if (o.order == "lex")
    opts.use_lex = true;
  else if (o.order != "block-grevlex")
    throw crl::DomainError("--order must be block-grevlex or lex");
  opts.limits = limits_of(o);
  const auto drop = parse_drop(o.drop, gens);
  const auto out = crl::eliminate(gens, drop, opts);
  if (o.format == "json") {
    json dropped = json::array();
    for (crl::Var v : drop) dropped.push_back(v.to_key_string());
    print_json({{"schema", "crl.eliminate/1"}, {"order", o.order}, {"drop", dropped}, {"generators", crl::polys_to_json(out)}});
  } else {
    if (out.empty()) std::cout << "(zero ideal)\n";
    for (const auto& g : out) std::cout << g.to_string() << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coincident root loci of binary forms: equations, membership, fibers and singular strata"};
  app.require_subcommand(1);
  Options o;

  auto add_format = [&](CLI::App* c, const char* choices) {
    c->add_option("--format", o.format, std::string("Output format: ") + choices)->capture_default_str();
  };
  auto add_partition = [&](CLI::App* c) {
    c->add_option("--partition,-p", o.partition, "Partition, e.g. 2,2,3 (any order)")->required();
  };
  auto add_caps = [&](CLI::App* c) {
    c->add_option("--max-pairs", o.max_pairs, "S-pair cap (env CRL_MAX_PAIRS)");
    c->add_option("--max-terms", o.max_terms, "Term cap (env CRL_MAX_TERMS)");
    c->add_option("--cache-dir", o.cache_dir, "Ideal cache directory (env CRL_CACHE_DIR)");
  };

  auto* theta = app.add_subcommand("theta", "Coefficient polynomials Theta_0..Theta_d");
  add_partition(theta);
  theta->add_option("--chart", o.chart, "Chart index alpha_0,alpha_1,..,alpha_d (dehomogenize)");
  add_format(theta, "text|json");

  auto* gens = app.add_subcommand("generators", "Chart generators theta_{alpha_0} z_j - theta_j");
  add_partition(gens);
  gens->add_option("--chart", o.chart, "Chart index alpha_0,alpha_1,..,alpha_d (default all zero)");
  add_format(gens, "text|json");

  auto* ideal = app.add_subcommand("ideal", "Generators of the ideal of X_lambda");
  add_partition(ideal);
  add_caps(ideal);
  add_format(ideal, "text|json");

  auto* member = app.add_subcommand("member", "Whether a form lies in X_lambda");
  add_partition(member);
  member->add_option("--form", o.form, "Coefficients a_0,..,a_d of sum a_j x^(d-j) y^j");
  member->add_option("--factors", o.factors, "Linear factors u,v^m;u,v^m;...");
  member->add_option("--cache-dir", o.cache_dir, "Cross-check against a cached ideal (env CRL_CACHE_DIR)");
  add_format(member, "text|json");

  auto* fiber = app.add_subcommand("fiber", "Preimages of a factored form under the multiplication map");
  add_partition(fiber);
  fiber->add_option("--factors", o.factors, "Linear factors u,v^m;u,v^m;...")->required();
  add_format(fiber, "text|json");

  auto* classify = app.add_subcommand("classify", "Singularity type of a form inside X_lambda");
  add_partition(classify);
  classify->add_option("--form", o.form, "Coefficients a_0,..,a_d");
  classify->add_option("--factors", o.factors, "Linear factors u,v^m;u,v^m;...");
  add_format(classify, "text|json");

  auto* diagram = app.add_subcommand("diagram", "Singular strata of every X_lambda of degree d");
  diagram->add_option("--d", o.d, "Degree")->required();
  add_format(diagram, "text|json|dot");

  auto* smooth = app.add_subcommand("smooth", "Whether X_lambda is smooth");
  add_partition(smooth);
  add_format(smooth, "text|json");

  auto* check = app.add_subcommand("check", "Run property suites");
  check->add_option("suite", o.suite, "partitions|theta|gamma|groebner|crl|all")->capture_default_str();
  check->add_option("--dmax", o.dmax, "Largest degree")->capture_default_str();
  check->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  check->add_option("--samples", o.samples, "Random samples per case")->capture_default_str();
  add_caps(check);
  add_format(check, "text|json");

  auto* elim = app.add_subcommand("eliminate", "Eliminate variables from an ideal given as JSON");
  elim->add_option("--in", o.in, "Input file (array of polynomials, or {\"generators\": [...]}); - for stdin")
      ->required();
  elim->add_option("--drop", o.drop, "Variables to eliminate, e.g. \"W:*\" or \"W:2:1,Z:1\"")->required();
  elim->add_option("--order", o.order, "block-grevlex|lex")->capture_default_str();
  elim->add_option("--max-pairs", o.max_pairs, "S-pair cap (env CRL_MAX_PAIRS)");
  elim->add_option("--max-terms", o.max_terms, "Term cap (env CRL_MAX_TERMS)");
  add_format(elim, "text|json");

  try {
    o.max_pairs = env_or("CRL_MAX_PAIRS", o.max_pairs);
    o.max_terms = env_or("CRL_MAX_TERMS", o.max_terms);
    if (const char* dir = std::getenv("CRL_CACHE_DIR")) o.cache_dir = dir;
  } catch (const crl::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*theta) return cmd_theta(o);
    if (*gens) return cmd_generators(o);
    if (*ideal) return cmd_ideal(o);
    if (*member) return cmd_member(o);
    if (*fiber) return cmd_fiber(o);
    if (*classify) return cmd_classify(o);
    if (*diagram) return cmd_diagram(o);
    if (*smooth) return cmd_smooth(o);
    if (*check) return cmd_check(o);
    if (*elim) return cmd_eliminate(o);
  } catch (const crl::ResourceError& e) {
    std::cerr << "resource error: " << e.what() << '\n';
    return 2;
  } catch (const crl::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
