#pragma once

// JSON encoding of polynomials: a list of terms
//   [{"c": "num/den", "m": {"W:2:1": 1, "Z:1": 2}}, ...]
// listed from largest to smallest monomial in grevlex over the default
// variable ranking.

#include <json.hpp>

#include <string>
#include <vector>

#include "crl/polyring.hpp"

namespace crl {

inline nlohmann::json poly_to_json(const Poly& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : p.sorted_terms()) {
    nlohmann::json mono = nlohmann::json::object();
    for (const auto& [v, e] : m.entries()) mono[v.to_key_string()] = e;
    terms.push_back({{"c", rational_to_string(c)}, {"m", std::move(mono)}});
  }
  return terms;
}

inline Poly poly_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw DomainError("polynomial JSON must be an array of terms");
  Poly p;
  for (const auto& term : j) {
    if (!term.is_object() || !term.contains("c") || !term.contains("m") || !term["c"].is_string() ||
        !term["m"].is_object())
      throw DomainError("polynomial term must be {\"c\": string, \"m\": object}");
    std::vector<Monomial::Entry> entries;
    for (const auto& [key, exp] : term["m"].items()) {
      if (!exp.is_number_unsigned()) throw DomainError("exponent of " + key + " must be a nonnegative integer");
      entries.emplace_back(Var::parse(key), exp.get<std::uint32_t>());
    }
    p.add_term(Monomial::from_entries(std::move(entries)), parse_rational(term["c"].get<std::string>()));
  }
  return p;
}

inline nlohmann::json polys_to_json(const std::vector<Poly>& ps) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& p : ps) out.push_back(poly_to_json(p));
  return out;
}

inline std::vector<Poly> polys_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw DomainError("expected an array of polynomials");
  std::vector<Poly> out;
  for (const auto& p : j) out.push_back(poly_from_json(p));
  return out;
}

}  // namespace crl
