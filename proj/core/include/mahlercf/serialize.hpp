#pragma once

// JSON encodings. Rationals are exact strings ("n" or "n/d"); residues are
// plain integers.

#include <nlohmann/json.hpp>

#include "mahlercf/conditions.hpp"
#include "mahlercf/field.hpp"
#include "mahlercf/laurent.hpp"
#include "mahlercf/patterns.hpp"
#include "mahlercf/recurrence.hpp"
#include "mahlercf/search.hpp"

namespace mahlercf {

using Json = nlohmann::ordered_json;

inline Json scalar_json(const Rational& x) { return x.to_string(); }
inline Json scalar_json(const PrimeFieldElement& x) { return x.residue(); }

template <FieldScalar S>
Json to_json(const Polynomial<S>& p) {
  Json arr = Json::array();
  for (const auto& c : p.coefficients()) arr.push_back(scalar_json(c));
  return arr;
}

template <FieldScalar S>
Json to_json(const LaurentSeries<S>& g) {
  Json coeffs = Json::array();
  for (const auto& c : g.coefficients()) coeffs.push_back(scalar_json(c));
  Json j;
  j["top_degree"] = g.valuation() ? Json(*g.valuation()) : Json(nullptr);
  j["floor"] = g.floor();
  j["coefficients"] = std::move(coeffs);
  return j;
}

template <FieldScalar S>
Json to_json(const CFExpansion<S>& cf) {
  Json terms = Json::array();
  for (const auto& t : cf.terms) terms.push_back({{"beta", scalar_json(t.beta)}, {"a", to_json(t.a)}});
  return {{"a0", to_json(cf.a0)}, {"terms", std::move(terms)}};
}

template <FieldScalar S>
Json to_json(const RecurrenceRun<S>& run) {
  Json alphas = Json::array(), betas = Json::array();
  for (const auto& a : run.alphas()) alphas.push_back(scalar_json(a));
  for (const auto& b : run.betas()) betas.push_back(scalar_json(b));
  Json status;
  if (run.ok()) {
    status = {{"state", "Ok"}};
  } else {
    status = {{"state", "FailedAt"}, {"index", run.failure()->index}, {"cause", to_string(run.failure()->cause)}};
  }
  return {{"u", scalar_json(run.u())}, {"v", scalar_json(run.v())}, {"alpha", std::move(alphas)},
          {"beta", std::move(betas)}, {"status", std::move(status)}};
}

Json to_json(const ConditionWitness& w);
Json to_json(const LemmaReport& r);
Json to_json(const ScanResult& r, bool include_first_zero = false);
Json to_json(const ScanSummary& s);
Json to_json(const DensityReport& d);
Json pairs_json(const std::vector<ResiduePair>& pairs);

}  // namespace mahlercf
