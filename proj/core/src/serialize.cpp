#include "mahlercf/serialize.hpp"

namespace mahlercf {

namespace {
Json optional_json(const std::optional<std::uint32_t>& x) { return x ? Json(*x) : Json(nullptr); }
}  // namespace

Json to_json(const ConditionWitness& w) {
  return {{"case", to_string(w.case_id)}, {"p", w.p},     {"phi", optional_json(w.phi)},
          {"delta", optional_json(w.delta)}, {"u", w.u}, {"v", w.v}};
}

Json to_json(const LemmaReport& r) {
  const auto& s = r.spec;
  Json params = {{"u", s.u}, {"v", s.v}, {"sign", s.sign}};
  if (s.phi) params["phi"] = *s.phi;
  if (s.delta) params["delta"] = *s.delta;
  Json j = {{"lemma", to_string(s.lemma)}, {"p", s.p.value()}, {"params", std::move(params)},
            {"K", s.depth_blocks}, {"pass", r.pass}};
  if (r.violation) {
    const auto& v = *r.violation;
    j["violation"] = {{"index", v.index},
                      {"quantity", v.quantity},
                      {"rule", v.rule},
                      {"expected", optional_json(v.expected)},
                      {"actual", optional_json(v.actual)}};
  }
  return j;
}

Json pairs_json(const std::vector<ResiduePair>& pairs) {
  Json arr = Json::array();
  for (const auto& [u, v] : pairs) arr.push_back(Json::array({u, v}));
  return arr;
}

Json to_json(const ScanResult& r, bool include_first_zero) {
  Json j = {{"p", r.p},
            {"max_index", r.max_index},
            {"survivors", pairs_json(r.survivors)},
            {"condition_pairs", pairs_json(r.condition_pairs)},
            {"extra_survivors", pairs_json(r.extra_survivors)},
            {"missing", pairs_json(r.missing)}};
  if (include_first_zero) {
    Json fz = Json::array();
    for (const auto& z : r.first_zero) fz.push_back(optional_json(z));
    j["first_zero"] = std::move(fz);
  }
  return j;
}

Json to_json(const ScanSummary& s) {
  Json results = Json::array();
  for (const auto& r : s.results) results.push_back(to_json(r));
  return {{"primes_scanned", s.primes_scanned},
          {"total_extra_survivors", s.total_extra},
          {"total_missing", s.total_missing},
          {"results", std::move(results)}};
}

Json to_json(const DensityReport& d) {
  return {{"B", d.bound},
          {"prime_max", d.prime_max},
          {"total", d.total},
          {"covered", d.covered},
          {"fraction", d.fraction.to_string()},
          {"fraction_approx", d.fraction.raw().get_d()}};
}

}  // namespace mahlercf
