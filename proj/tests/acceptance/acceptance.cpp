// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "mahlercf/conditions.hpp"
#include "mahlercf/laurent.hpp"
#include "mahlercf/patterns.hpp"
#include "mahlercf/recurrence.hpp"
#include "mahlercf/search.hpp"
#include "oracles.hpp"

using namespace mahlercf;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> check;
};

constexpr std::size_t kTerms = 25;
constexpr unsigned kSeed = 20240611;

std::vector<std::pair<long, long>> sample() { return oracle::sample_pairs(20, kTerms, kSeed); }

Outcome oracle_equivalence() {
  std::size_t compared = 0;
  for (const auto& [u, v] : sample()) {
    auto run = init_run(Rational(u), Rational(v));
    run.extend(kTerms);
    if (!run.ok()) return {false, "recurrence failed for (" + std::to_string(u) + ", " + std::to_string(v) + ")"};
    const auto ext = cf_extract(expand_g(Rational(u), Rational(v), default_depth_for_terms(kTerms)), kTerms);
    if (!ext.a0.is_zero() || !ext.all_linear())
      return {false, "series expansion has a nonlinear quotient at (" + std::to_string(u) + ", " + std::to_string(v) + ")"};
    for (std::size_t i = 1; i <= kTerms; ++i) {
      const auto& t = ext.terms[i - 1];
      if (!(t.beta == run.beta(i)) || !(t.a == Polynomial<Rational>::monic_linear(run.alpha(i))))
        return {false, "mismatch at i=" + std::to_string(i) + " for (" + std::to_string(u) + ", " + std::to_string(v) + ")"};
      ++compared;
    }
  }
  return {true, "20 pairs, " + std::to_string(compared) + " (alpha_i, beta_i) compared exactly"};
}

Outcome degree_law() {
  for (const auto& [u, v] : sample()) {
    auto run = init_run(Rational(u), Rational(v));
    run.extend(kTerms);
    const auto cf = cf_from_run(run);
    const auto g = expand_g(Rational(u), Rational(v), default_depth_for_terms(kTerms));
    const auto seq = convergent_sequence(cf, kTerms);
    for (std::size_t k = 1; k <= kTerms; ++k) {
      const auto& [p, q] = seq[k];
      const std::string where = " at k=" + std::to_string(k) + " for (" + std::to_string(u) + ", " + std::to_string(v) + ")";
      if (q.degree() != static_cast<int>(k)) return {false, "deg q_k != k" + where};
      if (residual_valuation(g, p, q) != -static_cast<int>(k + 1)) return {false, "||q_k g - p_k|| != -(k+1)" + where};
    }
  }
  return {true, "deg q_k = k and ||q_k g - p_k|| = -(k+1) for k <= 25 on all 20 pairs"};
}

Outcome lemma_suite() {
  std::size_t instances = 0, base_checked = 0;
  for (auto q : primes_between(3, 200)) {
    const PrimeModulus p(q);
    for (const auto& [pair, ws] : satisfying_pairs(p)) {
      for (const auto& w : ws) {
        const auto spec = spec_from_witness(w, 100);
        const auto rep = verify_lemma(spec);
        ++instances;
        if (!rep.pass) {
          std::ostringstream os;
          os << to_string(spec.lemma) << " p=" << q << " (u, v)=(" << spec.u << ", " << spec.v << ") violates "
             << rep.violation->rule << " at " << rep.violation->index;
          return {false, os.str()};
        }
        if (spec.lemma != Lemma::L7) continue;
        // base-case table: beta_2 = 3 delta, beta_4 = -3/delta, beta_5 = -3
        auto run = init_run(PrimeFieldElement(spec.u, p), PrimeFieldElement(spec.v, p));
        run.extend(5);
        const PrimeFieldElement d(*spec.delta, p), three(3, p);
        if (!(run.beta(2) == three * d) || !(run.beta(4) == -(three / d)) || !(run.beta(5) == -three))
          return {false, "base-case table fails for p=" + std::to_string(q)};
        ++base_checked;
      }
    }
  }
  return {true, std::to_string(instances) + " instances at K=100, " + std::to_string(base_checked) +
                    " base-case tables, zero violations"};
}

Outcome soundness() {
  std::size_t pairs = 0;
  for (auto q : primes_between(3, 100)) {
    const PrimeModulus p(q);
    for (const auto& [pair, ws] : satisfying_pairs(p)) {
      const auto z = first_beta_zero(pair.first, pair.second, p, 10'000);
      if (z)
        return {false, "(" + std::to_string(pair.first) + ", " + std::to_string(pair.second) + ") mod " +
                           std::to_string(q) + " hits zero at " + std::to_string(*z)};
      ++pairs;
    }
  }
  return {true, std::to_string(pairs) + " condition pairs survive 10^4 indices"};
}

Outcome search_replication() {
  const auto s = scan_range(3, 50, 10'000, 0);
  std::ostringstream os;
  for (const auto& r : s.results) {
    if (!r.extra_survivors.empty() || !r.missing.empty()) {
      os << "p=" << r.p << ": " << r.extra_survivors.size() << " extra, " << r.missing.size() << " missing";
      return {false, os.str()};
    }
  }
  os << s.primes_scanned << " primes, survivors equal the condition set at each";
  return {true, os.str()};
}

Outcome density_replication() {
  const auto d = density(1000, 1000, 0);
  const double x = d.fraction.raw().get_d();
  std::ostringstream os;
  os << d.covered << "/" << d.total << " = " << x;
  return {x >= 0.81 && x <= 0.83, os.str()};
}

Outcome witness_pair() {
  const auto w = covered(2, -2, primes_between(3, 1000));
  if (w) return {false, "covered by " + to_string(w->case_id) + " at p=" + std::to_string(w->p)};
  return {true, "(2, -2) satisfies no condition at any prime <= 1000"};
}

Outcome failure_catalog() {
  const auto one = init_run(Rational(1), Rational(1));
  if (one.failure() != std::optional<Failure>(Failure{2, FailureCause::BetaZero}))
    return {false, "(1, 1) does not fail at index 2"};
  auto two = init_run(Rational(2), Rational(1));
  two.extend(1000);
  if (!two.failure()) return {false, "(2, 1) survives 1000 indices"};
  // golden value recorded from the first run
  if (*two.failure() != Failure{6, FailureCause::BetaZero})
    return {false, "(2, 1) fails at " + std::to_string(two.failure()->index) + ", expected 6"};
  return {true, "(1, 1) FailedAt(2, BetaZero); (2, 1) FailedAt(6, BetaZero)"};
}

Outcome mu_sanity() {
  std::ostringstream os;
  bool pass = true;
  for (const auto& [u, v] : std::vector<std::pair<long, long>>{{5, 1}, {2, 3}}) {
    auto run = init_run(Rational(u), Rational(v));
    run.extend(51);
    if (!run.ok()) return {false, "recurrence failed"};
    const auto degrees = denominator_degrees(cf_from_run(run), 51);
    const Rational est = mu_estimate(degrees, 25, 50);
    pass = pass && est <= Rational(mpz_class(51), mpz_class(25));
    os << "(" << u << ", " << v << "): " << est << "  ";
  }
  return {pass, os.str() + "(bound 51/25 = 2.04)"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "oracle equivalence", oracle_equivalence},
      {2, "degree law", degree_law},
      {3, "lemma suite", lemma_suite},
      {4, "soundness of the local conditions", soundness},
      {5, "survivor search, 3 <= p <= 50", search_replication},
      {6, "density, B = 1000", density_replication},
      {7, "witness pair (2, -2)", witness_pair},
      {8, "failure catalog", failure_catalog},
      {9, "mu estimate", mu_sanity},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s [%d] %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures;
}
