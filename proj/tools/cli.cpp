#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "mahlercf/conditions.hpp"
#include "mahlercf/field.hpp"
#include "mahlercf/laurent.hpp"
#include "mahlercf/patterns.hpp"
#include "mahlercf/recurrence.hpp"
#include "mahlercf/search.hpp"
#include "mahlercf/serialize.hpp"

namespace mahlercf::cli {

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

PrimeFieldElement to_residue(const Rational& x, PrimeModulus p) {
  const mpz_class m = p.value();
  mpz_class num = x.numerator() % m, den = x.denominator() % m;
  if (num < 0) num += m;
  if (den == 0) throw UsageError(x.to_string() + " has a denominator divisible by p");
  const PrimeFieldElement n(static_cast<std::int64_t>(num.get_si()), p);
  const PrimeFieldElement d(static_cast<std::int64_t>(den.get_si()), p);
  return n / d;
}

Rational parse_scalar(const std::string& text, const char* name) {
  try {
    return Rational::parse(text);
  } catch (const std::exception&) {
    throw UsageError(std::string("invalid value for ") + name + ": '" + text + "'");
  }
}

std::int64_t parse_integer(const std::string& text, const char* name) {
  const Rational r = parse_scalar(text, name);
  if (!r.is_integer() || !r.numerator().fits_slong_p())
    throw UsageError(std::string(name) + " must be a machine integer");
  return r.numerator().get_si();
}

class Output {
 public:
  Output(std::ostream& out, std::string path) : out_(out), path_(std::move(path)) {}

  void write(const std::string& text) const {
    if (path_.empty()) {
      out_ << text;
      return;
    }
    std::ofstream f(path_);
    if (!f) throw std::runtime_error("cannot open " + path_ + " for writing");
    f << text;
  }
  void json(const Json& j) const { write(j.dump(2) + "\n"); }

 private:
  std::ostream& out_;
  std::string path_;
};

template <FieldScalar S>
std::string join(std::span<const S> xs) {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? " " : "") << xs[i];
  return os.str();
}

template <FieldScalar S>
std::string status_text(const RecurrenceRun<S>& run) {
  if (run.ok()) return "Ok";
  return "FailedAt(" + std::to_string(run.failure()->index) + ", " + to_string(run.failure()->cause) + ")";
}

template <FieldScalar S>
int emit_recurrence(const RecurrenceRun<S>& run, const std::string& format, const Output& out) {
  if (format == "text") {
    out.write("alpha: " + join(run.alphas()) + "\nbeta: " + join(run.betas()) + "\nstatus: " +
              status_text(run) + "\n");
  } else {
    out.json(to_json(run));
  }
  return run.ok() ? kOk : kMathFailure;
}

// --- cf ------------------------------------------------------------------

struct CfOutcome {
  Json json;
  std::string text;
  int code;
};

CfOutcome compare_cf(const Rational& u, const Rational& v, std::size_t n, int max_depth) {
  auto run = init_run(u, v);
  if (run.ok()) run.extend(n);
  const bool rec_failed = run.failure() && run.failure()->index <= n;
  auto rec_cf = cf_from_run(run);
  if (rec_cf.terms.size() > n) rec_cf.terms.resize(n);

  int depth = std::min(default_depth_for_terms(n), max_depth);
  CFExtraction<Rational> oracle;
  for (;;) {
    oracle = cf_extract_partial(expand_g(u, v, depth), n);
    if (!oracle.exhausted || depth * 2 > max_depth) break;
    depth *= 2;
  }

  std::optional<std::size_t> nonlinear;
  for (std::size_t i = 0; i < oracle.cf.size(); ++i)
    if (oracle.cf.terms[i].a.degree() != 1) {
      nonlinear = i + 1;
      break;
    }

  std::optional<std::size_t> mismatch;
  for (std::size_t i = 1; i <= n; ++i) {
    const bool have_rec = i <= rec_cf.size(), have_orc = i <= oracle.cf.size();
    if (!have_rec || !have_orc) {
      mismatch = i;
      break;
    }
    const auto& a = rec_cf.terms[i - 1];
    const auto& b = oracle.cf.terms[i - 1];
    if (!(a.beta == b.beta) || !(a.a == b.a)) {
      mismatch = i;
      break;
    }
  }

  // the oracle is "terminated" when the remainder vanishes at the largest depth tried
  const bool oracle_terminated = oracle.exhausted && !nonlinear && rec_failed;
  int code = kOk;
  std::string verdict = "AGREE";
  if (mismatch) {
    verdict = "DISAGREE at " + std::to_string(*mismatch);
    if (rec_failed || nonlinear) code = kMathFailure;
    else if (oracle.exhausted) code = kPrecision;
    else code = kNegative;
  }

  Json j;
  j["u"] = u.to_string();
  j["v"] = v.to_string();
  j["n"] = n;
  j["depth"] = depth;
  j["recurrence"] = to_json(run);
  j["recurrence_cf"] = to_json(rec_cf);
  j["oracle_cf"] = to_json(oracle.cf);
  j["oracle_exhausted"] = oracle.exhausted;
  j["oracle_terminated"] = oracle_terminated;
  j["nonlinear_index"] = nonlinear ? Json(*nonlinear) : Json(nullptr);
  j["verdict"] = verdict;

  std::ostringstream t;
  t << "i beta(rec) alpha(rec) | beta(cf) a(cf)\n";
  for (std::size_t i = 1; i <= std::max(rec_cf.size(), oracle.cf.size()); ++i) {
    t << i << ' ';
    if (i <= rec_cf.size()) t << rec_cf.terms[i - 1].beta << ' ' << run.alpha(i);
    else t << "- -";
    t << " | ";
    if (i <= oracle.cf.size()) {
      const auto& term = oracle.cf.terms[i - 1];
      t << term.beta << " [";
      const auto& cs = term.a.coefficients();
      for (std::size_t k = 0; k < cs.size(); ++k) t << (k ? " " : "") << cs[k];
      t << ']';
    } else {
      t << "- -";
    }
    t << '\n';
  }
  if (rec_failed) t << "recurrence: " << status_text(run) << '\n';
  if (nonlinear) t << "nonlinear quotient at " << *nonlinear << '\n';
  if (oracle_terminated) t << "oracle: expansion terminates (remainder vanishes at depth " << depth << ")\n";
  t << verdict << '\n';
  return {std::move(j), t.str(), code};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Continued fractions of g_{u,v}(z) and local conditions for linear partial quotients",
               "mahlercf"};
  app.require_subcommand(1);
  app.set_config("--config", "", "defaults file (key=value lines, [subcommand] sections)");

  std::function<int()> action;
  std::string out_path;
  std::string format = "json";
  unsigned workers = 1;

  auto add_common = [&](CLI::App* sub, bool with_format) {
    sub->add_option("--out", out_path, "write output to this file instead of stdout");
    if (with_format) sub->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text", "csv"}));
  };

  // recurrence
  std::string u_text, v_text;
  std::optional<std::uint64_t> p_opt;
  std::size_t n = 30;
  auto* rec = app.add_subcommand("recurrence", "alpha_i, beta_i over Q or F_p");
  rec->add_option("-u", u_text, "u (integer or n/d)")->required();
  rec->add_option("-v", v_text, "v (integer or n/d)")->required();
  rec->add_option("-p", p_opt, "work mod this odd prime");
  rec->add_option("-n", n, "number of indices")->capture_default_str();
  add_common(rec, true);
  rec->callback([&] {
    action = [&] {
      if (n < 3) throw UsageError("-n must be >= 3");
      const Output o(out, out_path);
      const Rational u = parse_scalar(u_text, "-u"), v = parse_scalar(v_text, "-v");
      if (p_opt) {
        const PrimeModulus p(*p_opt);
        auto run = init_run(to_residue(u, p), to_residue(v, p));
        if (run.ok()) run.extend(n);
        return emit_recurrence(run, format, o);
      }
      auto run = init_run(u, v);
      if (run.ok()) run.extend(n);
      return emit_recurrence(run, format, o);
    };
  });

  // cf
  std::size_t cf_n = 20;
  int max_depth = 0;
  auto* cf = app.add_subcommand("cf", "series continued fraction checked against the recurrence");
  cf->add_option("-u", u_text, "u (integer or n/d)")->required();
  cf->add_option("-v", v_text, "v (integer or n/d)")->required();
  cf->add_option("-n", cf_n, "number of quotients")->capture_default_str();
  cf->add_option("--max-depth", max_depth, "series depth cap (default 8 (2n+4), at least 64)");
  add_common(cf, true);
  cf->callback([&] {
    action = [&] {
      if (cf_n < 1) throw UsageError("-n must be >= 1");
      const int cap = max_depth > 0 ? max_depth : std::max(64, 8 * default_depth_for_terms(cf_n));
      auto outcome = compare_cf(parse_scalar(u_text, "-u"), parse_scalar(v_text, "-v"), cf_n, cap);
      const Output o(out, out_path);
      if (format == "text") o.write(outcome.text);
      else o.json(outcome.json);
      return outcome.code;
    };
  });

  // check
  std::optional<std::uint32_t> primes_max;
  auto* chk = app.add_subcommand("check", "local conditions satisfied by an integer pair");
  chk->add_option("-u", u_text, "u (integer)")->required();
  chk->add_option("-v", v_text, "v (integer)")->required();
  auto* chk_p = chk->add_option("-p", p_opt, "a single prime");
  auto* chk_pm = chk->add_option("--primes-max", primes_max, "scan all primes 3..P");
  chk_p->excludes(chk_pm);
  add_common(chk, false);
  chk->callback([&] {
    action = [&] {
      const auto u = parse_integer(u_text, "-u"), v = parse_integer(v_text, "-v");
      const Output o(out, out_path);
      Json j = {{"u", u}, {"v", v}};
      if (p_opt) {
        const PrimeModulus p(*p_opt);
        const auto ws = check_pair(u, v, p);
        Json arr = Json::array();
        for (const auto& w : ws) arr.push_back(to_json(w));
        j["p"] = p.value();
        j["witnesses"] = std::move(arr);
        o.json(j);
        return ws.empty() ? kNegative : kOk;
      }
      const std::uint32_t pmax = primes_max.value_or(1000);
      const auto primes = primes_between(3, pmax);
      const auto w = covered(u, v, primes);
      j["primes_max"] = pmax;
      j["witness"] = w ? to_json(*w) : Json(nullptr);
      o.json(j);
      return w ? kOk : kNegative;
    };
  });

  // scan
  std::uint32_t p_min = 3, p_max = 13;
  std::size_t horizon = kDefaultHorizon;
  auto* scn = app.add_subcommand("scan", "survivor scan over F_p^2 against the condition pairs");
  scn->add_option("--p-min", p_min)->capture_default_str();
  scn->add_option("--p-max", p_max)->capture_default_str();
  scn->add_option("-N", horizon, "recurrence horizon")->capture_default_str();
  scn->add_option("--workers", workers, "worker threads (0 = all cores)")->capture_default_str();
  add_common(scn, true);
  scn->callback([&] {
    action = [&] {
      if (p_min > p_max) throw UsageError("--p-min must not exceed --p-max");
      if (horizon < 3) throw UsageError("-N must be >= 3");
      const auto summary = scan_range(p_min, p_max, horizon, workers);
      const Output o(out, out_path);
      if (format == "csv") {
        std::ostringstream os;
        bool header = true;
        for (const auto& r : summary.results) {
          write_scan_csv(os, r, header);
          header = false;
        }
        o.write(os.str());
      } else {
        o.json(to_json(summary));
      }
      if (summary.total_missing > 0) return kMathFailure;
      return summary.total_extra > 0 ? kNegative : kOk;
    };
  });

  // density
  std::int64_t bound = 100;
  std::uint32_t density_pmax = 1000;
  auto* den = app.add_subcommand("density", "fraction of [-B,B]^2 covered by some condition");
  den->add_option("-B", bound, "box half-width")->capture_default_str();
  den->add_option("--primes-max", density_pmax)->capture_default_str();
  den->add_option("--workers", workers, "worker threads (0 = all cores)")->capture_default_str();
  add_common(den, false);
  den->callback([&] {
    action = [&] {
      if (bound < 0) throw UsageError("-B must be >= 0");
      if (density_pmax < 3) throw UsageError("--primes-max must be >= 3");
      Output(out, out_path).json(to_json(density(bound, density_pmax, workers)));
      return kOk;
    };
  });

  // verify-lemma
  std::string lemma_text;
  std::optional<std::uint32_t> phi, delta, lemma_u;
  int sign = 1;
  std::size_t blocks = 100;
  bool all_instances = false;
  auto* ver = app.add_subcommand("verify-lemma", "check a lemma's congruence pattern mod p");
  ver->add_option("--lemma", lemma_text, "1..7 or L1..L7");
  ver->add_option("-p", p_opt, "odd prime")->required();
  ver->add_option("--phi", phi);
  ver->add_option("--delta", delta);
  ver->add_option("-u", lemma_u, "u residue (lemmas 1 and 2)");
  ver->add_option("--sign", sign, "+1 or -1")->capture_default_str();
  ver->add_option("-K", blocks, "check indices up to 9K+9")->capture_default_str();
  ver->add_flag("--all", all_instances, "every instance generated from the condition pairs at p");
  add_common(ver, false);
  ver->callback([&] {
    action = [&] {
      const PrimeModulus p(*p_opt);
      const Output o(out, out_path);
      if (all_instances) {
        Json arr = Json::array();
        bool pass = true;
        for (const auto& [pair, ws] : satisfying_pairs(p)) {
          for (const auto& w : ws) {
            const auto rep = verify_lemma(spec_from_witness(w, blocks));
            pass = pass && rep.pass;
            arr.push_back(to_json(rep));
          }
        }
        o.json({{"p", p.value()}, {"pass", pass}, {"reports", std::move(arr)}});
        return pass ? kOk : kMathFailure;
      }
      if (lemma_text.empty()) throw UsageError("--lemma is required unless --all is given");
      LemmaSpec spec = [&] {
        try {
          return make_lemma_spec(parse_lemma(lemma_text), p, lemma_u, phi, delta, sign, blocks);
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
      }();
      const auto rep = verify_lemma(spec);
      Json j = to_json(rep);
      if (rep.pass) {
        Json cat = Json::array();
        for (auto b : nonzero_beta_catalog(spec)) cat.push_back(b);
        j["beta_catalog"] = std::move(cat);
      }
      o.json(j);
      return rep.pass ? kOk : kMathFailure;
    };
  });

  // mu
  std::size_t mu_n = 50;
  std::optional<std::size_t> window_begin;
  auto* mu = app.add_subcommand("mu", "finite-depth estimate of 1 + limsup d_{k+1}/d_k");
  mu->add_option("-u", u_text)->required();
  mu->add_option("-v", v_text)->required();
  mu->add_option("-n", mu_n, "number of quotients")->capture_default_str();
  mu->add_option("--window-begin", window_begin, "first k of the window (default n/2)");
  add_common(mu, false);
  mu->callback([&] {
    action = [&] {
      if (mu_n < 2) throw UsageError("-n must be >= 2");
      const Rational u = parse_scalar(u_text, "-u"), v = parse_scalar(v_text, "-v");
      auto run = init_run(u, v);
      if (run.ok()) run.extend(mu_n);
      CFExpansion<Rational> expansion;
      std::string source = "recurrence";
      if (run.ok()) {
        expansion = cf_from_run(run);
      } else {
        // nonlinear quotients: take degrees from the series expansion instead
        source = "series";
        int depth = default_depth_for_terms(mu_n);
        for (;;) {
          auto part = cf_extract_partial(expand_g(u, v, depth), mu_n);
          expansion = std::move(part.cf);
          if (!part.exhausted || depth > 64 * default_depth_for_terms(mu_n)) break;
          depth *= 2;
        }
      }
      const std::size_t kmax = expansion.size();
      if (kmax < 2) throw InsufficientDepth("fewer than two quotients available", kmax);
      const auto degrees = denominator_degrees(expansion, kmax);
      const std::size_t begin = window_begin.value_or(kmax / 2);
      const Rational est = mu_estimate(degrees, begin, kmax - 1);
      Json j = {{"u", u.to_string()}, {"v", v.to_string()}, {"n", kmax}, {"source", source},
                {"degrees", degrees}, {"window", {begin, kmax - 1}}, {"estimate", est.to_string()},
                {"estimate_approx", est.raw().get_d()},
                {"label", "estimate at depth " + std::to_string(kmax)},
                {"recurrence_status", run.ok() ? Json("Ok") : Json(status_text(run))}};
      Output(out, out_path).json(j);
      return run.ok() ? kOk : kMathFailure;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    for (auto* sub : app.get_subcommands()) err << sub->help();
    if (app.get_subcommands().empty()) err << app.help();
    return kUsage;
  }

  try {
    return action();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NotPrime& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InsufficientDepth& e) {
    err << "error: " << e.what() << "\n";
    return kPrecision;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kMathFailure;
  }
}

}  // namespace mahlercf::cli
