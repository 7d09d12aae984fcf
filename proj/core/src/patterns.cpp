#include "mahlercf/patterns.hpp"

#include <stdexcept>

#include "mahlercf/recurrence.hpp"

namespace mahlercf {

std::string to_string(Lemma l) { return "L" + std::to_string(static_cast<int>(l)); }

Lemma parse_lemma(const std::string& text) {
  std::string digits = text;
  if (!digits.empty() && (digits[0] == 'L' || digits[0] == 'l')) digits.erase(0, 1);
  if (digits.size() == 1 && digits[0] >= '1' && digits[0] <= '7')
    return static_cast<Lemma>(digits[0] - '0');
  throw std::invalid_argument("unknown lemma '" + text + "'");
}

namespace {

struct Fp {
  std::uint64_t p;
  [[nodiscard]] std::uint64_t c(std::int64_t x) const {
    const auto m = static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(((x % m) + m) % m);
  }
  [[nodiscard]] std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p; }
  [[nodiscard]] std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p - b) % p; }
  [[nodiscard]] std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return a * b % p; }
  [[nodiscard]] std::uint64_t neg(std::uint64_t a) const { return (p - a) % p; }
  [[nodiscard]] std::uint64_t inv(std::uint64_t a) const {
    return inverse_mod(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(p));
  }
  [[nodiscard]] std::uint64_t div(std::uint64_t a, std::uint64_t b) const { return mul(a, inv(b)); }
  [[nodiscard]] std::uint64_t signed_(int sign, std::uint64_t a) const { return sign < 0 ? neg(a) : a; }
};

std::uint32_t u32(std::uint64_t x) { return static_cast<std::uint32_t>(x); }

// Parameters of the lemma in its stated (positive-sign) frame.
struct Frame {
  Fp f;
  std::uint64_t u, v, phi, delta;
};

Frame canonical_frame(const LemmaSpec& s) {
  const Fp f{s.p.value()};
  Frame fr{f, s.u, s.v, s.phi.value_or(0), s.delta.value_or(0)};
  switch (s.lemma) {
    case Lemma::L3:
    case Lemma::L4:
    case Lemma::L5:
      fr.u = fr.phi;
      break;
    case Lemma::L6:
      fr.v = fr.delta;
      break;
    case Lemma::L7:
      fr.u = f.mul(2, f.mul(fr.delta, fr.delta));
      break;
    default:
      break;
  }
  return fr;
}

// The symmetry is an involution, so the same map converts both ways.
std::uint64_t map_alpha(const LemmaSpec& s, const Fp& f, std::uint64_t a) {
  return s.lemma == Lemma::L6 ? a : f.signed_(s.sign, a);
}
std::uint64_t map_beta(const LemmaSpec& s, const Fp& f, std::size_t i, std::uint64_t b) {
  return (s.lemma == Lemma::L6 && i >= 2) ? f.signed_(s.sign, b) : b;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("lemma hypothesis fails: " + what);
}

}  // namespace

LemmaSpec make_lemma_spec(Lemma lemma, PrimeModulus p, std::optional<std::uint32_t> u,
                          std::optional<std::uint32_t> phi, std::optional<std::uint32_t> delta,
                          int sign, std::size_t depth_blocks) {
  const Fp f{p.value()};
  require(sign == 1 || sign == -1, "sign must be +1 or -1");
  LemmaSpec s{lemma, p, std::nullopt, std::nullopt, sign, 0, 0, depth_blocks};
  auto need = [](const std::optional<std::uint32_t>& x, const char* name) {
    require(x.has_value(), std::string(name) + " is required");
    return *x;
  };
  auto cyc3 = [&f](std::uint64_t x) { return f.add(f.add(f.mul(x, x), x), 1) == 0; };

  switch (lemma) {
    case Lemma::L1:
    case Lemma::L2: {
      const std::uint64_t uu = f.c(need(u, "u"));
      const bool first = lemma == Lemma::L1;
      require(f.mul(uu, uu) == f.c(first ? 3 : -3), first ? "u^2 = 3" : "u^2 = -3");
      s.sign = 1;
      s.u = u32(uu);
      s.v = u32(f.c(first ? 1 : -1));
      break;
    }
    case Lemma::L3: {
      const std::uint64_t ph = f.c(need(phi, "phi"));
      require(cyc3(ph), "phi^2 + phi + 1 = 0");
      s.phi = u32(ph);
      s.u = u32(f.signed_(sign, ph));
      s.v = 0;
      break;
    }
    case Lemma::L4: {
      const std::uint64_t ph = f.c(need(phi, "phi"));
      const auto ph2 = f.mul(ph, ph);
      require(f.add(f.add(f.mul(ph2, ph2), f.mul(4, ph2)), 1) == 0, "phi^4 + 4 phi^2 + 1 = 0");
      s.phi = u32(ph);
      s.u = u32(f.signed_(sign, ph));
      s.v = u32(f.c(-1));
      break;
    }
    case Lemma::L5: {
      const std::uint64_t ph = f.c(need(phi, "phi"));
      const std::uint64_t de = f.c(need(delta, "delta"));
      require(f.add(f.sub(f.mul(de, de), de), 1) == 0, "delta^2 - delta + 1 = 0");
      require(f.mul(ph, ph) == f.mul(2, de), "phi^2 = 2 delta");
      s.phi = u32(ph);
      s.delta = u32(de);
      s.u = u32(f.signed_(sign, ph));
      s.v = u32(de);
      break;
    }
    case Lemma::L6: {
      const std::uint64_t de = f.c(need(delta, "delta"));
      require(cyc3(de), "delta^2 + delta + 1 = 0");
      s.delta = u32(de);
      s.u = 0;
      s.v = u32(f.signed_(sign, de));
      break;
    }
    case Lemma::L7: {
      require(p.value() != 3, "p != 3");
      const std::uint64_t de = f.c(need(delta, "delta"));
      require(cyc3(de), "delta^2 + delta + 1 = 0");
      s.delta = u32(de);
      s.u = u32(f.signed_(sign, f.mul(2, f.mul(de, de))));
      s.v = u32(de);
      break;
    }
  }
  return s;
}

LemmaSpec spec_from_witness(const ConditionWitness& w, std::size_t depth_blocks) {
  const PrimeModulus p(w.p);
  const Fp f{w.p};
  const auto lemma = static_cast<Lemma>(static_cast<int>(w.case_id));
  switch (w.case_id) {
    case ConditionCase::C1:
    case ConditionCase::C2:
      return make_lemma_spec(lemma, p, w.u, {}, {}, 1, depth_blocks);
    case ConditionCase::C3:
    case ConditionCase::C4:
    case ConditionCase::C5:
      return make_lemma_spec(lemma, p, {}, w.phi, w.delta, w.u == *w.phi ? 1 : -1, depth_blocks);
    case ConditionCase::C6:
      return make_lemma_spec(lemma, p, {}, {}, w.delta, w.v == *w.delta ? 1 : -1, depth_blocks);
    case ConditionCase::C7: {
      const auto t = f.mul(2, f.mul(*w.delta, *w.delta));
      return make_lemma_spec(lemma, p, {}, {}, w.delta, w.u == t ? 1 : -1, depth_blocks);
    }
  }
  throw std::invalid_argument("unknown condition case");
}

LemmaReport verify_lemma_on_run(const LemmaSpec& spec, std::span<const std::uint32_t> alphas,
                                std::span<const std::uint32_t> betas) {
  LemmaReport report{spec, false, std::nullopt};
  const Frame fr = canonical_frame(spec);
  const Fp& f = fr.f;
  const std::uint64_t u = fr.u, v = fr.v, phi = fr.phi, delta = fr.delta;
  const std::size_t n = spec.max_index();
  const std::size_t available = std::min({alphas.size(), betas.size(), n});

  // canonical-frame copies, 1-based
  std::vector<std::uint64_t> A(available + 1), B(available + 1);
  for (std::size_t i = 1; i <= available; ++i) {
    A[i] = map_alpha(spec, f, alphas[i - 1]);
    B[i] = map_beta(spec, f, i, betas[i - 1]);
  }

  const std::uint64_t third = spec.lemma == Lemma::L7 ? f.inv(3) : 0;
  const std::uint64_t ninth = f.mul(third, third);

  std::optional<PatternViolation> bad;
  auto expect = [&](std::size_t i, bool is_alpha, std::uint64_t expected, const char* rule) {
    if (bad) return;
    const std::uint64_t actual = is_alpha ? A[i] : B[i];
    if (actual == expected % f.p) return;
    const std::uint64_t exp_out = is_alpha ? map_alpha(spec, f, expected % f.p)
                                           : map_beta(spec, f, i, expected % f.p);
    const std::uint64_t act_out = is_alpha ? alphas[i - 1] : betas[i - 1];
    bad = PatternViolation{i, is_alpha ? "alpha" : "beta", rule, u32(exp_out), u32(act_out)};
  };
  // alpha_{i-1} + alpha_i at i = 3k+3 (and the beta analogue at i = 3k+5)
  auto expect_pair_sum = [&](std::size_t i, bool is_alpha, std::uint64_t total, const char* rule) {
    if (bad) return;
    const std::uint64_t other = is_alpha ? A[i - 1] : B[i - 1];
    expect(i, is_alpha, f.sub(total, other), rule);
  };

  const std::uint64_t phi2 = f.mul(phi, phi);
  const std::uint64_t u2_minus_v = f.sub(f.mul(u, u), v);

  for (std::size_t i = 1; i <= n && !bad; ++i) {
    if (i > available) {
      bad = PatternViolation{i, "run", "recurrence produced no value (a beta vanished)", std::nullopt,
                             std::nullopt};
      break;
    }
    const std::size_t r = (i - 1) % 9 + 1;  // i = 9k + r
    const std::size_t k = (i - r) / 9;

    // shared by all lemmas
    if (i % 3 == 1) expect(i, true, f.neg(u), "alpha_{3k+1} = -u");
    if (i % 3 == 0) expect_pair_sum(i, true, u, "alpha_{3k+2} + alpha_{3k+3} = u");
    if (i == 1) expect(i, false, 1, "beta_1 = 1");
    if (i == 2) expect(i, false, u2_minus_v, "beta_2 = u^2 - v");

    switch (spec.lemma) {
      case Lemma::L1:
        if (r == 2) expect(i, true, u, "alpha_{9k+2} = u");
        if (r == 3) expect(i, true, 0, "alpha_{9k+3} = 0");
        if (r == 5) expect(i, true, A[3 * k + 3], "alpha_{9k+5} = alpha_{3k+3}");
        if (r == 6) expect(i, true, A[3 * k + 2], "alpha_{9k+6} = alpha_{3k+2}");
        if (r == 8) expect(i, true, 0, "alpha_{9k+8} = 0");
        if (r == 9) expect(i, true, u, "alpha_{9k+9} = u");
        if (i == 2) expect(i, false, 2, "beta_2 = 2");
        if (i >= 3) expect(i, false, 1, "beta_{k+3} = 1");
        break;

      case Lemma::L2:
        if (r == 2) expect(i, true, 0, "alpha_{9k+2} = 0");
        if (r == 5) expect(i, true, A[3 * k + 2], "alpha_{9k+5} = alpha_{3k+2}");
        if (r == 8) expect(i, true, u, "alpha_{9k+8} = u");
        if (i == 2) expect(i, false, f.c(-2), "beta_2 = -2");
        if (i >= 3) expect(i, false, f.c(-1), "beta_{k+3} = -1");
        break;

      case Lemma::L3:
        if (r == 2) expect(i, true, f.c(-1), "alpha_{9k+2} = -1");
        if (r == 5) expect(i, true, A[3 * k + 2], "alpha_{9k+5} = alpha_{3k+2}");
        if (r == 8) expect(i, true, f.neg(phi2), "alpha_{9k+8} = -phi^2");
        if (i == 2) expect(i, false, phi2, "beta_2 = phi^2");
        if (i % 3 == 0) expect(i, false, f.neg(phi2), "beta_{3k+3} = -phi^2");
        if (i >= 5 && i % 3 == 2) expect_pair_sum(i, false, phi2, "beta_{3k+4} + beta_{3k+5} = phi^2");
        if (r == 1 && k >= 1) expect(i, false, B[3 * k + 1], "beta_{9k+1} = beta_{3k+1}");
        if (r == 4) expect(i, false, f.neg(phi), "beta_{9k+4} = -phi");
        if (r == 7) expect(i, false, f.c(-1), "beta_{9k+7} = -1");
        break;

      case Lemma::L4: {
        const auto phi_inv = f.inv(phi);
        if (r == 2) expect(i, true, f.neg(phi_inv), "alpha_{9k+2} = -1/phi");
        if (r == 5) expect(i, true, A[3 * k + 3], "alpha_{9k+5} = alpha_{3k+3}");
        if (r == 8) expect(i, true, f.add(phi, phi_inv), "alpha_{9k+8} = phi + 1/phi");
        if (i == 2) expect(i, false, f.add(phi2, 1), "beta_2 = phi^2 + 1");
        if (i % 3 == 0) expect(i, false, f.mul(phi_inv, phi_inv), "beta_{3k+3} = phi^-2");
        if (i >= 5 && i % 3 == 2)
          expect_pair_sum(i, false, f.add(phi2, 1), "beta_{3k+4} + beta_{3k+5} = phi^2 + 1");
        if (r == 1 && k >= 1) expect(i, false, B[3 * k + 1], "beta_{9k+1} = beta_{3k+1}");
        if (r == 4) expect(i, false, phi2, "beta_{9k+4} = phi^2");
        if (r == 7) expect(i, false, 1, "beta_{9k+7} = 1");
        break;
      }

      case Lemma::L5:
        if (r == 2) expect(i, true, f.div(phi, delta), "alpha_{9k+2} = phi/delta");
        if (r == 5) expect(i, true, A[3 * k + 3], "alpha_{9k+5} = alpha_{3k+3}");
        if (r == 8) expect(i, true, f.mul(phi, delta), "alpha_{9k+8} = phi delta");
        if (i == 2) expect(i, false, delta, "beta_2 = delta");
        if (i % 3 == 0) expect(i, false, f.neg(delta), "beta_{3k+3} = -delta");
        if (i >= 5 && i % 3 == 2) expect_pair_sum(i, false, delta, "beta_{3k+4} + beta_{3k+5} = delta");
        if (r == 1 && k >= 1) expect(i, false, B[3 * k + 1], "beta_{9k+1} = beta_{3k+1}");
        if (r == 4) expect(i, false, f.neg(f.inv(delta)), "beta_{9k+4} = -1/delta");
        if (r == 7) expect(i, false, 1, "beta_{9k+7} = 1");
        break;

      case Lemma::L6:
        expect(i, true, 0, "alpha_k = 0");
        if (i == 2) expect(i, false, f.neg(delta), "beta_2 = -delta");
        if (i % 3 == 0) expect(i, false, delta, "beta_{3k+3} = delta");
        if (i >= 5 && i % 3 == 2) expect_pair_sum(i, false, f.neg(delta), "beta_{3k+4} + beta_{3k+5} = -delta");
        if (r == 1 && k >= 1) expect(i, false, B[3 * k + 1], "beta_{9k+1} = beta_{3k+1}");
        if (r == 4) expect(i, false, f.inv(delta), "beta_{9k+4} = 1/delta");
        if (r == 7) expect(i, false, 1, "beta_{9k+7} = 1");
        break;

      case Lemma::L7: {
        const auto d = delta;
        const auto minus_d_third = f.neg(f.mul(d, third));
        if (r == 2) expect(i, true, f.neg(f.mul(f.add(f.mul(2, d), 4), third)), "alpha_{9k+2} = -(2 delta + 4)/3");
        if (r == 5) expect(i, true, f.mul(f.add(u, A[3 * k + 2]), third), "alpha_{9k+5} = (u + alpha_{3k+2})/3");
        if (r == 8) expect(i, true, f.neg(f.mul(f.add(f.mul(4, d), 2), third)), "alpha_{9k+8} = -(4 delta + 2)/3");
        // first block as tabulated in the base case
        if (i == 5) expect(i, true, f.neg(f.mul(f.add(f.mul(8, d), 10), ninth)), "alpha_5 = -(8 delta + 10)/9");
        if (i == 6) expect(i, true, f.neg(f.mul(f.add(f.mul(10, d), 8), ninth)), "alpha_6 = -(10 delta + 8)/9");
        if (i == 6) expect(i, false, f.neg(f.mul(d, f.mul(ninth, third))), "beta_6 = -delta/27");
        if (i == 2) expect(i, false, f.mul(3, d), "beta_2 = 3 delta");
        if (i >= 5 && i % 3 == 2) expect_pair_sum(i, false, f.mul(3, d), "beta_{3k+4} + beta_{3k+5} = 3 delta");
        if (r == 1 && k >= 1) expect(i, false, B[3 * k + 1], "beta_{9k+1} = beta_{3k+1}");
        if (r == 4) expect(i, false, f.neg(f.div(3, d)), "beta_{9k+4} = -3/delta");
        if (r == 7) expect(i, false, f.c(-3), "beta_{9k+7} = -3");
        if (r == 3) expect(i, false, minus_d_third, "beta_{9k+3} = -delta/3");
        if (r == 6) expect(i, false, f.mul(B[3 * k + 3], ninth), "beta_{9k+6} = beta_{3k+3}/9");
        if (r == 9) expect(i, false, minus_d_third, "beta_{9k+9} = -delta/3");
        break;
      }
    }
  }

  report.violation = bad;
  report.pass = !bad.has_value();
  return report;
}

LemmaReport verify_lemma(const LemmaSpec& spec) {
  auto run = ResidueRun::init(PrimeFieldElement(spec.u, spec.p), PrimeFieldElement(spec.v, spec.p));
  if (run.ok()) run.extend(spec.max_index());
  std::vector<std::uint32_t> alphas, betas;
  for (const auto& a : run.alphas()) alphas.push_back(a.residue());
  for (const auto& b : run.betas()) betas.push_back(b.residue());
  // a recorded zero beta is not a usable value
  if (run.failure()) betas.resize(std::min(betas.size(), run.failure()->index - 1));
  auto report = verify_lemma_on_run(spec, alphas, betas);
  if (report.violation && report.violation->quantity == "run" && run.failure()) {
    report.violation->rule = "recurrence failed with " + to_string(run.failure()->cause);
    report.violation->index = run.failure()->index;
    report.violation->actual = 0;
  }
  return report;
}

std::set<std::uint32_t> nonzero_beta_catalog(const LemmaSpec& spec) {
  const Frame fr = canonical_frame(spec);
  const Fp& f = fr.f;
  const std::uint64_t phi = fr.phi, d = fr.delta;
  std::vector<std::uint64_t> base;
  switch (spec.lemma) {
    case Lemma::L1: base = {1}; break;
    case Lemma::L2: base = {f.c(-1)}; break;
    case Lemma::L3: base = {f.c(-1), f.neg(phi), f.neg(f.mul(phi, phi))}; break;
    case Lemma::L4: {
      const auto phi2 = f.mul(phi, phi);
      base = {f.inv(phi2), phi2, 1};
      break;
    }
    case Lemma::L5: base = {f.neg(d), f.neg(f.inv(d)), 1}; break;
    case Lemma::L6: base = {d, f.inv(d), 1}; break;
    case Lemma::L7: {
      const auto third = f.inv(3);
      const auto ninth = f.mul(third, third);
      std::uint64_t scaled = f.neg(f.mul(d, third));
      base = {scaled, f.neg(f.div(3, d)), f.c(-3)};
      // beta_{9k+6} = beta_{3k+3}/9 nests: indices 3, 6, 15, 42, ... carry -delta/3 * 9^-j
      for (std::size_t idx = 3; 3 * idx - 3 <= spec.max_index(); idx = 3 * idx - 3) {
        scaled = f.mul(scaled, ninth);
        base.push_back(scaled);
      }
      break;
    }
  }
  std::set<std::uint32_t> out;
  for (auto b : base) {
    const auto actual = map_beta(spec, f, 3, b);
    if (actual == 0) throw std::logic_error("catalog value is zero mod p");
    out.insert(u32(actual));
  }
  return out;
}

}  // namespace mahlercf
