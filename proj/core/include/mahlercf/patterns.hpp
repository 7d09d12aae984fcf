#pragma once

// Checks the periodic congruence patterns that the recurrence follows mod p
// under each local condition (lemmas L1..L7, one per condition C1..C7).
//
// Sign variants. The recurrence has two exact symmetries:
//   (u, v) -> (-u, v)      maps alpha_i -> -alpha_i and leaves beta_i fixed;
//   (0, v) -> (0, -v)      maps beta_i -> -beta_i for i >= 2.
// Each lemma is stated for one sign (u = phi, u = 2 delta^2, v = delta). For
// the opposite sign the run is mapped back through the symmetry first, so
// the same pattern table applies.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "mahlercf/conditions.hpp"
#include "mahlercf/field.hpp"

namespace mahlercf {

enum class Lemma { L1 = 1, L2, L3, L4, L5, L6, L7 };

std::string to_string(Lemma l);
Lemma parse_lemma(const std::string& text);

struct LemmaSpec {
  Lemma lemma;
  PrimeModulus p;
  std::optional<std::uint32_t> phi;
  std::optional<std::uint32_t> delta;
  /// +1 or -1: which side of the +- in the hypothesis.
  int sign = 1;
  std::uint32_t u = 0;  // residues of the pair under test
  std::uint32_t v = 0;
  /// Indices 1..9K+9 are checked.
  std::size_t depth_blocks = 100;

  [[nodiscard]] std::size_t max_index() const { return 9 * depth_blocks + 9; }
};

/// Builds a spec from lemma parameters, validating the hypothesis congruences.
///  L1, L2: `u` is required (phi/delta unused).
///  L3, L4: `phi`;  L5: `phi` and `delta`;  L6, L7: `delta`.
/// Throws std::invalid_argument when the hypothesis fails.
LemmaSpec make_lemma_spec(Lemma lemma, PrimeModulus p, std::optional<std::uint32_t> u,
                          std::optional<std::uint32_t> phi, std::optional<std::uint32_t> delta,
                          int sign, std::size_t depth_blocks);

/// The spec matching a condition witness (C_i -> L_i).
LemmaSpec spec_from_witness(const ConditionWitness& w, std::size_t depth_blocks);

struct PatternViolation {
  std::size_t index = 0;
  /// "alpha", "beta", or "run" when the recurrence itself failed.
  std::string quantity;
  std::string rule;
  std::optional<std::uint32_t> expected;
  std::optional<std::uint32_t> actual;
};

struct LemmaReport {
  LemmaSpec spec;
  bool pass = false;
  std::optional<PatternViolation> violation;
};

/// Runs the recurrence mod p to 9K+9 and checks every congruence of the lemma.
LemmaReport verify_lemma(const LemmaSpec& spec);

/// Checks already-computed residues (alphas[i-1] = alpha_i). Used directly by
/// the mutation tests.
LemmaReport verify_lemma_on_run(const LemmaSpec& spec, std::span<const std::uint32_t> alphas,
                                std::span<const std::uint32_t> betas);

/// The finite set (as residues of the run under test) that the lemma forces
/// beta_i, i >= 3, into. For L7 the rescaled values beta/9^j are generated up
/// to spec.max_index(). Throws std::logic_error if any member is zero.
std::set<std::uint32_t> nonzero_beta_catalog(const LemmaSpec& spec);

}  // namespace mahlercf
