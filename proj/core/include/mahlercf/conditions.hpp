#pragma once

// The seven local conditions on (u, v) mod p which force every beta_i of the
// recurrence to be nonzero, hence all partial quotients of g_{u,v} linear:
//
//   C1  u^2 = 3,  v = 1
//   C2  u^2 = -3, v = -1
//   C3  u = +-phi, v = 0,        phi^2 + phi + 1 = 0
//   C4  u = +-phi, v = -1,       phi^4 + 4 phi^2 + 1 = 0
//   C5  u = +-phi, v = delta,    delta^2 - delta + 1 = 0, phi^2 = 2 delta
//   C6  u = 0,     v = +-delta,  delta^2 + delta + 1 = 0
//   C7  u = +-2 delta^2, v = delta, delta^2 + delta + 1 = 0, p != 3
//
// all congruences mod an odd prime p.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mahlercf/field.hpp"

namespace mahlercf {

enum class ConditionCase { C1 = 1, C2, C3, C4, C5, C6, C7 };

inline constexpr std::array kAllCases{ConditionCase::C1, ConditionCase::C2, ConditionCase::C3,
                                      ConditionCase::C4, ConditionCase::C5, ConditionCase::C6,
                                      ConditionCase::C7};

std::string to_string(ConditionCase c);
/// Accepts "C3" or "3".
ConditionCase parse_condition_case(const std::string& text);

using ResiduePair = std::pair<std::uint32_t, std::uint32_t>;

struct ConditionWitness {
  ConditionCase case_id;
  std::uint32_t p;
  std::optional<std::uint32_t> phi;
  std::optional<std::uint32_t> delta;
  std::uint32_t u;  // residue
  std::uint32_t v;  // residue

  friend bool operator==(const ConditionWitness&, const ConditionWitness&) = default;
};

/// Re-checks the defining congruences of a witness by direct evaluation.
bool witness_is_valid(const ConditionWitness& w);

/// Every condition satisfied by (u mod p, v mod p), in case order.
std::vector<ConditionWitness> check_pair(std::int64_t u, std::int64_t v, PrimeModulus p);

/// All residue pairs satisfying at least one condition, built from the roots of
/// the parameter polynomials. Keys are sorted; values list every witness.
std::map<ResiduePair, std::vector<ConditionWitness>> satisfying_pairs(PrimeModulus p);

/// First witness over `primes` in ascending order.
std::optional<ConditionWitness> covered(std::int64_t u, std::int64_t v,
                                        std::span<const std::uint32_t> primes);

}  // namespace mahlercf
