#pragma once

// Exhaustive experiments over residues and integer pairs:
//  - scan_prime: which (u, v) in F_p^2 survive N recurrence steps without a
//    zero beta, compared with the pairs the local conditions predict;
//  - density: the fraction of integer pairs in [-B, B]^2 covered by some
//    condition at some prime <= prime_max.
//
// Work is split into independent shards (rows of u) that are merged in a
// fixed order, so results do not depend on the worker count.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <vector>

#include "mahlercf/conditions.hpp"
#include "mahlercf/field.hpp"

namespace mahlercf {

inline constexpr std::size_t kDefaultHorizon = 10'000;

struct ScanResult {
  std::uint32_t p = 0;
  std::size_t max_index = 0;
  /// first_zero[u * p + v]: first index with beta = 0, or nullopt if it survived.
  std::vector<std::optional<std::uint32_t>> first_zero;
  std::vector<ResiduePair> survivors;        // sorted
  std::vector<ResiduePair> condition_pairs;  // sorted
  std::vector<ResiduePair> extra_survivors;  // survivors \ condition_pairs
  std::vector<ResiduePair> missing;          // condition_pairs \ survivors

  [[nodiscard]] std::optional<std::uint32_t> first_zero_of(std::uint32_t u, std::uint32_t v) const {
    return first_zero.at(static_cast<std::size_t>(u) * p + v);
  }
};

struct ScanSummary {
  std::vector<ScanResult> results;
  std::size_t primes_scanned = 0;
  std::size_t total_extra = 0;    // candidate new local conditions
  std::size_t total_missing = 0;  // would contradict the theorem: a bug
};

struct DensityReport {
  std::int64_t bound = 0;
  std::uint32_t prime_max = 0;
  std::uint64_t total = 0;
  std::uint64_t covered = 0;
  Rational fraction;
};

/// Runs `shards` independent jobs on up to `workers` threads (0 = hardware).
void run_sharded(std::size_t shards, unsigned workers, const std::function<void(std::size_t)>& job);

ScanResult scan_prime(PrimeModulus p, std::size_t max_index = kDefaultHorizon, unsigned workers = 1);

ScanSummary scan_range(std::uint32_t p_min, std::uint32_t p_max, std::size_t max_index = kDefaultHorizon,
                       unsigned workers = 1);

/// Per-prime membership bitmaps of the condition pairs, for fast probing.
class CoverageTable {
 public:
  explicit CoverageTable(std::uint32_t prime_max);

  /// Index into primes() of the first prime with a condition for (u, v).
  [[nodiscard]] std::optional<std::size_t> first_covering(std::int64_t u, std::int64_t v) const;
  [[nodiscard]] const std::vector<std::uint32_t>& primes() const noexcept { return primes_; }

 private:
  std::vector<std::uint32_t> primes_;
  std::vector<std::vector<bool>> member_;  // member_[j][u * p + v]
};

DensityReport density(std::int64_t bound, std::uint32_t prime_max, unsigned workers = 1);

/// CSV rows "p,u,v,first_zero_index" with "survived" for survivors.
void write_scan_csv(std::ostream& os, const ScanResult& r, bool header = true);

}  // namespace mahlercf
