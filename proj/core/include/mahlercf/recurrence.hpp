#pragma once

// Generator for the constants (alpha_i, beta_i) of the renormalised continued
// fraction of g_{u,v}(z) = z^{-1} prod_t (1 + u z^{-3^t} + v z^{-2*3^t}).
// When every beta_i is nonzero, every partial quotient is a_i(z) = z + alpha_i.
//
// Indices are 1-based to match the usual subscripts: alpha(1) is alpha_1.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mahlercf/field.hpp"

namespace mahlercf {

enum class FailureCause { BetaZero, DivisionByZero };

std::string to_string(FailureCause cause);

struct Failure {
  std::size_t index;
  FailureCause cause;
  friend bool operator==(const Failure&, const Failure&) = default;
};

struct ExtendAfterFailure : std::logic_error {
  ExtendAfterFailure() : std::logic_error("cannot extend a recurrence run that has failed") {}
};

/// The evolving (alpha_i, beta_i) sequences plus failure status.
///
/// On a beta-zero failure at index i the zero is recorded as beta_i and the
/// run stops. alpha_i is recorded too when it precedes beta_i in the step
/// (indices 3k+1 and 3k+3); at indices 3k+2 alpha_i divides by beta_i and is
/// therefore absent, so alpha_count() == beta_count() - 1.
template <FieldScalar S>
class RecurrenceRun {
 public:
  /// Initial block alpha_1..3, beta_1..3.
  static RecurrenceRun init(S u, S v);

  /// Appends entries one index at a time until `target_len` or failure.
  void extend(std::size_t target_len);

  [[nodiscard]] const S& u() const noexcept { return u_; }
  [[nodiscard]] const S& v() const noexcept { return v_; }

  [[nodiscard]] const S& alpha(std::size_t i) const { return alphas_.at(i - 1); }
  [[nodiscard]] const S& beta(std::size_t i) const { return betas_.at(i - 1); }
  [[nodiscard]] std::span<const S> alphas() const noexcept { return alphas_; }
  [[nodiscard]] std::span<const S> betas() const noexcept { return betas_; }

  /// Number of complete (alpha_i, beta_i) pairs.
  [[nodiscard]] std::size_t size() const noexcept { return alphas_.size() < betas_.size() ? alphas_.size() : betas_.size(); }
  [[nodiscard]] std::size_t beta_count() const noexcept { return betas_.size(); }
  [[nodiscard]] std::size_t alpha_count() const noexcept { return alphas_.size(); }

  [[nodiscard]] bool ok() const noexcept { return !failure_.has_value(); }
  [[nodiscard]] const std::optional<Failure>& failure() const noexcept { return failure_; }

 private:
  RecurrenceRun(S u, S v) : u_(std::move(u)), v_(std::move(v)) {}

  void fail(std::size_t index, FailureCause cause) { failure_ = Failure{index, cause}; }
  bool push_beta(S b) {
    const bool zero = is_zero(b);
    betas_.push_back(std::move(b));
    if (zero) fail(betas_.size(), FailureCause::BetaZero);
    return !zero;
  }
  void step();

  S u_, v_;
  std::vector<S> alphas_;
  std::vector<S> betas_;
  std::optional<Failure> failure_;
};

template <FieldScalar S>
RecurrenceRun<S> RecurrenceRun<S>::init(S u, S v) {
  RecurrenceRun run(u, v);
  const S one = one_like(u);
  const S u2 = u * u;
  const S gap = v - u2;  // v - u^2 = -beta_2

  run.alphas_.push_back(-u);
  run.betas_.push_back(one);
  if (!run.push_beta(u2 - v)) return run;

  // gap != 0 here, so every division below is valid.
  run.alphas_.push_back(u * (v + v - one - u2) / gap);
  run.alphas_.push_back(-(u * (v - one)) / gap);
  run.push_beta((u2 + u2 * u2 + v * v * v - (u2 + u2 + u2) * v) / (gap * gap));
  return run;
}

template <FieldScalar S>
void RecurrenceRun<S>::extend(std::size_t target_len) {
  if (!ok()) throw ExtendAfterFailure();
  while (betas_.size() < target_len && ok()) step();
}

template <FieldScalar S>
void RecurrenceRun<S>::step() {
  const std::size_t i = betas_.size() + 1;  // index being computed, >= 4
  const std::size_t k = (i - 4) / 3;
  // 1-based accessors over the stored history
  auto a = [this](std::size_t j) -> const S& { return alphas_[j - 1]; };
  auto b = [this](std::size_t j) -> const S& { return betas_[j - 1]; };

  switch ((i - 4) % 3) {
    case 0: {  // i = 3k+4
      alphas_.push_back(-u_);
      const S denom = b(3 * k + 3) * b(3 * k + 2);
      if (is_zero(denom)) return fail(i, FailureCause::DivisionByZero);
      push_beta(b(k + 2) / denom);
      return;
    }
    case 1: {  // i = 3k+5
      if (!push_beta(u_ * u_ - v_ - b(3 * k + 4))) return;
      alphas_.push_back(u_ - (a(k + 2) + u_ * v_ - a(3 * k + 2) * b(3 * k + 4)) / b(i));
      return;
    }
    default: {  // i = 3k+6
      alphas_.push_back(u_ - a(3 * k + 5));
      push_beta(v_ - a(3 * k + 5) * a(i));
      return;
    }
  }
}

template <FieldScalar S>
RecurrenceRun<S> init_run(S u, S v) {
  return RecurrenceRun<S>::init(std::move(u), std::move(v));
}

template <FieldScalar S>
RecurrenceRun<S> extend_run(RecurrenceRun<S> run, std::size_t target_len) {
  run.extend(target_len);
  return run;
}

/// Recomputes a run from (u, v) and compares it entry by entry.
template <FieldScalar S>
bool replay_matches(const RecurrenceRun<S>& run) {
  auto fresh = RecurrenceRun<S>::init(run.u(), run.v());
  if (fresh.ok()) fresh.extend(run.beta_count());
  if (fresh.failure() != run.failure()) return false;
  if (fresh.alpha_count() != run.alpha_count() || fresh.beta_count() != run.beta_count()) return false;
  for (std::size_t i = 1; i <= run.alpha_count(); ++i)
    if (!(fresh.alpha(i) == run.alpha(i))) return false;
  for (std::size_t i = 1; i <= run.beta_count(); ++i)
    if (!(fresh.beta(i) == run.beta(i))) return false;
  return true;
}

using RationalRun = RecurrenceRun<Rational>;
using ResidueRun = RecurrenceRun<PrimeFieldElement>;

/// Fast F_p run for scans: raw 32-bit residues with a precomputed inverse table.
/// Not thread-safe; use one scanner per worker.
class ResidueScanner {
 public:
  explicit ResidueScanner(PrimeModulus p);

  [[nodiscard]] PrimeModulus modulus() const noexcept { return p_; }

  /// Smallest i <= max_index with beta_i == 0 (or a zero divisor at step i).
  std::optional<std::size_t> first_beta_zero(std::uint32_t u, std::uint32_t v, std::size_t max_index);

 private:
  [[nodiscard]] std::uint32_t inv(std::uint32_t x) const {
    return inverse_table_.empty() ? inverse_mod(x, p_.value()) : inverse_table_[x];
  }

  PrimeModulus p_;
  std::vector<std::uint32_t> inverse_table_;
  std::vector<std::uint32_t> alpha_;
  std::vector<std::uint32_t> beta_;
};

/// First index <= max_index at which the F_p run of (u, v) hits a zero, if any.
std::optional<std::size_t> first_beta_zero(std::int64_t u, std::int64_t v, PrimeModulus p,
                                           std::size_t max_index);

}  // namespace mahlercf
