#include "mahlercf/laurent.hpp"

namespace mahlercf {

Rational mu_estimate(std::span<const std::int64_t> degrees, std::size_t window_begin,
                     std::optional<std::size_t> window_end) {
  if (degrees.size() < 2) throw NeedTwoTerms();
  const std::size_t last = std::min(window_end.value_or(degrees.size() - 2), degrees.size() - 2);
  std::optional<Rational> best;
  for (std::size_t k = window_begin; k <= last; ++k) {
    if (degrees[k] <= 0) continue;
    Rational ratio(mpz_class(static_cast<long>(degrees[k + 1])), mpz_class(static_cast<long>(degrees[k])));
    if (!best || ratio > *best) best = std::move(ratio);
  }
  if (!best) throw NeedTwoTerms();
  return Rational(1) + *best;
}

}  // namespace mahlercf
