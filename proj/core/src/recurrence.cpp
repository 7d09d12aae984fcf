#include "mahlercf/recurrence.hpp"

namespace mahlercf {

std::string to_string(FailureCause cause) {
  return cause == FailureCause::BetaZero ? "BetaZero" : "DivisionByZero";
}

namespace {
constexpr std::uint32_t kInverseTableLimit = 1u << 22;
}

ResidueScanner::ResidueScanner(PrimeModulus p) : p_(p) {
  const std::uint32_t m = p.value();
  if (m <= kInverseTableLimit) {
    // inv(i) = -(m / i) * inv(m % i)
    inverse_table_.assign(m, 0);
    inverse_table_[1] = 1;
    for (std::uint32_t i = 2; i < m; ++i) {
      const std::uint64_t t = std::uint64_t{m / i} * inverse_table_[m % i] % m;
      inverse_table_[i] = static_cast<std::uint32_t>((m - t) % m);
    }
  }
}

std::optional<std::size_t> ResidueScanner::first_beta_zero(std::uint32_t u, std::uint32_t v,
                                                           std::size_t max_index) {
  const std::uint64_t m = p_.value();
  u %= m;
  v %= m;
  auto add = [m](std::uint64_t a, std::uint64_t b) { return (a + b) % m; };
  auto sub = [m](std::uint64_t a, std::uint64_t b) { return (a + m - b) % m; };
  auto mul = [m](std::uint64_t a, std::uint64_t b) { return a * b % m; };
  auto narrow = [](std::uint64_t x) { return static_cast<std::uint32_t>(x); };

  alpha_.assign(max_index + 1, 0);
  beta_.assign(max_index + 1, 0);
  auto& A = alpha_;
  auto& B = beta_;

  const std::uint64_t u2 = mul(u, u);
  const std::uint64_t uv = mul(u, v);
  const std::uint64_t u2_minus_v = sub(u2, v);

  // alpha_1, beta_1
  A[1] = narrow(m - u == m ? 0 : m - u);
  B[1] = 1;
  if (max_index < 2) return std::nullopt;
  B[2] = narrow(u2_minus_v);
  if (B[2] == 0) return 2;
  if (max_index < 3) return std::nullopt;

  const std::uint64_t gap_inv = inv(narrow(sub(v, u2)));
  A[2] = narrow(mul(mul(u, sub(sub(add(v, v), 1), u2)), gap_inv));
  A[3] = narrow(sub(u, A[2]));
  const std::uint64_t b3_num = sub(add(add(u2, mul(u2, u2)), mul(mul(v, v), v)), mul(mul(3, u2), v));
  B[3] = narrow(mul(b3_num, mul(gap_inv, gap_inv)));
  if (B[3] == 0) return 3;

  for (std::size_t i = 4; i <= max_index; ++i) {
    const std::size_t k = (i - 4) / 3;
    switch ((i - 4) % 3) {
      case 0: {
        A[i] = A[1];
        const std::uint64_t denom = mul(B[3 * k + 3], B[3 * k + 2]);
        if (denom == 0) return i;
        B[i] = narrow(mul(B[k + 2], inv(narrow(denom))));
        break;
      }
      case 1: {
        B[i] = narrow(sub(u2_minus_v, B[i - 1]));
        if (B[i] == 0) return i;
        const std::uint64_t num = sub(add(A[k + 2], uv), mul(A[3 * k + 2], B[i - 1]));
        A[i] = narrow(sub(u, mul(num, inv(B[i]))));
        break;
      }
      default: {
        A[i] = narrow(sub(u, A[i - 1]));
        B[i] = narrow(sub(v, mul(A[i - 1], A[i])));
        break;
      }
    }
    if (B[i] == 0) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> first_beta_zero(std::int64_t u, std::int64_t v, PrimeModulus p,
                                           std::size_t max_index) {
  ResidueScanner scanner(p);
  return scanner.first_beta_zero(p.reduce(u), p.reduce(v), max_index);
}

}  // namespace mahlercf
