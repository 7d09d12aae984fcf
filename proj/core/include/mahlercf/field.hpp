#pragma once

// Exact scalar fields used by every other module: arbitrary-precision
// rationals (backed by GMP) and residues modulo an odd prime.

#include <compare>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace mahlercf {

struct DivisionByZero : std::domain_error {
  DivisionByZero() : std::domain_error("division by zero") {}
};

struct ZeroInverse : std::domain_error {
  ZeroInverse() : std::domain_error("zero has no multiplicative inverse") {}
};

struct ModulusMismatch : std::invalid_argument {
  ModulusMismatch(std::uint32_t a, std::uint32_t b)
      : std::invalid_argument("arithmetic between residues mod " + std::to_string(a) +
                              " and mod " + std::to_string(b)) {}
};

struct NotPrime : std::invalid_argument {
  explicit NotPrime(std::uint64_t n)
      : std::invalid_argument(std::to_string(n) + " is not an odd prime") {}
};

/// Deterministic primality by 6k +/- 1 trial division. Adequate up to ~1e12.
bool is_prime(std::uint64_t n);

/// All primes in [lo, hi], ascending.
std::vector<std::uint32_t> primes_between(std::uint32_t lo, std::uint32_t hi);

/// Odd prime modulus, validated once at construction.
class PrimeModulus {
 public:
  explicit PrimeModulus(std::uint64_t p);

  [[nodiscard]] std::uint32_t value() const noexcept { return p_; }
  /// Reduces any signed integer into [0, p).
  [[nodiscard]] std::uint32_t reduce(std::int64_t x) const noexcept {
    const auto p = static_cast<std::int64_t>(p_);
    const std::int64_t r = x % p;
    return static_cast<std::uint32_t>(r < 0 ? r + p : r);
  }

  friend bool operator==(PrimeModulus, PrimeModulus) = default;

 private:
  std::uint32_t p_;
};

/// Arbitrary-precision rational kept in lowest terms with positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long n) : q_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(const mpz_class& num, const mpz_class& den);
  explicit Rational(mpq_class q);

  /// Accepts "n" or "n/d" (optional leading '-').
  static Rational parse(std::string_view text);

  [[nodiscard]] mpz_class numerator() const { return q_.get_num(); }
  [[nodiscard]] mpz_class denominator() const { return q_.get_den(); }
  [[nodiscard]] const mpq_class& raw() const noexcept { return q_; }
  [[nodiscard]] bool is_zero() const noexcept { return sgn(q_) == 0; }
  [[nodiscard]] bool is_integer() const { return q_.get_den() == 1; }

  /// "n" for integers, "n/d" otherwise.
  [[nodiscard]] std::string to_string() const;

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
  }

 private:
  mpq_class q_;
};

/// Residue modulo an odd prime. Mixing moduli throws ModulusMismatch.
class PrimeFieldElement {
 public:
  PrimeFieldElement(std::int64_t value, PrimeModulus p)
      : residue_(p.reduce(value)), modulus_(p.value()) {}

  [[nodiscard]] std::uint32_t residue() const noexcept { return residue_; }
  [[nodiscard]] std::uint32_t modulus() const noexcept { return modulus_; }
  [[nodiscard]] bool is_zero() const noexcept { return residue_ == 0; }

  /// Element of the same field holding `value` reduced mod p.
  [[nodiscard]] PrimeFieldElement with_value(std::int64_t value) const {
    const auto p = static_cast<std::int64_t>(modulus_);
    const std::int64_t r = value % p;
    return {static_cast<std::uint32_t>(r < 0 ? r + p : r), modulus_};
  }

  [[nodiscard]] PrimeFieldElement inv() const;
  [[nodiscard]] PrimeFieldElement pow(std::uint64_t e) const;

  PrimeFieldElement& operator+=(const PrimeFieldElement& o);
  PrimeFieldElement& operator-=(const PrimeFieldElement& o);
  PrimeFieldElement& operator*=(const PrimeFieldElement& o);
  PrimeFieldElement& operator/=(const PrimeFieldElement& o) { return *this *= o.inv(); }

  friend PrimeFieldElement operator+(PrimeFieldElement a, const PrimeFieldElement& b) { return a += b; }
  friend PrimeFieldElement operator-(PrimeFieldElement a, const PrimeFieldElement& b) { return a -= b; }
  friend PrimeFieldElement operator*(PrimeFieldElement a, const PrimeFieldElement& b) { return a *= b; }
  friend PrimeFieldElement operator/(PrimeFieldElement a, const PrimeFieldElement& b) { return a /= b; }
  friend PrimeFieldElement operator-(const PrimeFieldElement& a) {
    return {a.residue_ == 0 ? 0u : a.modulus_ - a.residue_, a.modulus_};
  }

  friend bool operator==(const PrimeFieldElement& a, const PrimeFieldElement& b) {
    a.require_same(b);
    return a.residue_ == b.residue_;
  }

  friend std::ostream& operator<<(std::ostream& os, const PrimeFieldElement& x) {
    return os << x.residue_;
  }

 private:
  PrimeFieldElement(std::uint32_t residue, std::uint32_t modulus)
      : residue_(residue), modulus_(modulus) {}
  void require_same(const PrimeFieldElement& o) const {
    if (modulus_ != o.modulus_) throw ModulusMismatch(modulus_, o.modulus_);
  }

  std::uint32_t residue_;
  std::uint32_t modulus_;
};

PrimeFieldElement fp_inv(const PrimeFieldElement& a);

/// Inverse of a nonzero residue by the extended Euclidean algorithm.
std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p);

/// Roots in [0, p) of sum coeffs[k] x^k, by exhaustive evaluation.
/// Requires degree <= 4 and p <= 1e6.
std::vector<std::uint32_t> poly_roots_mod_p(std::span<const std::int64_t> coeffs, PrimeModulus p);

// Scalar hooks used by the generic algorithms. Each scalar type provides
// is_zero, zero_like and one_like through ADL.
inline bool is_zero(const Rational& x) { return x.is_zero(); }
inline Rational zero_like(const Rational&) { return Rational(0); }
inline Rational one_like(const Rational&) { return Rational(1); }

inline bool is_zero(const PrimeFieldElement& x) { return x.is_zero(); }
inline PrimeFieldElement zero_like(const PrimeFieldElement& x) { return x.with_value(0); }
inline PrimeFieldElement one_like(const PrimeFieldElement& x) { return x.with_value(1); }

template <class S>
concept FieldScalar = std::copyable<S> && std::equality_comparable<S> &&
    requires(const S a, const S b) {
      { a + b } -> std::convertible_to<S>;
      { a - b } -> std::convertible_to<S>;
      { a * b } -> std::convertible_to<S>;
      { a / b } -> std::convertible_to<S>;
      { -a } -> std::convertible_to<S>;
      { is_zero(a) } -> std::convertible_to<bool>;
      { zero_like(a) } -> std::convertible_to<S>;
      { one_like(a) } -> std::convertible_to<S>;
    };

}  // namespace mahlercf
