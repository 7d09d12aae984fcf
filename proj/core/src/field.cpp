#include "mahlercf/field.hpp"

#include <algorithm>

namespace mahlercf {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0 || n % 3 == 0) return false;
  for (std::uint64_t d = 5; d * d <= n; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

std::vector<std::uint32_t> primes_between(std::uint32_t lo, std::uint32_t hi) {
  std::vector<std::uint32_t> out;
  for (std::uint64_t n = lo; n <= hi; ++n) {
    if (is_prime(n)) out.push_back(static_cast<std::uint32_t>(n));
  }
  return out;
}

PrimeModulus::PrimeModulus(std::uint64_t p) : p_(static_cast<std::uint32_t>(p)) {
  if (p < 3 || p > 0xFFFFFFFFull || !is_prime(p)) throw NotPrime(p);
}

Rational::Rational(const mpz_class& num, const mpz_class& den) : q_(num, den) {
  if (den == 0) throw DivisionByZero();
  q_.canonicalize();
}

Rational::Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  const std::string s(text);
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(mpz_class(s), mpz_class(1));
    return Rational(mpz_class(s.substr(0, slash)), mpz_class(s.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational: '" + s + "'");
  }
}

std::string Rational::to_string() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DivisionByZero();
  q_ /= o.q_;
  return *this;
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  if (a % p == 0) throw ZeroInverse();
  std::int64_t r0 = p, r1 = a % p, s0 = 0, s1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
    std::tie(s0, s1) = std::pair{s1, s0 - q * s1};
  }
  // r0 == 1 because p is prime
  const auto pp = static_cast<std::int64_t>(p);
  return static_cast<std::uint32_t>(((s0 % pp) + pp) % pp);
}

PrimeFieldElement PrimeFieldElement::inv() const {
  return {inverse_mod(residue_, modulus_), modulus_};
}

PrimeFieldElement PrimeFieldElement::pow(std::uint64_t e) const {
  std::uint64_t base = residue_, acc = 1 % modulus_;
  while (e > 0) {
    if (e & 1u) acc = acc * base % modulus_;
    base = base * base % modulus_;
    e >>= 1;
  }
  return {static_cast<std::uint32_t>(acc), modulus_};
}

PrimeFieldElement& PrimeFieldElement::operator+=(const PrimeFieldElement& o) {
  require_same(o);
  const std::uint64_t s = std::uint64_t{residue_} + o.residue_;
  residue_ = static_cast<std::uint32_t>(s >= modulus_ ? s - modulus_ : s);
  return *this;
}

PrimeFieldElement& PrimeFieldElement::operator-=(const PrimeFieldElement& o) {
  require_same(o);
  residue_ = residue_ >= o.residue_ ? residue_ - o.residue_ : residue_ + (modulus_ - o.residue_);
  return *this;
}

PrimeFieldElement& PrimeFieldElement::operator*=(const PrimeFieldElement& o) {
  require_same(o);
  residue_ = static_cast<std::uint32_t>(std::uint64_t{residue_} * o.residue_ % modulus_);
  return *this;
}

PrimeFieldElement fp_inv(const PrimeFieldElement& a) { return a.inv(); }

std::vector<std::uint32_t> poly_roots_mod_p(std::span<const std::int64_t> coeffs, PrimeModulus p) {
  if (coeffs.size() > 5) throw std::invalid_argument("poly_roots_mod_p: degree above 4");
  if (p.value() > 1'000'000u) throw std::invalid_argument("poly_roots_mod_p: p above 1e6");

  std::vector<std::uint64_t> c;
  c.reserve(coeffs.size());
  for (auto k : coeffs) c.push_back(p.reduce(k));

  std::vector<std::uint32_t> roots;
  const std::uint64_t m = p.value();
  for (std::uint64_t x = 0; x < m; ++x) {
    std::uint64_t acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = (acc * x + *it) % m;
    if (acc == 0) roots.push_back(static_cast<std::uint32_t>(x));
  }
  return roots;
}

}  // namespace mahlercf
