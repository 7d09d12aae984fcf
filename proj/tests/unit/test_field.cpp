#include <doctest.h>

#include <random>
#include <sstream>

#include "mahlercf/field.hpp"

using namespace mahlercf;

TEST_CASE("primality and prime lists") {
  CHECK(is_prime(2));
  CHECK(is_prime(3));
  CHECK(is_prime(997));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(9));
  CHECK_FALSE(is_prime(561));
  CHECK(is_prime(1000003));
  const auto ps = primes_between(3, 50);
  CHECK(ps == std::vector<std::uint32_t>{3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47});
  CHECK(primes_between(3, 1000).size() == 167);
  CHECK(primes_between(24, 28).empty());
}

TEST_CASE("prime modulus validation") {
  CHECK_THROWS_AS(PrimeModulus(2), NotPrime);
  CHECK_THROWS_AS(PrimeModulus(15), NotPrime);
  CHECK_THROWS_AS(PrimeModulus(1), NotPrime);
  const PrimeModulus p(7);
  CHECK(p.value() == 7);
  CHECK(p.reduce(-1) == 6);
  CHECK(p.reduce(-14) == 0);
  CHECK(p.reduce(23) == 2);
}

TEST_CASE("residue arithmetic") {
  const PrimeModulus p(7);
  const PrimeFieldElement three(3, p), five(5, p);
  CHECK((three + five).residue() == 1);
  CHECK((three - five).residue() == 5);
  CHECK((three * five).residue() == 1);
  CHECK(three.inv().residue() == 5);
  CHECK((three / five).residue() == 2);
  CHECK((-three).residue() == 4);
  CHECK((-PrimeFieldElement(0, p)).residue() == 0);
  CHECK(PrimeFieldElement(-1, p).residue() == 6);
  CHECK(three.pow(6).residue() == 1);
  CHECK(three.pow(0).residue() == 1);
  CHECK_THROWS_AS((void)PrimeFieldElement(0, p).inv(), ZeroInverse);
  CHECK_THROWS_AS(three / PrimeFieldElement(0, p), ZeroInverse);
  CHECK_THROWS_AS(three + PrimeFieldElement(3, PrimeModulus(11)), ModulusMismatch);
  CHECK_THROWS_AS((void)(three == PrimeFieldElement(3, PrimeModulus(11))), ModulusMismatch);
  std::ostringstream os;
  os << three;
  CHECK(os.str() == "3");
}

TEST_CASE("inverse is an involution and agrees with Fermat") {
  for (auto q : primes_between(3, 200)) {
    const PrimeModulus p(q);
    for (std::uint32_t a = 1; a < q; ++a) {
      const PrimeFieldElement x(a, p);
      CHECK(x.inv().inv() == x);
      CHECK((x * x.inv()).residue() == 1);
      CHECK(inverse_mod(a, q) == x.pow(q - 2).residue());
      CHECK(fp_inv(x) == x.inv());
    }
  }
}

TEST_CASE("polynomial roots mod p") {
  // x^2 + x + 1 mod 7: roots 2 and 4
  const std::vector<std::int64_t> cyclo{1, 1, 1};
  CHECK(poly_roots_mod_p(cyclo, PrimeModulus(7)) == std::vector<std::uint32_t>{2, 4});
  CHECK(poly_roots_mod_p(cyclo, PrimeModulus(5)).empty());
  CHECK(poly_roots_mod_p(cyclo, PrimeModulus(3)) == std::vector<std::uint32_t>{1});
  // x^2 - 3 mod 11: 5^2 = 25 = 3, 6^2 = 36 = 3
  CHECK(poly_roots_mod_p(std::vector<std::int64_t>{-3, 0, 1}, PrimeModulus(11)) ==
        std::vector<std::uint32_t>{5, 6});
  CHECK_THROWS(poly_roots_mod_p(std::vector<std::int64_t>{1, 0, 0, 0, 0, 1}, PrimeModulus(7)));

  // every reported root is a root and nothing is missed, exhaustively for p <= 100
  const std::vector<std::vector<std::int64_t>> polys{{1, 1, 1}, {1, -1, 1}, {-3, 0, 1}, {3, 0, 1}, {1, 0, 4, 0, 1}};
  for (auto q : primes_between(3, 100)) {
    const PrimeModulus p(q);
    for (const auto& f : polys) {
      const auto roots = poly_roots_mod_p(f, p);
      for (std::uint32_t x = 0; x < q; ++x) {
        std::int64_t acc = 0, pw = 1;
        for (auto c : f) {
          acc = (acc + c * pw) % static_cast<std::int64_t>(q);
          pw = pw * x % q;
        }
        const bool is_root = ((acc % static_cast<std::int64_t>(q)) + q) % q == 0;
        CHECK(is_root == std::binary_search(roots.begin(), roots.end(), x));
      }
    }
  }
}

TEST_CASE("rationals") {
  CHECK(Rational::parse("6/4").to_string() == "3/2");
  CHECK(Rational::parse("-6/4").to_string() == "-3/2");
  CHECK(Rational::parse("4/-2").to_string() == "-2");
  CHECK(Rational::parse("17").to_string() == "17");
  CHECK(Rational::parse("0/5").to_string() == "0");
  CHECK_THROWS(Rational::parse("1/0"));
  CHECK_THROWS(Rational::parse("abc"));
  CHECK_THROWS(Rational::parse(""));
  CHECK_THROWS_AS(Rational(mpz_class(1), mpz_class(0)), DivisionByZero);
  CHECK_THROWS_AS(Rational(1) / Rational(0), DivisionByZero);
  CHECK(Rational(1) / Rational(3) + Rational(1) / Rational(6) == Rational(1) / Rational(2));
  CHECK(Rational(-1) < Rational(0));
  CHECK(Rational(mpz_class(10), mpz_class(-4)).denominator() == 2);
  CHECK(Rational(mpz_class(10), mpz_class(-4)).numerator() == -5);
}

TEST_CASE("rational field axioms on random triples") {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<long> d(-50, 50);
  auto draw = [&] {
    long den = 0;
    while (den == 0) den = d(rng);
    return Rational(mpz_class(d(rng)), mpz_class(den));
  };
  for (int t = 0; t < 500; ++t) {
    const Rational a = draw(), b = draw(), c = draw();
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == Rational(0));
    if (!b.is_zero()) CHECK((a / b) * b == a);
    CHECK(Rational::parse(a.to_string()) == a);
  }
}

TEST_CASE("worked examples") {
  CHECK(fp_inv(PrimeFieldElement(1, PrimeModulus(7))).residue() == 1);
  CHECK(fp_inv(PrimeFieldElement(2, PrimeModulus(7))).residue() == 4);
  CHECK_THROWS_AS((void)fp_inv(PrimeFieldElement(0, PrimeModulus(11))), ZeroInverse);
}
