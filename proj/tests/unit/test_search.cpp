#include <doctest.h>

#include <atomic>
#include <sstream>

#include "mahlercf/search.hpp"
#include "oracles.hpp"

using namespace mahlercf;

TEST_CASE("sharding runs every shard exactly once") {
  for (unsigned workers : {0u, 1u, 3u, 8u}) {
    std::vector<std::atomic<int>> hits(97);
    run_sharded(hits.size(), workers, [&](std::size_t s) { ++hits[s]; });
    for (const auto& h : hits) CHECK(h.load() == 1);
  }
  CHECK_THROWS_AS(run_sharded(10, 4, [](std::size_t s) {
                    if (s == 7) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
}

TEST_CASE("scan at small primes") {
  const auto r = scan_prime(PrimeModulus(7), 2000);
  CHECK(r.survivors.size() == 14);
  CHECK(r.extra_survivors.empty());
  CHECK(r.missing.empty());
  CHECK(r.survivors == r.condition_pairs);
  CHECK(r.first_zero_of(1, 1) == std::optional<std::uint32_t>(2));

  const auto r5 = scan_prime(PrimeModulus(5), 2000);
  CHECK(r5.survivors.empty());
  CHECK(r5.first_zero_of(0, 1) == std::optional<std::uint32_t>(20));
}

TEST_CASE("first-zero table matches the int64 oracle") {
  for (std::uint32_t q : {3u, 11u, 13u}) {
    const auto r = scan_prime(PrimeModulus(q), 300);
    for (std::uint32_t u = 0; u < q; ++u)
      for (std::uint32_t v = 0; v < q; ++v) {
        const auto expect = oracle::first_zero_mod(u, v, q, 300);
        const auto got = r.first_zero_of(u, v);
        CHECK(got.has_value() == expect.has_value());
        if (got && expect) CHECK(*got == *expect);
      }
  }
}

TEST_CASE("survivor sets shrink as the horizon grows") {
  const PrimeModulus p(31);
  std::size_t prev = 31 * 31 + 1;
  for (std::size_t n : {5u, 20u, 100u, 1000u, 5000u}) {
    const auto r = scan_prime(p, n);
    CHECK(r.survivors.size() <= prev);
    prev = r.survivors.size();
  }
  CHECK(prev == 14);
}

TEST_CASE("results do not depend on the worker count") {
  const auto a = scan_range(3, 23, 1500, 1);
  const auto b = scan_range(3, 23, 1500, 4);
  REQUIRE(a.results.size() == b.results.size());
  for (std::size_t j = 0; j < a.results.size(); ++j) {
    CHECK(a.results[j].first_zero == b.results[j].first_zero);
    CHECK(a.results[j].survivors == b.results[j].survivors);
  }
  CHECK(density(40, 200, 1).covered == density(40, 200, 3).covered);
}

TEST_CASE("scan range summary") {
  const auto s = scan_range(3, 30, 3000);
  CHECK(s.primes_scanned == 9);
  CHECK(s.total_extra == 0);
  CHECK(s.total_missing == 0);
  const std::vector<std::size_t> survivors{6, 0, 14, 6, 16, 0, 18, 2, 0};
  for (std::size_t j = 0; j < survivors.size(); ++j) CHECK(s.results[j].survivors.size() == survivors[j]);
}

TEST_CASE("coverage table") {
  const CoverageTable table(100);
  CHECK(std::find(table.primes().begin(), table.primes().end(), 5u) == table.primes().end());
  CHECK(table.primes().front() == 3);
  CHECK_FALSE(table.first_covering(2, -2));
  const auto j = table.first_covering(1, 0);  // (1, 0) mod 3
  REQUIRE(j);
  CHECK(table.primes()[*j] == 3);
  CHECK(table.first_covering(-2, 0) == j);
}

TEST_CASE("density") {
  const auto zero = density(0, 1000);
  CHECK(zero.total == 1);
  CHECK(zero.covered == 0);  // (0, 0) is never covered
  CHECK(zero.fraction == Rational(0));

  // brute force over a small box with the condition checker
  const std::int64_t B = 12;
  const auto primes = primes_between(3, 150);
  std::uint64_t expect = 0;
  for (std::int64_t u = -B; u <= B; ++u)
    for (std::int64_t v = -B; v <= B; ++v)
      if (covered(u, v, primes)) ++expect;
  const auto d = density(B, 150);
  CHECK(d.total == 625);
  CHECK(d.covered == expect);
  CHECK(d.fraction == Rational(mpz_class(static_cast<unsigned long>(expect)), mpz_class(625)));

  // more primes can only cover more pairs
  CHECK(density(30, 50).covered <= density(30, 300).covered);
  CHECK_THROWS(density(-1, 100));
}

TEST_CASE("csv output") {
  const auto r = scan_prime(PrimeModulus(3), 100);
  std::ostringstream os;
  write_scan_csv(os, r);
  const std::string text = os.str();
  CHECK(text.rfind("p,u,v,first_zero_index\n3,0,0,2\n3,0,1,survived\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 10);
  std::ostringstream no_header;
  write_scan_csv(no_header, r, false);
  CHECK(no_header.str().rfind("3,0,0,2\n", 0) == 0);
}

TEST_CASE("worked examples") {
  CHECK(scan_prime(PrimeModulus(5), 10'000).survivors.empty());
  const auto r7 = scan_prime(PrimeModulus(7), 10'000);
  CHECK(r7.survivors.size() == 14);
  CHECK(r7.extra_survivors.empty());

  const auto r3 = scan_range(3, 3, 1000);
  REQUIRE(r3.results.size() == 1);
  CHECK(r3.results[0].survivors == r3.results[0].condition_pairs);
  for (const auto& [pair, ws] : satisfying_pairs(PrimeModulus(3)))
    for (const auto& w : ws) CHECK(w.case_id != ConditionCase::C7);

  CHECK(scan_range(5, 5, 100).results[0].survivors == scan_range(5, 5, 10'000).results[0].survivors);
}
