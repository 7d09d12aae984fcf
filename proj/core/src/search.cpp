#include "mahlercf/search.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

#include "mahlercf/recurrence.hpp"

namespace mahlercf {

void run_sharded(std::size_t shards, unsigned workers, const std::function<void(std::size_t)>& job) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, shards));
  if (workers <= 1) {
    for (std::size_t s = 0; s < shards; ++s) job(s);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t s = next++; s < shards; s = next++) {
          try {
            job(s);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

ScanResult scan_prime(PrimeModulus pm, std::size_t max_index, unsigned workers) {
  const std::uint32_t p = pm.value();
  ScanResult r;
  r.p = p;
  r.max_index = max_index;
  r.first_zero.assign(static_cast<std::size_t>(p) * p, std::nullopt);

  // one shard per u-row; each row writes a disjoint slice of first_zero
  run_sharded(p, workers, [&](std::size_t u) {
    ResidueScanner scanner(pm);
    for (std::uint32_t v = 0; v < p; ++v) {
      const auto z = scanner.first_beta_zero(static_cast<std::uint32_t>(u), v, max_index);
      if (z) r.first_zero[u * p + v] = static_cast<std::uint32_t>(*z);
    }
  });

  for (std::uint32_t u = 0; u < p; ++u)
    for (std::uint32_t v = 0; v < p; ++v)
      if (!r.first_zero[static_cast<std::size_t>(u) * p + v]) r.survivors.emplace_back(u, v);
  for (const auto& entry : satisfying_pairs(pm)) r.condition_pairs.push_back(entry.first);

  std::set_difference(r.survivors.begin(), r.survivors.end(), r.condition_pairs.begin(),
                      r.condition_pairs.end(), std::back_inserter(r.extra_survivors));
  std::set_difference(r.condition_pairs.begin(), r.condition_pairs.end(), r.survivors.begin(),
                      r.survivors.end(), std::back_inserter(r.missing));
  return r;
}

ScanSummary scan_range(std::uint32_t p_min, std::uint32_t p_max, std::size_t max_index, unsigned workers) {
  ScanSummary s;
  for (auto p : primes_between(std::max<std::uint32_t>(p_min, 3), p_max)) {
    auto r = scan_prime(PrimeModulus(p), max_index, workers);
    s.total_extra += r.extra_survivors.size();
    s.total_missing += r.missing.size();
    s.results.push_back(std::move(r));
  }
  s.primes_scanned = s.results.size();
  return s;
}

CoverageTable::CoverageTable(std::uint32_t prime_max) {
  for (auto p : primes_between(3, prime_max)) {
    const PrimeModulus pm(p);
    const auto pairs = satisfying_pairs(pm);
    if (pairs.empty()) continue;  // e.g. p = 5
    std::vector<bool> bits(static_cast<std::size_t>(p) * p, false);
    for (const auto& entry : pairs) bits[static_cast<std::size_t>(entry.first.first) * p + entry.first.second] = true;
    primes_.push_back(p);
    member_.push_back(std::move(bits));
  }
}

std::optional<std::size_t> CoverageTable::first_covering(std::int64_t u, std::int64_t v) const {
  for (std::size_t j = 0; j < primes_.size(); ++j) {
    const auto p = static_cast<std::int64_t>(primes_[j]);
    const auto ur = ((u % p) + p) % p;
    const auto vr = ((v % p) + p) % p;
    if (member_[j][static_cast<std::size_t>(ur * p + vr)]) return j;
  }
  return std::nullopt;
}

DensityReport density(std::int64_t bound, std::uint32_t prime_max, unsigned workers) {
  if (bound < 0) throw std::invalid_argument("density: bound must be >= 0");
  const CoverageTable table(prime_max);
  const auto width = static_cast<std::size_t>(2 * bound + 1);
  std::vector<std::uint64_t> per_row(width, 0);
  run_sharded(width, workers, [&](std::size_t row) {
    const std::int64_t u = static_cast<std::int64_t>(row) - bound;
    std::uint64_t count = 0;
    for (std::int64_t v = -bound; v <= bound; ++v)
      if (table.first_covering(u, v)) ++count;
    per_row[row] = count;
  });

  DensityReport rep;
  rep.bound = bound;
  rep.prime_max = prime_max;
  rep.total = static_cast<std::uint64_t>(width) * width;
  for (auto c : per_row) rep.covered += c;
  rep.fraction = Rational(mpz_class(std::to_string(rep.covered)), mpz_class(std::to_string(rep.total)));
  return rep;
}

void write_scan_csv(std::ostream& os, const ScanResult& r, bool header) {
  if (header) os << "p,u,v,first_zero_index\n";
  for (std::uint32_t u = 0; u < r.p; ++u) {
    for (std::uint32_t v = 0; v < r.p; ++v) {
      const auto z = r.first_zero_of(u, v);
      os << r.p << ',' << u << ',' << v << ',';
      if (z) os << *z;
      else os << "survived";
      os << '\n';
    }
  }
}

}  // namespace mahlercf
