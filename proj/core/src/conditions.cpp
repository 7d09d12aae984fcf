#include "mahlercf/conditions.hpp"

#include <algorithm>
#include <stdexcept>

namespace mahlercf {

std::string to_string(ConditionCase c) { return "C" + std::to_string(static_cast<int>(c)); }

ConditionCase parse_condition_case(const std::string& text) {
  std::string digits = text;
  if (!digits.empty() && (digits[0] == 'C' || digits[0] == 'c')) digits.erase(0, 1);
  if (digits.size() == 1 && digits[0] >= '1' && digits[0] <= '7')
    return static_cast<ConditionCase>(digits[0] - '0');
  throw std::invalid_argument("unknown condition case '" + text + "'");
}

namespace {

// Small helper over raw residues; p < 2^32 so products fit in 64 bits.
struct Zp {
  std::uint64_t p;
  [[nodiscard]] std::uint64_t of(std::int64_t x) const {
    const auto m = static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(((x % m) + m) % m);
  }
  [[nodiscard]] std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return a * b % p; }
  [[nodiscard]] std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p; }
  [[nodiscard]] std::uint64_t neg(std::uint64_t a) const { return (p - a % p) % p; }
  // x^2 + x + 1
  [[nodiscard]] bool cyclotomic3(std::uint64_t x) const { return add(add(mul(x, x), x), 1) == 0; }
  // x^2 - x + 1
  [[nodiscard]] bool cyclotomic6(std::uint64_t x) const { return add(add(mul(x, x), neg(x)), 1) == 0; }
  // x^4 + 4x^2 + 1
  [[nodiscard]] bool quartic(std::uint64_t x) const {
    const auto x2 = mul(x, x);
    return add(add(mul(x2, x2), mul(4, x2)), 1) == 0;
  }
};

ConditionWitness make(ConditionCase c, std::uint32_t p, std::optional<std::uint64_t> phi,
                      std::optional<std::uint64_t> delta, std::uint64_t u, std::uint64_t v) {
  ConditionWitness w{c, p, std::nullopt, std::nullopt, static_cast<std::uint32_t>(u),
                     static_cast<std::uint32_t>(v)};
  if (phi) w.phi = static_cast<std::uint32_t>(*phi);
  if (delta) w.delta = static_cast<std::uint32_t>(*delta);
  return w;
}

}  // namespace

bool witness_is_valid(const ConditionWitness& w) {
  if (!is_prime(w.p) || w.p < 3 || w.u >= w.p || w.v >= w.p) return false;
  const Zp z{w.p};
  const std::uint64_t u = w.u, v = w.v;
  const bool has_phi = w.phi.has_value(), has_delta = w.delta.has_value();
  const std::uint64_t phi = w.phi.value_or(0), delta = w.delta.value_or(0);
  switch (w.case_id) {
    case ConditionCase::C1:
      return !has_phi && !has_delta && z.mul(u, u) == z.of(3) && v == z.of(1);
    case ConditionCase::C2:
      return !has_phi && !has_delta && z.mul(u, u) == z.of(-3) && v == z.of(-1);
    case ConditionCase::C3:
      return has_phi && !has_delta && z.cyclotomic3(phi) && (u == phi || u == z.neg(phi)) && v == 0;
    case ConditionCase::C4:
      return has_phi && !has_delta && z.quartic(phi) && (u == phi || u == z.neg(phi)) && v == z.of(-1);
    case ConditionCase::C5:
      return has_phi && has_delta && z.cyclotomic6(delta) && z.mul(phi, phi) == z.mul(2, delta) &&
             (u == phi || u == z.neg(phi)) && v == delta;
    case ConditionCase::C6:
      return !has_phi && has_delta && z.cyclotomic3(delta) && u == 0 && (v == delta || v == z.neg(delta));
    case ConditionCase::C7: {
      if (w.p == 3 || has_phi || !has_delta || !z.cyclotomic3(delta) || v != delta) return false;
      const auto t = z.mul(2, z.mul(delta, delta));
      return u == t || u == z.neg(t);
    }
  }
  return false;
}

std::vector<ConditionWitness> check_pair(std::int64_t u_in, std::int64_t v_in, PrimeModulus pm) {
  const std::uint32_t p = pm.value();
  const Zp z{p};
  const std::uint64_t u = z.of(u_in), v = z.of(v_in);
  const std::uint64_t nu = z.neg(u), nv = z.neg(v);
  const std::uint64_t u2 = z.mul(u, u);
  std::vector<ConditionWitness> out;

  if (u2 == z.of(3) && v == 1 % p) out.push_back(make(ConditionCase::C1, p, {}, {}, u, v));
  if (u2 == z.of(-3) && v == z.of(-1)) out.push_back(make(ConditionCase::C2, p, {}, {}, u, v));
  if (v == 0) {
    if (z.cyclotomic3(u)) out.push_back(make(ConditionCase::C3, p, u, {}, u, v));
    else if (z.cyclotomic3(nu)) out.push_back(make(ConditionCase::C3, p, nu, {}, u, v));
  }
  if (v == z.of(-1) && z.quartic(u)) out.push_back(make(ConditionCase::C4, p, u, {}, u, v));
  if (z.cyclotomic6(v) && u2 == z.mul(2, v)) out.push_back(make(ConditionCase::C5, p, u, v, u, v));
  if (u == 0) {
    if (z.cyclotomic3(v)) out.push_back(make(ConditionCase::C6, p, {}, v, u, v));
    else if (z.cyclotomic3(nv)) out.push_back(make(ConditionCase::C6, p, {}, nv, u, v));
  }
  if (p != 3 && z.cyclotomic3(v)) {
    const auto t = z.mul(2, z.mul(v, v));
    if (u == t || u == z.neg(t)) out.push_back(make(ConditionCase::C7, p, {}, v, u, v));
  }
  return out;
}

std::map<ResiduePair, std::vector<ConditionWitness>> satisfying_pairs(PrimeModulus pm) {
  const std::uint32_t p = pm.value();
  const Zp z{p};
  std::map<ResiduePair, std::vector<ConditionWitness>> out;
  auto add = [&out](const ConditionWitness& w) {
    auto& list = out[{w.u, w.v}];
    if (std::find(list.begin(), list.end(), w) == list.end()) list.push_back(w);
  };
  auto roots = [pm](std::initializer_list<std::int64_t> c) {
    return poly_roots_mod_p(std::span<const std::int64_t>(c.begin(), c.size()), pm);
  };

  for (auto r : roots({-3, 0, 1})) add(make(ConditionCase::C1, p, {}, {}, r, z.of(1)));
  for (auto r : roots({3, 0, 1})) add(make(ConditionCase::C2, p, {}, {}, r, z.of(-1)));
  for (auto phi : roots({1, 1, 1})) {
    add(make(ConditionCase::C3, p, phi, {}, phi, 0));
    add(make(ConditionCase::C3, p, phi, {}, z.neg(phi), 0));
  }
  for (auto phi : roots({1, 0, 4, 0, 1})) {
    add(make(ConditionCase::C4, p, phi, {}, phi, z.of(-1)));
    add(make(ConditionCase::C4, p, phi, {}, z.neg(phi), z.of(-1)));
  }
  for (auto delta : roots({1, -1, 1})) {
    for (auto phi : roots({-2 * static_cast<std::int64_t>(delta), 0, 1})) {
      add(make(ConditionCase::C5, p, phi, delta, phi, delta));
      add(make(ConditionCase::C5, p, phi, delta, z.neg(phi), delta));
    }
  }
  for (auto delta : roots({1, 1, 1})) {
    add(make(ConditionCase::C6, p, {}, delta, 0, delta));
    add(make(ConditionCase::C6, p, {}, delta, 0, z.neg(delta)));
    if (p != 3) {
      const auto t = z.mul(2, z.mul(delta, delta));
      add(make(ConditionCase::C7, p, {}, delta, t, delta));
      add(make(ConditionCase::C7, p, {}, delta, z.neg(t), delta));
    }
  }

  // C4 and C5 are symmetric in phi -> -phi, so the same (u, v) can be reached
  // from two roots; keep the witness whose phi equals u.
  for (auto& [pair, list] : out) {
    std::erase_if(list, [&](const ConditionWitness& w) {
      const bool symmetric = w.case_id == ConditionCase::C4 || w.case_id == ConditionCase::C5;
      return symmetric && w.phi != pair.first;
    });
    std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) { return a.case_id < b.case_id; });
  }
  return out;
}

std::optional<ConditionWitness> covered(std::int64_t u, std::int64_t v,
                                        std::span<const std::uint32_t> primes) {
  for (auto p : primes) {
    auto ws = check_pair(u, v, PrimeModulus(p));
    if (!ws.empty()) return ws.front();
  }
  return std::nullopt;
}

}  // namespace mahlercf
