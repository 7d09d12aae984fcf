#pragma once

// Dense polynomials, truncated Laurent series in z^{-1}, and continued
// fractions of the form
//
//   f = a_0 + beta_1 / (a_1 + beta_2 / (a_2 + ...)),   a_i monic for i >= 1.
//
// The series-based extraction here is deliberately independent of the
// recurrence in recurrence.hpp so the two can be checked against each other.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mahlercf/field.hpp"
#include "mahlercf/recurrence.hpp"

namespace mahlercf {

/// Raised when a truncated series does not carry enough exact coefficients
/// to certify the requested quantity. Re-expand deeper and retry.
struct InsufficientDepth : std::runtime_error {
  InsufficientDepth(const std::string& what, std::size_t certified = 0)
      : std::runtime_error(what), certified_terms(certified) {}
  std::size_t certified_terms;
};

struct IndexOutOfRange : std::out_of_range {
  using std::out_of_range::out_of_range;
};

struct NeedTwoTerms : std::invalid_argument {
  NeedTwoTerms() : std::invalid_argument("mu_estimate needs at least two usable degrees") {}
};

template <FieldScalar S>
class Polynomial {
 public:
  Polynomial() = default;
  /// Coefficients in ascending degree; trailing zeros are dropped.
  explicit Polynomial(std::vector<S> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Polynomial constant(S c) { return Polynomial(std::vector<S>{std::move(c)}); }
  /// z + alpha
  static Polynomial monic_linear(const S& alpha) {
    return Polynomial(std::vector<S>{alpha, one_like(alpha)});
  }

  /// -1 for the zero polynomial.
  [[nodiscard]] int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  [[nodiscard]] bool is_zero() const noexcept { return c_.empty(); }
  [[nodiscard]] const std::vector<S>& coefficients() const noexcept { return c_; }
  [[nodiscard]] const S& operator[](std::size_t k) const { return c_.at(k); }
  [[nodiscard]] const S& leading() const { return c_.back(); }
  [[nodiscard]] bool is_monic() const { return !c_.empty() && c_.back() == one_like(c_.back()); }

  [[nodiscard]] Polynomial scaled(const S& s) const {
    std::vector<S> out = c_;
    for (auto& x : out) x = x * s;
    return Polynomial(std::move(out));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const auto& big = a.c_.size() >= b.c_.size() ? a : b;
    const auto& small = a.c_.size() >= b.c_.size() ? b : a;
    std::vector<S> out = big.c_;
    for (std::size_t k = 0; k < small.c_.size(); ++k) out[k] = out[k] + small.c_[k];
    return Polynomial(std::move(out));
  }
  friend Polynomial operator-(const Polynomial& a) {
    std::vector<S> out = a.c_;
    for (auto& x : out) x = -x;
    return Polynomial(std::move(out));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<S> out(a.c_.size() + b.c_.size() - 1, zero_like(a.c_[0]));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] = out[i + j] + a.c_[i] * b.c_[j];
    return Polynomial(std::move(out));
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

 private:
  void trim() {
    while (!c_.empty() && mahlercf::is_zero(c_.back())) c_.pop_back();
  }
  std::vector<S> c_;
};

/// Laurent series in z^{-1} known exactly for degrees >= floor().
template <FieldScalar S>
class LaurentSeries {
 public:
  /// coeffs[j] is the coefficient of z^{top - j}; every listed degree must be
  /// >= floor. coeffs must be nonempty (it also fixes the scalar field).
  LaurentSeries(int top, std::vector<S> coeffs, int floor)
      : zero_(coeffs.empty() ? throw std::invalid_argument("LaurentSeries needs a coefficient")
                             : zero_like(coeffs.front())),
        top_(top), c_(std::move(coeffs)), floor_(floor) {
    if (top_ - static_cast<int>(c_.size()) + 1 < floor_)
      throw std::invalid_argument("LaurentSeries coefficient below its floor");
    normalize();
  }

  [[nodiscard]] int floor() const noexcept { return floor_; }
  /// ||f||, or nullopt when every exact coefficient is zero.
  [[nodiscard]] std::optional<int> valuation() const {
    if (c_.empty()) return std::nullopt;
    return top_;
  }
  /// Exact coefficients from the valuation down to the floor.
  [[nodiscard]] const std::vector<S>& coefficients() const noexcept { return c_; }
  [[nodiscard]] const S& zero() const noexcept { return zero_; }

  [[nodiscard]] S coefficient(int degree) const {
    if (degree < floor_) throw InsufficientDepth("coefficient below the truncation floor");
    if (c_.empty() || degree > top_) return zero_;
    return c_[static_cast<std::size_t>(top_ - degree)];
  }

  /// Same series with a higher floor.
  [[nodiscard]] LaurentSeries truncated(int new_floor) const {
    if (new_floor < floor_) throw InsufficientDepth("cannot lower a truncation floor");
    std::vector<S> out{zero_};
    int top = new_floor;
    if (!c_.empty() && top_ >= new_floor) {
      out.assign(c_.begin(), c_.begin() + (top_ - new_floor + 1));
      top = top_;
    }
    return LaurentSeries(top, std::move(out), new_floor);
  }

  /// Terms of nonnegative degree. Requires floor <= 0.
  [[nodiscard]] Polynomial<S> polynomial_part() const {
    if (c_.empty() || top_ < 0) return {};
    if (floor_ > 0) throw InsufficientDepth("polynomial part not determined above the floor");
    std::vector<S> out(static_cast<std::size_t>(top_) + 1, zero_);
    for (int d = 0; d <= top_; ++d) out[static_cast<std::size_t>(d)] = coefficient(d);
    return Polynomial<S>(std::move(out));
  }

  /// Terms of negative degree.
  [[nodiscard]] LaurentSeries fractional_part() const {
    if (c_.empty() || top_ < 0) return *this;
    // nothing of negative degree is known
    if (floor_ >= 0) return LaurentSeries(floor_, {zero_}, floor_);
    std::vector<S> out;
    for (int d = -1; d >= floor_; --d) out.push_back(coefficient(d));
    return LaurentSeries(-1, std::move(out), floor_);
  }

  /// 1/f, exact to as many terms as f has below its leading term.
  [[nodiscard]] LaurentSeries inverse() const {
    if (c_.empty()) throw InsufficientDepth("cannot invert a series that vanishes to its floor");
    const std::size_t n = c_.size();
    const S lead_inv = one_like(zero_) / c_[0];
    std::vector<S> b(n, zero_);
    b[0] = lead_inv;
    for (std::size_t j = 1; j < n; ++j) {
      S acc = zero_;
      for (std::size_t i = 1; i <= j; ++i) acc = acc + c_[i] * b[j - i];
      b[j] = -(acc * lead_inv);
    }
    return LaurentSeries(-top_, std::move(b), -top_ - static_cast<int>(n) + 1);
  }

  friend LaurentSeries operator*(const Polynomial<S>& q, const LaurentSeries& g) {
    if (q.is_zero()) return LaurentSeries(g.floor_ - 1, {g.zero_}, g.floor_ - 1);
    const int dq = q.degree();
    const int new_floor = g.floor_ + dq;
    if (g.c_.empty()) return LaurentSeries(new_floor, {g.zero_}, new_floor);
    const int new_top = g.top_ + dq;
    std::vector<S> out(static_cast<std::size_t>(new_top - new_floor + 1), g.zero_);
    for (int d = 0; d <= dq; ++d) {
      const S& qd = q[static_cast<std::size_t>(d)];
      if (mahlercf::is_zero(qd)) continue;
      for (std::size_t j = 0; j < g.c_.size(); ++j) {
        const int e = g.top_ - static_cast<int>(j) + d;
        if (e < new_floor) break;
        auto& slot = out[static_cast<std::size_t>(new_top - e)];
        slot = slot + qd * g.c_[j];
      }
    }
    return LaurentSeries(new_top, std::move(out), new_floor);
  }

  /// f - p; polynomial terms below the floor are dropped.
  [[nodiscard]] LaurentSeries minus(const Polynomial<S>& p) const {
    const int top = std::max(c_.empty() ? floor_ : top_, p.degree());
    std::vector<S> out(static_cast<std::size_t>(std::max(top - floor_ + 1, 1)), zero_);
    for (int d = top; d >= floor_; --d) {
      S x = coefficient(d);
      if (d >= 0 && d <= p.degree()) x = x - p[static_cast<std::size_t>(d)];
      out[static_cast<std::size_t>(top - d)] = x;
    }
    return LaurentSeries(std::max(top, floor_), std::move(out), floor_);
  }

  friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
    return a.floor_ == b.floor_ && a.valuation() == b.valuation() && a.c_ == b.c_;
  }

 private:
  void normalize() {
    std::size_t lead = 0;
    while (lead < c_.size() && mahlercf::is_zero(c_[lead])) ++lead;
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
    top_ -= static_cast<int>(lead);
    if (c_.empty()) top_ = floor_ - 1;
  }

  S zero_;
  int top_;
  std::vector<S> c_;
  int floor_;
};

template <FieldScalar S>
struct CFTerm {
  S beta;
  Polynomial<S> a;
};

/// a_0 + K_{i>=1} beta_i / a_i(z) with monic a_i.
template <FieldScalar S>
struct CFExpansion {
  Polynomial<S> a0;
  std::vector<CFTerm<S>> terms;

  [[nodiscard]] std::size_t size() const noexcept { return terms.size(); }
  /// True when every a_i has degree exactly 1.
  [[nodiscard]] bool all_linear() const {
    return std::all_of(terms.begin(), terms.end(), [](const CFTerm<S>& t) { return t.a.degree() == 1; });
  }
};

/// z^{-1} prod_{t=0}^{T} (1 + u z^{-3^t} + v z^{-2*3^t}) with degrees -1..-depth exact.
template <FieldScalar S>
LaurentSeries<S> expand_g(const S& u, const S& v, int depth) {
  if (depth < 1) throw std::invalid_argument("expand_g: depth must be >= 1");
  const auto n = static_cast<std::size_t>(depth);
  const S zero = zero_like(u);
  // coefficients of w^0..w^{n-1} with w = z^{-1}
  std::vector<S> c(n, zero);
  c[0] = one_like(u);
  for (std::size_t step = 1; step <= n; step *= 3) {
    // multiply in place by (1 + u w^step + v w^{2 step}), high degrees first
    for (std::size_t j = n; j-- > 0;) {
      S acc = c[j];
      if (j >= step) acc = acc + u * c[j - step];
      if (j >= 2 * step) acc = acc + v * c[j - 2 * step];
      c[j] = acc;
    }
  }
  return LaurentSeries<S>(-1, std::move(c), -depth);
}

/// The continued fraction whose quotients are z + alpha_i, for every complete
/// pair of a recurrence run (a zero beta ends the expansion).
template <FieldScalar S>
CFExpansion<S> cf_from_run(const RecurrenceRun<S>& run) {
  CFExpansion<S> cf;
  std::size_t n = run.size();
  if (run.failure()) n = std::min(n, run.failure()->index - 1);
  for (std::size_t i = 1; i <= n; ++i)
    cf.terms.push_back({run.beta(i), Polynomial<S>::monic_linear(run.alpha(i))});
  return cf;
}

/// (p_j, q_j) for j = 0..k via p_n = a_n p_{n-1} + beta_n p_{n-2} and the
/// same rule for q_n, seeded with p_0 = a_0, q_0 = 1, p_1 = a_0 a_1 + beta_1, q_1 = a_1.
template <FieldScalar S>
std::vector<std::pair<Polynomial<S>, Polynomial<S>>> convergent_sequence(const CFExpansion<S>& cf,
                                                                         std::size_t k) {
  if (k > cf.size())
    throw IndexOutOfRange("convergent " + std::to_string(k) + " requested from " +
                          std::to_string(cf.size()) + " terms");
  std::vector<std::pair<Polynomial<S>, Polynomial<S>>> out;
  out.reserve(k + 1);
  Polynomial<S> one;
  if (!cf.terms.empty()) one = Polynomial<S>::constant(one_like(cf.terms[0].beta));
  else if (!cf.a0.is_zero()) one = Polynomial<S>::constant(one_like(cf.a0.leading()));
  else throw IndexOutOfRange("empty expansion has no scalar field");
  out.emplace_back(cf.a0, one);
  if (k == 0) return out;
  const auto& t1 = cf.terms[0];
  out.emplace_back(cf.a0 * t1.a + Polynomial<S>::constant(t1.beta), t1.a);
  for (std::size_t n = 2; n <= k; ++n) {
    const auto& t = cf.terms[n - 1];
    const auto& [p1, q1] = out[n - 1];
    const auto& [p2, q2] = out[n - 2];
    out.emplace_back(t.a * p1 + p2.scaled(t.beta), t.a * q1 + q2.scaled(t.beta));
  }
  return out;
}

template <FieldScalar S>
std::pair<Polynomial<S>, Polynomial<S>> convergents(const CFExpansion<S>& cf, std::size_t k) {
  return convergent_sequence(cf, k).back();
}

/// d_k = deg q_k for k = 0..kmax.
template <FieldScalar S>
std::vector<std::int64_t> denominator_degrees(const CFExpansion<S>& cf, std::size_t kmax) {
  std::vector<std::int64_t> out;
  for (const auto& pq : convergent_sequence(cf, kmax)) out.push_back(pq.second.degree());
  return out;
}

/// ||q g - p||. Throws InsufficientDepth when the residual vanishes to the floor.
template <FieldScalar S>
int residual_valuation(const LaurentSeries<S>& g, const Polynomial<S>& p, const Polynomial<S>& q) {
  const auto r = (q * g).minus(p);
  const auto val = r.valuation();
  if (!val) throw InsufficientDepth("residual vanishes to floor " + std::to_string(r.floor()));
  return *val;
}

template <FieldScalar S>
struct CFExtraction {
  CFExpansion<S> cf;
  /// Precision ran out before max_terms quotients were certified.
  bool exhausted = false;
};

/// Classical continued fraction of g, renormalised to monic quotients. Stops at
/// max_terms or at the first quotient the truncated coefficients cannot fix.
template <FieldScalar S>
CFExtraction<S> cf_extract_partial(const LaurentSeries<S>& g, std::size_t max_terms) {
  CFExtraction<S> out;
  if (!g.valuation()) throw InsufficientDepth("series vanishes to its floor");
  if (*g.valuation() >= 0) out.cf.a0 = g.polynomial_part();
  auto rest = g.fractional_part();
  std::optional<S> prev_lead;
  while (out.cf.size() < max_terms) {
    if (!rest.valuation()) {
      out.exhausted = true;
      break;
    }
    const auto flipped = rest.inverse();
    if (flipped.floor() > 0) {
      out.exhausted = true;
      break;
    }
    const auto b = flipped.polynomial_part();
    const S lead = b.leading();
    const S lead_inv = one_like(lead) / lead;
    const S beta = prev_lead ? one_like(lead) / (*prev_lead * lead) : lead_inv;
    out.cf.terms.push_back({beta, b.scaled(lead_inv)});
    prev_lead = lead;
    rest = flipped.fractional_part();
  }
  return out;
}

/// As cf_extract_partial, but never returns fewer than max_terms quotients.
template <FieldScalar S>
CFExpansion<S> cf_extract(const LaurentSeries<S>& g, std::size_t max_terms) {
  auto res = cf_extract_partial(g, max_terms);
  if (res.exhausted)
    throw InsufficientDepth("only " + std::to_string(res.cf.size()) + " of " +
                                std::to_string(max_terms) + " quotients certified at floor " +
                                std::to_string(g.floor()),
                            res.cf.size());
  return std::move(res.cf);
}

/// Series depth that certifies n all-linear quotients with some margin.
inline int default_depth_for_terms(std::size_t n) { return static_cast<int>(2 * n + 4); }

/// 1 + max d_{k+1}/d_k over k in [window_begin, window_end], skipping d_k = 0.
/// A finite-depth estimate of 1 + limsup d_{k+1}/d_k.
Rational mu_estimate(std::span<const std::int64_t> degrees, std::size_t window_begin = 0,
                     std::optional<std::size_t> window_end = std::nullopt);

}  // namespace mahlercf
