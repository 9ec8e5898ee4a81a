#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pcf/error.hpp"
#include "pcf/factor.hpp"
#include "pcf/mobius.hpp"
#include "pcf/poly.hpp"
#include "pcf/ratfunc.hpp"

namespace pcf {

/// A coefficient sequence: explicit values on [first, first + size) and,
/// optionally, a rational-function tail for every later index.
class CoeffSeq {
 public:
  CoeffSeq() = default;
  CoeffSeq(RatFunc tail) : tail_(std::move(tail)) {}
  CoeffSeq(Poly tail) : tail_(RatFunc(std::move(tail))) {}
  CoeffSeq(long first, std::vector<BigRat> values, std::optional<RatFunc> tail = std::nullopt)
      : first_(first), values_(std::move(values)), tail_(std::move(tail)) {}

  long first() const noexcept { return first_; }
  const std::vector<BigRat>& values() const noexcept { return values_; }
  const std::optional<RatFunc>& tail() const noexcept { return tail_; }

  /// One past the last explicit index.
  long prefix_end() const noexcept { return first_ + static_cast<long>(values_.size()); }
  /// Last usable index, or nullopt when the tail makes the sequence infinite.
  std::optional<long> last() const {
    if (tail_) return std::nullopt;
    return prefix_end() - 1;
  }

  bool has(long i) const {
    if (i >= first_ && i < prefix_end()) return true;
    return tail_.has_value() && i >= prefix_end();
  }

  BigRat operator()(long i) const {
    if (i >= first_ && i < prefix_end()) return values_[static_cast<std::size_t>(i - first_)];
    if (tail_ && i >= prefix_end()) return (*tail_)(BigRat(i));
    throw error(errc::invalid_input, "coefficient index " + std::to_string(i) + " out of range");
  }

  /// Indices >= from where the tail vanishes (its numerator has an integer root there).
  std::vector<long> tail_zeros(long from) const {
    std::vector<long> out;
    if (!tail_ || tail_->is_zero()) {
      if (tail_) out.push_back(std::max(from, prefix_end()));
      return out;
    }
    if (tail_->num().is_constant()) return out;
    for (const auto& rm : rational_roots(tail_->num())) {
      if (!is_integer(rm.root)) continue;
      long r = rm.root.get_num().get_si();
      if (r >= std::max(from, prefix_end())) out.push_back(r);
    }
    return out;
  }

 private:
  long first_ = 1;
  std::vector<BigRat> values_;
  std::optional<RatFunc> tail_;
};

/// Terms b_i, a_i of a continued fraction indexed from 1.
struct TermSeqs {
  CoeffSeq b;
  CoeffSeq a;

  std::pair<BigRat, BigRat> operator()(long i) const { return {b(i), a(i)}; }

  std::optional<long> last() const {
    auto lb = b.last(), la = a.last();
    if (!lb) return la;
    if (!la) return lb;
    return std::min(*lb, *la);
  }
};

namespace detail {

inline std::optional<long> min_opt(std::optional<long> x, std::optional<long> y) {
  if (!x) return y;
  if (!y) return x;
  return std::min(*x, *y);
}

}  // namespace detail

/// Terms of Euler's conversion: b_i = -r_i, a_i = 1 + r_i, so that
/// sum_{k<=n} prod_{i<=k} r_i = 1/(1 + K_1^n b_i/a_i).
inline TermSeqs euler_sum_to_cf(const CoeffSeq& r) {
  for (long i = r.first(); i < r.prefix_end(); ++i)
    if (r(i) == -1)
      throw error(errc::degenerate_term, "r_" + std::to_string(i) + " = -1 makes a_i vanish");
  std::vector<BigRat> b, a;
  for (const auto& v : r.values()) {
    b.push_back(-v);
    a.push_back(1 + v);
  }
  std::optional<RatFunc> bt, at;
  if (r.tail()) {
    RatFunc plus_one = *r.tail() + RatFunc(1);
    CoeffSeq probe(r.prefix_end(), {}, plus_one);
    auto zeros = probe.tail_zeros(std::max(1L, r.prefix_end()));
    if (!zeros.empty())
      throw error(errc::degenerate_term,
                  "r_" + std::to_string(zeros.front()) + " = -1 makes a_i vanish");
    bt = -*r.tail();
    at = plus_one;
  }
  return {CoeffSeq(r.first(), std::move(b), bt), CoeffSeq(r.first(), std::move(a), at)};
}

/// Result of an equivalence transformation: K b/a = scale * K b'/a'.
struct EquivalentCF {
  TermSeqs terms;
  BigRat scale;
};

/// (b_i, a_i) -> (c_{i-1} c_i b_i, c_i a_i) with overall factor 1/c_0.
///
/// With shift s > 0 the scalers c_0..c_{s-1} are replaced by 1, which starts
/// the transformation at index s (the device for sequences with c_0 = 0).
inline EquivalentCF equivalence_transform(const CoeffSeq& b, const CoeffSeq& a, const CoeffSeq& c,
                                          long shift = 0) {
  if (shift < 0) throw error(errc::invalid_input, "negative shift");
  auto scaler = [&](long i) -> BigRat {
    if (i < shift) return BigRat(1);
    BigRat v = c(i);
    if (v == 0) throw error(errc::zero_scaler, "c_" + std::to_string(i) + " = 0");
    return v;
  };

  std::optional<long> last = detail::min_opt(detail::min_opt(b.last(), a.last()), c.last());
  long explicit_end = std::max({b.prefix_end(), a.prefix_end(), c.prefix_end(), shift + 1});
  if (last) explicit_end = std::min(explicit_end, *last + 1);

  std::vector<BigRat> nb, na;
  for (long i = 1; i < explicit_end; ++i) {
    BigRat ci = scaler(i);
    nb.push_back(scaler(i - 1) * ci * b(i));
    na.push_back(ci * a(i));
  }

  std::optional<RatFunc> bt, at;
  if (!last) {
    const RatFunc& ct = *c.tail();
    auto zeros = c.tail_zeros(std::max(explicit_end - 1, shift));
    if (!zeros.empty()) throw error(errc::zero_scaler, "c_" + std::to_string(zeros.front()) + " = 0");
    bt = ct.shift(-1) * ct * *b.tail();
    at = ct * *a.tail();
  }
  BigRat scale = BigRat(1) / scaler(0);
  return {{CoeffSeq(1, std::move(nb), bt), CoeffSeq(1, std::move(na), at)}, scale};
}

/// Certificate (h1, h2, f) of membership in the Euler family.
class EulerTriple {
 public:
  EulerTriple(Poly h1, Poly h2, Poly f) : h1_(std::move(h1)), h2_(std::move(h2)), f_(std::move(f)) {
    if (h1_.is_zero() || h2_.is_zero() || f_.is_zero())
      throw error(errc::invalid_input, "h1, h2 and f must be nonzero");
    if (!f_.divides(numerator()))
      throw error(errc::not_divisible, "f(x) does not divide f(x-1)h1(x) + f(x+1)h2(x+1)");
  }

  const Poly& h1() const noexcept { return h1_; }
  const Poly& h2() const noexcept { return h2_; }
  const Poly& f() const noexcept { return f_; }

  /// f(x-1)h1(x) + f(x+1)h2(x+1)
  Poly numerator() const { return f_.shift(-1) * h1_ + f_.shift(1) * h2_.shift(1); }

  friend bool operator==(const EulerTriple&, const EulerTriple&) = default;

 private:
  Poly h1_, h2_, f_;
};

struct PolyCF {
  Poly a;
  Poly b;

  friend bool operator==(const PolyCF&, const PolyCF&) = default;

  CFSpec spec(BigRat head = 0) const { return {a, b, 1, std::move(head)}; }
};

/// b = -h1 h2, a = (f(x-1)h1(x) + f(x+1)h2(x+1)) / f(x).
inline PolyCF build_euler_cf(const EulerTriple& t) {
  return {t.numerator().exact_div(t.f()), -(t.h1() * t.h2())};
}

/// Closed-form convergent K_1^n b/a of an Euler continued fraction:
/// (f(1)h2(1)/f(0)) (1/S_n - 1), S_n = sum_k f(0)f(1)/(f(k)f(k+1)) prod_{i<=k} h1(i)/h2(i+1).
inline BigRat euler_partial_value(const EulerTriple& t, long n) {
  if (n < 0) throw error(errc::invalid_input, "n must be nonnegative");
  const Poly &h1 = t.h1(), &h2 = t.h2(), &f = t.f();
  auto pole = [](const std::string& what, long k) {
    return error(errc::pole_in_formula, what + " vanishes at k = " + std::to_string(k));
  };
  std::vector<BigRat> fv;
  for (long k = 0; k <= n + 1; ++k) {
    fv.push_back(f(BigRat(k)));
    if (fv.back() == 0) throw pole("f(k)", k);
  }
  for (long k = 1; k <= n + 1; ++k)
    if (h2(BigRat(k)) == 0) throw pole("h2(k)", k);

  BigRat sum(0), prod(1);
  const BigRat f01 = fv[0] * fv[1];
  for (long k = 0; k <= n; ++k) {
    if (k > 0) prod *= h1(BigRat(k)) / h2(BigRat(k + 1));
    sum += f01 / (fv[static_cast<std::size_t>(k)] * fv[static_cast<std::size_t>(k + 1)]) * prod;
  }
  if (sum == 0) throw error(errc::pole_in_formula, "the partial sum vanishes");
  return fv[1] * h2(BigRat(1)) / fv[0] * (1 / sum - 1);
}

/// c(x) = f(x) / (f(x+1) h2(x+1)), the rational solution of c_i a_i + c_{i-1} c_i b_i = 1.
inline RatFunc euler_c_closed_form(const EulerTriple& t) {
  return RatFunc(t.f(), t.f().shift(1) * t.h2().shift(1));
}

/// Orbit c_0..c_n of c_i = 1/(a_i + c_{i-1} b_i).
template <class Terms>
std::vector<BigRat> solve_c_recurrence(const Terms& terms, const BigRat& c0, long n) {
  std::vector<BigRat> out{c0};
  for (long i = 1; i <= n; ++i) {
    auto [b, a] = terms(i);
    BigRat den = a + out.back() * b;
    if (den == 0) throw error(errc::orbit_pole, "a_i + c_{i-1} b_i = 0 at i = " + std::to_string(i));
    out.push_back(1 / den);
  }
  return out;
}

inline std::vector<BigRat> solve_c_recurrence(const CFSpec& cf, const BigRat& c0, long n) {
  return solve_c_recurrence([&cf](long j) { return cf.term(j); }, c0, n);
}

}  // namespace pcf
