#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "pcf/error.hpp"
#include "pcf/poly.hpp"
#include "pcf/quadsurd.hpp"
#include "pcf/rational.hpp"

namespace pcf {

/// 2x2 matrix over Q, row-major (a b; c d).
struct Mat2 {
  BigRat a{1}, b{0}, c{0}, d{1};

  static Mat2 identity() { return {}; }

  BigRat det() const { return a * d - b * c; }

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend Mat2 operator*(const BigRat& s, const Mat2& m) {
    return {s * m.a, s * m.b, s * m.c, s * m.d};
  }
  friend bool operator==(const Mat2&, const Mat2&) = default;

  std::string str() const {
    return "(" + a.get_str() + " " + b.get_str() + "; " + c.get_str() + " " + d.get_str() + ")";
  }
};

/// z -> (az + b)/(cz + d) on the projective line, as a total case table.
inline ExtRat mobius_apply(const Mat2& m, const ExtRat& z) {
  if (m.det() == 0) throw error(errc::singular_matrix, "Mobius action of a singular matrix");
  if (z.is_infinite()) {
    if (m.c == 0) return ExtRat::infinity();
    return ExtRat(BigRat(m.a / m.c));
  }
  const BigRat& x = z.value();
  BigRat den = m.c * x + m.d;
  if (den == 0) return ExtRat::infinity();  // z = -d/c; numerator is nonzero since det != 0
  return ExtRat(BigRat((m.a * x + m.b) / den));
}

/// (0 b_i; 1 a_i)
inline Mat2 cf_step_matrix(const BigRat& b_i, const BigRat& a_i) {
  return {BigRat(0), b_i, BigRat(1), a_i};
}

/// a0 + K_{i>=start} b(i)/a(i) with polynomial partial numerators and denominators.
struct CFSpec {
  Poly a;
  Poly b;
  long start = 1;
  BigRat head{0};

  /// (b_j, a_j) for the j-th term, j >= 1.
  std::pair<BigRat, BigRat> term(long j) const {
    BigRat i(start + j - 1);
    return {b(i), a(i)};
  }
};

/// Columns (p_prev p; q_prev q) of prod_{i<n} M_i. Integers are stored exactly
/// as produced by the recurrence and never reduced.
struct ConvergentState {
  BigRat p_prev{1}, p{0}, q_prev{0}, q{1};
  long index = 1;
  /// Set when the next term had b = 0; the stream stops there.
  std::optional<long> truncated_at;

  Mat2 matrix() const { return {p_prev, p, q_prev, q}; }

  /// p/q in lowest terms, infinity when q = 0.
  ExtRat reduced() const {
    if (q == 0) return ExtRat::infinity();
    return ExtRat(BigRat(p / q));
  }
};

/// Lazy convergent stream over any term source `long -> pair<b, a>`.
template <class Terms>
class ConvergentStream {
 public:
  explicit ConvergentStream(Terms terms) : terms_(std::move(terms)) {}

  const ConvergentState& state() const noexcept { return st_; }

  /// Consumes term `index`; false (and a flagged state) when its b is zero.
  bool advance() {
    if (st_.truncated_at) return false;
    auto [b, a] = terms_(st_.index);
    if (b == 0) {
      st_.truncated_at = st_.index;
      return false;
    }
    BigRat p_next = a * st_.p + b * st_.p_prev;
    BigRat q_next = a * st_.q + b * st_.q_prev;
    st_.p_prev = std::move(st_.p);
    st_.q_prev = std::move(st_.q);
    st_.p = std::move(p_next);
    st_.q = std::move(q_next);
    ++st_.index;
    return true;
  }

  /// Advances until state().index == n or the stream truncates.
  bool advance_to(long n) {
    while (st_.index < n)
      if (!advance()) return false;
    return true;
  }

 private:
  Terms terms_;
  ConvergentState st_;
};

inline auto convergents(const CFSpec& cf) {
  return ConvergentStream([cf](long j) { return cf.term(j); });
}

namespace detail {

template <class Terms>
ConvergentState state_after(ConvergentStream<Terms>& s, long depth) {
  if (depth < 0) throw error(errc::invalid_input, "negative depth");
  if (!s.advance_to(depth + 1))
    throw error(errc::truncated, "b vanishes at term " + std::to_string(*s.state().truncated_at));
  return s.state();
}

}  // namespace detail

/// head + K_1^depth, exact.
inline ExtRat cf_value(const CFSpec& cf, long depth) {
  if (depth < 1) throw error(errc::invalid_input, "depth must be at least 1");
  auto s = convergents(cf);
  auto st = detail::state_after(s, depth);
  ExtRat tail = st.reduced();
  if (tail.is_infinite()) return tail;
  return ExtRat(BigRat(cf.head + tail.value()));
}

/// [prod_1^depth M_i](z): the continued fraction seeded at z instead of 0.
inline ExtRat product_apply(const CFSpec& cf, long depth, const ExtRat& z) {
  if (depth < 1) throw error(errc::invalid_input, "depth must be at least 1");
  auto s = convergents(cf);
  return mobius_apply(detail::state_after(s, depth).matrix(), z);
}

/// Limit class of K B/A.
struct CFLimitClass {
  enum class Kind { converges, diverges_oscillates, diverges_infinite };
  Kind kind;
  std::optional<QuadSurd> root;  // set iff kind == converges

  bool converges() const noexcept { return kind == Kind::converges; }
};

/// Classifies K_1^inf B/A; a convergent CF selects the attracting root of
/// x^2 + A x - B = 0, which is the one of smaller absolute value.
inline CFLimitClass constant_cf_limit(const BigRat& A, const BigRat& B) {
  using K = CFLimitClass::Kind;
  if (B == 0) throw error(errc::invalid_input, "B must be nonzero");
  if (A == 0) return {K::diverges_oscillates, std::nullopt};
  BigRat disc = A * A + 4 * B;
  if (disc < 0) return {K::diverges_oscillates, std::nullopt};
  if (disc == 0) return {K::converges, QuadSurd(BigRat(-A / 2))};
  QuadSurd s = QuadSurd::sqrt_of(disc);
  QuadSurd half(BigRat(1, 2));
  QuadSurd root = half * (QuadSurd(BigRat(-A)) + (A > 0 ? s : -s));
  return {K::converges, root};
}

}  // namespace pcf
