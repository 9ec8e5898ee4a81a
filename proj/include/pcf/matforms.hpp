#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pcf/error.hpp"
#include "pcf/euler.hpp"
#include "pcf/mobius.hpp"
#include "pcf/poly.hpp"
#include "pcf/ratfunc.hpp"

namespace pcf {

/// 2x2 matrix of rational functions, row-major (a b; c d).
struct RatMat2 {
  RatFunc a{1}, b{0}, c{0}, d{1};

  RatFunc det() const { return a * d - b * c; }
  RatMat2 shift(long k) const { return {a.shift(k), b.shift(k), c.shift(k), d.shift(k)}; }

  Mat2 at(const BigRat& x) const { return {a(x), b(x), c(x), d(x)}; }

  friend RatMat2 operator*(const RatMat2& x, const RatMat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend bool operator==(const RatMat2& x, const RatMat2& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }

  std::string str() const {
    return "(" + a.str() + ", " + b.str() + "; " + c.str() + ", " + d.str() + ")";
  }
};

/// M(x) = (a(x) b(x); c(x) d(x)) with polynomial entries.
struct PolyMat2 {
  Poly a{1}, b{0}, c{0}, d{1};

  Poly det() const { return a * d - b * c; }
  PolyMat2 shift(long k) const { return {a.shift(k), b.shift(k), c.shift(k), d.shift(k)}; }

  Mat2 at(const BigRat& x) const { return {a(x), b(x), c(x), d(x)}; }
  RatMat2 rat() const { return {a, b, c, d}; }

  friend PolyMat2 operator*(const PolyMat2& x, const PolyMat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend bool operator==(const PolyMat2&, const PolyMat2&) = default;

  std::string str() const {
    return "(" + a.str() + ", " + b.str() + "; " + c.str() + ", " + d.str() + ")";
  }
};

/// (0 b; 1 a), the step matrix of a polynomial continued fraction.
inline PolyMat2 cf_matrix(const Poly& b, const Poly& a) { return {Poly(), b, Poly(1), a}; }

/// M1(x) U(x+1) = U(x) M2(x), or the same up to a scalar function factor.
inline bool coboundary_check(const PolyMat2& m1, const PolyMat2& m2, const PolyMat2& u,
                             bool up_to_scalar = false) {
  const PolyMat2 lhs = m1 * u.shift(1);
  const PolyMat2 rhs = u * m2;
  if (!up_to_scalar) return lhs == rhs;
  const Poly* l[] = {&lhs.a, &lhs.b, &lhs.c, &lhs.d};
  const Poly* r[] = {&rhs.a, &rhs.b, &rhs.c, &rhs.d};
  std::size_t pivot = 4;
  for (std::size_t e = 0; e < 4; ++e)
    if (!r[e]->is_zero()) {
      pivot = e;
      break;
    }
  if (pivot == 4 || l[pivot]->is_zero()) return false;
  for (std::size_t e = 0; e < 4; ++e)
    if (*l[e] * *r[pivot] != *l[pivot] * *r[e]) return false;
  return true;
}

/// A matrix sequence conjugated into continued-fraction form.
struct CFForm {
  /// (0, -(c(x+1)/c(x)) det M(x); 1, a(x+1) + d(x) c(x+1)/c(x))
  RatMat2 cf;
  /// U(x) = (1 a(x); 0 c(x)), so that cf(x) = U(x)^{-1} M(x) U(x+1).
  PolyMat2 u;
  /// U(1): prod_1^n M(k) (1,0)^T = init * (P_{n-1}, Q_{n-1})^T of cf.
  Mat2 init;
  /// (0, -c(x-1)c(x+1) det M(x); 1, c(x)a(x+1) + d(x)c(x+1)), always integral
  /// when M is; equivalent to cf under the scalers c(x).
  PolyMat2 integral;

  /// cf as a polynomial continued fraction, when its entries are polynomials.
  std::optional<PolyCF> poly_cf() const {
    auto b = cf.b.as_poly();
    auto a = cf.d.as_poly();
    if (!b || !a) return std::nullopt;
    return PolyCF{*a, *b};
  }
};

inline CFForm to_cf_form(const PolyMat2& m) {
  if (m.c.is_zero()) throw error(errc::zero_c_entry, "the c entry vanishes identically");
  const Poly c1 = m.c.shift(1);
  const RatFunc ratio(c1, m.c);
  CFForm out;
  out.cf = {RatFunc(0), -(ratio * RatFunc(m.det())), RatFunc(1), RatFunc(m.a.shift(1)) + RatFunc(m.d) * ratio};
  out.u = {Poly(1), m.a, Poly(), m.c};
  out.init = out.u.at(BigRat(1));
  out.integral = {Poly(), -(m.c.shift(-1) * c1 * m.det()), Poly(1), m.c * m.a.shift(1) + m.d * c1};
  return out;
}

/// prod_1^n M(k) (1,0)^T reconstructed from the continued-fraction form.
inline std::pair<BigRat, BigRat> cf_form_column(const CFForm& form, long n) {
  if (n < 1) throw error(errc::invalid_input, "n must be at least 1");
  ConvergentStream s([&form](long j) {
    BigRat x(j);
    return std::pair<BigRat, BigRat>(form.cf.b(x), form.cf.d(x));
  });
  if (!s.advance_to(n))
    throw error(errc::truncated, "b vanishes at term " + std::to_string(*s.state().truncated_at));
  const auto& st = s.state();
  return {form.init.a * st.p + form.init.b * st.q, form.init.c * st.p + form.init.d * st.q};
}

/// Indexed eigenvector (G(x), F(x)) of a polynomial matrix sequence.
struct EigenSeq {
  enum class Side { left, right };

  Poly g;
  Poly f;
  Poly eigenvalue;
  Side side = Side::left;
};

/// Left: (G, F)(x) M(x) = lambda(x) (G, F)(x+1).
/// Right: M(x) (F, -G)(x+1)^T = alpha(x) (F, -G)(x)^T.
inline bool eigen_check(const PolyMat2& m, const EigenSeq& e) {
  const Poly g1 = e.g.shift(1), f1 = e.f.shift(1);
  if (e.side == EigenSeq::Side::left) {
    return e.g * m.a + e.f * m.c == e.eigenvalue * g1 && e.g * m.b + e.f * m.d == e.eigenvalue * f1;
  }
  return m.a * f1 - m.b * g1 == e.eigenvalue * e.f && m.c * f1 - m.d * g1 == -(e.eigenvalue * e.g);
}

struct Triangularization {
  /// U(x) M(x) U(x+1)^{-1} = (alpha, b/(F(x)F(x+1)); 0, lambda)
  RatMat2 t;
  /// U(x) = (1/F(x) 0; G(x) F(x))
  RatMat2 u;
  RatFunc alpha;
};

/// Conjugates M into upper-triangular form along a left eigenvector.
inline Triangularization triangularize(const PolyMat2& m, const EigenSeq& left) {
  if (left.f.is_zero()) throw error(errc::zero_f, "F vanishes identically");
  if (left.side != EigenSeq::Side::left || !eigen_check(m, left))
    throw error(errc::not_eigenvector, "not a left eigenvector of the sequence");
  if (left.eigenvalue.is_zero()) throw error(errc::not_eigenvector, "zero eigenvalue");
  const RatFunc f(left.f), g(left.g);
  const RatFunc f1 = f.shift(1), g1 = g.shift(1);
  const RatMat2 u{RatFunc(1) / f, RatFunc(0), g, f};
  const RatMat2 u1_inv{f1, RatFunc(0), -g1, RatFunc(1) / f1};
  Triangularization out;
  out.u = u;
  out.t = u * m.rat() * u1_inv;
  out.alpha = RatFunc(m.det()) / RatFunc(left.eigenvalue);
  const RatFunc lambda(left.eigenvalue);
  const RatMat2 expected{out.alpha, RatFunc(m.b) / (f * f1), RatFunc(0), lambda};
  if (!(out.t == expected) || !(out.alpha * lambda == RatFunc(m.det())))
    throw error(errc::not_eigenvector, "conjugation did not triangularize");
  return out;
}

struct TriangularProduct {
  Mat2 product;
  /// product applied to z = 0 as a Mobius map
  BigRat at_zero;
};

/// prod_{i=1}^{n-1} T(i) for upper-triangular T(i) = (alpha_i beta_i; 0 gamma_i),
/// in closed form; seq[i-1] holds T(i). n = 1 is the empty product.
inline TriangularProduct triangular_product(const std::vector<Mat2>& seq, std::size_t n) {
  if (n < 1) throw error(errc::invalid_input, "n must be at least 1");
  const std::size_t m = n - 1;
  if (m > seq.size()) throw error(errc::invalid_input, "sequence shorter than n - 1");
  for (std::size_t k = 0; k < m; ++k) {
    if (seq[k].c != 0) throw error(errc::invalid_input, "matrix " + std::to_string(k + 1) + " is not upper triangular");
    if (seq[k].a == 0 || seq[k].d == 0)
      throw error(errc::zero_diagonal, "zero diagonal entry in matrix " + std::to_string(k + 1));
  }
  // suffix[k] = prod_{i>=k} gamma_i
  std::vector<BigRat> suffix(m + 1, BigRat(1));
  for (std::size_t k = m; k-- > 0;) suffix[k] = suffix[k + 1] * seq[k].d;
  BigRat alpha(1), corner(0), at_zero(0), ratio(1);
  for (std::size_t k = 0; k < m; ++k) {
    corner += alpha * seq[k].b * suffix[k + 1];
    at_zero += seq[k].b / seq[k].d * ratio;
    alpha *= seq[k].a;
    ratio *= seq[k].a / seq[k].d;
  }
  return {{alpha, corner, BigRat(0), suffix[0]}, at_zero};
}

/// K_1^{n-1} of the trivial Euler fraction b = -h1 h2, a = h1 + h2(x+1),
/// computed through the triangularized matrices: U(1)^{-1} [prod T(i)](0).
inline BigRat rederive_euler_sum(const Poly& h1, const Poly& h2, long n) {
  if (n < 1) throw error(errc::invalid_input, "n must be at least 1");
  const PolyMat2 m = cf_matrix(-(h1 * h2), h1 + h2.shift(1));
  const EigenSeq left{Poly(1), h2, h2, EigenSeq::Side::left};
  const Triangularization tri = triangularize(m, left);
  std::vector<Mat2> seq;
  for (long i = 1; i < n; ++i) seq.push_back(tri.t.at(BigRat(i)));
  const BigRat z = triangular_product(seq, static_cast<std::size_t>(n)).at_zero;
  const BigRat h21 = h2(BigRat(1));
  if (h21 == 0) throw error(errc::pole_in_formula, "h2(1) = 0");
  const Mat2 u1_inv{h21, BigRat(0), BigRat(-1), BigRat(1) / h21};
  ExtRat v = mobius_apply(u1_inv, ExtRat(z));
  if (v.is_infinite()) throw error(errc::pole_in_formula, "the partial value is infinite");
  return v.value();
}

}  // namespace pcf
