#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pcf/error.hpp"
#include "pcf/euler.hpp"
#include "pcf/factor.hpp"
#include "pcf/mobius.hpp"
#include "pcf/poly.hpp"
#include "pcf/ratfunc.hpp"

namespace pcf {

/// constant + sum_d zeta[d] * zeta(d).
struct ZetaCombo {
  enum class Status { exact, divergent };

  BigRat constant{0};
  std::map<long, BigRat> zeta;  // d >= 2, no zero entries
  Status status = Status::exact;
  /// Uncancelled sum of the simple-pole residues of a divergent sum.
  BigRat residue{0};

  static ZetaCombo divergent(BigRat residue) {
    ZetaCombo z;
    z.status = Status::divergent;
    z.residue = std::move(residue);
    return z;
  }

  bool is_exact() const noexcept { return status == Status::exact; }
  bool is_rational() const noexcept { return is_exact() && zeta.empty(); }

  void add_zeta(long d, const BigRat& c) {
    if (c == 0) return;
    BigRat& slot = zeta[d];
    slot += c;
    if (slot == 0) zeta.erase(d);
  }

  friend bool operator==(const ZetaCombo&, const ZetaCombo&) = default;

  std::string str() const {
    if (!is_exact()) return "divergent (residue " + residue.get_str() + ")";
    std::string out;
    auto append = [&out](const BigRat& c, const std::string& what) {
      BigRat mag = rat_abs(c);
      std::string body = what.empty() ? mag.get_str() : (mag == 1 ? what : mag.get_str() + "*" + what);
      if (out.empty()) out = (c < 0 ? "-" : "") + body;
      else out += (c < 0 ? " - " : " + ") + body;
    };
    for (const auto& [d, c] : zeta) append(c, "zeta(" + std::to_string(d) + ")");
    if (constant != 0 || zeta.empty()) append(constant, "");
    return out;
  }
};

/// Heuristic limit estimate; never a proof of convergence.
struct LimitEstimate {
  enum class Verdict { estimated, inconclusive };

  BigRat value{0};
  BigRat last_delta{0};
  long depth_used = 0;
  Verdict verdict = Verdict::inconclusive;

  bool estimated() const noexcept { return verdict == Verdict::estimated; }
};

struct NumericOptions {
  /// 0 keeps convergents exact. Otherwise the convergent integers are
  /// truncated to about this many bits, trading exactness for speed on
  /// slowly converging fractions.
  unsigned long precision_bits = 0;
};

namespace detail {

inline std::vector<BigInt> integral_coeffs(const Poly& p, const BigInt& scale) {
  std::vector<BigInt> out;
  for (const auto& c : p.coeffs()) {
    BigRat v = c * scale;
    if (!is_integer(v)) throw error(errc::invalid_input, "scale does not clear denominators");
    out.push_back(v.get_num());
  }
  return out;
}

inline void horner(BigInt& out, const std::vector<BigInt>& c, long x) {
  out = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    mpz_mul_si(out.get_mpz_t(), out.get_mpz_t(), x);
    out += *it;
  }
}

/// Convergents of (1/L) K (L^2 b)/(L a) over Z, with optional truncation.
class IntegerStream {
 public:
  IntegerStream(const CFSpec& cf, unsigned long bits) : start_(cf.start), bits_(bits) {
    BigInt l = denominator_lcm(cf.a);
    BigInt lb = denominator_lcm(cf.b);
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), lb.get_mpz_t());
    scale_ = l;
    a_ = integral_coeffs(cf.a, l);
    b_ = integral_coeffs(cf.b, BigInt(l * l));
  }

  /// Depth of the current convergent.
  long depth() const noexcept { return depth_; }

  bool advance() {
    horner(bi_, b_, start_ + depth_);
    if (bi_ == 0) return false;
    horner(ai_, a_, start_ + depth_);
    tmp_ = ai_ * p_ + bi_ * p_prev_;
    std::swap(p_prev_, p_);
    std::swap(p_, tmp_);
    tmp_ = ai_ * q_ + bi_ * q_prev_;
    std::swap(q_prev_, q_);
    std::swap(q_, tmp_);
    ++depth_;
    if (bits_ > 0) truncate();
    return true;
  }

  ExtRat current() const { return ratio(p_, q_); }
  ExtRat previous() const { return ratio(p_prev_, q_prev_); }

 private:
  ExtRat ratio(const BigInt& p, const BigInt& q) const {
    if (q == 0) return ExtRat::infinity();
    return ExtRat(make_rat(p, BigInt(q * scale_)));
  }

  void truncate() {
    std::size_t size = 0;
    for (const BigInt* v : {&p_, &q_, &p_prev_, &q_prev_})
      size = std::max(size, mpz_sizeinbase(v->get_mpz_t(), 2));
    if (size <= bits_ + 64) return;
    const auto drop = static_cast<mp_bitcnt_t>(size - bits_);
    for (BigInt* v : {&p_, &q_, &p_prev_, &q_prev_})
      mpz_tdiv_q_2exp(v->get_mpz_t(), v->get_mpz_t(), drop);
  }

  long start_;
  unsigned long bits_;
  BigInt scale_;
  std::vector<BigInt> a_, b_;
  BigInt p_prev_{1}, p_{0}, q_prev_{0}, q_{1};
  BigInt ai_, bi_, tmp_;
  long depth_ = 0;
};

}  // namespace detail

/// Estimates the limit from convergents at depths 1, 2, 4, ... <= max_depth.
///
/// Stops at the first checkpoint 2n with |x_2n - x_n| < eps and
/// |x_2n - x_{2n-1}| < eps, reporting x_2n. The second test rejects
/// fractions whose even and odd convergents settle on different values.
/// A convergent at infinity never satisfies the rule.
inline LimitEstimate numeric_limit(const CFSpec& cf, const BigRat& eps, long max_depth,
                                   NumericOptions opts = {}) {
  if (eps <= 0) throw error(errc::invalid_input, "eps must be positive");
  if (max_depth < 1) throw error(errc::invalid_input, "max_depth must be at least 1");

  detail::IntegerStream stream(cf, opts.precision_bits);
  LimitEstimate est;
  std::optional<ExtRat> prev_checkpoint;
  for (long n = 1; n <= max_depth; n *= 2) {
    while (stream.depth() < n)
      if (!stream.advance())
        throw error(errc::truncated, "b vanishes at term " + std::to_string(stream.depth() + 1));
    ExtRat x = stream.current();
    ExtRat x_before = stream.previous();
    est.depth_used = n;
    if (x.is_finite()) {
      est.value = cf.head + x.value();
      if (prev_checkpoint && prev_checkpoint->is_finite() && x_before.is_finite()) {
        BigRat d1 = rat_abs(x.value() - prev_checkpoint->value());
        BigRat d2 = rat_abs(x.value() - x_before.value());
        est.last_delta = std::max(d1, d2);
        if (d1 < eps && d2 < eps) {
          est.verdict = LimitEstimate::Verdict::estimated;
          return est;
        }
      }
    }
    prev_checkpoint = x;
    if (n > max_depth / 2) break;
  }
  est.verdict = LimitEstimate::Verdict::inconclusive;
  return est;
}

/// K = -h2(1) when |h1(i)/h2(i)| tends to a limit above 1 (f = 1).
inline std::optional<BigRat> dominant_limit(const EulerTriple& t) {
  if (!t.f().is_constant()) return std::nullopt;
  const Poly &h1 = t.h1(), &h2 = t.h2();
  for (const auto& rm : rational_roots(h1))
    if (is_integer(rm.root) && rm.root >= 1) return std::nullopt;
  for (const auto& rm : rational_roots(h2))
    if (is_integer(rm.root) && rm.root >= 2) return std::nullopt;
  bool dominant = h1.deg() > h2.deg() ||
                  (h1.deg() == h2.deg() && rat_abs(h1.leading()) > rat_abs(h2.leading()));
  if (!dominant) return std::nullopt;
  return BigRat(-h2(BigRat(1)));
}

namespace detail {

/// The integer roots of p, when p splits completely into them.
inline std::optional<std::vector<long>> integer_root_list(const Poly& p) {
  std::vector<long> out;
  int count = 0;
  for (const auto& rm : rational_roots(p)) {
    if (!is_integer(rm.root) || !rm.root.get_num().fits_slong_p()) return std::nullopt;
    for (int k = 0; k < rm.multiplicity; ++k) out.push_back(rm.root.get_num().get_si());
    count += rm.multiplicity;
  }
  if (count != (p.is_constant() ? 0 : p.deg())) return std::nullopt;
  std::sort(out.begin(), out.end());
  return out;
}

inline BigInt factorial(long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

/// Power series of num/den at 0, coefficients 0..order-1.
inline std::vector<BigRat> series_quotient(const Poly& num, const Poly& den, std::size_t order) {
  if (den.coeff(0) == 0) throw error(errc::invalid_input, "series denominator vanishes at 0");
  std::vector<BigRat> out(order, BigRat(0));
  for (std::size_t n = 0; n < order; ++n) {
    BigRat acc = num.coeff(static_cast<long>(n));
    for (std::size_t j = 0; j < n; ++j) acc -= out[j] * den.coeff(static_cast<long>(n - j));
    out[n] = acc / den.coeff(0);
  }
  return out;
}

}  // namespace detail

/// Summand s_k = f(0)f(1)/(f(k)f(k+1)) prod_{i<=k} h1(i)/h2(i+1) as a rational
/// function of k, valid for all k >= 0. Needs deg h1 = deg h2, equal leading
/// coefficients, integer roots, and no h1 root at a positive integer.
inline RatFunc telescoped_summand(const EulerTriple& t) {
  const Poly &h1 = t.h1(), &h2 = t.h2(), &f = t.f();
  if (h1.deg() != h2.deg() || h1.leading() != h2.leading())
    throw error(errc::non_telescoping, "h1 and h2 need equal degree and leading coefficient");
  auto r1 = detail::integer_root_list(h1);
  auto r2 = detail::integer_root_list(h2);
  if (!r1 || !r2) throw error(errc::non_telescoping, "h1 or h2 has a non-integer root");

  // prod_{i<=k} (i + u) = (k+u)!/u! for u = -root of h1, and (k+v)!/v! with
  // v = 1 - root for the shifted h2 factor.
  std::vector<long> us, vs;
  for (long r : *r1) {
    if (r >= 1) throw error(errc::non_telescoping, "h1 vanishes at a positive integer");
    us.push_back(-r);
  }
  for (long s : *r2) {
    if (s >= 2)
      throw error(errc::non_telescoping, "h2(i+1) vanishes at i = " + std::to_string(s - 1));
    vs.push_back(1 - s);
  }
  std::sort(us.begin(), us.end());
  std::sort(vs.begin(), vs.end());

  Poly num(1), den(1);
  BigRat constant(1);
  for (std::size_t j = 0; j < us.size(); ++j) {
    long u = us[j], v = vs[j];
    constant *= make_rat(detail::factorial(v), detail::factorial(u));
    for (long m = std::min(u, v) + 1; m <= std::max(u, v); ++m)
      (u > v ? num : den) *= Poly{BigRat(m), BigRat(1)};
  }
  for (long k = 0; k <= 1; ++k)
    if (f(BigRat(k)) == 0)
      throw error(errc::non_telescoping, "f vanishes at k = " + std::to_string(k));
  constant *= f(BigRat(0)) * f(BigRat(1));
  den *= f * f.shift(1);
  return RatFunc(constant * num, den);
}

/// sum_{k>=0} s_k for s a proper rational function whose poles are at
/// negative integers, as a combination of 1 and zeta values.
inline ZetaCombo zeta_sum_of(const RatFunc& s) {
  if (s.is_zero()) return {};
  if (s.num().deg() >= s.den().deg()) return ZetaCombo::divergent(BigRat(0));
  auto poles = detail::integer_root_list(s.den());
  if (!poles) throw error(errc::non_telescoping, "summand has a non-integer pole");

  std::map<long, int> mult;  // m -> multiplicity of the factor (x + m)
  for (long r : *poles) {
    if (r >= 0) throw error(errc::non_telescoping, "summand has a pole at k = " + std::to_string(r));
    ++mult[-r];
  }

  ZetaCombo out;
  BigRat residue_sum(0), harmonic_part(0);
  for (const auto& [m, e] : mult) {
    Poly rest = s.den();
    for (int j = 0; j < e; ++j) rest = rest.exact_div(Poly{BigRat(m), BigRat(1)});
    // expand num/rest around x = -m: c_{m,j} = g_{e-j}
    auto g = detail::series_quotient(s.num().shift(-m), rest.shift(-m), static_cast<std::size_t>(e));
    for (int j = 1; j <= e; ++j) {
      const BigRat& c = g[static_cast<std::size_t>(e - j)];
      if (c == 0) continue;
      if (j == 1) {
        residue_sum += c;
        BigRat h(0);
        for (long i = 1; i < m; ++i) h += make_rat(1, i);
        harmonic_part -= c * h;
        continue;
      }
      // sum_{k>=0} 1/(k+m)^j = zeta(j) - sum_{i<m} i^{-j}
      out.add_zeta(j, c);
      for (long i = 1; i < m; ++i) out.constant -= c / rat_pow(BigRat(i), static_cast<unsigned long>(j));
    }
  }
  if (residue_sum != 0) return ZetaCombo::divergent(residue_sum);
  out.constant += harmonic_part;
  return out;
}

/// sum_{k>=0} s_k of an Euler triple in the telescoping regime.
inline ZetaCombo telescoping_zeta_sum(const EulerTriple& t) {
  const Poly &h1 = t.h1(), &h2 = t.h2(), &f = t.f();
  if (h1.deg() != h2.deg() || h1.leading() != h2.leading())
    throw error(errc::non_telescoping, "h1 and h2 need equal degree and leading coefficient");
  auto r1 = detail::integer_root_list(h1);
  if (!r1) throw error(errc::non_telescoping, "h1 has a non-integer root");
  long first_zero = 0;
  for (long r : *r1)
    if (r >= 1 && (first_zero == 0 || r < first_zero)) first_zero = r;
  if (first_zero > 0) {
    // the product vanishes from k = first_zero on: a finite sum
    ZetaCombo out;
    BigRat prod(1);
    const BigRat f0 = f(BigRat(0)), f1 = f(BigRat(1));
    for (long k = 0; k < first_zero; ++k) {
      if (k > 0) {
        BigRat d = h2(BigRat(k + 1));
        if (d == 0) throw error(errc::non_telescoping, "h2 vanishes inside the finite sum");
        prod *= h1(BigRat(k)) / d;
      }
      BigRat fk = f(BigRat(k)) * f(BigRat(k + 1));
      if (fk == 0) throw error(errc::non_telescoping, "f vanishes inside the finite sum");
      out.constant += f0 * f1 / fk * prod;
    }
    return out;
  }
  return zeta_sum_of(telescoped_summand(t));
}

/// zeta(s) for integer s >= 2 to within 2^-bits, by Borwein's alternating
/// series acceleration in exact arithmetic.
inline BigRat zeta_value(long s, unsigned long bits = 128) {
  if (s < 2) throw error(errc::invalid_input, "zeta(s) needs s >= 2");
  // error ~ 3 / (3 + sqrt 8)^n, and log2(3 + sqrt 8) > 2.54
  const long n = static_cast<long>(bits / 2.5) + 4;
  // d_k = n sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!)
  std::vector<BigRat> d(static_cast<std::size_t>(n + 1));
  BigRat acc(0);
  for (long i = 0; i <= n; ++i) {
    BigInt num = detail::factorial(n + i - 1);
    mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(2 * i));
    acc += make_rat(num, BigInt(detail::factorial(n - i) * detail::factorial(2 * i)));
    d[static_cast<std::size_t>(i)] = n * acc;
  }
  const BigRat& dn = d[static_cast<std::size_t>(n)];
  BigRat sum(0);
  for (long k = 0; k < n; ++k) {
    BigInt kp;
    mpz_ui_pow_ui(kp.get_mpz_t(), static_cast<unsigned long>(k + 1), static_cast<unsigned long>(s));
    BigRat t = (d[static_cast<std::size_t>(k)] - dn) / BigRat(kp);
    sum += (k % 2 == 0) ? t : BigRat(-t);
  }
  BigInt p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(s - 1));
  BigRat factor = make_rat(p, BigInt(p - 1));  // 1 / (1 - 2^{1-s})
  return -factor * sum / dn;
}

/// Numeric value of an exact combination.
inline BigRat approximate(const ZetaCombo& z, unsigned long bits = 128) {
  if (!z.is_exact()) throw error(errc::invalid_input, "divergent combination has no value");
  BigRat v = z.constant;
  for (const auto& [d, c] : z.zeta) v += c * zeta_value(d, bits);
  return v;
}

/// The continued fraction value scale * (1/S - 1) with S kept symbolic.
struct ZetaLimit {
  BigRat scale;  // f(1)h2(1)/f(0)
  ZetaCombo sum;

  /// Exact value when S is rational.
  std::optional<BigRat> exact() const {
    if (!sum.is_rational() || sum.constant == 0) return std::nullopt;
    return scale * (1 / sum.constant - 1);
  }

  BigRat approximate(unsigned long bits = 128) const {
    BigRat s = pcf::approximate(sum, bits);
    if (s == 0) throw error(errc::pole_in_formula, "the sum vanishes");
    return scale * (1 / s - 1);
  }

  std::string str() const {
    if (auto e = exact()) return e->get_str();
    std::string s = "(" + sum.str() + ")";
    if (scale == 1) return "1/" + s + " - 1";
    return scale.get_str() + "*(1/" + s + " - 1)";
  }
};

inline ZetaLimit cf_limit_from_zeta(const EulerTriple& t, const ZetaCombo& z) {
  if (!z.is_exact()) throw error(errc::invalid_input, "divergent sum has no continued fraction limit");
  const BigRat f0 = t.f()(BigRat(0));
  if (f0 == 0) throw error(errc::pole_in_formula, "f(0) = 0");
  return {t.f()(BigRat(1)) * t.h2()(BigRat(1)) / f0, z};
}

/// Closed form for h1 = a x + b, h2 = c x + d via the Beta integral.
struct BetaClosedForm {
  enum class Kind { exact, integral };
  Kind kind;
  /// a = c: the sum S = (d+a)/(d-b) and the continued fraction h2(1)(1/S - 1).
  std::optional<BigRat> reciprocal_sum;
  std::optional<BigRat> cf_value;
  /// a < c: S = integral_0^1 t^p (1-t)^q / (1 - r t) dt / B(1+p, 1+q), left unevaluated.
  BigRat p, q, r;

  std::string str() const {
    if (kind == Kind::exact)
      return "sum = " + reciprocal_sum->get_str() + ", K = " + cf_value->get_str();
    return "sum = integral_0^1 t^(" + p.get_str() + ") (1-t)^(" + q.get_str() + ") / (1 - " +
           r.get_str() + " t) dt / B(" + BigRat(1 + p).get_str() + ", " + BigRat(1 + q).get_str() + ")";
  }
};

inline BetaClosedForm beta_degree1(const Poly& h1, const Poly& h2) {
  auto fail = [](const std::string& what) { return error(errc::precondition_violated, what); };
  if (h1.is_zero() || h2.is_zero() || h1.deg() != 1 || h2.deg() != 1)
    throw fail("h1 and h2 must have degree 1");
  const BigRat a = h1.coeff(1), b = h1.coeff(0), c = h2.coeff(1), d = h2.coeff(0);
  if (!(a > 0)) throw fail("a > 0");
  if (!(a <= c)) throw fail("a <= c");
  if (!(b / a > -1) || !(d / c > -1)) throw fail("b/a > -1 and d/c > -1");
  if (!(1 + d / c > b / a)) throw fail("1 + d/c > b/a");

  BetaClosedForm out;
  out.p = b / a;
  out.q = d / c - b / a;
  out.r = a / c;
  if (a == c) {
    if (!(d > b)) throw fail("d > b");
    out.kind = BetaClosedForm::Kind::exact;
    out.reciprocal_sum = (d + a) / (d - b);
    out.cf_value = (c + d) * ((d - b) / (d + a) - 1);
  } else {
    out.kind = BetaClosedForm::Kind::integral;
  }
  return out;
}

}  // namespace pcf
