#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "pcf/error.hpp"
#include "pcf/rational.hpp"

namespace pcf {

/// Dense univariate polynomial over Q, coefficients ascending by power.
///
/// The zero polynomial stores no coefficients and has no degree: `deg()`
/// throws on it, so callers branch on `is_zero()` first.
class Poly {
 public:
  Poly() = default;
  Poly(std::vector<BigRat> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<BigRat> coeffs) : c_(coeffs) { trim(); }
  Poly(const BigRat& constant) : c_{constant} { trim(); }
  Poly(long constant) : c_{BigRat(constant)} { trim(); }

  /// The polynomial x.
  static Poly x() { return Poly{BigRat(0), BigRat(1)}; }
  static Poly monomial(const BigRat& c, std::size_t power) {
    std::vector<BigRat> v(power + 1, BigRat(0));
    v[power] = c;
    return Poly(std::move(v));
  }
  /// x - r
  static Poly linear_root(const BigRat& r) { return Poly{BigRat(-r), BigRat(1)}; }

  bool is_zero() const noexcept { return c_.empty(); }
  bool is_constant() const noexcept { return c_.size() <= 1; }

  int deg() const {
    if (is_zero()) throw error(errc::invalid_input, "degree of the zero polynomial");
    return static_cast<int>(c_.size()) - 1;
  }

  /// Coefficient of x^j; zero outside the stored range, including negative j.
  BigRat coeff(long j) const {
    if (j < 0 || static_cast<std::size_t>(j) >= c_.size()) return BigRat(0);
    return c_[static_cast<std::size_t>(j)];
  }

  BigRat leading() const { return is_zero() ? BigRat(0) : c_.back(); }
  const std::vector<BigRat>& coeffs() const noexcept { return c_; }

  BigRat operator()(const BigRat& x) const {
    BigRat acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Poly monic() const {
    if (is_zero()) return *this;
    BigRat lc = leading();
    std::vector<BigRat> v(c_);
    for (auto& x : v) x /= lc;
    return Poly(std::move(v));
  }

  Poly operator-() const {
    std::vector<BigRat> v(c_);
    for (auto& x : v) x = -x;
    return Poly(std::move(v));
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), BigRat(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) { return *this += -o; }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<BigRat> v(a.c_.size() + b.c_.size() - 1, BigRat(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(v));
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  Poly pow(unsigned e) const {
    Poly r(1), base = *this;
    while (e) {
      if (e & 1u) r *= base;
      base *= base;
      e >>= 1u;
    }
    return r;
  }

  /// q(x) = p(x + k), via binomial expansion of each power.
  Poly shift(const BigRat& k) const {
    if (is_zero() || k == 0) return *this;
    // Horner in the ring Q[x]: p(x+k) = (...(c_n (x+k) + c_{n-1})(x+k) + ...)
    const Poly xk{k, BigRat(1)};
    Poly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * xk + Poly(*it);
    return acc;
  }
  Poly shift(long k) const { return shift(BigRat(k)); }

  /// Euclidean division over Q. Throws on a zero divisor.
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) throw error(errc::invalid_input, "polynomial division by zero");
    if (is_zero() || deg() < d.deg()) return {Poly(), *this};
    std::vector<BigRat> rem(c_);
    std::vector<BigRat> quot(c_.size() - d.c_.size() + 1, BigRat(0));
    const BigRat& lc = d.c_.back();
    for (std::size_t i = quot.size(); i-- > 0;) {
      BigRat q = rem[i + d.c_.size() - 1] / lc;
      quot[i] = q;
      if (q == 0) continue;
      for (std::size_t j = 0; j < d.c_.size(); ++j) rem[i + j] -= q * d.c_[j];
    }
    rem.resize(d.c_.size() - 1);
    return {Poly(std::move(quot)), Poly(std::move(rem))};
  }

  bool divides(const Poly& n) const { return n.divmod(*this).second.is_zero(); }

  /// Exact quotient n / *this; NotDivisible otherwise.
  Poly exact_div(const Poly& d) const {
    auto [q, r] = divmod(d);
    if (!r.is_zero()) throw error(errc::not_divisible, "polynomial division leaves a remainder");
    return q;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<BigRat> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * static_cast<long>(i);
    return Poly(std::move(v));
  }

  /// Lexicographic order on (degree, coefficients from the top down).
  friend bool poly_less(const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
    for (std::size_t i = a.c_.size(); i-- > 0;)
      if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
    return false;
  }

  std::string str(char var = 'x') const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
      const BigRat& c = c_[i];
      if (c == 0) continue;
      BigRat mag = rat_abs(c);
      if (out.empty()) {
        if (c < 0) out += "-";
      } else {
        out += c < 0 ? " - " : " + ";
      }
      bool unit = mag == 1 && i > 0;
      if (!unit) out += mag.get_str();
      if (i > 0) {
        if (!unit) out += "*";
        out += var;
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.str(); }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<BigRat> c_;
};

inline Poly operator*(const BigRat& s, const Poly& p) { return Poly(s) * p; }

/// Monic gcd over Q; gcd(0, 0) = 0.
inline Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Lowest common multiple of the coefficient denominators.
inline BigInt denominator_lcm(const Poly& p) {
  BigInt l(1);
  for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  return l;
}

}  // namespace pcf
