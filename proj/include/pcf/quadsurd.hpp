#pragma once

#include <ostream>
#include <string>

#include "pcf/error.hpp"
#include "pcf/rational.hpp"

namespace pcf {

/// Squarefree part of a positive integer, by trial division.
inline BigInt squarefree_part(BigInt n, BigInt* square_root_of_rest = nullptr) {
  if (n <= 0) throw error(errc::invalid_input, "squarefree_part expects a positive integer");
  BigInt core(1), outside(1);
  for (BigInt p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) outside *= p;
    if (e % 2) core *= p;
  }
  core *= n;
  if (square_root_of_rest) *square_root_of_rest = outside;
  return core;
}

/// u + v*sqrt(D), D squarefree. D in {0, 1} is folded into u with v = 0.
class QuadSurd {
 public:
  QuadSurd() : u_(0), v_(0), d_(0) {}
  QuadSurd(BigRat u) : u_(std::move(u)), v_(0), d_(0) {}
  QuadSurd(BigRat u, BigRat v, BigInt d) : u_(std::move(u)), v_(std::move(v)), d_(std::move(d)) {
    normalize();
  }

  /// sqrt(r) for rational r >= 0, as u + v*sqrt(D).
  static QuadSurd sqrt_of(const BigRat& r) {
    if (r < 0) throw error(errc::invalid_input, "square root of a negative rational");
    if (r == 0) return QuadSurd();
    // sqrt(n/d) = sqrt(n*d)/d
    BigInt nd = r.get_num() * r.get_den();
    BigInt outside;
    BigInt core = squarefree_part(nd, &outside);
    return QuadSurd(BigRat(0), make_rat(outside, r.get_den()), core);
  }

  const BigRat& u() const noexcept { return u_; }
  const BigRat& v() const noexcept { return v_; }
  const BigInt& radicand() const noexcept { return d_; }
  bool is_rational() const noexcept { return v_ == 0; }

  friend QuadSurd operator+(const QuadSurd& a, const QuadSurd& b) {
    BigInt d = common(a, b);
    return QuadSurd(a.u_ + b.u_, a.v_ + b.v_, d);
  }
  QuadSurd operator-() const { return QuadSurd(-u_, -v_, d_); }
  friend QuadSurd operator-(const QuadSurd& a, const QuadSurd& b) { return a + (-b); }
  friend QuadSurd operator*(const QuadSurd& a, const QuadSurd& b) {
    BigInt d = common(a, b);
    return QuadSurd(a.u_ * b.u_ + a.v_ * b.v_ * d, a.u_ * b.v_ + a.v_ * b.u_, d);
  }
  friend bool operator==(const QuadSurd& a, const QuadSurd& b) {
    return a.u_ == b.u_ && a.v_ == b.v_ && a.d_ == b.d_;
  }

  /// Exact sign of u + v*sqrt(D).
  int sign() const {
    int su = sgn(u_), sv = sgn(v_);
    if (sv == 0) return su;
    if (su == 0 || su == sv) return sv;
    // opposite signs: compare u^2 with v^2 D
    BigRat lhs = u_ * u_, rhs = v_ * v_ * d_;
    if (lhs == rhs) return 0;
    return lhs > rhs ? su : sv;
  }

  /// A rational approximation with |error| < 2^-bits.
  BigRat approx(unsigned long bits) const {
    if (v_ == 0) return u_;
    unsigned long extra = mpz_sizeinbase(v_.get_num_mpz_t(), 2) + 2;
    BigInt scale = BigInt(1) << (bits + extra);
    BigInt s;
    BigInt radicand_scaled = d_ * scale * scale;
    mpz_sqrt(s.get_mpz_t(), radicand_scaled.get_mpz_t());
    return u_ + v_ * make_rat(s, scale);
  }

  std::string str() const {
    if (v_ == 0) return u_.get_str();
    std::string out = u_ == 0 ? "" : u_.get_str() + (v_ < 0 ? " - " : " + ");
    BigRat mag = (u_ == 0) ? v_ : rat_abs(v_);
    std::string m = mag == 1 ? "" : (mag == -1 ? "-" : mag.get_str() + "*");
    return out + m + "sqrt(" + d_.get_str() + ")";
  }

  friend std::ostream& operator<<(std::ostream& os, const QuadSurd& q) { return os << q.str(); }

 private:
  static int sgn(const BigRat& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

  static BigInt common(const QuadSurd& a, const QuadSurd& b) {
    if (a.v_ == 0) return b.d_;
    if (b.v_ == 0) return a.d_;
    if (a.d_ != b.d_) throw error(errc::invalid_input, "mixing surds with different radicands");
    return a.d_;
  }

  void normalize() {
    if (d_ < 0) throw error(errc::invalid_input, "negative radicand");
    if (v_ == 0 || d_ == 0) {
      v_ = 0;
      d_ = 0;
      return;
    }
    BigInt outside;
    BigInt core = squarefree_part(d_, &outside);
    v_ *= outside;
    d_ = core;
    if (d_ == 1) {
      u_ += v_;
      v_ = 0;
      d_ = 0;
    }
  }

  BigRat u_, v_;
  BigInt d_;
};

}  // namespace pcf
