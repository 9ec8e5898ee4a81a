#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>

#include "pcf/poly.hpp"

namespace pcf {

/// num/den with gcd(num, den) = 1 and den monic.
class RatFunc {
 public:
  RatFunc() : num_(), den_(1) {}
  RatFunc(Poly p) : num_(std::move(p)), den_(1) {}
  RatFunc(const BigRat& c) : num_(c), den_(1) {}
  RatFunc(long c) : num_(c), den_(1) {}
  RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  const Poly& num() const noexcept { return num_; }
  const Poly& den() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_poly() const { return den_.is_constant(); }

  /// The polynomial value when den is constant.
  std::optional<Poly> as_poly() const {
    if (!is_poly()) return std::nullopt;
    return num_;
  }

  /// Evaluation at a rational point; PoleInFormula when den vanishes there.
  BigRat operator()(const BigRat& x) const {
    BigRat d = den_(x);
    if (d == 0) throw error(errc::pole_in_formula, "rational function pole at " + x.get_str());
    return num_(x) / d;
  }

  RatFunc shift(long k) const { return RatFunc(num_.shift(k), den_.shift(k)); }

  RatFunc operator-() const { return RatFunc(-num_, den_); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw error(errc::invalid_input, "division by the zero rational function");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
  }
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string str(char var = 'x') const {
    if (is_poly()) return num_.str(var);
    return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
  }

  friend std::ostream& operator<<(std::ostream& os, const RatFunc& r) { return os << r.str(); }

 private:
  void normalize() {
    if (den_.is_zero()) throw error(errc::invalid_input, "rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = Poly(1);
      return;
    }
    Poly g = poly_gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = num_.exact_div(g);
      den_ = den_.exact_div(g);
    }
    BigRat lc = den_.leading();
    num_ = Poly(BigRat(1) / lc) * num_;
    den_ = den_.monic();
  }

  Poly num_;
  Poly den_;
};

}  // namespace pcf
