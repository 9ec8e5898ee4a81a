#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <ostream>
#include <string>
#include <utility>

#include "pcf/error.hpp"

namespace pcf {

using BigInt = mpz_class;
/// Always canonical: gcd(num, den) = 1 and den > 0.
using BigRat = mpq_class;

inline BigRat make_rat(const BigInt& num, const BigInt& den) {
  if (den == 0) throw error(errc::invalid_input, "zero denominator");
  BigRat r(num, den);
  r.canonicalize();
  return r;
}

inline BigRat make_rat(long num, long den = 1) { return make_rat(BigInt(num), BigInt(den)); }

inline bool is_integer(const BigRat& r) { return r.get_den() == 1; }

inline std::string to_string(const BigInt& z) { return z.get_str(); }
inline std::string to_string(const BigRat& r) { return r.get_str(); }

/// Always "p/q", even for integers.
inline std::string fraction_string(const BigInt& p, const BigInt& q) {
  return p.get_str() + "/" + q.get_str();
}

inline BigRat rat_abs(const BigRat& r) { return r < 0 ? BigRat(-r) : r; }

inline BigRat rat_pow(const BigRat& base, unsigned long e) {
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  BigRat r(num, den);
  r.canonicalize();
  return r;
}

/// Exact integer square root of a rational square, if it is one.
inline std::optional<BigRat> rat_sqrt(const BigRat& r) {
  if (r < 0) return std::nullopt;
  if (!mpz_perfect_square_p(r.get_num_mpz_t()) || !mpz_perfect_square_p(r.get_den_mpz_t()))
    return std::nullopt;
  BigInt n, d;
  mpz_sqrt(n.get_mpz_t(), r.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), r.get_den_mpz_t());
  return make_rat(n, d);
}

/// If r is a nonnegative integer, that integer.
inline std::optional<long> as_nonneg_int(const BigRat& r) {
  if (!is_integer(r) || r < 0 || !r.get_num().fits_slong_p()) return std::nullopt;
  return r.get_num().get_si();
}

/// Decimal expansion truncated toward zero after `digits` fractional digits,
/// produced by integer long division.
inline std::string to_decimal(const BigRat& r, unsigned digits) {
  BigInt num = r.get_num();
  const BigInt& den = r.get_den();
  std::string out;
  if (num < 0) {
    out += '-';
    num = -num;
  }
  BigInt ip = num / den;
  BigInt rem = num - ip * den;
  out += ip.get_str();
  if (digits == 0) return out;
  out += '.';
  for (unsigned i = 0; i < digits; ++i) {
    rem *= 10;
    BigInt digit = rem / den;
    rem -= digit * den;
    out += static_cast<char>('0' + digit.get_si());
  }
  return out;
}

/// A point of the projective line over Q: a rational or the single point at infinity.
class ExtRat {
 public:
  ExtRat() : value_(BigRat(0)) {}
  ExtRat(BigRat v) : value_(std::move(v)) {}
  ExtRat(long v) : value_(BigRat(v)) {}

  static ExtRat infinity() {
    ExtRat e;
    e.value_.reset();
    return e;
  }

  bool is_infinite() const noexcept { return !value_.has_value(); }
  bool is_finite() const noexcept { return value_.has_value(); }

  const BigRat& value() const {
    if (!value_) throw error(errc::invalid_input, "value() of the point at infinity");
    return *value_;
  }

  friend bool operator==(const ExtRat& x, const ExtRat& y) {
    if (x.is_infinite() || y.is_infinite()) return x.is_infinite() == y.is_infinite();
    return *x.value_ == *y.value_;
  }

  std::string str() const { return is_infinite() ? std::string("inf") : value_->get_str(); }

  friend std::ostream& operator<<(std::ostream& os, const ExtRat& e) { return os << e.str(); }

 private:
  std::optional<BigRat> value_;
};

}  // namespace pcf
