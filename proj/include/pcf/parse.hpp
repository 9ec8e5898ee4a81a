#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pcf/error.hpp"
#include "pcf/poly.hpp"

namespace pcf {

/// b(x) given as constant * prod block_i^m_i, exactly as the user wrote it.
struct FactoredPoly {
  BigRat constant{1};
  std::vector<std::pair<Poly, int>> blocks;

  Poly expand() const {
    Poly out(constant);
    for (const auto& [p, m] : blocks) out *= p.pow(static_cast<unsigned>(m));
    return out;
  }
};

namespace detail {

/// Recursive-descent scanner over the polynomial text grammar:
///   poly   := [sign] term (sign term)*
///   term   := coeff ['*'] var ['^' int] | var ['^' int] | coeff
///   coeff  := int ['/' int]
///   var    := 'n' | 'x'
/// Whitespace is ignored everywhere.
class PolyScanner {
 public:
  explicit PolyScanner(std::string_view text) {
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) s_.push_back(ch);
  }

  bool done() const { return pos_ >= s_.size(); }
  char peek() const { return done() ? '\0' : s_[pos_]; }
  std::size_t pos() const { return pos_; }

  [[noreturn]] void fail(const std::string& what) const {
    std::size_t end = std::min(s_.size(), pos_ + 8);
    std::string tok = done() ? std::string("<end>") : s_.substr(pos_, end - pos_);
    throw parse_error(what, tok);
  }

  bool accept(char ch) {
    if (peek() == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  static bool is_var(char ch) { return ch == 'n' || ch == 'x'; }

  BigInt integer() {
    std::size_t start = pos_;
    while (!done() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return BigInt(s_.substr(start, pos_ - start));
  }

  unsigned exponent() {
    BigInt e = integer();
    if (!e.fits_uint_p() || e > 4096) fail("exponent too large");
    return static_cast<unsigned>(e.get_ui());
  }

  /// Unsigned term; returns coefficient and power of the variable.
  std::pair<BigRat, unsigned> term() {
    BigRat coef(1);
    bool have_coef = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      BigInt num = integer();
      BigInt den(1);
      if (accept('/')) {
        den = integer();
        if (den == 0) fail("zero denominator");
      }
      coef = make_rat(num, den);
      have_coef = true;
    }
    bool star = have_coef && accept('*');
    if (is_var(peek())) {
      ++pos_;
      unsigned power = 1;
      if (accept('^')) power = exponent();
      return {coef, power};
    }
    if (star || !have_coef) fail("expected a coefficient or the variable n/x");
    return {coef, 0u};
  }

  Poly poly() {
    Poly out;
    bool first = true;
    while (true) {
      int sign = 1;
      if (accept('+')) {
      } else if (accept('-')) {
        sign = -1;
      } else if (!first) {
        break;
      }
      auto [c, k] = term();
      out += Poly::monomial(c * sign, k);
      first = false;
      if (done()) break;
      if (peek() != '+' && peek() != '-') break;
    }
    return out;
  }

 private:
  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses e.g. "34n^3+51n^2+27n+5" or "-1/2*x^2 + x".
inline Poly parse_poly(std::string_view text) {
  detail::PolyScanner sc(text);
  if (sc.done()) sc.fail("empty polynomial");
  Poly p = sc.poly();
  if (!sc.done()) sc.fail("unexpected character");
  return p;
}

/// Parses a rational "p", "-p" or "p/q".
inline BigRat parse_rational(std::string_view text) {
  detail::PolyScanner sc(text);
  int sign = 1;
  if (sc.accept('-')) sign = -1;
  else sc.accept('+');
  BigInt num = sc.integer();
  BigInt den(1);
  if (sc.accept('/')) den = sc.integer();
  if (!sc.done()) sc.fail("unexpected character in rational");
  if (den == 0) sc.fail("zero denominator");
  return make_rat(num * sign, den);
}

/// Parses a product form such as "-(n^2+1)*n^3*(2n-1)^2".
///
/// Parenthesized polynomials become blocks; a bare power of the variable
/// becomes the block x; a bare coefficient is folded into the constant.
inline FactoredPoly parse_factored(std::string_view text) {
  detail::PolyScanner sc(text);
  FactoredPoly out;
  if (sc.accept('-')) out.constant = -1;
  else sc.accept('+');
  if (sc.done()) sc.fail("empty product");
  while (true) {
    if (sc.accept('(')) {
      Poly block = sc.poly();
      if (!sc.accept(')')) sc.fail("expected ')'");
      unsigned m = 1;
      if (sc.accept('^')) m = sc.exponent();
      if (block.is_zero()) sc.fail("zero factor");
      if (block.is_constant()) out.constant *= rat_pow(block.leading(), m);
      else if (m > 0) out.blocks.emplace_back(std::move(block), static_cast<int>(m));
    } else {
      auto [c, k] = sc.term();
      out.constant *= c;
      if (k > 0) out.blocks.emplace_back(Poly::x(), static_cast<int>(k));
    }
    if (sc.done()) break;
    if (!sc.accept('*')) sc.fail("expected '*' between factors");
  }
  return out;
}

}  // namespace pcf
