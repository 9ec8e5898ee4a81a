#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "pcf/poly.hpp"

namespace pcf {

struct RootMult {
  BigRat root;
  int multiplicity = 0;

  friend bool operator==(const RootMult&, const RootMult&) = default;
};

namespace detail {

/// Positive divisors of |n| by trial division (n != 0).
inline std::vector<BigInt> positive_divisors(BigInt n) {
  if (n < 0) n = -n;
  std::vector<BigInt> small, large;
  for (BigInt d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

/// Primitive integer multiple of p (same roots), positive leading coefficient.
inline std::vector<BigInt> integer_coeffs(const Poly& p) {
  BigInt l = denominator_lcm(p);
  std::vector<BigInt> out;
  out.reserve(p.coeffs().size());
  BigInt g(0);
  for (const auto& c : p.coeffs()) {
    BigRat s = c * l;
    out.push_back(s.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
  }
  if (out.back() < 0) g = -g;
  for (auto& c : out) c /= g;
  return out;
}

}  // namespace detail

/// All rational roots with multiplicities, ascending by root.
///
/// Candidates come from the rational-root theorem applied to the primitive
/// integer polynomial; each hit is confirmed and divided out exactly, so the
/// candidate set is rebuilt from the deflated polynomial.
inline std::vector<RootMult> rational_roots(const Poly& p) {
  if (p.is_zero()) throw error(errc::invalid_input, "rational_roots of the zero polynomial");
  std::vector<RootMult> roots;
  Poly rest = p;

  int zero_mult = 0;
  while (!rest.is_constant() && rest.coeff(0) == 0) {
    rest = rest.exact_div(Poly::x());
    ++zero_mult;
  }
  if (zero_mult > 0) roots.push_back({BigRat(0), zero_mult});

  bool progress = true;
  while (progress && !rest.is_constant()) {
    progress = false;
    auto ic = detail::integer_coeffs(rest);
    auto ps = detail::positive_divisors(ic.front());
    auto qs = detail::positive_divisors(ic.back());
    for (const auto& q : qs) {
      for (const auto& pp : ps) {
        for (int sign : {1, -1}) {
          BigRat cand = make_rat(BigInt(pp * sign), q);
          if (cand.get_den() != q) continue;  // already seen in lowest terms
          if (rest(cand) != 0) continue;
          int m = 0;
          Poly lin = Poly::linear_root(cand);
          while (!rest.is_constant() && rest(cand) == 0) {
            rest = rest.exact_div(lin);
            ++m;
          }
          roots.push_back({cand, m});
          progress = true;
          break;
        }
        if (progress) break;
      }
      if (progress) break;
    }
  }
  std::sort(roots.begin(), roots.end(),
            [](const RootMult& a, const RootMult& b) { return a.root < b.root; });
  return roots;
}

struct LinearFactor {
  Poly factor;  // monic x - r
  int multiplicity = 0;
};

struct RootedFactorization {
  BigRat content;
  std::vector<LinearFactor> linear;
  Poly residual;  // monic, no rational roots

  Poly expand() const {
    Poly out(content);
    for (const auto& lf : linear) out *= lf.factor.pow(static_cast<unsigned>(lf.multiplicity));
    return out * residual;
  }
};

/// p = content * prod (x - r)^m * residual with monic factors.
inline RootedFactorization factor_integer_rooted(const Poly& p) {
  if (p.is_zero()) throw error(errc::invalid_input, "factor_integer_rooted of the zero polynomial");
  RootedFactorization out;
  out.content = p.leading();
  Poly rest = p.monic();
  for (const auto& rm : rational_roots(p)) {
    Poly lin = Poly::linear_root(rm.root);
    rest = rest.exact_div(lin.pow(static_cast<unsigned>(rm.multiplicity)));
    out.linear.push_back({lin, rm.multiplicity});
  }
  out.residual = rest.monic();
  return out;
}

}  // namespace pcf
