#include <gtest/gtest.h>

#include <algorithm>

#include "oracles.hpp"
#include "pcf/factor.hpp"
#include "pcf/parse.hpp"
#include "pcf/poly.hpp"
#include "pcf/quadsurd.hpp"
#include "pcf/ratfunc.hpp"
#include "pcf/rational.hpp"

using namespace pcf;

namespace {

Poly P(const char* s) { return parse_poly(s); }
BigRat R(long p, long q = 1) { return make_rat(p, q); }

}  // namespace

TEST(Rational, CanonicalForm) {
  BigRat r = make_rat(6, -4);
  EXPECT_EQ(r.get_num(), -3);
  EXPECT_EQ(r.get_den(), 2);
  EXPECT_THROW(make_rat(1, 0), error);
  EXPECT_EQ(fraction_string(BigInt(1), BigInt(1)), "1/1");
}

TEST(Rational, DecimalTruncates) {
  EXPECT_EQ(to_decimal(R(2, 3), 5), "0.66666");
  EXPECT_EQ(to_decimal(R(-1, 8), 4), "-0.1250");
  EXPECT_EQ(to_decimal(R(7), 0), "7");
}

TEST(Rational, SqrtOfSquares) {
  EXPECT_EQ(*rat_sqrt(R(9, 4)), R(3, 2));
  EXPECT_FALSE(rat_sqrt(R(2)).has_value());
  EXPECT_FALSE(rat_sqrt(R(-4)).has_value());
}

TEST(ExtRat, InfinityIsDistinct) {
  ExtRat inf = ExtRat::infinity();
  EXPECT_TRUE(inf.is_infinite());
  EXPECT_FALSE(inf == ExtRat(R(0)));
  EXPECT_TRUE(inf == ExtRat::infinity());
  EXPECT_EQ(inf.str(), "inf");
  EXPECT_THROW(inf.value(), error);
}

TEST(Poly, EvalExamples) {
  EXPECT_EQ(P("x^2+x+1/2")(R(1)), R(5, 2));
  EXPECT_EQ(Poly()(R(7)), R(0));
  EXPECT_EQ(P("34x^3+51x^2+27x+5")(R(1)), R(117));
}

TEST(Poly, ShiftExamples) {
  EXPECT_EQ(P("x^3").shift(1), P("x^3+3x^2+3x+1"));
  EXPECT_EQ(P("x").shift(-1), P("x-1"));
  EXPECT_EQ(P("x^2+x+1/2").shift(-1), P("x^2-x+1/2"));
}

TEST(Poly, ZeroPolynomialHasNoDegree) {
  Poly z;
  EXPECT_TRUE(z.is_zero());
  EXPECT_THROW((void)z.deg(), error);
  EXPECT_EQ(P("0"), z);
  EXPECT_EQ(P("x-x"), z);
}

TEST(Poly, DivisionIdentity) {
  oracle::Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    Poly n = rng.poly(static_cast<int>(rng.integer(0, 6)), -9, 9);
    Poly d = rng.poly(static_cast<int>(rng.integer(0, 3)), -9, 9);
    auto [q, r] = n.divmod(d);
    EXPECT_EQ(q * d + r, n);
    EXPECT_TRUE(r.is_zero() || r.deg() < d.deg());
  }
  EXPECT_THROW(P("x^2+1").exact_div(P("x+1")), error);
}

TEST(Poly, GcdIsMonicCommonDivisor) {
  Poly g = poly_gcd(P("2x^2-2"), P("3x^2+3x"));
  EXPECT_EQ(g, P("x+1"));
}

TEST(Poly, ShiftProperties) {
  oracle::Rng rng(12);
  for (int t = 0; t < 200; ++t) {
    Poly p = rng.poly(static_cast<int>(rng.integer(0, 5)), -7, 7);
    long j = rng.integer(-5, 5), k = rng.integer(-5, 5);
    EXPECT_EQ(p.shift(j).shift(k), p.shift(j + k));
    EXPECT_EQ(p.shift(0L), p);
    BigRat x = rng.rational(-4, 4, 7);
    EXPECT_EQ(p.shift(k)(x), p(x + k));
  }
}

TEST(Parse, Grammar) {
  EXPECT_EQ(P("34n^3+51n^2+27n+5"), P("34x^3 + 51*x^2 + 27 x + 5"));
  EXPECT_EQ(P("-1/2*x^2 + x"), (Poly{R(0), R(1), R(-1, 2)}));
  EXPECT_EQ(P("-n^6"), Poly::monomial(R(-1), 6));
  EXPECT_EQ(P("n"), Poly::x());
  EXPECT_EQ(P("3"), Poly(3));
}

TEST(Parse, ErrorsNameTheToken) {
  try {
    parse_poly("3n^2 + 2y");
    FAIL() << "expected a parse error";
  } catch (const parse_error& e) {
    EXPECT_EQ(e.code(), errc::parse_error);
    EXPECT_NE(e.token().find('y'), std::string::npos);
  }
  EXPECT_THROW(parse_poly(""), parse_error);
  EXPECT_THROW(parse_poly("1/0"), parse_error);
  EXPECT_THROW(parse_poly("n^"), parse_error);
  EXPECT_THROW(parse_rational("1/2x"), parse_error);
}

TEST(Parse, FactoredForm) {
  FactoredPoly f = parse_factored("-(n^2+1)*n^3*(2n-1)^2");
  EXPECT_EQ(f.constant, R(-1));
  ASSERT_EQ(f.blocks.size(), 3u);
  EXPECT_EQ(f.expand(), R(-1) * P("n^2+1") * P("n^3") * P("2n-1").pow(2));
  EXPECT_EQ(parse_factored("-n^6").expand(), P("-n^6"));
}

TEST(Factor, RationalRootsExamples) {
  EXPECT_TRUE(rational_roots(P("x^2-34x+1")).empty());
  auto r = rational_roots(P("x^2-1"));
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0], (RootMult{R(-1), 1}));
  EXPECT_EQ(r[1], (RootMult{R(1), 1}));
  auto z = rational_roots(P("x^6"));
  ASSERT_EQ(z.size(), 1u);
  EXPECT_EQ(z[0], (RootMult{R(0), 6}));
}

TEST(Factor, RootedFactorizationExamples) {
  auto f = factor_integer_rooted(P("-x^6"));
  EXPECT_EQ(f.content, R(-1));
  ASSERT_EQ(f.linear.size(), 1u);
  EXPECT_EQ(f.linear[0].factor, P("x"));
  EXPECT_EQ(f.linear[0].multiplicity, 6);
  EXPECT_EQ(f.residual, Poly(1));

  auto g = factor_integer_rooted(P("-2x^2+x"));
  EXPECT_EQ(g.content, R(-2));
  ASSERT_EQ(g.linear.size(), 2u);
  EXPECT_EQ(g.linear[0].factor, P("x"));
  EXPECT_EQ(g.linear[1].factor, P("x-1/2"));
  EXPECT_EQ(g.residual, Poly(1));

  auto h = factor_integer_rooted(P("x^2-34x+1"));
  EXPECT_EQ(h.content, R(1));
  EXPECT_TRUE(h.linear.empty());
  EXPECT_EQ(h.residual, P("x^2-34x+1"));
}

TEST(Factor, ReassemblesAndMatchesBruteForce) {
  oracle::Rng rng(13);
  for (int t = 0; t < 150; ++t) {
    // plant some rational roots, then multiply by a random cofactor
    Poly p(rng.integer(1, 5));
    int planted = static_cast<int>(rng.integer(0, 3));
    for (int k = 0; k < planted; ++k) p *= Poly{R(-rng.integer(-6, 6)), R(rng.integer(1, 3))};
    p *= rng.poly(static_cast<int>(rng.integer(0, 6 - planted)), -20, 20);
    if (p.is_zero() || p.deg() > 6) continue;

    auto f = factor_integer_rooted(p);
    EXPECT_EQ(f.expand(), p);
    EXPECT_EQ(f.residual.leading(), R(1));

    // brute force over a box holding every root the generator can plant:
    // planted p/q with |p| <= 6, q <= 3 and cofactor roots with |p|, q <= 20
    std::vector<BigRat> brute;
    if (p(R(0)) == 0) brute.push_back(R(0));
    for (long num = -120; num <= 120; ++num)
      for (long den = 1; den <= 20; ++den) {
        if (num == 0) continue;
        BigRat x = R(num, den);
        if (p(x) == 0 && std::find(brute.begin(), brute.end(), x) == brute.end()) brute.push_back(x);
      }
    std::sort(brute.begin(), brute.end());
    std::vector<BigRat> found;
    for (const auto& rm : rational_roots(p)) found.push_back(rm.root);
    EXPECT_EQ(found, brute) << p;
  }
}

TEST(RatFunc, NormalizesAndEvaluates) {
  RatFunc r(P("x^2-1"), P("2x-2"));
  EXPECT_EQ(r.num(), P("1/2x+1/2"));
  EXPECT_EQ(r.den(), Poly(1));
  EXPECT_TRUE(r.is_poly());
  RatFunc s(P("1"), P("x-3"));
  EXPECT_THROW(s(R(3)), error);
  EXPECT_EQ(s(R(4)), R(1));
  EXPECT_EQ((s + RatFunc(P("x")))(R(5)), R(11, 2));
  EXPECT_EQ(s.shift(1), RatFunc(P("1"), P("x-2")));
}

TEST(QuadSurd, NormalizesAndMultiplies) {
  QuadSurd r5 = QuadSurd::sqrt_of(R(5));
  EXPECT_EQ(r5 * r5, QuadSurd(R(5)));
  EXPECT_EQ(QuadSurd::sqrt_of(R(8)), QuadSurd(R(0), R(2), BigInt(2)));
  EXPECT_TRUE(QuadSurd::sqrt_of(R(9, 4)).is_rational());
  EXPECT_EQ(QuadSurd(R(1), R(3), BigInt(1)), QuadSurd(R(4)));
  QuadSurd g = QuadSurd(R(-1, 2)) + QuadSurd(R(1, 2)) * r5;
  EXPECT_EQ(g * g + g, QuadSurd(R(1)));  // golden ratio conjugate
}

TEST(QuadSurd, ExactSign) {
  EXPECT_EQ(QuadSurd(R(-1), R(1), BigInt(2)).sign(), 1);
  EXPECT_EQ(QuadSurd(R(-2), R(1), BigInt(3)).sign(), -1);
  EXPECT_EQ(QuadSurd(R(3), R(-1), BigInt(9)).sign(), 0);
  EXPECT_EQ(QuadSurd().sign(), 0);
}
