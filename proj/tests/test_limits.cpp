#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pcf/json.hpp"
#include "pcf/limits.hpp"
#include "pcf/parse.hpp"

using namespace pcf;

namespace {

Poly P(const char* s) { return parse_poly(s); }
BigRat R(long p, long q = 1) { return make_rat(p, q); }

ZetaCombo combo(BigRat constant, std::map<long, BigRat> z) {
  ZetaCombo out;
  out.constant = std::move(constant);
  for (const auto& [d, c] : z) out.add_zeta(d, c);
  return out;
}

}  // namespace

TEST(NumericLimit, ExponentialFraction) {
  LimitEstimate e = numeric_limit(CFSpec{P("n"), P("n")}, oracle::pow10_inv(12), 1 << 10);
  EXPECT_TRUE(e.estimated());
  EXPECT_LT(oracle::abs(e.value - 1 / (oracle::e_series() - 1)), oracle::pow10_inv(12));
  EXPECT_GE(e.last_delta, 0);
}

TEST(NumericLimit, PiFraction) {
  LimitEstimate e = numeric_limit(CFSpec{P("3n+1"), P("-2n^2+n")}, oracle::pow10_inv(10), 1 << 12);
  EXPECT_TRUE(e.estimated());
  EXPECT_LT(oracle::abs(e.value - (2 / oracle::pi_machin() - 1)), oracle::pow10_inv(8));
}

TEST(NumericLimit, OscillatingIsInconclusive) {
  // A = 0, B = 1: convergents alternate between 0 and infinity
  LimitEstimate e = numeric_limit(CFSpec{P("0"), P("1")}, oracle::pow10_inv(6), 1 << 10);
  EXPECT_FALSE(e.estimated());
  // A = 0, B = -1: period two with finite values
  LimitEstimate f = numeric_limit(CFSpec{P("1"), P("-1")}, oracle::pow10_inv(6), 1 << 10);
  EXPECT_FALSE(f.estimated());
}

TEST(NumericLimit, Errors) {
  EXPECT_THROW(numeric_limit(CFSpec{P("1"), P("1")}, R(0), 10), error);
  try {
    numeric_limit(CFSpec{P("1"), P("n-3")}, oracle::pow10_inv(6), 64);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::truncated);
  }
}

TEST(NumericLimit, PrecisionModeAgrees) {
  CFSpec cf{P("n"), P("n")};
  LimitEstimate exact = numeric_limit(cf, oracle::pow10_inv(12), 1 << 8);
  LimitEstimate approx = numeric_limit(cf, oracle::pow10_inv(12), 1 << 8, NumericOptions{256});
  EXPECT_EQ(exact.depth_used, approx.depth_used);
  EXPECT_LT(oracle::abs(exact.value - approx.value), oracle::pow10_inv(30));
}

TEST(DominantLimit, Examples) {
  EXPECT_EQ(*dominant_limit(EulerTriple(P("x^2"), P("x"), Poly(1))), R(-1));
  EXPECT_EQ(*dominant_limit(EulerTriple(P("3x"), P("2x"), Poly(1))), R(-2));
  EXPECT_FALSE(dominant_limit(EulerTriple(P("x"), P("x"), Poly(1))).has_value());
  LimitEstimate e = numeric_limit(build_euler_cf(EulerTriple(P("3x"), P("2x"), Poly(1))).spec(),
                                  oracle::pow10_inv(8), 1 << 12);
  EXPECT_LT(oracle::abs(e.value - R(-2)), oracle::pow10_inv(8));
}

TEST(DominantLimit, AgreesWithNumericLimit) {
  oracle::Rng rng(51);
  int fired = 0;
  while (fired < 20) {
    Poly h1 = rng.poly(static_cast<int>(rng.integer(1, 2)), 1, 4);
    Poly h2 = rng.poly(static_cast<int>(rng.integer(0, 1)), 1, 4);
    auto k = dominant_limit(EulerTriple(h1, h2, Poly(1)));
    if (!k) continue;
    LimitEstimate e = numeric_limit(build_euler_cf(EulerTriple(h1, h2, Poly(1))).spec(), oracle::pow10_inv(8), 1 << 14);
    ASSERT_TRUE(e.estimated()) << h1 << " | " << h2;
    EXPECT_LT(oracle::abs(e.value - *k), oracle::pow10_inv(8)) << h1 << " | " << h2;
    ++fired;
  }
}

TEST(Telescoping, Examples) {
  Poly x4 = P("x^4");
  EXPECT_EQ(telescoping_zeta_sum(EulerTriple(x4 * P("x+2"), P("x^5"), Poly(1))),
            combo(R(0), {{4, R(1, 2)}, {3, R(1, 2)}}));
  EXPECT_EQ(telescoping_zeta_sum(EulerTriple(P("x^2"), P("x^2+x"), Poly(1))), combo(R(-2), {{2, R(2)}}));
  EXPECT_EQ(telescoping_zeta_sum(EulerTriple(P("x^3"), P("x^3"), Poly(1))), combo(R(0), {{3, R(1)}}));
  EXPECT_EQ(combo(R(-2), {{2, R(2)}}).str(), "2*zeta(2) - 2");
}

TEST(Telescoping, AlternatingFamily) {
  // h1 = x^d, h2 = x^{d-1}(x+1): sum_{l=2}^d (-1)^{d-l} zeta(l) + (-1)^{d-1}, doubled
  for (long d = 2; d <= 5; ++d) {
    Poly xd = P("x").pow(static_cast<unsigned>(d));
    ZetaCombo z = telescoping_zeta_sum(EulerTriple(xd, P("x").pow(static_cast<unsigned>(d - 1)) * P("x+1"), Poly(1)));
    ZetaCombo want;
    for (long l = 2; l <= d; ++l) want.add_zeta(l, R((d - l) % 2 == 0 ? 2 : -2));
    want.constant = R((d - 1) % 2 == 0 ? 2 : -2);
    EXPECT_EQ(z, want) << "d=" << d;
  }
}

TEST(Telescoping, DivergentAndOutOfRegime) {
  ZetaCombo z = telescoping_zeta_sum(EulerTriple(P("x^2+x"), P("x^2"), Poly(1)));
  EXPECT_FALSE(z.is_exact());
  EXPECT_NE(z.residue, 0);
  EXPECT_TRUE(z.zeta.empty());
  try {
    telescoping_zeta_sum(EulerTriple(P("x^2+1"), P("x^2"), Poly(1)));
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::non_telescoping);
  }
  EXPECT_THROW(telescoping_zeta_sum(EulerTriple(P("x"), P("2x"), Poly(1))), error);
  EXPECT_THROW(telescoping_zeta_sum(EulerTriple(P("2x+1"), P("2x"), Poly(1))), error);
}

TEST(Telescoping, FiniteSum) {
  // h1 vanishes at 2: only k = 0, 1 contribute, s_1 = h1(1)/h2(2) = -1/2
  EXPECT_EQ(telescoping_zeta_sum(EulerTriple(P("x-2"), P("x"), Poly(1))), combo(R(1, 2), {}));
}

TEST(Telescoping, SummandMatchesLiteralProduct) {
  oracle::Rng rng(52);
  int checked = 0;
  while (checked < 40) {
    int deg = static_cast<int>(rng.integer(1, 3));
    BigRat lead(rng.integer(1, 3));
    Poly h1(lead), h2(lead), f(1);
    for (int k = 0; k < deg; ++k) {
      h1 *= Poly::linear_root(BigRat(rng.integer(-4, 0)));
      h2 *= Poly::linear_root(BigRat(rng.integer(-4, 1)));
    }
    // a linear f = x - rho needs h1(rho) = h2(rho + 1); keep only valid triples
    if (rng.integer(0, 1)) f = Poly::linear_root(BigRat(rng.integer(-5, -2)));
    std::optional<EulerTriple> maybe;
    try {
      maybe.emplace(h1, h2, f);
    } catch (const error&) {
      continue;
    }
    const EulerTriple& t = *maybe;
    RatFunc s = telescoped_summand(t);
    BigRat prod(1);
    for (long k = 0; k <= 30; ++k) {
      if (k > 0) prod *= h1(BigRat(k)) / h2(BigRat(k + 1));
      BigRat lit = f(R(0)) * f(R(1)) / (f(BigRat(k)) * f(BigRat(k + 1))) * prod;
      EXPECT_EQ(s(BigRat(k)), lit) << h1 << " | " << h2 << " | " << f << " k=" << k;
    }
    ++checked;
  }
}

TEST(Telescoping, ConsistentWithNumericLimit) {
  struct Case {
    const char* h1;
    const char* h2;
  };
  const Case cases[] = {{"x^2", "x^2"}, {"x^3", "x^3"}, {"x^2", "x^2+x"}, {"x^4+2x^3", "x^4"}};
  for (const auto& c : cases) {
    EulerTriple t(P(c.h1), P(c.h2), Poly(1));
    ZetaLimit z = cf_limit_from_zeta(t, telescoping_zeta_sum(t));
    LimitEstimate e = numeric_limit(build_euler_cf(t).spec(), oracle::pow10_inv(7), 1L << 22, NumericOptions{192});
    ASSERT_TRUE(e.estimated()) << c.h1 << " | " << c.h2;
    EXPECT_LT(oracle::abs(e.value - z.approximate()), oracle::pow10_inv(6)) << c.h1 << " | " << c.h2;
  }
}

TEST(ZetaValue, MatchesEulerMaclaurin) {
  for (long s = 2; s <= 8; ++s)
    EXPECT_LT(oracle::abs(zeta_value(s, 160) - oracle::zeta_em(s)), oracle::pow10_inv(40)) << s;
  EXPECT_THROW(zeta_value(1), error);
}

TEST(ZetaLimit, Examples) {
  EulerTriple item4(P("x^3"), P("x^3"), Poly(1));
  ZetaLimit z = cf_limit_from_zeta(item4, telescoping_zeta_sum(item4));
  EXPECT_EQ(z.str(), "1/(zeta(3)) - 1");
  EXPECT_LT(oracle::abs(z.approximate(160) - (1 / oracle::zeta_em(3) - 1)), oracle::pow10_inv(30));

  EulerTriple item5(P("x^5+2x^4"), P("x^5"), Poly(1));
  ZetaLimit z5 = cf_limit_from_zeta(item5, telescoping_zeta_sum(item5));
  BigRat want = 2 / (oracle::zeta_em(4) + oracle::zeta_em(3)) - 1;
  EXPECT_LT(oracle::abs(z5.approximate(160) - want), oracle::pow10_inv(30));

  ZetaLimit one = cf_limit_from_zeta(item4, combo(R(1), {}));
  EXPECT_EQ(*one.exact(), R(0));
  EXPECT_THROW(cf_limit_from_zeta(item4, ZetaCombo::divergent(R(1))), error);
}

TEST(ZetaCombo, JsonRoundTrip) {
  const ZetaCombo samples[] = {combo(R(-2), {{2, R(2)}}), combo(R(0), {{4, R(1, 2)}, {3, R(1, 2)}}),
                               combo(R(7, 3), {}), ZetaCombo::divergent(R(0))};
  for (const auto& z : samples) {
    json j = to_json(z);
    ZetaCombo back = zeta_combo_from_json(json::parse(j.dump()));
    EXPECT_EQ(back.status, z.status);
    EXPECT_EQ(back.constant, z.constant);
    EXPECT_EQ(back.zeta, z.zeta);
  }
  EXPECT_EQ(to_json(combo(R(-2), {{2, R(2)}})).dump(), R"({"const":"-2/1","zeta":{"2":"2/1"},"status":"exact"})");
}

TEST(Beta, Examples) {
  BetaClosedForm b = beta_degree1(P("x+1"), P("x+3"));
  ASSERT_EQ(b.kind, BetaClosedForm::Kind::exact);
  EXPECT_EQ(*b.reciprocal_sum, R(2));
  EXPECT_EQ(*b.cf_value, R(-2));

  BetaClosedForm g = beta_degree1(P("x"), P("2x-1"));
  EXPECT_EQ(g.kind, BetaClosedForm::Kind::integral);
  EXPECT_EQ(g.p, R(0));
  EXPECT_EQ(g.q, R(-1, 2));
  EXPECT_EQ(g.r, R(1, 2));
  LimitEstimate e = numeric_limit(build_euler_cf(EulerTriple(P("x"), P("2x-1"), Poly(1))).spec(),
                                  oracle::pow10_inv(10), 1 << 12);
  EXPECT_LT(oracle::abs(e.value - (2 / oracle::pi_machin() - 1)), oracle::pow10_inv(8));

  try {
    beta_degree1(P("x+2"), P("x+2"));
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::precondition_violated);
    EXPECT_NE(std::string(e.what()).find("d > b"), std::string::npos);
  }
  EXPECT_THROW(beta_degree1(P("2x"), P("x")), error);
  EXPECT_THROW(beta_degree1(P("x^2"), P("x")), error);
}

TEST(Beta, ExactFormAgreesWithNumericLimit) {
  oracle::Rng rng(53);
  for (int t = 0; t < 10; ++t) {
    long a = rng.integer(1, 4), b = rng.integer(0, 6), d = rng.integer(b + 3 * a, b + 3 * a + 8);
    BetaClosedForm form = beta_degree1(Poly{R(b), R(a)}, Poly{R(d), R(a)});
    EulerTriple tr(Poly{R(b), R(a)}, Poly{R(d), R(a)}, Poly(1));
    LimitEstimate e = numeric_limit(build_euler_cf(tr).spec(), oracle::pow10_inv(10), 1 << 16);
    ASSERT_TRUE(e.estimated()) << a << " " << b << " " << d;
    BigRat h21(d + a);
    BigRat sum = 1 / (e.value / h21 + 1);
    EXPECT_LT(oracle::abs(sum - *form.reciprocal_sum), oracle::pow10_inv(8)) << a << " " << b << " " << d;
  }
}
