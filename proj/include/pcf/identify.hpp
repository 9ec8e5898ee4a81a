#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pcf/euler.hpp"
#include "pcf/factor.hpp"
#include "pcf/parse.hpp"
#include "pcf/poly.hpp"

namespace pcf {

/// Coefficients of f(x+1)beta_1(x) + f(x)beta_0(x) + f(x-1)beta_{-1}(x) = 0.
struct BetaTriple {
  Poly minus1;  // beta_{-1}
  Poly zero;    // beta_0
  Poly plus1;   // beta_1

  /// The Euler-family instance: beta_1 = h2(x+1), beta_0 = -a, beta_{-1} = h1.
  static BetaTriple from_euler(const Poly& a, const Poly& h1, const Poly& h2) {
    return {h1, -a, h2.shift(1)};
  }

  int max_degree() const {
    int d = 0;
    for (const Poly* p : {&minus1, &zero, &plus1})
      if (!p->is_zero()) d = std::max(d, p->deg());
    return d;
  }
};

namespace detail {

inline BigRat binom2(const BigRat& n) { return n * (n - 1) / 2; }

/// Nonnegative integer roots of c2 x^2 + c1 x + c0 (not all zero).
inline std::set<long> nonneg_int_roots(const BigRat& c2, const BigRat& c1, const BigRat& c0) {
  std::set<long> out;
  Poly q{c0, c1, c2};
  if (q.is_zero() || q.is_constant()) return out;
  for (const auto& rm : rational_roots(q))
    if (auto v = as_nonneg_int(rm.root)) out.insert(*v);
  return out;
}

inline void keep_if_nonneg_int(std::set<long>& out, const BigRat& v) {
  if (auto k = as_nonneg_int(v)) out.insert(*k);
}

}  // namespace detail

/// Possible degrees of a nonzero polynomial solution f of the three-term relation.
inline std::set<long> three_term_degree_analysis(const BetaTriple& bt) {
  std::set<long> out;
  const int d = bt.max_degree();
  auto sum_at = [&](long j) -> BigRat { return bt.minus1.coeff(j) + bt.zero.coeff(j) + bt.plus1.coeff(j); };
  if (sum_at(d) != 0) return out;
  const BigRat lm = bt.minus1.coeff(d), lp = bt.plus1.coeff(d);
  if (lm != lp) {
    detail::keep_if_nonneg_int(out, sum_at(d - 1) / (lm - lp));
    return out;
  }
  if (sum_at(d - 1) != 0) return out;
  // S2 + d_f (b1' - b-1') + (d_f choose 2)(b-1 + b1) = 0
  const BigRat s2 = sum_at(d - 2);
  const BigRat t = bt.plus1.coeff(d - 1) - bt.minus1.coeff(d - 1);
  const BigRat s = lm + lp;
  return detail::nonneg_int_roots(s / 2, t - s / 2, s2);
}

/// The four degree patterns of (a, h1, h2) admitting a solution.
enum class DegreeCase { a_h1, a_h2, h1_h2, all_equal, none };

inline DegreeCase degree_case(int deg_a, int deg_h1, int deg_h2) {
  if (deg_a == deg_h1 && deg_h1 > deg_h2) return DegreeCase::a_h1;
  if (deg_a == deg_h2 && deg_h2 > deg_h1) return DegreeCase::a_h2;
  if (deg_h1 == deg_h2 && deg_h1 > deg_a) return DegreeCase::h1_h2;
  if (deg_a == deg_h1 && deg_h1 == deg_h2) return DegreeCase::all_equal;
  return DegreeCase::none;
}

inline std::string_view degree_case_name(DegreeCase c) {
  switch (c) {
    case DegreeCase::a_h1: return "deg a = deg h1 > deg h2";
    case DegreeCase::a_h2: return "deg a = deg h2 > deg h1";
    case DegreeCase::h1_h2: return "deg h1 = deg h2 > deg a";
    case DegreeCase::all_equal: return "deg a = deg h1 = deg h2";
    case DegreeCase::none: return "no admissible degree pattern";
  }
  return "";
}

/// Candidate degrees of f for a fixed pairing (h1, h2), by the degree-pattern
/// case formulas on the top three coefficients of a, h1, h2.
inline std::set<long> candidate_degrees(const Poly& a, const Poly& h1, const Poly& h2) {
  std::set<long> out;
  if (a.is_zero() || h1.is_zero() || h2.is_zero()) return out;
  const int d = std::max({a.deg(), h1.deg(), h2.deg()});
  const DegreeCase dc = degree_case(a.deg(), h1.deg(), h2.deg());
  if (dc == DegreeCase::none) return out;
  if (a.coeff(d) != h1.coeff(d) + h2.coeff(d)) return out;

  const BigRat A = a.coeff(d);
  const BigRat top = a.coeff(d - 1) - h1.coeff(d - 1) - h2.coeff(d - 1);
  switch (dc) {
    case DegreeCase::a_h1:
      detail::keep_if_nonneg_int(out, top / (-A));
      break;
    case DegreeCase::a_h2:
      detail::keep_if_nonneg_int(out, (top - d * A) / A);
      break;
    case DegreeCase::h1_h2:
      detail::keep_if_nonneg_int(out, (top - d * h2.coeff(d)) / (h2.coeff(d) - h1.coeff(d)));
      break;
    case DegreeCase::all_equal:
      if (h1.coeff(d) != h2.coeff(d)) {
        detail::keep_if_nonneg_int(out, (top - d * h2.coeff(d)) / (h2.coeff(d) - h1.coeff(d)));
      } else {
        // repeated leading coefficient: the next coefficient is forced and
        // d_f solves a quadratic
        if (top != d * h2.coeff(d)) break;
        const BigRat dd(d);
        const BigRat k0 = a.coeff(d - 2) - h1.coeff(d - 2) -
                          (h2.coeff(d - 2) + (dd - 1) * h2.coeff(d - 1) + detail::binom2(dd) * h2.coeff(d));
        const BigRat k1 = h1.coeff(d - 1) - (h2.coeff(d - 1) + dd * h2.coeff(d));
        // k0 + k1 d_f - A d_f (d_f - 1)/2 = 0
        out = detail::nonneg_int_roots(-A / 2, k1 + A / 2, k0);
      }
      break;
    case DegreeCase::none:
      break;
  }
  return out;
}

/// Rational leading coefficients (c1, c2) forced by the degree pattern.
struct LeadingSplit {
  std::vector<std::pair<BigRat, BigRat>> pairs;
  std::string reason;  // set when pairs is empty
};

inline constexpr const char* kIrrationalSplit = "irrational leading split";
inline constexpr const char* kDegreePattern = "degree pattern";
inline constexpr const char* kNoDegree = "no degree candidate";
inline constexpr const char* kNoF = "no polynomial f";

inline LeadingSplit leading_coeff_split(const Poly& a, const Poly& b, DegreeCase dc) {
  LeadingSplit out;
  const BigRat A = a.leading(), B = b.leading();
  switch (dc) {
    case DegreeCase::a_h1:
      out.pairs.emplace_back(A, -B / A);
      break;
    case DegreeCase::a_h2:
      out.pairs.emplace_back(-B / A, A);
      break;
    case DegreeCase::h1_h2: {
      // c1 = -c2 and c1 c2 = -B
      auto s = rat_sqrt(B);
      if (!s) {
        out.reason = kIrrationalSplit;
        break;
      }
      out.pairs.emplace_back(*s, -*s);
      out.pairs.emplace_back(-*s, *s);
      break;
    }
    case DegreeCase::all_equal: {
      // c1 + c2 = A, c1 c2 = -B: the roots of x^2 - A x - B
      auto s = rat_sqrt(A * A + 4 * B);
      if (!s) {
        out.reason = kIrrationalSplit;
        break;
      }
      BigRat r1 = (A + *s) / 2, r2 = (A - *s) / 2;
      out.pairs.emplace_back(r1, r2);
      if (r1 != r2) out.pairs.emplace_back(r2, r1);
      break;
    }
    case DegreeCase::none:
      out.reason = kDegreePattern;
      break;
  }
  return out;
}

namespace detail {

/// A nonzero kernel vector with nonzero last entry, or nothing.
inline std::optional<std::vector<BigRat>> kernel_vector_with_top(std::vector<std::vector<BigRat>> m,
                                                                std::size_t cols) {
  std::vector<long> pivot_col_of_row;
  std::vector<long> pivot_row_of_col(cols, -1);
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t piv = row;
    while (piv < m.size() && m[piv][col] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[row]);
    BigRat inv = 1 / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      BigRat factor = m[r][col];
      for (std::size_t c = 0; c < cols; ++c) m[r][c] -= factor * m[row][c];
    }
    pivot_row_of_col[col] = static_cast<long>(row);
    ++row;
  }
  for (std::size_t free = 0; free < cols; ++free) {
    if (pivot_row_of_col[free] >= 0) continue;
    std::vector<BigRat> v(cols, BigRat(0));
    v[free] = 1;
    for (std::size_t col = 0; col < cols; ++col) {
      long r = pivot_row_of_col[col];
      if (r >= 0) v[col] = -m[static_cast<std::size_t>(r)][free];
    }
    if (v.back() != 0) return v;
  }
  return std::nullopt;
}

}  // namespace detail

/// Solves f(x)a(x) - f(x-1)h1(x) - f(x+1)h2(x+1) = 0 for f of degree d_f by
/// exact Gaussian elimination on its coefficients; the result is monic.
inline std::optional<Poly> solve_f(const Poly& a, const Poly& h1, const Poly& h2, long d_f) {
  if (d_f < 0) throw error(errc::invalid_input, "d_f must be nonnegative");
  const Poly h2s = h2.shift(1);
  std::vector<Poly> columns;
  std::size_t rows = 0;
  for (long j = 0; j <= d_f; ++j) {
    Poly xj = Poly::monomial(BigRat(1), static_cast<std::size_t>(j));
    Poly col = xj * a - xj.shift(-1) * h1 - xj.shift(1) * h2s;
    rows = std::max(rows, col.coeffs().size());
    columns.push_back(std::move(col));
  }
  const std::size_t cols = columns.size();
  std::vector<std::vector<BigRat>> m(rows, std::vector<BigRat>(cols, BigRat(0)));
  for (std::size_t c = 0; c < cols; ++c)
    for (std::size_t r = 0; r < rows; ++r) m[r][c] = columns[c].coeff(static_cast<long>(r));
  auto v = detail::kernel_vector_with_top(std::move(m), cols);
  if (!v) return std::nullopt;
  return Poly(std::move(*v)).monic();
}

/// One way to split b = -h1 h2.
struct DecompCandidate {
  Poly h1;
  Poly h2;
  std::optional<BigRat> c1, c2;  // unset when no rational leading split exists
  std::set<long> df_candidates;
};

struct Rejection {
  DecompCandidate candidate;
  std::string reason;
};

struct IdentifyReport {
  std::vector<EulerTriple> solutions;
  std::vector<Rejection> rejections;
  bool exhaustive = false;
};

namespace detail {

struct FactorItem {
  Poly base;
  int multiplicity;
};

struct Outcome {
  std::vector<EulerTriple> solutions;
  std::vector<Rejection> rejections;
};

inline Outcome examine_split(const Poly& a, const Poly& b, const Poly& m1, const Poly& m2) {
  Outcome out;
  const DegreeCase dc = degree_case(a.deg(), m1.deg(), m2.deg());
  LeadingSplit split = leading_coeff_split(a, b, dc);
  if (split.pairs.empty()) {
    out.rejections.push_back({{m1, m2, std::nullopt, std::nullopt, {}}, split.reason});
    return out;
  }
  for (const auto& [c1, c2] : split.pairs) {
    DecompCandidate cand{c1 * m1, c2 * m2, c1, c2, {}};
    cand.df_candidates = candidate_degrees(a, cand.h1, cand.h2);
    if (cand.df_candidates.empty()) {
      out.rejections.push_back({std::move(cand), kNoDegree});
      continue;
    }
    bool found = false;
    for (long df : cand.df_candidates) {
      auto f = solve_f(a, cand.h1, cand.h2, df);
      if (!f) continue;
      // re-verify symbolically before reporting
      try {
        EulerTriple t(cand.h1, cand.h2, *f);
        if (build_euler_cf(t) == PolyCF{a, b}) {
          out.solutions.push_back(std::move(t));
          found = true;
        }
      } catch (const error&) {
      }
    }
    if (!found) out.rejections.push_back({std::move(cand), kNoF});
  }
  return out;
}

inline void enumerate_splits(const std::vector<FactorItem>& items, std::size_t idx, Poly m1, Poly m2,
                             std::vector<std::pair<Poly, Poly>>& out) {
  if (idx == items.size()) {
    out.emplace_back(std::move(m1), std::move(m2));
    return;
  }
  const auto& it = items[idx];
  for (int k = 0; k <= it.multiplicity; ++k) {
    enumerate_splits(items, idx + 1, m1 * it.base.pow(static_cast<unsigned>(k)),
                     m2 * it.base.pow(static_cast<unsigned>(it.multiplicity - k)), out);
  }
}

}  // namespace detail

/// Decides whether K b(i)/a(i) admits an Euler presentation.
///
/// Every split of the monic factor base of b between h1 and h2 is examined in
/// a fixed order (h1 degree ascending, then coefficients). Leading
/// coefficients are forced by the degree pattern, so the search is finite.
/// `hint` supplies b pre-factored when its residual is not fully split.
inline IdentifyReport identify(const Poly& a, const Poly& b,
                               const std::optional<FactoredPoly>& hint = std::nullopt,
                               unsigned jobs = 1) {
  if (a.is_zero() || b.is_zero()) throw error(errc::invalid_input, "a and b must be nonzero");

  std::vector<std::pair<Poly, int>> blocks;
  if (hint) {
    if (hint->expand() != b)
      throw error(errc::invalid_input, "factored form does not expand to b");
    blocks = hint->blocks;
  } else if (!b.is_constant()) {
    blocks.emplace_back(b.monic(), 1);
  }

  std::map<std::string, detail::FactorItem> linear;  // keyed by root for merging
  std::vector<BigRat> roots_seen;
  std::vector<detail::FactorItem> residual;
  bool exhaustive = true;
  for (const auto& [block, mult] : blocks) {
    auto fz = factor_integer_rooted(block);
    for (const auto& lf : fz.linear) {
      auto key = lf.factor.str();
      auto [it, inserted] = linear.try_emplace(key, detail::FactorItem{lf.factor, 0});
      it->second.multiplicity += lf.multiplicity * mult;
    }
    if (!fz.residual.is_constant()) {
      // no rational roots: irreducible over Q when of degree 2 or 3
      if (fz.residual.deg() > 3) exhaustive = false;
      residual.push_back({fz.residual, mult});
    }
  }
  std::vector<detail::FactorItem> items;
  for (auto& [k, v] : linear) items.push_back(v);
  std::sort(items.begin(), items.end(), [](const auto& x, const auto& y) {
    return x.base.coeff(0) > y.base.coeff(0);  // roots ascending
  });
  items.insert(items.end(), residual.begin(), residual.end());

  std::vector<std::pair<Poly, Poly>> splits;
  detail::enumerate_splits(items, 0, Poly(1), Poly(1), splits);
  std::stable_sort(splits.begin(), splits.end(),
                   [](const auto& x, const auto& y) { return poly_less(x.first, y.first); });

  std::vector<detail::Outcome> outcomes(splits.size());
  if (jobs <= 1) {
    for (std::size_t i = 0; i < splits.size(); ++i)
      outcomes[i] = detail::examine_split(a, b, splits[i].first, splits[i].second);
  } else {
    for (std::size_t base = 0; base < splits.size(); base += jobs) {
      std::vector<std::future<detail::Outcome>> batch;
      for (std::size_t i = base; i < std::min(splits.size(), base + jobs); ++i)
        batch.push_back(std::async(std::launch::async, detail::examine_split, std::cref(a),
                                   std::cref(b), std::cref(splits[i].first),
                                   std::cref(splits[i].second)));
      for (std::size_t i = 0; i < batch.size(); ++i) outcomes[base + i] = batch[i].get();
    }
  }

  IdentifyReport report;
  report.exhaustive = exhaustive;
  for (auto& o : outcomes) {
    for (auto& s : o.solutions) report.solutions.push_back(std::move(s));
    for (auto& r : o.rejections) report.rejections.push_back(std::move(r));
  }
  return report;
}

}  // namespace pcf
