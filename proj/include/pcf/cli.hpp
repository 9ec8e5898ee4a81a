#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "pcf/error.hpp"
#include "pcf/euler.hpp"
#include "pcf/identify.hpp"
#include "pcf/json.hpp"
#include "pcf/limits.hpp"
#include "pcf/matforms.hpp"
#include "pcf/mobius.hpp"
#include "pcf/parse.hpp"

namespace pcf::cli {

namespace detail {

/// "--b -n^6" would be read as a flag; glue such values onto their option.
inline std::vector<std::string> glue_values(const std::vector<std::string>& args) {
  static const std::set<std::string> takes_value = {
      "--a", "--b", "--head", "--h1", "--h2", "--b-factored", "--eps", "--depth", "--max-depth",
      "--digits", "--jobs", "--bits"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (takes_value.count(args[i]) && i + 1 < args.size()) {
      out.push_back(args[i] + "=" + args[i + 1]);
      ++i;
    } else if (args[i] == "--matrix" && i + 4 < args.size()) {
      out.push_back("--matrix=" + args[i + 1] + "," + args[i + 2] + "," + args[i + 3] + "," + args[i + 4]);
      i += 4;
    } else {
      out.push_back(args[i]);
    }
  }
  return out;
}

/// Integer numerator/denominator of p/q without cancelling common factors.
inline std::string unreduced(const BigRat& p, const BigRat& q) {
  BigInt l;
  mpz_lcm(l.get_mpz_t(), p.get_den_mpz_t(), q.get_den_mpz_t());
  BigRat pn = p * l, qn = q * l;
  return fraction_string(pn.get_num(), qn.get_num());
}

struct Flags {
  std::string a, b, head = "0", h1, h2, b_factored, eps = "1/1000000000000";
  std::vector<std::string> matrix;
  long depth = 0, max_depth = 4096;
  unsigned digits = 20, jobs = 1;
  unsigned long bits = 0;
  bool reduced = false, closed_form = false;
};

inline void cmd_eval(const Flags& fl, std::ostream& out) {
  const CFSpec cf{parse_poly(fl.a), parse_poly(fl.b), 1, parse_rational(fl.head)};
  if (fl.depth < 1) throw error(errc::invalid_input, "depth must be at least 1");
  auto s = convergents(cf);
  if (!s.advance_to(fl.depth + 1))
    throw error(errc::truncated, "b vanishes at term " + std::to_string(*s.state().truncated_at));
  const auto& st = s.state();
  if (st.q == 0) {
    out << "inf\n";
    return;
  }
  // head + p/q, with the head folded into the numerator
  const BigRat p = cf.head * st.q + st.p;
  if (fl.reduced) {
    BigRat v = p / st.q;
    out << fraction_string(v.get_num(), v.get_den()) << "\n";
  } else {
    out << unreduced(p, st.q) << "\n";
  }
  out << to_decimal(BigRat(p / st.q), fl.digits) << "\n";
}

inline void cmd_identify(const Flags& fl, std::ostream& out) {
  const Poly a = parse_poly(fl.a), b = parse_poly(fl.b);
  std::optional<FactoredPoly> hint;
  if (!fl.b_factored.empty()) hint = parse_factored(fl.b_factored);
  out << to_json(identify(a, b, hint, fl.jobs)).dump(2) << "\n";
}

inline json closed_forms(const Poly& a, const Poly& b, unsigned digits) {
  json forms = json::array();
  for (const auto& t : identify(a, b).solutions) {
    json entry = to_json(t);
    if (auto k = dominant_limit(t)) {
      entry["kind"] = "dominant";
      entry["value"] = frac(*k);
    } else {
      try {
        ZetaCombo z = telescoping_zeta_sum(t);
        entry["kind"] = "zeta";
        entry["sum"] = to_json(z);
        if (z.is_exact()) {
          ZetaLimit lim = cf_limit_from_zeta(t, z);
          entry["value"] = lim.str();
          entry["decimal"] = to_decimal(lim.approximate(), digits);
        }
      } catch (const error& e) {
        if (e.code() != errc::non_telescoping) throw;
        if (t.f().is_constant() && t.h1().deg() == 1 && t.h2().deg() == 1) {
          try {
            entry["kind"] = "beta";
            entry["beta"] = to_json(beta_degree1(t.h1(), t.h2()));
          } catch (const error& be) {
            entry["kind"] = "none";
            entry["reason"] = be.what();
          }
        } else {
          entry["kind"] = "none";
          entry["reason"] = e.what();
        }
      }
    }
    forms.push_back(std::move(entry));
  }
  return forms;
}

inline void cmd_limit(const Flags& fl, std::ostream& out) {
  const Poly a = parse_poly(fl.a), b = parse_poly(fl.b);
  const CFSpec cf{a, b, 1, parse_rational(fl.head)};
  const BigRat eps = parse_rational(fl.eps);
  json report;
  report["estimate"] = to_json(numeric_limit(cf, eps, fl.max_depth, {fl.bits}), fl.digits);
  if (fl.closed_form) report["closed_forms"] = closed_forms(a, b, fl.digits);
  out << report.dump(2) << "\n";
}

inline void cmd_convert(const Flags& fl, std::ostream& out) {
  if (fl.matrix.size() != 4) throw error(errc::invalid_input, "--matrix needs 4 polynomials");
  const PolyMat2 m{parse_poly(fl.matrix[0]), parse_poly(fl.matrix[1]), parse_poly(fl.matrix[2]),
                   parse_poly(fl.matrix[3])};
  const CFForm form = to_cf_form(m);
  out << "M(n) = " << m.str() << "\n";
  out << "U(n) = " << form.u.str() << "\n";
  out << "cf(n) = " << form.cf.str() << "\n";
  out << "init = " << form.init.str() << "\n";
  out << "integral(n) = " << form.integral.str() << "\n";
}

inline void cmd_triangularize(const Flags& fl, std::ostream& out) {
  const Poly h1 = parse_poly(fl.h1), h2 = parse_poly(fl.h2);
  if (fl.depth < 1) throw error(errc::invalid_input, "depth must be at least 1");
  const PolyMat2 m = cf_matrix(-(h1 * h2), h1 + h2.shift(1));
  const EigenSeq left{Poly(1), h2, h2, EigenSeq::Side::left};
  const Triangularization tri = triangularize(m, left);
  out << "M(n) = " << m.str() << "\n";
  out << "left eigenvector (1, " << h2.str() << "), eigenvalue " << h2.str() << "\n";
  out << "U(n) = " << tri.u.str() << "\n";
  out << "U(n) M(n) U(n+1)^-1 = " << tri.t.str() << "\n";
  const BigRat via_matrices = rederive_euler_sum(h1, h2, fl.depth);
  const BigRat direct = euler_partial_value(EulerTriple(h1, h2, Poly(1)), fl.depth - 1);
  out << "K_1^" << fl.depth - 1 << " via triangular product = " << via_matrices.get_str() << "\n";
  out << "K_1^" << fl.depth - 1 << " via Euler sum = " << direct.get_str() << "\n";
  out << "match: " << (via_matrices == direct ? "yes" : "no") << "\n";
}

}  // namespace detail

/// Runs the command line; returns the process exit code.
inline int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact tools for polynomial continued fractions", "pcf"};
  app.require_subcommand(1);
  detail::Flags fl;

  auto* eval = app.add_subcommand("eval", "exact convergent of a0 + K b(n)/a(n)");
  eval->add_option("--a", fl.a, "partial denominators a(n)")->required();
  eval->add_option("--b", fl.b, "partial numerators b(n)")->required();
  eval->add_option("--head", fl.head, "a0");
  eval->add_option("--depth", fl.depth, "number of terms")->required();
  eval->add_flag("--reduced", fl.reduced, "print in lowest terms");
  eval->add_option("--digits", fl.digits, "decimal digits");

  auto* ident = app.add_subcommand("identify", "search for an Euler presentation");
  ident->add_option("--a", fl.a)->required();
  ident->add_option("--b", fl.b)->required();
  ident->add_option("--b-factored", fl.b_factored, "b as a product, e.g. -(n^2+1)*n^3");
  ident->add_option("--jobs", fl.jobs, "worker threads");

  auto* limit = app.add_subcommand("limit", "estimate the limit, with closed forms");
  limit->add_option("--a", fl.a)->required();
  limit->add_option("--b", fl.b)->required();
  limit->add_option("--head", fl.head);
  limit->add_option("--eps", fl.eps, "stopping tolerance");
  limit->add_option("--max-depth", fl.max_depth);
  limit->add_option("--bits", fl.bits, "truncate convergents to this many bits (0 = exact)");
  limit->add_option("--digits", fl.digits);
  limit->add_flag("--closed-form", fl.closed_form, "also report Euler closed forms");

  auto* convert = app.add_subcommand("convert", "matrix sequence to continued-fraction form");
  convert->add_option("--matrix", fl.matrix, "a b c d entries of M(n)")->required()->expected(4)->delimiter(',');

  auto* tri = app.add_subcommand("triangularize", "triangular re-derivation of the trivial Euler sum");
  tri->add_option("--h1", fl.h1)->required();
  tri->add_option("--h2", fl.h2)->required();
  tri->add_option("--depth", fl.depth)->required();

  std::vector<std::string> args = detail::glue_values(raw_args);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*eval) detail::cmd_eval(fl, out);
    else if (*ident) detail::cmd_identify(fl, out);
    else if (*limit) detail::cmd_limit(fl, out);
    else if (*convert) detail::cmd_convert(fl, out);
    else if (*tri) detail::cmd_triangularize(fl, out);
  } catch (const parse_error& e) {
    err << "parse error near '" << e.token() << "': " << e.what() << "\n";
    return 2;
  } catch (const error& e) {
    err << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace pcf::cli
