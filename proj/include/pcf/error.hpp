#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pcf {

/// Domain error categories. The names are what the CLI prints.
enum class errc {
  singular_matrix,
  invalid_input,
  degenerate_term,
  zero_scaler,
  not_divisible,
  pole_in_formula,
  orbit_pole,
  zero_c_entry,
  zero_f,
  zero_diagonal,
  not_eigenvector,
  non_telescoping,
  precondition_violated,
  truncated,
  parse_error,
};

inline std::string_view errc_name(errc e) {
  switch (e) {
    case errc::singular_matrix: return "SingularMatrix";
    case errc::invalid_input: return "InvalidInput";
    case errc::degenerate_term: return "DegenerateTerm";
    case errc::zero_scaler: return "ZeroScaler";
    case errc::not_divisible: return "NotDivisible";
    case errc::pole_in_formula: return "PoleInFormula";
    case errc::orbit_pole: return "OrbitPole";
    case errc::zero_c_entry: return "ZeroCEntry";
    case errc::zero_f: return "ZeroF";
    case errc::zero_diagonal: return "ZeroDiagonal";
    case errc::not_eigenvector: return "NotEigenvector";
    case errc::non_telescoping: return "NonTelescoping";
    case errc::precondition_violated: return "PreconditionViolated";
    case errc::truncated: return "Truncated";
    case errc::parse_error: return "ParseError";
  }
  return "Unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

/// Thrown by the text parsers; `token` is the offending input fragment.
class parse_error : public error {
 public:
  parse_error(const std::string& what, std::string token)
      : error(errc::parse_error, what + " near '" + token + "'"), token_(std::move(token)) {}

  const std::string& token() const noexcept { return token_; }

 private:
  std::string token_;
};

}  // namespace pcf
