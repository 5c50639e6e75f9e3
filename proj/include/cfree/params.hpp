#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace cfree {

enum class Mode { asymptotic, operational };

std::string_view to_string(Mode mode);
Mode mode_from_string(std::string_view text);

// Values supplied directly in operational mode. In asymptotic mode only
// k_scale is read.
struct ParamOverrides {
  std::optional<double> p;
  std::optional<std::uint64_t> r;
  std::optional<std::uint64_t> k;
  std::optional<double> delta;
  // Multiplier on the k formula in asymptotic mode (default 9/8).
  std::optional<double> k_scale;
};

struct Params {
  int ell = 5;
  std::uint64_t n = 0;
  double p_c = 0.0;    // deletion threshold n^(-1 + 1/(ell-1))
  double eps = 0.0;    // ((2 ell - 3)(ell - 1))^-1
  double p = 0.0;      // base-graph edge density
  std::uint64_t r = 1;  // block size
  std::uint64_t k = 1;  // independence target, integer
  double k_target = 1.0;  // un-rounded k; equals k in operational mode
  double k_scale = 1.0;   // asymptotic multiplier on 8 p^-1 (log n)^3
  double delta = 1.0;
  double eta = 0.0;  // 1 / (4 ell)
  Mode mode = Mode::operational;

  std::uint64_t blocks() const { return n / r; }
  double log_n() const;
};

inline constexpr double kDefaultKScale = 9.0 / 8.0;

Params derive_params(int ell, std::uint64_t n, Mode mode, const ParamOverrides& overrides = {});

// Checks every Params invariant; throws ParameterError on the first violation.
void validate(const Params& params);

// Exponent of k in the headline bound, ((ell - 2)(2 ell - 5))^-1. Lives on
// the k-scale; eps lives on the n-scale.
double k_scale_exponent(int ell);

using Rational = boost::rational<std::int64_t>;

// (1 + 1/(l-2) + 1/((l-2)(2l-5))) - (1 + 2/(2l-5)), exactly.
Rational exponent_identity_residual(int ell);

struct RegimeDiagnostics {
  double ratio_ineq1 = 0.0;  // (p^(l-1) n^(l-2) / r) (log n)^2
  bool ineq2_ok = false;     // r <= 4 sqrt(n/k)
  bool r_vs_pn_ok = false;   // r <= (pn)^(1 - 2/(l-1))
  double union_bound_margin = 0.0;  // p delta^2 k - 8 log n
  double exponent_identity_err = 0.0;
};

// The union-bound margin is evaluated in exact rational arithmetic on the
// binary values of p and log n. In asymptotic mode delta and k are taken as
// the formulas 1/log n and k_scale * 8 (log n)^3 / p rather than their
// rounded stored values, so the paper's exact k gives exactly zero.
RegimeDiagnostics check_regime(const Params& params);

// Flat "key = value" document with keys ell, n, p_c, eps, p, r, k, delta,
// eta, mode. Doubles use 17 significant digits so parsing is bit-exact.
std::string to_key_value(const Params& params);
Params params_from_key_value(std::string_view text);

}  // namespace cfree
