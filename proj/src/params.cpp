#include "cfree/params.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "cfree/errors.hpp"
#include "cfree/kv.hpp"

namespace cfree {

std::string_view to_string(Mode mode) {
  return mode == Mode::asymptotic ? "asymptotic" : "operational";
}

Mode mode_from_string(std::string_view text) {
  if (text == "asymptotic") return Mode::asymptotic;
  if (text == "operational") return Mode::operational;
  throw ParameterError("unknown mode '" + std::string(text) + "'");
}

double Params::log_n() const { return std::log(static_cast<double>(n)); }

double k_scale_exponent(int ell) { return 1.0 / (static_cast<double>(ell - 2) * (2 * ell - 5)); }

Rational exponent_identity_residual(int ell) {
  const std::int64_t l = ell;
  Rational lhs = Rational(1) + Rational(1, l - 2) + Rational(1, (l - 2) * (2 * l - 5));
  Rational rhs = Rational(1) + Rational(2, 2 * l - 5);
  return lhs - rhs;
}

namespace {

void check_ell(int ell) {
  if (ell < 5 || ell % 2 == 0) {
    throw ParameterError("ell must be odd and >= 5 (got " + std::to_string(ell) + ")");
  }
}

std::uint64_t largest_divisor_at_most(std::uint64_t n, std::uint64_t bound) {
  std::uint64_t r = std::max<std::uint64_t>(1, std::min(bound, n));
  while (n % r != 0) --r;
  return r;
}

}  // namespace

void validate(const Params& params) {
  check_ell(params.ell);
  if (params.r < 1) throw ParameterError("r must be >= 1");
  if (params.n < params.r) throw ParameterError("n must be >= r");
  if (params.n % params.r != 0) throw ParameterError("r must divide n");
  if (!(params.p > 0.0 && params.p < 1.0)) throw ParameterError("p must lie in (0, 1)");
  if (params.k < 1) throw ParameterError("k must be >= 1");
  if (!(params.delta > 0.0 && params.delta <= 1.0)) throw ParameterError("delta must lie in (0, 1]");
}

Params derive_params(int ell, std::uint64_t n, Mode mode, const ParamOverrides& overrides) {
  check_ell(ell);
  if (n < 16) throw ParameterError("n must be >= 16");

  Params out;
  out.ell = ell;
  out.n = n;
  out.mode = mode;
  const double nd = static_cast<double>(n);
  const double log_n = std::log(nd);
  out.p_c = std::pow(nd, -1.0 + 1.0 / (ell - 1));
  out.eps = 1.0 / (static_cast<double>(2 * ell - 3) * (ell - 1));
  out.eta = 1.0 / (4.0 * ell);

  if (mode == Mode::asymptotic) {
    out.p = out.p_c * std::pow(nd, out.eps) / log_n;
    const double r_formula = std::sqrt(out.p * nd) * std::pow(log_n, -1.5);
    out.r = largest_divisor_at_most(n, static_cast<std::uint64_t>(std::floor(r_formula)));
    out.k_scale = overrides.k_scale.value_or(kDefaultKScale);
    if (!(out.k_scale > 0.0)) throw ParameterError("k_scale must be positive");
    out.k_target = out.k_scale * 8.0 * log_n * log_n * log_n / out.p;
    out.k = static_cast<std::uint64_t>(std::ceil(out.k_target));
    out.delta = 1.0 / log_n;
  } else {
    if (!overrides.p || !overrides.r || !overrides.k || !overrides.delta) {
      throw ParameterError("operational mode needs p, r, k and delta");
    }
    out.p = *overrides.p;
    out.r = *overrides.r;
    out.k = *overrides.k;
    out.k_target = static_cast<double>(out.k);
    out.k_scale = 1.0;
    out.delta = *overrides.delta;
  }
  validate(out);
  return out;
}

RegimeDiagnostics check_regime(const Params& params) {
  using boost::multiprecision::cpp_rational;
  RegimeDiagnostics d;
  const double nd = static_cast<double>(params.n);
  const double rd = static_cast<double>(params.r);
  const double log_n = params.log_n();
  const int ell = params.ell;

  const double log_ratio = (ell - 1) * std::log(params.p) + (ell - 2) * std::log(nd) - std::log(rd) +
                           2.0 * std::log(log_n);
  d.ratio_ineq1 = std::exp(log_ratio);
  d.ineq2_ok = rd <= 4.0 * std::sqrt(nd / static_cast<double>(params.k));
  d.r_vs_pn_ok = rd <= std::pow(params.p * nd, 1.0 - 2.0 / (ell - 1));

  const cpp_rational p(params.p);
  const cpp_rational lg(log_n);
  cpp_rational delta, k;
  if (params.mode == Mode::asymptotic) {
    delta = 1 / lg;
    k = cpp_rational(params.k_scale) * 8 * lg * lg * lg / p;
  } else {
    delta = cpp_rational(params.delta);
    k = cpp_rational(params.k);
  }
  const cpp_rational margin = p * delta * delta * k - 8 * lg;
  d.union_bound_margin = static_cast<double>(margin);

  const Rational residual = exponent_identity_residual(ell);
  d.exponent_identity_err = std::abs(boost::rational_cast<double>(residual));
  return d;
}

std::string to_key_value(const Params& params) {
  std::ostringstream out;
  out << "ell = " << params.ell << '\n'
      << "n = " << params.n << '\n'
      << "p_c = " << format_double(params.p_c) << '\n'
      << "eps = " << format_double(params.eps) << '\n'
      << "p = " << format_double(params.p) << '\n'
      << "r = " << params.r << '\n'
      << "k = " << params.k << '\n'
      << "delta = " << format_double(params.delta) << '\n'
      << "eta = " << format_double(params.eta) << '\n'
      << "mode = " << to_string(params.mode) << '\n';
  return out.str();
}

Params params_from_key_value(std::string_view text) {
  Params out;
  unsigned seen = 0;
  for (const KeyValue& kv : parse_key_value(text)) {
    const auto& key = kv.key;
    if (key == "ell") {
      out.ell = static_cast<int>(parse_i64(kv.value, kv.line));
      seen |= 1u << 0;
    } else if (key == "n") {
      out.n = parse_u64(kv.value, kv.line);
      seen |= 1u << 1;
    } else if (key == "p_c") {
      out.p_c = parse_double(kv.value, kv.line);
      seen |= 1u << 2;
    } else if (key == "eps") {
      out.eps = parse_double(kv.value, kv.line);
      seen |= 1u << 3;
    } else if (key == "p") {
      out.p = parse_double(kv.value, kv.line);
      seen |= 1u << 4;
    } else if (key == "r") {
      out.r = parse_u64(kv.value, kv.line);
      seen |= 1u << 5;
    } else if (key == "k") {
      out.k = parse_u64(kv.value, kv.line);
      seen |= 1u << 6;
    } else if (key == "delta") {
      out.delta = parse_double(kv.value, kv.line);
      seen |= 1u << 7;
    } else if (key == "eta") {
      out.eta = parse_double(kv.value, kv.line);
      seen |= 1u << 8;
    } else if (key == "mode") {
      try {
        out.mode = mode_from_string(kv.value);
      } catch (const ParameterError& e) {
        throw ParseError(kv.line, e.what());
      }
      seen |= 1u << 9;
    } else {
      throw ParseError(kv.line, "unknown key '" + key + "'");
    }
  }
  if (seen != (1u << 10) - 1) throw ParseError(0, "params document is missing keys");
  out.k_target = static_cast<double>(out.k);
  if (out.mode == Mode::asymptotic) {
    const double lg = out.log_n();
    out.k_scale = out.k_target * out.p / (8.0 * lg * lg * lg);
  }
  validate(out);
  return out;
}

}  // namespace cfree
