#include "confbessel/bessel.hpp"

#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "confbessel/errors.hpp"

namespace confbessel {

namespace {

bool is_integer(double v) noexcept {
  return std::fabs(v - std::round(v)) <= kIntegerTolerance;
}

void require_terms(std::size_t n_terms) {
  if (n_terms == 0) {
    throw DomainError("n_terms must be >= 1");
  }
}

// Even coefficients from c_n = -c_{n-2} / (n (n + 2 shift)); odd ones stay zero.
// shift = p for the r = p root and -p for the r = -p root.
std::vector<double> frobenius_coefficients(double c0, double shift, std::size_t n_terms) {
  std::vector<double> c(n_terms, 0.0);
  c[0] = c0;
  for (std::size_t n = 2; n < n_terms; n += 2) {
    const auto nn = static_cast<double>(n);
    c[n] = -c[n - 2] / (nn * (nn + 2.0 * shift));
  }
  return c;
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) {
    f *= k;
  }
  return f;
}

}  // namespace

BesselOrder BesselOrder::classify(double p) {
  if (!std::isfinite(p)) {
    throw DomainError(fmt::format("order must be finite, got {}", p));
  }
  if (std::fabs(p) <= kIntegerTolerance) {
    return {0.0, OrderKind::zero, 0};
  }
  if (p > 0.0 && is_integer(p)) {
    const int m = static_cast<int>(std::lround(p));
    return {p, OrderKind::positive_integer, m};
  }
  if (p > 0.0 && is_integer(2.0 * p)) {
    return {p, OrderKind::two_p_integer, 0};
  }
  return {p, OrderKind::generic, 0};
}

double gamma(double z) {
  if (z <= 0.0 && is_integer(z)) {
    throw PoleError(fmt::format("gamma has a pole at {}", z));
  }
  // Small positive integers: exact factorials.
  if (z >= 1.0 && z <= 171.0 && z == std::floor(z)) {
    return factorial(static_cast<int>(z) - 1);
  }
  return std::tgamma(z);
}

double harmonic(std::size_t n) {
  double h = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    h += 1.0 / static_cast<double>(k);
  }
  return h;
}

IndicialData indicial(double p, Alpha alpha) {
  if (!(p >= 0.0)) {
    throw DomainError(fmt::format("indicial: pass |p|, got {}", p));
  }
  return IndicialData{.r1 = p, .r2 = -p, .p = p, .alpha = alpha};
}

FracSeries build_J(double p, Alpha alpha, std::size_t n_terms) {
  if (!(p >= 0.0) || !std::isfinite(p)) {
    throw DomainError(fmt::format("build_J needs p >= 0, got {}", p));
  }
  require_terms(n_terms);
  const double c0 = 1.0 / (std::pow(2.0, p) * gamma(p + 1.0));
  return FracSeries(alpha, p, frobenius_coefficients(c0, p, n_terms));
}

FracSeries build_J_neg(double p, Alpha alpha, std::size_t n_terms) {
  const BesselOrder order = BesselOrder::classify(p);
  if (order.kind() == OrderKind::positive_integer) {
    throw CaseError(fmt::format(
        "order -{} is a negative integer; use reduce_negative_integer_order", order.m()));
  }
  if (!(p > 0.0)) {
    throw DomainError(fmt::format("build_J_neg needs p > 0, got {}", p));
  }
  require_terms(n_terms);
  const double c0 = std::pow(2.0, p) / gamma(1.0 - p);
  return FracSeries(alpha, -p, frobenius_coefficients(c0, -p, n_terms));
}

FracSeries reduce_negative_integer_order(int m, Alpha alpha, std::size_t n_terms) {
  if (m < 0) {
    throw DomainError(fmt::format("reduce_negative_integer_order needs m >= 0, got {}", m));
  }
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  return series_scale(build_J(m, alpha, n_terms), sign);
}

LogSolution build_y2_zero(Alpha alpha, std::size_t n_terms) {
  FracSeries j0 = build_J(0.0, alpha, n_terms);
  // (-1)^{n+1} / (2^{2n} n!^2) is exactly -c_{2n} of J_0.
  std::vector<double> plain(n_terms, 0.0);
  for (std::size_t n = 1; 2 * n < n_terms; ++n) {
    plain[2 * n] = -j0.coeff(2 * n) * harmonic(n) / alpha.value();
  }
  return LogSolution(std::move(j0), FracSeries(alpha, 0.0, std::move(plain)));
}

std::vector<double> intermediate_b_chain(int m) {
  if (m < 1) {
    throw CaseError(fmt::format("intermediate_b_chain needs m >= 1, got {}", m));
  }
  std::vector<double> chain(static_cast<std::size_t>(m));
  chain[0] = 1.0;
  // alpha^2 n (n - 2m) b_n + alpha^2 b_{n-2} = 0 with n = 2j.
  for (int j = 1; j < m; ++j) {
    chain[j] = chain[j - 1] / (4.0 * j * (m - j));
  }
  return chain;
}

SecondSolutionParams second_solution_params(int m, Alpha alpha, double C) {
  if (m < 1) {
    throw CaseError(fmt::format("second solution needs m >= 1, got {}", m));
  }
  const double scale = std::pow(2.0, m - 1) * factorial(m - 1);
  return SecondSolutionParams{.m = m, .b0 = -C * scale / alpha.value(), .C = C};
}

LogSolution build_K(int m, Alpha alpha, std::size_t n_terms, KMiddleTerm middle) {
  if (m < 1) {
    throw CaseError(fmt::format("(K_alpha)_m needs an integer order m >= 1, got {}", m));
  }
  require_terms(n_terms);
  const SecondSolutionParams params = second_solution_params(m, alpha, 1.0);
  const FracSeries jm = build_J(m, alpha, n_terms);
  const auto block = static_cast<std::size_t>(2 * m);

  std::vector<double> plain(block + n_terms, 0.0);

  // Negative-power block: b_{2j} x^{(2j - m) alpha}, j < m.
  const std::vector<double> chain = intermediate_b_chain(m);
  for (std::size_t j = 0; j < chain.size(); ++j) {
    plain[2 * j] = params.b0 * chain[j];
  }

  // b_{2m+2n} = -(C / 2 alpha) c_{2n} (H_n + H_{m+n}), n >= 0.
  const double lead = -params.C / (2.0 * alpha.value());
  for (std::size_t n = 0; 2 * n < n_terms; ++n) {
    double b = lead * jm.coeff(2 * n) * (harmonic(n) + harmonic(m + n));
    if (n == 0 && middle == KMiddleTerm::extra_factorial) {
      b /= factorial(m);
    }
    plain[block + 2 * n] = b;
  }

  return LogSolution(series_scale(jm, params.C), FracSeries(alpha, -m, std::move(plain)));
}

}  // namespace confbessel
