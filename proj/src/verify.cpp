#include "confbessel/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>

#include "confbessel/bessel.hpp"
#include "confbessel/errors.hpp"

namespace confbessel {

namespace {

// Running maxima for one report.
class ErrorTracker {
 public:
  void record(double abs_err, double rel_err) {
    // NaN must fail the check, so it is latched rather than dropped by max().
    if (std::isnan(abs_err) || std::isnan(rel_err)) {
      saw_nan_ = true;
    }
    max_abs_ = std::max(max_abs_, abs_err);
    max_rel_ = std::max(max_rel_, rel_err);
  }

  void record_pair(double lhs, double rhs) {
    const double abs_err = std::fabs(lhs - rhs);
    const double scale = std::max(std::fabs(lhs), std::fabs(rhs));
    record(abs_err, scale == 0.0 ? 0.0 : abs_err / scale);
  }

  CheckReport finish(std::string name, std::vector<GridPoint> grid, double tolerance,
                     ErrorMode mode) const {
    if (grid.empty()) {
      throw std::invalid_argument(fmt::format("check '{}' has an empty grid", name));
    }
    const double err = mode == ErrorMode::absolute ? max_abs_ : max_rel_;
    CheckReport report;
    report.check_name = std::move(name);
    report.grid = std::move(grid);
    report.max_abs_err = saw_nan_ ? std::nan("") : max_abs_;
    report.max_rel_err = saw_nan_ ? std::nan("") : max_rel_;
    report.tolerance = tolerance;
    report.mode = mode;
    report.passed = !saw_nan_ && err <= tolerance;
    return report;
  }

 private:
  double max_abs_ = 0.0;
  double max_rel_ = 0.0;
  bool saw_nan_ = false;
};

void require_grid(std::span<const double> xs) {
  if (xs.empty()) {
    throw std::invalid_argument("grid must not be empty");
  }
  for (double x : xs) {
    if (!(x > 0.0)) {
      throw DomainError(fmt::format("grid point {} is not > 0", x));
    }
  }
}

std::vector<GridPoint> point_grid(double p, Alpha alpha, std::span<const double> xs) {
  std::vector<GridPoint> grid;
  grid.reserve(xs.size());
  for (double x : xs) {
    grid.push_back({p, alpha.value(), x});
  }
  return grid;
}

std::vector<GridPoint> coefficient_grid(double p, Alpha alpha) {
  return {GridPoint{p, alpha.value(), std::nullopt}};
}

double eval(const FracSeries& s, double x) { return eval_series(s, x).value; }

// Compares the first `count` coefficients of two series at the same offset.
void compare_coefficients(const FracSeries& lhs, const FracSeries& rhs, std::size_t count,
                          ErrorTracker& tracker) {
  if (!offsets_equal(lhs.offset(), rhs.offset())) {
    throw AlignmentError(fmt::format("coefficient comparison at offsets {} and {}",
                                     lhs.offset(), rhs.offset()));
  }
  for (std::size_t n = 0; n < count; ++n) {
    tracker.record_pair(lhs.coeff(n), rhs.coeff(n));
  }
}

void require_order(int p, int minimum, std::string_view what) {
  if (p < minimum) {
    throw CaseError(fmt::format("{} needs p >= {}, got {}", what, minimum, p));
  }
}

std::string identity_name(std::string_view roman, int p, CheckMode mode) {
  return fmt::format("identity_{}:p={}:{}", roman, p,
                     mode == CheckMode::coefficients ? "coeff" : "point");
}

std::string scaling_name(double p) {
  const BesselOrder order = BesselOrder::classify(p);
  switch (order.kind()) {
    case OrderKind::zero:
      return "scaling:y2zero";
    case OrderKind::positive_integer:
      return fmt::format("scaling:K:m={}", order.m());
    default:
      return fmt::format("scaling:J:p={}", p);
  }
}

struct Derivatives {
  double y;
  double dy;
  double ddy;
};

Derivatives derivatives_at(const FracSeries& s, double x) {
  const FracSeries d1 = conformable_diff_exact(s);
  const FracSeries d2 = conformable_diff_exact(d1);
  return {eval(s, x), eval(d1, x), eval(d2, x)};
}

Derivatives derivatives_at(const LogSolution& s, double x) {
  const LogSolution d1 = conformable_diff_exact(s);
  const LogSolution d2 = conformable_diff_exact(d1);
  return {eval_log_solution(s, x).value, eval_log_solution(d1, x).value,
          eval_log_solution(d2, x).value};
}

}  // namespace

std::string_view to_string(ErrorMode mode) noexcept {
  return mode == ErrorMode::absolute ? "absolute" : "relative";
}

CheckReport residual_check(double p, const Solution& solution, std::span<const double> xs,
                           std::optional<double> tolerance) {
  require_grid(xs);
  const bool is_log = std::holds_alternative<LogSolution>(solution);
  const Alpha alpha = std::visit([](const auto& s) { return s.alpha(); }, solution);
  const double a = alpha.value();

  ErrorTracker tracker;
  for (double x : xs) {
    const Derivatives d = std::visit([x](const auto& s) { return derivatives_at(s, x); }, solution);
    const double t = std::pow(x, a);
    const double residual = t * t * d.ddy + a * t * d.dy + a * a * (t * t - p * p) * d.y;
    tracker.record(std::fabs(residual), std::fabs(residual) / (1.0 + std::fabs(d.y)));
  }
  const double tol = tolerance.value_or(is_log ? tolerances::kResidualLog
                                               : tolerances::kResidualSeries);
  return tracker.finish(fmt::format("residual:p={}:{}", p, is_log ? "log" : "series"),
                        point_grid(p, alpha, xs), tol, ErrorMode::relative);
}

CheckReport identity_check_i(int p, Alpha alpha, std::span<const double> xs, CheckMode mode,
                             std::optional<double> tolerance) {
  require_order(p, 1, "identity (i)");
  const std::size_t count = tolerances::kCoefficientCount;
  const double a = alpha.value();
  const FracSeries jp = build_J(p, alpha, count);
  const FracSeries jpm1 = build_J(p - 1, alpha, count);
  const FracSeries lhs = conformable_diff_exact(series_shift(jp, p));

  ErrorTracker tracker;
  if (mode == CheckMode::coefficients) {
    const FracSeries rhs = series_shift(series_scale(jpm1, a), p);
    compare_coefficients(lhs, rhs, count, tracker);
    return tracker.finish(identity_name("i", p, mode), coefficient_grid(p, alpha),
                          tolerance.value_or(tolerances::kCoefficient), ErrorMode::relative);
  }
  require_grid(xs);
  const FracSeries lhs_full = conformable_diff_exact(series_shift(build_J(p, alpha), p));
  const FracSeries jpm1_full = build_J(p - 1, alpha);
  for (double x : xs) {
    tracker.record_pair(eval(lhs_full, x), a * std::pow(x, p * a) * eval(jpm1_full, x));
  }
  return tracker.finish(identity_name("i", p, mode), point_grid(p, alpha, xs),
                        tolerance.value_or(tolerances::kPointwise), ErrorMode::absolute);
}

CheckReport identity_check_ii(int p, Alpha alpha, std::span<const double> xs, CheckMode mode,
                              std::optional<double> tolerance) {
  require_order(p, 0, "identity (ii)");
  const std::size_t count = tolerances::kCoefficientCount;
  const double a = alpha.value();

  ErrorTracker tracker;
  if (mode == CheckMode::coefficients) {
    const FracSeries lhs = conformable_diff_exact(series_shift(build_J(p, alpha, count), -p));
    const FracSeries rhs_raw = series_shift(series_scale(build_J(p + 1, alpha, count), -a), -p);
    compare_coefficients(lhs, align_offset(rhs_raw, lhs.offset()), count, tracker);
    return tracker.finish(identity_name("ii", p, mode), coefficient_grid(p, alpha),
                          tolerance.value_or(tolerances::kCoefficient), ErrorMode::relative);
  }
  require_grid(xs);
  const FracSeries lhs = conformable_diff_exact(series_shift(build_J(p, alpha), -p));
  const FracSeries jpp1 = build_J(p + 1, alpha);
  for (double x : xs) {
    tracker.record_pair(eval(lhs, x), -a * std::pow(x, -p * a) * eval(jpp1, x));
  }
  return tracker.finish(identity_name("ii", p, mode), point_grid(p, alpha, xs),
                        tolerance.value_or(tolerances::kPointwise), ErrorMode::absolute);
}

CheckReport identity_check_iii(int p, Alpha alpha, std::span<const double> xs,
                               std::optional<double> tolerance) {
  require_order(p, 1, "identity (iii)");
  require_grid(xs);
  const double a = alpha.value();
  const FracSeries jp = build_J(p, alpha);
  const FracSeries djp = conformable_diff_exact(jp);
  const FracSeries jpm1 = build_J(p - 1, alpha);
  ErrorTracker tracker;
  for (double x : xs) {
    const double t = std::pow(x, a);
    tracker.record_pair(eval(djp, x), a * eval(jpm1, x) - (a * p / t) * eval(jp, x));
  }
  return tracker.finish(identity_name("iii", p, CheckMode::pointwise), point_grid(p, alpha, xs),
                        tolerance.value_or(tolerances::kPointwise), ErrorMode::absolute);
}

CheckReport identity_check_iv(int p, Alpha alpha, std::span<const double> xs,
                              std::optional<double> tolerance) {
  require_order(p, 0, "identity (iv)");
  require_grid(xs);
  const double a = alpha.value();
  const FracSeries jp = build_J(p, alpha);
  const FracSeries djp = conformable_diff_exact(jp);
  const FracSeries jpp1 = build_J(p + 1, alpha);
  ErrorTracker tracker;
  for (double x : xs) {
    const double t = std::pow(x, a);
    tracker.record_pair(eval(djp, x), (a * p / t) * eval(jp, x) - a * eval(jpp1, x));
  }
  return tracker.finish(identity_name("iv", p, CheckMode::pointwise), point_grid(p, alpha, xs),
                        tolerance.value_or(tolerances::kPointwise), ErrorMode::absolute);
}

CheckReport identity_check_v(int p, Alpha alpha, std::span<const double> xs,
                             std::optional<double> tolerance) {
  require_order(p, 1, "identity (v)");
  require_grid(xs);
  const double a = alpha.value();
  const FracSeries jp = build_J(p, alpha);
  const FracSeries jpm1 = build_J(p - 1, alpha);
  const FracSeries jpp1 = build_J(p + 1, alpha);
  ErrorTracker tracker;
  for (double x : xs) {
    const double t = std::pow(x, a);
    tracker.record_pair(eval(jpp1, x), (2.0 * p / t) * eval(jp, x) - eval(jpm1, x));
  }
  return tracker.finish(identity_name("v", p, CheckMode::pointwise), point_grid(p, alpha, xs),
                        tolerance.value_or(tolerances::kPointwise), ErrorMode::absolute);
}

CheckReport identity_check_vi(int m, Alpha alpha, std::optional<double> tolerance) {
  require_order(m, 0, "identity (vi)");
  const std::size_t count = tolerances::kCoefficientCount;
  const FracSeries reduced = reduce_negative_integer_order(m, alpha, count);
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;

  ErrorTracker tracker;
  compare_coefficients(reduced, series_scale(build_J(m, alpha, count), sign), count, tracker);

  // Limit of J_{-s} as s -> m, written at offset -m with explicit factorials.
  std::vector<double> limit(count, 0.0);
  for (std::size_t n = static_cast<std::size_t>(m); 2 * n < count; ++n) {
    const double denom = std::ldexp(std::tgamma(n + 1.0) * std::tgamma(n - m + 1.0),
                                    static_cast<int>(2 * n) - m);
    limit[2 * n] = (n % 2 == 0 ? 1.0 : -1.0) / denom;
  }
  const FracSeries limit_series(alpha, -m, std::move(limit));
  compare_coefficients(limit_series, align_offset(reduced, -m), count, tracker);

  return tracker.finish(fmt::format("identity_vi:m={}:coeff", m), coefficient_grid(m, alpha),
                        tolerance.value_or(tolerances::kCoefficient), ErrorMode::relative);
}

CheckReport half_order_check(Alpha alpha, std::span<const double> xs,
                             std::optional<double> tolerance) {
  require_grid(xs);
  const double a = alpha.value();
  const FracSeries pos = build_J(0.5, alpha);
  const FracSeries neg = build_J_neg(0.5, alpha);
  ErrorTracker tracker;
  std::vector<GridPoint> grid;
  for (double x : xs) {
    const double t = std::pow(x, a);
    const double amplitude = std::sqrt(2.0 / (std::numbers::pi * t));
    tracker.record_pair(eval(pos, x), amplitude * std::sin(t));
    tracker.record_pair(eval(neg, x), amplitude * std::cos(t));
    grid.push_back({0.5, a, x});
    grid.push_back({-0.5, a, x});
  }
  return tracker.finish("halforder", std::move(grid),
                        tolerance.value_or(tolerances::kHalfOrder), ErrorMode::absolute);
}

double classical_oracle_J(int n, double z, int panels) {
  if (n < 0 || !(z >= 0.0)) {
    throw DomainError(fmt::format("oracle needs n >= 0 and z >= 0, got n={}, z={}", n, z));
  }
  if (panels < 1) {
    throw DomainError("oracle needs at least one panel");
  }
  // The integrand extends to an even 2*pi-periodic function, so the
  // trapezoidal rule converges spectrally.
  const double h = std::numbers::pi / panels;
  const auto integrand = [n, z](double theta) { return std::cos(n * theta - z * std::sin(theta)); };
  double sum = 0.5 * (integrand(0.0) + integrand(std::numbers::pi));
  for (int k = 1; k < panels; ++k) {
    sum += integrand(k * h);
  }
  return sum * h / std::numbers::pi;
}

CheckReport oracle_check(int p, Alpha alpha, std::span<const double> xs,
                         std::optional<double> tolerance) {
  require_order(p, 0, "oracle check");
  require_grid(xs);
  const FracSeries jp = build_J(p, alpha);
  ErrorTracker tracker;
  for (double x : xs) {
    tracker.record_pair(eval(jp, x), classical_oracle_J(p, std::pow(x, alpha.value())));
  }
  return tracker.finish(fmt::format("oracle:p={}", p), point_grid(p, alpha, xs),
                        tolerance.value_or(tolerances::kOracle), ErrorMode::absolute);
}

CheckReport self_scaling_check(double p, Alpha alpha, std::span<const double> xs,
                               std::optional<double> tolerance) {
  require_grid(xs);
  const BesselOrder order = BesselOrder::classify(p);
  const double a = alpha.value();
  const Alpha one(1.0);
  ErrorTracker tracker;
  std::string name;

  if (order.kind() == OrderKind::zero || order.kind() == OrderKind::positive_integer) {
    const bool zero = order.kind() == OrderKind::zero;
    const LogSolution scaled = zero ? build_y2_zero(alpha) : build_K(order.m(), alpha);
    const LogSolution classical = zero ? build_y2_zero(one) : build_K(order.m(), one);
    for (double x : xs) {
      tracker.record_pair(eval_log_solution(scaled, x).value,
                          eval_log_solution(classical, std::pow(x, a)).value / a);
    }
    name = scaling_name(p);
  } else {
    if (!(p > 0.0)) {
      throw DomainError(fmt::format("scaling check needs p >= 0, got {}", p));
    }
    const FracSeries jp = build_J(p, alpha);
    const FracSeries jp1 = build_J(p, one);
    const FracSeries jn = build_J_neg(p, alpha);
    const FracSeries jn1 = build_J_neg(p, one);
    for (double x : xs) {
      const double t = std::pow(x, a);
      tracker.record_pair(eval(jp, x), eval(jp1, t));
      tracker.record_pair(eval(jn, x), eval(jn1, t));
    }
    name = scaling_name(p);
  }
  return tracker.finish(std::move(name), point_grid(p, alpha, xs),
                        tolerance.value_or(tolerances::kScaling), ErrorMode::absolute);
}

std::vector<CheckReport> scaling_check(double p, Alpha alpha, std::span<const double> xs,
                                       std::optional<double> tolerance) {
  std::vector<CheckReport> reports;
  const BesselOrder order = BesselOrder::classify(p);
  if (order.kind() == OrderKind::zero || order.kind() == OrderKind::positive_integer) {
    reports.push_back(oracle_check(order.m(), alpha, xs, tolerance));
  }
  reports.push_back(self_scaling_check(p, alpha, xs, tolerance));
  return reports;
}

CheckReport merge_reports(std::string name, std::span<const CheckReport> reports) {
  if (reports.empty()) {
    throw std::invalid_argument("merge_reports needs at least one report");
  }
  CheckReport merged;
  merged.check_name = std::move(name);
  merged.tolerance = reports.front().tolerance;
  merged.mode = reports.front().mode;
  merged.passed = true;
  for (const CheckReport& r : reports) {
    merged.grid.insert(merged.grid.end(), r.grid.begin(), r.grid.end());
    // Propagate NaN explicitly; std::max would drop it depending on order.
    merged.max_abs_err = std::isnan(r.max_abs_err) ? r.max_abs_err
                                                   : std::max(merged.max_abs_err, r.max_abs_err);
    merged.max_rel_err = std::isnan(r.max_rel_err) ? r.max_rel_err
                                                   : std::max(merged.max_rel_err, r.max_rel_err);
    merged.passed = merged.passed && r.passed;
  }
  return merged;
}

// ---------------------------------------------------------------------------
// Suites

namespace {

std::vector<double> linspace(double start, double stop, std::size_t count) {
  std::vector<double> v(count);
  for (std::size_t i = 0; i < count; ++i) {
    v[i] = count == 1 ? start
                      : start + (stop - start) * static_cast<double>(i) /
                                    static_cast<double>(count - 1);
  }
  return v;
}

const std::vector<double> kWideGrid = {0.25, 0.5, 1.0, 2.0, 4.0, 8.0};
const std::vector<double> kIdentityAlphas = {0.3, 0.5, 0.75, 1.0};
const std::vector<double> kResidualAlphas = {0.4, 0.7, 1.0};
const std::vector<double> kScalingAlphas = {0.3, 0.5, 0.8};
const std::vector<double> kOracleAlphas = {0.5, 1.0};
// Values of x^alpha for the oracle comparison; all <= 8.
const std::vector<double> kOracleArguments = {0.25, 0.5, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0};

struct Grids {
  const SuiteOptions& opts;

  [[nodiscard]] std::vector<double> alphas(const std::vector<double>& fallback) const {
    return opts.alphas.value_or(fallback);
  }
  [[nodiscard]] std::vector<double> xs(const std::vector<double>& fallback) const {
    return opts.xs.value_or(fallback);
  }
};

template <typename Fn>
CheckReport over_alphas(std::string name, const std::vector<double>& alphas, Fn&& fn) {
  std::vector<CheckReport> parts;
  parts.reserve(alphas.size());
  for (double a : alphas) {
    parts.push_back(fn(Alpha(a)));
  }
  return merge_reports(std::move(name), parts);
}

void residual_suite(const Grids& g, std::vector<CheckReport>& out) {
  const auto tol = g.opts.tolerance;
  const std::vector<double> wide = g.xs(linspace(0.5, 5.0, 9));
  const std::vector<double> narrow = g.xs(linspace(0.5, 3.0, 9));
  const std::vector<double> alphas = g.alphas(kResidualAlphas);

  for (double p : {0.0, 0.5, 1.0, 2.5, 3.0}) {
    out.push_back(over_alphas(fmt::format("residual:J:p={}", p), alphas, [&](Alpha a) {
      return residual_check(p, build_J(p, a), wide, tol);
    }));
  }
  for (double p : {0.5, 2.5}) {
    out.push_back(over_alphas(fmt::format("residual:Jneg:p={}", p), alphas, [&](Alpha a) {
      return residual_check(p, build_J_neg(p, a), wide, tol);
    }));
  }
  out.push_back(over_alphas("residual:y2zero", alphas, [&](Alpha a) {
    return residual_check(0.0, build_y2_zero(a), narrow, tol);
  }));
  for (int m : {1, 2}) {
    out.push_back(over_alphas(fmt::format("residual:K:m={}", m), alphas, [&](Alpha a) {
      return residual_check(m, build_K(m, a), narrow, tol);
    }));
  }
}

void identity_suite(const Grids& g, std::vector<CheckReport>& out) {
  const auto tol = g.opts.tolerance;
  const std::vector<double> xs = g.xs(kWideGrid);
  const std::vector<double> alphas = g.alphas(kIdentityAlphas);
  constexpr auto coeff = CheckMode::coefficients;
  constexpr auto point = CheckMode::pointwise;

  for (int p : {1, 2, 3}) {
    out.push_back(over_alphas(identity_name("i", p, coeff), alphas, [&](Alpha a) {
      return identity_check_i(p, a, xs, coeff);
    }));
    out.push_back(over_alphas(identity_name("i", p, point), alphas, [&](Alpha a) {
      return identity_check_i(p, a, xs, point, tol);
    }));
  }
  for (int p : {0, 1, 2, 3}) {
    out.push_back(over_alphas(identity_name("ii", p, coeff), alphas, [&](Alpha a) {
      return identity_check_ii(p, a, xs, coeff);
    }));
    out.push_back(over_alphas(identity_name("ii", p, point), alphas, [&](Alpha a) {
      return identity_check_ii(p, a, xs, point, tol);
    }));
  }
  for (int p : {1, 2, 3}) {
    out.push_back(over_alphas(identity_name("iii", p, point), alphas, [&](Alpha a) {
      return identity_check_iii(p, a, xs, tol);
    }));
  }
  for (int p : {0, 1, 2, 3}) {
    out.push_back(over_alphas(identity_name("iv", p, point), alphas, [&](Alpha a) {
      return identity_check_iv(p, a, xs, tol);
    }));
  }
  for (int p : {1, 2, 3}) {
    out.push_back(over_alphas(identity_name("v", p, point), alphas, [&](Alpha a) {
      return identity_check_v(p, a, xs, tol);
    }));
  }
  for (int m : {0, 1, 2, 3}) {
    out.push_back(over_alphas(fmt::format("identity_vi:m={}:coeff", m), alphas,
                              [&](Alpha a) { return identity_check_vi(m, a); }));
  }
}

void halforder_suite(const Grids& g, std::vector<CheckReport>& out) {
  const std::vector<double> xs = g.xs(kWideGrid);
  out.push_back(over_alphas("halforder", g.alphas(kIdentityAlphas), [&](Alpha a) {
    return half_order_check(a, xs, g.opts.tolerance);
  }));
}

void scaling_suite(const Grids& g, std::vector<CheckReport>& out) {
  const auto tol = g.opts.tolerance;
  for (int p : {0, 1, 2}) {
    out.push_back(over_alphas(fmt::format("oracle:p={}", p), g.alphas(kOracleAlphas),
                              [&](Alpha a) {
                                std::vector<double> xs;
                                for (double z : kOracleArguments) {
                                  xs.push_back(std::pow(z, 1.0 / a.value()));
                                }
                                return oracle_check(p, a, g.xs(xs), tol);
                              }));
  }
  const std::vector<double> xs = g.xs(linspace(0.5, 3.0, 11));
  for (double p : {0.0, 1.0, 2.0, 3.0, 0.5, 1.5}) {
    out.push_back(over_alphas(scaling_name(p), g.alphas(kScalingAlphas), [&](Alpha a) {
      return self_scaling_check(p, a, xs, tol);
    }));
  }
}

}  // namespace

bool is_suite_name(std::string_view name) noexcept {
  return std::find(std::begin(kSuiteNames), std::end(kSuiteNames), name) !=
         std::end(kSuiteNames);
}

std::vector<CheckReport> run_suite(std::string_view name, const SuiteOptions& opts) {
  if (!is_suite_name(name)) {
    throw std::invalid_argument(fmt::format("unknown check '{}'", name));
  }
  const Grids grids{opts};
  const bool all = name == "all";
  std::vector<CheckReport> out;
  if (all || name == "residual") residual_suite(grids, out);
  if (all || name == "identities") identity_suite(grids, out);
  if (all || name == "halforder") halforder_suite(grids, out);
  if (all || name == "scaling") scaling_suite(grids, out);
  return out;
}

}  // namespace confbessel
