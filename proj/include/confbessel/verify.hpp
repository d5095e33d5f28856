#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "confbessel/fracseries.hpp"

namespace confbessel {

enum class ErrorMode { absolute, relative };

std::string_view to_string(ErrorMode mode) noexcept;

struct GridPoint {
  double p;
  double alpha;
  // Empty for coefficient-level checks, which do not sample x.
  std::optional<double> x;
};

struct CheckReport {
  std::string check_name;
  std::vector<GridPoint> grid;
  double max_abs_err = 0.0;
  double max_rel_err = 0.0;
  double tolerance = 0.0;
  ErrorMode mode = ErrorMode::absolute;
  bool passed = false;
};

/// Identity checks for integer orders can be run at the level of aligned
/// coefficients or by evaluating both sides at sample points.
enum class CheckMode { coefficients, pointwise };

namespace tolerances {
inline constexpr double kResidualSeries = 1e-8;
inline constexpr double kResidualLog = 1e-7;
inline constexpr double kPointwise = 1e-9;
inline constexpr double kCoefficient = 1e-14;
inline constexpr double kHalfOrder = 1e-10;
inline constexpr double kOracle = 1e-9;
inline constexpr double kScaling = 1e-10;
inline constexpr std::size_t kCoefficientCount = 30;
}  // namespace tolerances

using Solution = std::variant<FracSeries, LogSolution>;

/// Left side of the conformable Bessel equation
///
///     x^{2a} T T y + a x^a T y + a^2 (x^{2a} - p^2) y
///
/// with T y and T T y from exact termwise differentiation, evaluated at each
/// grid point. The error reported is |residual| / (1 + |y|), in relative mode.
CheckReport residual_check(double p, const Solution& solution, std::span<const double> xs,
                           std::optional<double> tolerance = std::nullopt);

/// T(x^{pa} J_p) = a x^{pa} J_{p-1}, p >= 1.
CheckReport identity_check_i(int p, Alpha alpha, std::span<const double> xs, CheckMode mode,
                             std::optional<double> tolerance = std::nullopt);

/// T(x^{-pa} J_p) = -a x^{-pa} J_{p+1}, p >= 0.
CheckReport identity_check_ii(int p, Alpha alpha, std::span<const double> xs, CheckMode mode,
                              std::optional<double> tolerance = std::nullopt);

/// T J_p = a J_{p-1} - (a p / x^a) J_p, p >= 1. Pointwise only.
CheckReport identity_check_iii(int p, Alpha alpha, std::span<const double> xs,
                               std::optional<double> tolerance = std::nullopt);

/// T J_p = (a p / x^a) J_p - a J_{p+1}, p >= 0. Pointwise only.
CheckReport identity_check_iv(int p, Alpha alpha, std::span<const double> xs,
                              std::optional<double> tolerance = std::nullopt);

/// J_{p+1} = (2p / x^a) J_p - J_{p-1}, p >= 1. Pointwise only.
CheckReport identity_check_v(int p, Alpha alpha, std::span<const double> xs,
                             std::optional<double> tolerance = std::nullopt);

/// J_{-m} = (-1)^m J_m, coefficient-wise. Compares the reduction against
/// (-1)^m J_m and against the limiting series sum_{n>=m} (-1)^n / (n! Gamma(n-m+1))
/// (x^a/2)^{2n-m}, whose first m terms vanish because 1/Gamma has zeros at
/// the poles.
CheckReport identity_check_vi(int m, Alpha alpha,
                              std::optional<double> tolerance = std::nullopt);

/// J_{1/2} and J_{-1/2} against sqrt(2 / (pi x^a)) sin(x^a) and ... cos(x^a).
CheckReport half_order_check(Alpha alpha, std::span<const double> xs,
                             std::optional<double> tolerance = std::nullopt);

/// J_n(z) = (1/pi) int_0^pi cos(n t - z sin t) dt by the trapezoidal rule.
/// Independent of the series code.
double classical_oracle_J(int n, double z, int panels = 1024);

/// J_p series at alpha vs classical_oracle_J(p, x^a), absolute error. p >= 0 integer.
CheckReport oracle_check(int p, Alpha alpha, std::span<const double> xs,
                         std::optional<double> tolerance = std::nullopt);

/// Solution at alpha vs (1/alpha) times the alpha = 1 instance at x^a (no
/// factor for first-kind series). Integer p compares the logarithmic second
/// solution (y2 for p = 0, K_p otherwise); other p compare J_p and J_{-p}.
CheckReport self_scaling_check(double p, Alpha alpha, std::span<const double> xs,
                               std::optional<double> tolerance = std::nullopt);

/// oracle_check (integer p only) followed by self_scaling_check.
std::vector<CheckReport> scaling_check(double p, Alpha alpha, std::span<const double> xs,
                                       std::optional<double> tolerance = std::nullopt);

/// Folds several reports into one: grids concatenated, errors maxed, passed
/// only if all passed. Tolerance and mode are taken from the first report.
CheckReport merge_reports(std::string name, std::span<const CheckReport> reports);

/// Named suites with the default grids.
struct SuiteOptions {
  // Overrides the absolute / residual tolerance of every check that is not
  // coefficient-wise.
  std::optional<double> tolerance;
  // Restrict the default grids.
  std::optional<std::vector<double>> alphas;
  std::optional<std::vector<double>> xs;
};

inline constexpr std::string_view kSuiteNames[] = {"residual", "identities", "halforder",
                                                   "scaling", "all"};

bool is_suite_name(std::string_view name) noexcept;

/// Throws std::invalid_argument for an unknown suite name.
std::vector<CheckReport> run_suite(std::string_view name, const SuiteOptions& opts = {});

}  // namespace confbessel
