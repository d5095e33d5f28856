#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace confbessel {

/// Order of the conformable derivative, validated to lie in (0, 1].
class Alpha {
 public:
  explicit Alpha(double value);

  [[nodiscard]] double value() const noexcept { return value_; }

  friend bool operator==(Alpha, Alpha) = default;

 private:
  double value_;
};

/// Offsets closer than this are considered equal.
inline constexpr double kOffsetTolerance = 1e-12;

/// Default number of stored coefficients for constructed solutions.
inline constexpr std::size_t kDefaultTerms = 60;

struct EvalResult {
  double value = 0.0;
  std::size_t terms_used = 0;
  // Magnitude of the last non-zero term included in the sum.
  double tail_estimate = 0.0;
};

struct EvalOptions {
  // Stop once a non-zero term falls below rel_stop * |partial sum|.
  bool early_stop = true;
  double rel_stop = 1e-18;
};

/// Truncated fractional power series
///
///     sum_{n=0}^{N} c_n x^{(n + r) alpha}
///
/// with real offset r. Coefficients are stored densely by n, zeros included.
/// Instances are immutable.
class FracSeries {
 public:
  FracSeries(Alpha alpha, double offset, std::vector<double> coeffs);

  /// c x^{k alpha}, stored at offset 0 with k leading zeros.
  static FracSeries monomial(Alpha alpha, std::size_t k, double c = 1.0);

  /// All-zero series of the given length.
  static FracSeries zero(Alpha alpha, double offset, std::size_t length = 1);

  [[nodiscard]] Alpha alpha() const noexcept { return alpha_; }
  [[nodiscard]] double offset() const noexcept { return offset_; }
  [[nodiscard]] std::span<const double> coeffs() const noexcept { return coeffs_; }
  [[nodiscard]] std::size_t size() const noexcept { return coeffs_.size(); }

  /// c_n, or zero past the stored length.
  [[nodiscard]] double coeff(std::size_t n) const noexcept {
    return n < coeffs_.size() ? coeffs_[n] : 0.0;
  }

  /// Drops trailing zeros, keeping at least one coefficient. Offset unchanged.
  [[nodiscard]] FracSeries trimmed() const;

 private:
  Alpha alpha_;
  double offset_;
  std::vector<double> coeffs_;
};

bool offsets_equal(double a, double b) noexcept;

FracSeries series_add(const FracSeries& a, const FracSeries& b);
FracSeries series_scale(const FracSeries& a, double k);

/// Multiplies the represented function by x^{dr alpha}.
///
/// A non-negative integer dr prepends dr zero coefficients and keeps the
/// offset. Any other dr (negative or fractional) moves the offset by dr and
/// keeps the coefficients.
FracSeries series_shift(const FracSeries& a, double dr);

/// Re-expresses a at a lower offset by prepending zeros. Same function.
/// a.offset() - target must be a non-negative integer.
FracSeries align_offset(const FracSeries& a, double target);

/// Termwise conformable derivative: c_n x^{(n+r)a} -> a (n+r) c_n x^{(n+r-1)a}.
FracSeries conformable_diff_exact(const FracSeries& a);

EvalResult eval_series(const FracSeries& a, double x, EvalOptions opts = {});

/// log_part(x) * ln x + plain_part(x), for x > 0.
class LogSolution {
 public:
  LogSolution(FracSeries log_part, FracSeries plain_part);

  [[nodiscard]] const FracSeries& log_part() const noexcept { return log_part_; }
  [[nodiscard]] const FracSeries& plain_part() const noexcept { return plain_part_; }
  [[nodiscard]] Alpha alpha() const noexcept { return log_part_.alpha(); }

 private:
  FracSeries log_part_;
  FracSeries plain_part_;
};

EvalResult eval_log_solution(const LogSolution& s, double x, EvalOptions opts = {});

/// Conformable derivative of L ln x + P using T(ln x) = x^{-alpha}:
///
///     T(L ln x + P) = (T L) ln x + (L x^{-alpha} + T P).
///
/// The plain part of the result sits at the lower of the two offsets, so the
/// offsets of L and P must differ by an integer.
LogSolution conformable_diff_exact(const LogSolution& s);

}  // namespace confbessel
