#include "confbessel/fracseries.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "confbessel/compensated_sum.hpp"
#include "confbessel/errors.hpp"

namespace confbessel {

namespace {

bool near_integer(double v) noexcept {
  return std::fabs(v - std::round(v)) <= kOffsetTolerance;
}

void require_positive(double x) {
  if (!(x > 0.0)) {
    throw DomainError(fmt::format("x must be > 0, got {}", x));
  }
}

void require_same_alpha(const FracSeries& a, const FracSeries& b) {
  if (a.alpha() != b.alpha()) {
    throw AlignmentError(fmt::format("alpha mismatch: {} vs {}", a.alpha().value(),
                                     b.alpha().value()));
  }
}

}  // namespace

Alpha::Alpha(double value) : value_(value) {
  if (!(value > 0.0 && value <= 1.0)) {
    throw DomainError(fmt::format("alpha must lie in (0, 1], got {}", value));
  }
}

FracSeries::FracSeries(Alpha alpha, double offset, std::vector<double> coeffs)
    : alpha_(alpha), offset_(offset), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) {
    throw std::invalid_argument("FracSeries needs at least one coefficient");
  }
  if (!std::isfinite(offset_)) {
    throw std::invalid_argument("FracSeries offset must be finite");
  }
  for (std::size_t n = 0; n < coeffs_.size(); ++n) {
    if (!std::isfinite(coeffs_[n])) {
      throw std::invalid_argument(fmt::format("coefficient {} is not finite", n));
    }
  }
}

FracSeries FracSeries::monomial(Alpha alpha, std::size_t k, double c) {
  std::vector<double> coeffs(k + 1, 0.0);
  coeffs[k] = c;
  return FracSeries(alpha, 0.0, std::move(coeffs));
}

FracSeries FracSeries::zero(Alpha alpha, double offset, std::size_t length) {
  return FracSeries(alpha, offset, std::vector<double>(std::max<std::size_t>(length, 1), 0.0));
}

FracSeries FracSeries::trimmed() const {
  std::size_t len = coeffs_.size();
  while (len > 1 && coeffs_[len - 1] == 0.0) {
    --len;
  }
  return FracSeries(alpha_, offset_, std::vector<double>(coeffs_.begin(), coeffs_.begin() + len));
}

bool offsets_equal(double a, double b) noexcept {
  return std::fabs(a - b) <= kOffsetTolerance;
}

FracSeries series_add(const FracSeries& a, const FracSeries& b) {
  require_same_alpha(a, b);
  if (!offsets_equal(a.offset(), b.offset())) {
    throw AlignmentError(
        fmt::format("offset mismatch: {} vs {} (align first)", a.offset(), b.offset()));
  }
  std::vector<double> out(std::max(a.size(), b.size()));
  for (std::size_t n = 0; n < out.size(); ++n) {
    out[n] = a.coeff(n) + b.coeff(n);
  }
  return FracSeries(a.alpha(), a.offset(), std::move(out));
}

FracSeries series_scale(const FracSeries& a, double k) {
  if (!std::isfinite(k)) {
    throw std::invalid_argument("scale factor must be finite");
  }
  std::vector<double> out(a.coeffs().begin(), a.coeffs().end());
  for (double& c : out) {
    c *= k;
  }
  return FracSeries(a.alpha(), a.offset(), std::move(out));
}

FracSeries series_shift(const FracSeries& a, double dr) {
  if (dr >= -kOffsetTolerance && near_integer(dr)) {
    const auto steps = static_cast<std::size_t>(std::llround(dr));
    std::vector<double> out(steps, 0.0);
    out.insert(out.end(), a.coeffs().begin(), a.coeffs().end());
    return FracSeries(a.alpha(), a.offset(), std::move(out));
  }
  return FracSeries(a.alpha(), a.offset() + dr,
                    std::vector<double>(a.coeffs().begin(), a.coeffs().end()));
}

FracSeries align_offset(const FracSeries& a, double target) {
  const double gap = a.offset() - target;
  if (gap < -kOffsetTolerance || !near_integer(gap)) {
    throw AlignmentError(fmt::format(
        "cannot lower offset {} to {}: difference must be a non-negative integer", a.offset(),
        target));
  }
  const auto steps = static_cast<std::size_t>(std::llround(gap));
  std::vector<double> out(steps, 0.0);
  out.insert(out.end(), a.coeffs().begin(), a.coeffs().end());
  return FracSeries(a.alpha(), target, std::move(out));
}

FracSeries conformable_diff_exact(const FracSeries& a) {
  const double alpha = a.alpha().value();
  std::vector<double> out(a.size());
  for (std::size_t n = 0; n < out.size(); ++n) {
    out[n] = alpha * (static_cast<double>(n) + a.offset()) * a.coeff(n);
  }
  return FracSeries(a.alpha(), a.offset() - 1.0, std::move(out));
}

EvalResult eval_series(const FracSeries& a, double x, EvalOptions opts) {
  require_positive(x);
  const double t = std::pow(x, a.alpha().value());
  CompensatedSum sum;
  EvalResult result;
  for (std::size_t n = 0; n < a.size(); ++n) {
    result.terms_used = n + 1;
    const double c = a.coeff(n);
    if (c == 0.0) {
      continue;
    }
    const double term = c * std::pow(t, static_cast<double>(n) + a.offset());
    sum += term;
    result.tail_estimate = std::fabs(term);
    if (opts.early_stop && std::fabs(term) < opts.rel_stop * std::fabs(sum.value())) {
      break;
    }
  }
  result.value = sum.value();
  return result;
}

LogSolution::LogSolution(FracSeries log_part, FracSeries plain_part)
    : log_part_(std::move(log_part)), plain_part_(std::move(plain_part)) {
  require_same_alpha(log_part_, plain_part_);
}

EvalResult eval_log_solution(const LogSolution& s, double x, EvalOptions opts) {
  require_positive(x);
  const EvalResult log_eval = eval_series(s.log_part(), x, opts);
  const EvalResult plain_eval = eval_series(s.plain_part(), x, opts);
  const double ln_x = std::log(x);
  return EvalResult{
      .value = log_eval.value * ln_x + plain_eval.value,
      .terms_used = log_eval.terms_used + plain_eval.terms_used,
      .tail_estimate = log_eval.tail_estimate * std::fabs(ln_x) + plain_eval.tail_estimate,
  };
}

LogSolution conformable_diff_exact(const LogSolution& s) {
  const FracSeries& log_part = s.log_part();
  // L * x^{-alpha} keeps the coefficients and lowers the offset by one.
  FracSeries from_log = series_shift(log_part, -1.0);
  FracSeries plain_diff = conformable_diff_exact(s.plain_part());
  const double target = std::min(from_log.offset(), plain_diff.offset());
  FracSeries plain =
      series_add(align_offset(from_log, target), align_offset(plain_diff, target));
  return LogSolution(conformable_diff_exact(log_part), std::move(plain));
}

}  // namespace confbessel
