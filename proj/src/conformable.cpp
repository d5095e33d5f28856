#include "confbessel/conformable.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "confbessel/errors.hpp"

namespace confbessel {

namespace {

constexpr double kOuterStepFactor = 100.0;

double checked(const RealFunction& f, double x) {
  const double v = f(x);
  if (!std::isfinite(v)) {
    throw EvaluationError(fmt::format("function returned {} at x = {}", v, x));
  }
  return v;
}

double diff_with_step(const RealFunction& f, double x, double alpha, double step_scale) {
  if (!(x > 0.0)) {
    throw DomainError(fmt::format("conformable derivative needs x > 0, got {}", x));
  }
  const double h = step_scale * std::max(x, 1.0);
  const double slope = (checked(f, x + h) - checked(f, x - h)) / (2.0 * h);
  return std::pow(x, 1.0 - alpha) * slope;
}

}  // namespace

DiffConfig::DiffConfig(Alpha alpha_in, double step_scale_in)
    : alpha(alpha_in), step_scale(step_scale_in) {
  if (!(step_scale > 0.0) || !std::isfinite(step_scale)) {
    throw DomainError(fmt::format("step_scale must be > 0, got {}", step_scale));
  }
}

double conformable_diff_numeric(const RealFunction& f, double x, const DiffConfig& cfg) {
  return diff_with_step(f, x, cfg.alpha.value(), cfg.step_scale);
}

double conformable_diff2_numeric(const RealFunction& f, double x, const DiffConfig& cfg) {
  const double alpha = cfg.alpha.value();
  const double inner_scale = cfg.step_scale;
  const RealFunction inner = [&](double s) { return diff_with_step(f, s, alpha, inner_scale); };
  return diff_with_step(inner, x, alpha, inner_scale * kOuterStepFactor);
}

}  // namespace confbessel
