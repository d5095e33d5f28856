#pragma once

#include <functional>

#include "confbessel/fracseries.hpp"

namespace confbessel {

struct DiffConfig {
  DiffConfig(Alpha alpha, double step_scale = 1e-6);

  Alpha alpha;
  // Central-difference step is step_scale * max(x, 1).
  double step_scale;
};

using RealFunction = std::function<double(double)>;

/// T_alpha f(x) = x^{1-alpha} f'(x), with f' from a central difference.
double conformable_diff_numeric(const RealFunction& f, double x, const DiffConfig& cfg);

/// T_alpha T_alpha f(x), composing two numeric first derivatives. The outer
/// stage uses a step 100x wider than the inner one so that rounding noise from
/// the inner difference is not amplified past the O(h^2) truncation error.
double conformable_diff2_numeric(const RealFunction& f, double x, const DiffConfig& cfg);

}  // namespace confbessel
