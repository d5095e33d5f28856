#pragma once

#include <cstddef>
#include <vector>

#include "confbessel/fracseries.hpp"

namespace confbessel {

/// Tolerance used to decide whether a user-supplied order is an integer.
inline constexpr double kIntegerTolerance = 1e-9;

enum class OrderKind {
  zero,
  generic,
  // 2p is a positive integer but p is not: both Frobenius roots still give
  // independent first-kind series.
  two_p_integer,
  positive_integer,
};

class BesselOrder {
 public:
  static BesselOrder classify(double p);

  [[nodiscard]] double p() const noexcept { return p_; }
  [[nodiscard]] OrderKind kind() const noexcept { return kind_; }
  // Only meaningful for OrderKind::positive_integer.
  [[nodiscard]] int m() const noexcept { return m_; }

 private:
  BesselOrder(double p, OrderKind kind, int m) : p_(p), kind_(kind), m_(m) {}

  double p_;
  OrderKind kind_;
  int m_;
};

/// Roots of the indicial polynomial I(r) = alpha^2 (r (r - 1) + r - p^2).
struct IndicialData {
  double r1;
  double r2;
  double p;
  Alpha alpha;

  [[nodiscard]] double polynomial(double r) const noexcept {
    const double a2 = alpha.value() * alpha.value();
    return a2 * (r * (r - 1.0) + r - p * p);
  }
};

struct SecondSolutionParams {
  int m;
  double b0;
  double C;
};

/// Gamma function. Throws PoleError at 0, -1, -2, ...
double gamma(double z);

/// H_n = 1 + 1/2 + ... + 1/n, H_0 = 0.
double harmonic(std::size_t n);

IndicialData indicial(double p, Alpha alpha);

/// (J_alpha)_p for p >= 0, normalized with c_0 = 1 / (2^p Gamma(p + 1)).
FracSeries build_J(double p, Alpha alpha, std::size_t n_terms = kDefaultTerms);

/// (J_alpha)_{-p} for p > 0 not an integer. Integer orders go through
/// reduce_negative_integer_order.
FracSeries build_J_neg(double p, Alpha alpha, std::size_t n_terms = kDefaultTerms);

/// (J_alpha)_{-m} = (-1)^m (J_alpha)_m.
FracSeries reduce_negative_integer_order(int m, Alpha alpha, std::size_t n_terms = kDefaultTerms);

/// Logarithmic second solution of order zero:
///
///     (J_alpha)_0(x) ln x + (1/alpha) sum_{n>=1} (-1)^{n+1} H_n / (2^{2n} n!^2) x^{2n alpha}
LogSolution build_y2_zero(Alpha alpha, std::size_t n_terms = kDefaultTerms);

/// b_{2j} / b_0 for j = 0 .. m-1, the coefficients of the negative-power
/// block of (K_alpha)_m. For m = 1 this is just {1}.
std::vector<double> intermediate_b_chain(int m);

/// b_0 paired with the log coefficient C = -alpha b_0 / (2^{m-1} (m-1)!).
SecondSolutionParams second_solution_params(int m, Alpha alpha, double C = 1.0);

/// Which coefficient to use for the x^{m alpha} term of (K_alpha)_m.
enum class KMiddleTerm {
  // b_{2m} = -(1/(2 alpha)) c_0 H_m with c_0 = 1 / (2^m m!).
  derived,
  // Same with an extra 1/m! factor. Kept only to show that it does not solve
  // the equation for m >= 2.
  extra_factorial,
};

/// Integer-order second solution (K_alpha)_m with C = 1. The log part is
/// (J_alpha)_m; the plain part sits at offset -m and holds 2m + n_terms
/// coefficients.
LogSolution build_K(int m, Alpha alpha, std::size_t n_terms = kDefaultTerms,
                    KMiddleTerm middle = KMiddleTerm::derived);

}  // namespace confbessel
