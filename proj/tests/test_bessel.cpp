#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "confbessel/bessel.hpp"
#include "confbessel/errors.hpp"
#include "confbessel/verify.hpp"
#include "oracles.hpp"

using namespace confbessel;
namespace frozen = confbessel::testing::frozen;

namespace {

double rel_diff(double a, double b) {
  const double scale = std::max(std::fabs(a), std::fabs(b));
  return scale == 0.0 ? 0.0 : std::fabs(a - b) / scale;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(a + (b - a) * i / (n - 1));
  return v;
}

}  // namespace

TEST_CASE("order classification") {
  CHECK(BesselOrder::classify(0.0).kind() == OrderKind::zero);
  CHECK(BesselOrder::classify(1e-12).kind() == OrderKind::zero);
  CHECK(BesselOrder::classify(0.3).kind() == OrderKind::generic);
  CHECK(BesselOrder::classify(0.5).kind() == OrderKind::two_p_integer);
  CHECK(BesselOrder::classify(2.5).kind() == OrderKind::two_p_integer);
  CHECK(BesselOrder::classify(-0.5).kind() == OrderKind::generic);
  CHECK(BesselOrder::classify(-2.0).kind() == OrderKind::generic);

  const BesselOrder three = BesselOrder::classify(3.0 + 1e-11);
  CHECK(three.kind() == OrderKind::positive_integer);
  CHECK(three.m() == 3);
  CHECK(BesselOrder::classify(3.0 + 1e-6).kind() == OrderKind::generic);
  CHECK_THROWS_AS(BesselOrder::classify(NAN), DomainError);
}

TEST_CASE("gamma") {
  CHECK(confbessel::gamma(1.0) == 1.0);
  CHECK(confbessel::gamma(5.0) == 24.0);
  CHECK(confbessel::gamma(1.5) == doctest::Approx(std::sqrt(std::numbers::pi) / 2).epsilon(1e-15));
  CHECK(confbessel::gamma(1.5) == doctest::Approx(0.8862269254527580).epsilon(1e-15));
  CHECK(confbessel::gamma(-0.5) == doctest::Approx(-2.0 * std::sqrt(std::numbers::pi)).epsilon(1e-14));

  struct Case {
    double z;
    double value;
  };
  // 20-digit reference values.
  const Case cases[] = {{0.1, 9.5135076986687312858},    {-19.5, 5.8110459775022364864e-18},
                        {49.5, 8.6676018431352723453e+61}, {-0.999, -1000.4241966812758547},
                        {-5.25, 0.02403364606908169999},   {2.5, 1.3293403881791370205},
                        {30.3, 2.4442850291542563295e+31}};
  for (const Case& c : cases) {
    CAPTURE(c.z);
    CHECK(rel_diff(confbessel::gamma(c.z), c.value) <= 1e-12);
  }

  for (double pole : {0.0, -1.0, -2.0, -17.0}) {
    CHECK_THROWS_AS(confbessel::gamma(pole), PoleError);
  }
}

TEST_CASE("property: gamma recurrence and reflection on [-20, 50]") {
  testing::Generator gen(7);
  for (int i = 0; i < 500; ++i) {
    const double z = gen.uniform(-20.0, 49.0);
    if (std::fabs(z - std::round(z)) < 1e-3) continue;
    CAPTURE(z);
    CHECK(rel_diff(confbessel::gamma(z + 1.0), z * confbessel::gamma(z)) <= 1e-12);
    if (std::fabs(z) < 10.0) {
      const double reflected = std::numbers::pi / std::sin(std::numbers::pi * z);
      CHECK(rel_diff(confbessel::gamma(z) * confbessel::gamma(1.0 - z), reflected) <= 1e-11);
    }
  }
}

TEST_CASE("harmonic numbers") {
  CHECK(harmonic(0) == 0.0);
  CHECK(harmonic(1) == 1.0);
  CHECK(harmonic(2) == 1.5);
  CHECK(harmonic(3) == doctest::Approx(11.0 / 6.0).epsilon(1e-16));
}

TEST_CASE("indicial roots") {
  const Alpha a(0.6);
  const IndicialData zero = indicial(0.0, a);
  CHECK(zero.r1 == 0.0);
  CHECK(zero.r2 == 0.0);
  const IndicialData half = indicial(0.5, a);
  CHECK(half.r1 == 0.5);
  CHECK(half.r2 == -0.5);
  const IndicialData two = indicial(2.0, a);
  CHECK(two.r1 == 2.0);
  CHECK(two.r2 == -2.0);
  CHECK(two.polynomial(1.0) == doctest::Approx(0.36 * (1.0 - 4.0)));
  CHECK_THROWS_AS(indicial(-1.0, a), DomainError);
}

TEST_CASE("property: indicial polynomial vanishes at both roots") {
  for (double alpha : {0.1, 0.45, 0.8, 1.0}) {
    for (double p : {0.0, 0.25, 0.5, 1.0, 2.7, 3.0, 10.0}) {
      const IndicialData d = indicial(p, Alpha(alpha));
      CHECK(std::fabs(d.polynomial(d.r1)) <= 1e-13 * (1 + p * p));
      CHECK(std::fabs(d.polynomial(d.r2)) <= 1e-13 * (1 + p * p));
      CHECK(d.r1 >= d.r2);
    }
  }
}

TEST_CASE("build_J") {
  SUBCASE("order zero coefficients") {
    const FracSeries j0 = build_J(0.0, Alpha(0.3));
    CHECK(j0.offset() == 0.0);
    CHECK(j0.size() == kDefaultTerms);
    CHECK(j0.coeff(0) == 1.0);
    CHECK(j0.coeff(2) == -0.25);
    CHECK(j0.coeff(4) == 1.0 / 64.0);
  }
  SUBCASE("half order closed form") {
    for (double alpha : {0.3, 0.5, 1.0}) {
      const FracSeries j = build_J(0.5, Alpha(alpha));
      for (double x : {0.5, 1.0, 3.0, 7.0}) {
        const double t = std::pow(x, alpha);
        CHECK(std::fabs(eval_series(j, x).value - std::sqrt(2.0 / (std::numbers::pi * t)) * std::sin(t)) <= 1e-13);
      }
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(build_J(-0.5, Alpha(1.0)), DomainError);
    CHECK_THROWS_AS(build_J(1.0, Alpha(1.0), 0), DomainError);
  }
}

TEST_CASE("property: first-kind coefficient structure") {
  for (double p : {0.0, 0.5, 1.0, 1.7, 2.5, 3.0, 6.0}) {
    const FracSeries j = build_J(p, Alpha(0.5), 80);
    CAPTURE(p);
    CHECK(j.coeff(0) == doctest::Approx(1.0 / (std::pow(2.0, p) * std::tgamma(p + 1.0))).epsilon(1e-14));
    for (std::size_t k = 1; k < j.size(); k += 2) {
      CHECK(j.coeff(k) == 0.0);
    }
    for (std::size_t n = 0; 2 * n + 2 < j.size(); ++n) {
      const double ratio = j.coeff(2 * n + 2) / j.coeff(2 * n);
      const double nn = static_cast<double>(n);
      CHECK(ratio == doctest::Approx(-1.0 / (4.0 * (nn + 1.0) * (nn + 1.0 + p))).epsilon(1e-15));
      // c_{2n} (2n)(2n + 2p) + c_{2n-2} = 0.
      const double m = 2.0 * (nn + 1.0);
      const double lhs = j.coeff(2 * n + 2) * m * (m + 2.0 * p) + j.coeff(2 * n);
      CHECK(std::fabs(lhs) <= 1e-15 * std::fabs(j.coeff(2 * n)));
    }
  }
}

TEST_CASE("property: first kind depends on x only through x^alpha") {
  const Alpha one(1.0);
  for (double p : {0.0, 0.5, 1.0, 2.3}) {
    const FracSeries classical = build_J(p, one);
    for (double alpha : {0.2, 0.55, 0.9}) {
      const FracSeries j = build_J(p, Alpha(alpha));
      for (double x : {0.3, 1.0, 2.0, 6.0}) {
        const double lhs = eval_series(j, x).value;
        const double rhs = eval_series(classical, std::pow(x, alpha)).value;
        CHECK(std::fabs(lhs - rhs) <= 1e-12 * std::max(1.0, std::fabs(rhs)));
      }
    }
  }
}

TEST_CASE("build_J_neg") {
  SUBCASE("half order closed form") {
    for (double alpha : {0.4, 1.0}) {
      const FracSeries j = build_J_neg(0.5, Alpha(alpha));
      CHECK(j.offset() == -0.5);
      for (double x : {0.5, 2.0, 6.0}) {
        const double t = std::pow(x, alpha);
        CHECK(std::fabs(eval_series(j, x).value - std::sqrt(2.0 / (std::numbers::pi * t)) * std::cos(t)) <= 1e-13);
      }
    }
  }
  SUBCASE("integer order is rejected") {
    CHECK_THROWS_AS(build_J_neg(1.0, Alpha(1.0)), CaseError);
    CHECK_THROWS_AS(build_J_neg(4.0, Alpha(0.5)), CaseError);
    CHECK_THROWS_AS(build_J_neg(0.0, Alpha(0.5)), DomainError);
  }
  SUBCASE("p = 1/3 leading coefficients") {
    const FracSeries j = build_J_neg(1.0 / 3.0, Alpha(1.0));
    const double c0 = 0.93043671692922942713;  // 2^{1/3} / Gamma(2/3)
    CHECK(j.coeff(0) == doctest::Approx(c0).epsilon(1e-14));
    CHECK(j.coeff(1) == 0.0);
    CHECK(j.coeff(2) == doctest::Approx(-c0 / (8.0 / 3.0)).epsilon(1e-14));
  }
  SUBCASE("recurrence with the minus sign") {
    const double p = 2.5;
    const FracSeries j = build_J_neg(p, Alpha(0.7));
    for (std::size_t n = 2; n < j.size(); n += 2) {
      const double nn = static_cast<double>(n);
      CHECK(j.coeff(n) == doctest::Approx(-j.coeff(n - 2) / (nn * (nn - 2.0 * p))).epsilon(1e-15));
    }
  }
}

TEST_CASE("reduce_negative_integer_order") {
  const Alpha a(0.6);
  const FracSeries j1 = build_J(1.0, a);
  const FracSeries j2 = build_J(2.0, a);
  const FracSeries r1 = reduce_negative_integer_order(1, a);
  const FracSeries r2 = reduce_negative_integer_order(2, a);
  const FracSeries r0 = reduce_negative_integer_order(0, a);
  for (std::size_t n = 0; n < j1.size(); ++n) {
    CHECK(r1.coeff(n) == -j1.coeff(n));
    CHECK(r2.coeff(n) == j2.coeff(n));
    CHECK(r0.coeff(n) == build_J(0.0, a).coeff(n));
  }
  CHECK(r1.offset() == 1.0);
  CHECK_THROWS_AS(reduce_negative_integer_order(-1, a), DomainError);
}

TEST_CASE("build_y2_zero") {
  for (double alpha : {0.25, 0.5, 1.0}) {
    const LogSolution y2 = build_y2_zero(Alpha(alpha));
    const FracSeries& plain = y2.plain_part();
    CHECK(plain.offset() == 0.0);
    CHECK(plain.coeff(0) == 0.0);
    CHECK(plain.coeff(2) == doctest::Approx(1.0 / (4.0 * alpha)).epsilon(1e-15));
    CHECK(plain.coeff(4) == doctest::Approx(-3.0 / (128.0 * alpha)).epsilon(1e-15));
    CHECK(plain.coeff(6) == doctest::Approx((1.0 + 0.5 + 1.0 / 3.0) / (alpha * 4 * 16 * 36)).epsilon(1e-15));
    CHECK(y2.log_part().coeff(2) == -0.25);
  }
  SUBCASE("alpha instance is the rescaled classical one") {
    const LogSolution classical = build_y2_zero(Alpha(1.0));
    for (double alpha : {0.3, 0.5, 0.8}) {
      const LogSolution y2 = build_y2_zero(Alpha(alpha));
      for (double x : linspace(0.5, 3.0, 11)) {
        const double lhs = eval_log_solution(y2, x).value;
        const double rhs = eval_log_solution(classical, std::pow(x, alpha)).value / alpha;
        CHECK(std::fabs(lhs - rhs) <= 1e-10);
      }
    }
  }
}

TEST_CASE("intermediate_b_chain") {
  CHECK(intermediate_b_chain(1) == std::vector<double>{1.0});
  const std::vector<double> two = intermediate_b_chain(2);
  CHECK(two[0] == 1.0);
  CHECK(two[1] == 0.25);
  const std::vector<double> three = intermediate_b_chain(3);
  CHECK(three[0] == 1.0);
  CHECK(three[2] == doctest::Approx(1.0 / 64.0).epsilon(1e-16));
  // b_{2j} / b_0 = 1 / (2^{2j} j! (m-1)(m-2)...(m-j)).
  const int m = 6;
  const std::vector<double> six = intermediate_b_chain(m);
  for (int j = 0; j < m; ++j) {
    double denom = std::ldexp(std::tgamma(j + 1.0), 2 * j);
    for (int k = 1; k <= j; ++k) denom *= (m - k);
    CHECK(six[j] == doctest::Approx(1.0 / denom).epsilon(1e-15));
  }
  CHECK_THROWS_AS(intermediate_b_chain(0), CaseError);
}

TEST_CASE("second solution parameters") {
  for (int m : {1, 2, 3, 5}) {
    for (double alpha : {0.3, 1.0}) {
      const SecondSolutionParams params = second_solution_params(m, Alpha(alpha), 1.0);
      const double expected_C = -alpha * params.b0 / (std::pow(2.0, m - 1) * std::tgamma(m));
      CHECK(params.C == doctest::Approx(expected_C).epsilon(1e-15));
      CHECK(params.m == m);
    }
  }
  // alpha b_0 = -C / (2^0 0!) at m = 1.
  const SecondSolutionParams one = second_solution_params(1, Alpha(0.4), 2.0);
  CHECK(0.4 * one.b0 == doctest::Approx(-2.0));
}

TEST_CASE("build_K") {
  SUBCASE("m = 1 leading term is -1/(alpha x^alpha)") {
    for (double alpha : {0.5, 1.0}) {
      const LogSolution k = build_K(1, Alpha(alpha));
      CHECK(k.plain_part().offset() == -1.0);
      CHECK(k.plain_part().coeff(0) == doctest::Approx(-1.0 / alpha).epsilon(1e-15));
    }
  }
  SUBCASE("log part is J_m") {
    const LogSolution k = build_K(2, Alpha(0.7));
    const FracSeries j2 = build_J(2.0, Alpha(0.7));
    for (std::size_t n = 0; n < j2.size(); ++n) CHECK(k.log_part().coeff(n) == j2.coeff(n));
  }
  SUBCASE("alpha = 1 matches the classical values") {
    const Alpha one(1.0);
    CHECK(eval_log_solution(build_K(1, one), 2.0).value == doctest::Approx(frozen::kK1At2).epsilon(1e-13));
    CHECK(eval_log_solution(build_K(2, one), 2.0).value == doctest::Approx(frozen::kK2At2).epsilon(1e-13));
    CHECK(eval_log_solution(build_K(1, one), 0.5).value == doctest::Approx(frozen::kK1AtHalf).epsilon(1e-13));
    CHECK(eval_log_solution(build_K(2, one), 1.5).value == doctest::Approx(frozen::kK2At1p5).epsilon(1e-13));
  }
  SUBCASE("alpha instance is the rescaled classical one") {
    for (int m : {1, 2, 3}) {
      const LogSolution classical = build_K(m, Alpha(1.0));
      for (double alpha : {0.3, 0.5, 0.8}) {
        const LogSolution k = build_K(m, Alpha(alpha));
        for (double x : linspace(0.5, 3.0, 11)) {
          const double lhs = eval_log_solution(k, x).value;
          const double rhs = eval_log_solution(classical, std::pow(x, alpha)).value / alpha;
          CHECK(std::fabs(lhs - rhs) <= 1e-10);
        }
      }
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(build_K(0, Alpha(1.0)), CaseError);
    CHECK_THROWS_AS(build_K(-2, Alpha(1.0)), CaseError);
  }
}

TEST_CASE("every constructed solution satisfies the equation") {
  const std::vector<double> wide = linspace(0.5, 5.0, 9);
  const std::vector<double> narrow = linspace(0.5, 3.0, 9);
  for (double alpha : {0.4, 0.7, 1.0}) {
    const Alpha a(alpha);
    for (double p : {0.0, 0.5, 1.0, 2.5, 3.0}) {
      CHECK(residual_check(p, build_J(p, a), wide).passed);
    }
    for (double p : {0.5, 2.5}) {
      CHECK(residual_check(p, build_J_neg(p, a), wide).passed);
    }
    CHECK(residual_check(0.0, build_y2_zero(a), narrow).passed);
    for (int m : {1, 2, 3}) {
      CHECK(residual_check(m, build_K(m, a), narrow).passed);
    }
  }
}

TEST_CASE("the extra 1/m! reading of the middle K term is not a solution") {
  const Alpha one(1.0);
  const std::vector<double> x2{2.0};
  // For m = 1 the two readings coincide.
  const LogSolution k1 = build_K(1, one, kDefaultTerms, KMiddleTerm::extra_factorial);
  CHECK(residual_check(1.0, k1, x2).passed);

  for (int m : {2, 3}) {
    const CheckReport adopted = residual_check(m, build_K(m, one), x2);
    const CheckReport alternative =
        residual_check(m, build_K(m, one, kDefaultTerms, KMiddleTerm::extra_factorial), x2);
    CAPTURE(m);
    CHECK(adopted.passed);
    CHECK_FALSE(alternative.passed);
    CHECK(alternative.max_rel_err >= 1e3 * tolerances::kResidualLog);
  }
}
