#include <cmath>
#include <numbers>
#include <stdexcept>

#include <doctest.h>

#include "goldens.hpp"
#include "hyperred/quadrature.hpp"

using namespace hyperred;

namespace {

double rel(double x, double y) { return std::abs(x - y) / std::max(std::abs(x), std::abs(y)); }

}  // namespace

TEST_CASE("gauss-legendre on smooth integrands") {
  const IntegralEstimate cubic = gauss_legendre_adaptive([](double x) { return x * x * x; }, 0, 2);
  CHECK(cubic.converged);
  CHECK(rel(cubic.value, 4.0) <= 1e-14);
  const IntegralEstimate osc = gauss_legendre_adaptive(
      [](double t) { return std::sin(10 * t) * std::exp(-t); }, 0, std::numbers::pi);
  CHECK(osc.converged);
  CHECK(rel(osc.value, goldens::integral_oscillatory) <= 1e-11);
  CHECK(osc.error_estimate <= 1e-10);
}

TEST_CASE("tanh-sinh on endpoint singularities") {
  const IntegralEstimate r = double_exponential(
      [](double t) { return 1.0 / std::sqrt(t) + std::log(t); }, 0.0, 1.0);
  CHECK(r.converged);
  CHECK(std::abs(r.value - goldens::integral_sqrt_singular) <= 1e-11);
  const IntegralEstimate beta =
      double_exponential([](double t) { return std::sqrt((1 - t) / t); }, 0.0, 1.0);
  CHECK(rel(beta.value, std::numbers::pi / 2) <= 1e-12);
}

TEST_CASE("non-convergence is reported") {
  QuadratureSpec tight;
  tight.max_refinement = 1;
  tight.rel_tol = 1e-15;
  tight.abs_tol = 0.0;
  const IntegralEstimate r =
      gauss_legendre_adaptive([](double t) { return 1.0 / std::sqrt(t); }, 0.0, 1.0, tight);
  CHECK_FALSE(r.converged);
}

TEST_CASE("integrand definitions") {
  const IntegrandDefinition unit = make_integrand(IntegrandId::unit, {}, 0.5);
  CHECK(unit.f(0.3) == 1.0);
  const IntegrandDefinition ratio = make_integrand(IntegrandId::power_ratio, {{"a", 0.5}}, 0.5);
  CHECK(ratio.lo == doctest::Approx(0.5));
  CHECK(ratio.hi == 1.0);
  CHECK(ratio.f(1.0) == doctest::Approx(-0.5));
  CHECK(ratio.f(1.0 - 1e-7) == doctest::Approx(-0.5).epsilon(1e-6));
}

TEST_CASE("oracle targets") {
  const HypergeometricSpec i1 = oracle_target(Representation::i1, {{"a", 0.5}}, 0.3);
  CHECK(i1.numerator == std::vector<double>{1.5, 1.0, 1.0});
  CHECK(i1.denominator == std::vector<double>{2.0, 2.0});
  const HypergeometricSpec i31 = oracle_target(Representation::i31, {{"a", 0.8}, {"b", -0.3}}, 0.6);
  CHECK(i31.denominator == std::vector<double>{1.8, 0.5});
}

TEST_CASE("oracle values") {
  CHECK(rel(oracle_3f2(Representation::i1, {{"a", 0.5}}, 0.5).value, goldens::oracle_i1) <= 1e-10);
  CHECK(rel(oracle_3f2(Representation::i2, {{"a", 0.5}}, 0.5).value, goldens::oracle_i1) <= 1e-10);
  CHECK(rel(oracle_3f2(Representation::i30, {{"a", 1.5}, {"b", 0.7}}, 0.5).value,
            goldens::oracle_i30) <= 1e-10);
  CHECK(rel(oracle_3f2(Representation::i31, {{"a", 0.8}, {"b", -0.3}}, 0.6).value,
            goldens::oracle_i31) <= 1e-10);
}

TEST_CASE("oracle preconditions") {
  CHECK_THROWS_AS(check_oracle_applicable(Representation::i1, {{"a", 0.0}}, 0.5), ConstraintError);
  CHECK_THROWS_AS(check_oracle_applicable(Representation::i1, {{"a", 0.5}}, 1.0), ConstraintError);
  CHECK_THROWS_AS(check_oracle_applicable(Representation::i2, {{"a", 0.5}}, -0.2), ConstraintError);
  CHECK_THROWS_AS(check_oracle_applicable(Representation::i30, {{"a", -0.5}, {"b", 0.3}}, 0.5),
                  ConstraintError);
  CHECK_THROWS_AS(check_oracle_applicable(Representation::i31, {{"a", 0.5}, {"b", 0.0}}, 0.5),
                  ConstraintError);
  CHECK_NOTHROW(check_oracle_applicable(Representation::i31, {{"a", 0.5}, {"b", 0.3}}, 0.5));
  CHECK_THROWS_AS(oracle_3f2(Representation::i30, {{"a", -1.0}, {"b", 0.3}}, 0.5), ConstraintError);
}

TEST_CASE("representation names") {
  CHECK(parse_representation("I30") == Representation::i30);
  CHECK(to_string(Representation::i2) == "I2");
  CHECK_THROWS_AS(parse_representation("I7"), std::invalid_argument);
}
