#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "goldens.hpp"
#include "hyperred/transforms.hpp"

using namespace hyperred;

namespace {

double rel(double x, double y) { return std::abs(x - y) / std::max(std::abs(x), std::abs(y)); }

double value(const Expression& e) { return eval_expression(e).value; }

long long rising(long long a, unsigned n) {
  long long r = 1;
  for (unsigned i = 0; i < n; ++i) r *= a + i;
  return r;
}

long long falling(long long n, unsigned k) {
  long long r = 1;
  for (unsigned i = 0; i < k; ++i) r *= n - i;
  return r;
}

}  // namespace

TEST_CASE("factor values") {
  CHECK(Factor::coefficient(2.5).value() == 2.5);
  CHECK(Factor::power(4.0, 0.5).value() == doctest::Approx(2.0));
  CHECK(Factor::one_minus_power(0.75, -2.0).value() == doctest::Approx(16.0));
  CHECK(Factor::exp(1.0, -1.0).value() == doctest::Approx(std::exp(-1.0)));
  CHECK(Factor::one_plus_sqrt_one_minus_power(0.75, 2.0).value() == doctest::Approx(2.25));
  CHECK(std::isnan(Factor::power(-4.0, 0.5).value()));
  CHECK(Prefactor{}.value() == 1.0);
  const Prefactor p = Prefactor{} * Factor::coefficient(3.0) * Factor::power(2.0, 3.0);
  CHECK(p.value() == doctest::Approx(24.0));
}

TEST_CASE("argument maps") {
  CHECK(apply(ArgumentMap::identity, 0.3) == 0.3);
  CHECK(apply(ArgumentMap::negate, 0.3) == -0.3);
  CHECK(apply(ArgumentMap::ratio_to_argument_minus_one, 0.5) == doctest::Approx(-1.0));
  CHECK(apply(ArgumentMap::sqrt, 0.25) == doctest::Approx(0.5));
  CHECK(apply(ArgumentMap::negated_sqrt, 0.25) == doctest::Approx(-0.5));
  CHECK(apply(ArgumentMap::half_one_minus_sqrt_one_minus, 0.75) == doctest::Approx(0.25));
  // 1 + (2/z)(sqrt(1-z) - 1) at z = 0.75 is 1 - 4/3
  CHECK(apply(ArgumentMap::one_plus_scaled_sqrt_gap, 0.75) == doctest::Approx(-1.0 / 3.0));
  // small z keeps full relative accuracy: the map is about -z/4
  const double tiny = apply(ArgumentMap::one_plus_scaled_sqrt_gap, 1e-12);
  CHECK(rel(tiny, -0.25e-12) <= 1e-9);
  CHECK_THROWS_AS(apply(ArgumentMap::sqrt, -0.25), DomainError);
}

TEST_CASE("constant terms") {
  const Expression e{0.4, {constant_term(2.5), constant_term(Prefactor{{Factor::power(0.4, 2.0)}})}};
  CHECK(value(e) == doctest::Approx(2.5 + 0.16));
}

TEST_CASE("kummer transform reproduces the function") {
  const HypergeometricSpec spec{{0.7}, {2.2}, -1.9};
  CHECK(rel(value(kummer_first(spec)), goldens::kummer_sample) <= 1e-12);
  const Expression twice =
      rewrite_terms(kummer_first(spec), [](const Term& t) { return kummer_first(t); });
  CHECK(rel(value(twice), goldens::kummer_sample) <= 1e-12);
  CHECK(twice.terms.front().function.numerator.front() == doctest::Approx(0.7));
}

TEST_CASE("euler and pfaff transforms reproduce the function") {
  const HypergeometricSpec spec{{0.7, -1.3}, {2.2}, 0.6};
  CHECK(rel(value(as_expression(spec)), goldens::gauss_sample) <= 1e-12);
  CHECK(rel(value(euler_transform(spec)), goldens::gauss_sample) <= 1e-12);
  // z/(z-1) = -1.5 leaves the disk
  CHECK_THROWS_AS(value(pfaff_transform(spec)), DomainError);

  const HypergeometricSpec inside{{0.7, -1.3}, {2.2}, 0.4};
  const Expression pf = pfaff_transform(inside);
  CHECK(pf.terms.front().map == ArgumentMap::ratio_to_argument_minus_one);
  CHECK(pf.terms.front().function.argument == doctest::Approx(0.4 / (0.4 - 1.0)));
  CHECK(rel(value(pf), eval_pfq(inside).value) <= 1e-12);
}

TEST_CASE("transforms reject the wrong shape") {
  CHECK_THROWS(kummer_first(HypergeometricSpec{{0.7, 1.0}, {2.2}, 0.1}));
  CHECK_THROWS(euler_transform(HypergeometricSpec{{0.7}, {2.2}, 0.1}));
  CHECK_THROWS(pfaff_transform(HypergeometricSpec{{0.7, 1.0, 2.0}, {2.2, 3.0}, 0.1}));
}

TEST_CASE("shift weights in exact integer arithmetic") {
  for (long long a = 1; a <= 6; ++a) {
    for (unsigned k = 0; k <= 5; ++k) {
      const std::vector<long long> w = shift_weights<long long>(a, k);
      REQUIRE(w.size() == k + 1);
      for (long long n = 0; n <= 8; ++n) {
        long long sum = 0;
        for (unsigned l = 0; l <= k; ++l) sum += w[l] * falling(n, l);
        CHECK(rising(a, k) * rising(a + k, static_cast<unsigned>(n)) ==
              rising(a, static_cast<unsigned>(n)) * sum);
      }
    }
  }
}

TEST_CASE("two-step shift ratio") {
  for (double a : {0.3, 1.7, -2.5}) {
    const ShiftCoefficients c = shift_coefficients(a, 2);
    for (unsigned n = 0; n <= 10; ++n) {
      const double direct = pochhammer(a + 2.0, n) / pochhammer(a, n);
      const double poly = 1.0 + 2.0 * n / a + n * (n - 1.0) / (a * (a + 1.0));
      CHECK(rel(c(n), direct) <= 1e-13);
      CHECK(rel(poly, direct) <= 1e-13);
    }
  }
}

TEST_CASE("shift decomposition equals the shifted 3F2") {
  for (unsigned k = 0; k <= 3; ++k) {
    const double b = 0.7, c = -1.2, a = 1.4, d = 2.3, x = 0.55;
    const double direct = eval_pfq({{b, c, a + k}, {d, a}, x}).value;
    const Expression parts = shift_decompose(b, c, a, d, k, x);
    CHECK(parts.terms.size() == k + 1);
    CHECK(rel(value(parts), direct) <= 1e-12);
  }
}

TEST_CASE("contiguous residuals vanish") {
  const Bindings ae{{"a", 0.8}, {"e", 1.3}};
  const Bindings ad{{"a", 0.8}, {"d", 1.9}};
  const Bindings abcd{{"a", 0.8}, {"b", -0.4}, {"c", 1.6}, {"d", 2.7}};
  for (double z : {-0.7, 0.2, 0.6}) {
    for (auto [rel_id, b] : {std::pair{ContiguousRelation::g20, ae},
                             std::pair{ContiguousRelation::g21, ae},
                             std::pair{ContiguousRelation::c24, ad},
                             std::pair{ContiguousRelation::l25, abcd}}) {
      const Residual r = contiguous_residual(rel_id, b, z);
      CAPTURE(to_string(rel_id));
      CHECK(r.scale > 0.0);
      CHECK(std::abs(r.residual) <= 1e-12 * r.scale);
    }
  }
}

TEST_CASE("relation ids") {
  CHECK(parse_relation("G20") == ContiguousRelation::g20);
  CHECK(to_string(ContiguousRelation::l25) == "L25");
  CHECK_THROWS_AS(parse_relation("G99"), std::invalid_argument);
  CHECK_THROWS(contiguous_residual(ContiguousRelation::g20, Bindings{{"a", 0.8}}, 0.2));
}

TEST_CASE("expression status is the worst term status") {
  Expression e{0.5, {make_term({}, {-2.0, 1.0}, {3.0}, ArgumentMap::identity, 0.5),
                     make_term({}, {1.0, 1.0}, {2.0}, ArgumentMap::identity, 0.5)}};
  CHECK(eval_expression(e).status == EvalStatus::converged);
  CHECK(expression_magnitude(e) >= std::abs(eval_expression(e).value));
}
