#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "goldens.hpp"
#include "hyperred/series.hpp"

using namespace hyperred;

namespace {

double rel(double x, double y) { return std::abs(x - y) / std::max(std::abs(x), std::abs(y)); }

}  // namespace

TEST_CASE("pochhammer basics") {
  CHECK(pochhammer(2.5, 0) == 1.0);
  CHECK(pochhammer(1.0, 5) == 120.0);
  CHECK(pochhammer(3.0, 4) == 360.0);
  CHECK(pochhammer(-2.0, 4) == 0.0);
}

TEST_CASE("pochhammer splits over index sums") {
  for (double a : {-3.7, -0.5, 0.3, 1.0, 2.25, 4.9}) {
    for (unsigned m = 0; m <= 20; ++m) {
      for (unsigned n = 0; n <= 20; ++n) {
        const double whole = pochhammer(a, m + n);
        const double split = pochhammer(a, m) * pochhammer(a + m, n);
        if (whole == 0.0) {
          CHECK(split == 0.0);
        } else {
          CHECK(rel(whole, split) <= 1e-14);
        }
      }
    }
  }
}

TEST_CASE("shifted pochhammer ratio") {
  for (double a : {0.3, 1.7, -2.5, 4.1}) {
    for (unsigned j = 0; j <= 20; ++j) {
      const double lhs = pochhammer(a + 1.0, j);
      const double rhs = (1.0 + j / a) * pochhammer(a, j);
      CHECK(rel(lhs, rhs) <= 1e-13);
    }
  }
}

TEST_CASE("falling factorial and binomial") {
  CHECK(falling_factorial(5.0, 0) == 1.0);
  CHECK(falling_factorial(5.0, 3) == 60.0);
  CHECK(falling_factorial(3.0, 5) == 0.0);
  CHECK(binomial(10, 3) == 120.0);
  CHECK(binomial(50, 25) == 126410606437752.0);
  CHECK(binomial(3, 5) == 0.0);
}

TEST_CASE("nonpositive integer detection") {
  CHECK(nonpositive_integer(-3.0) == 3u);
  CHECK(nonpositive_integer(-3.0 + 5e-10) == 3u);
  CHECK(nonpositive_integer(0.0) == 0u);
  CHECK_FALSE(nonpositive_integer(-3.0 + 1e-6).has_value());
  CHECK_FALSE(nonpositive_integer(2.0).has_value());
  CHECK_FALSE(nonpositive_integer(std::nan("")).has_value());
}

TEST_CASE("convergence classification") {
  CHECK(classify_convergence({{0.5, 1.0}, {2.0, 3.0}, 7.0}).kind == ConvergenceKind::entire);
  const ConvergenceClass unit = classify_convergence({{1.0, 1.0, 1.5}, {2.0, 2.0}, 0.5});
  CHECK(unit.kind == ConvergenceKind::unit_disk);
  CHECK(unit.boundary_convergent);
  CHECK(classify_convergence({{1.0, 1.5, -3.0}, {0.5, 2.0}, 3.0}).kind ==
        ConvergenceKind::terminating);
  CHECK(classify_convergence({{1.0, 1.0}, {}, 0.1}).kind == ConvergenceKind::divergent);
  CHECK_FALSE(classify_convergence({{1.0, 2.0}, {2.0}, 1.0}).boundary_convergent);
  // z = -1 converges conditionally down to sum(b) - sum(a) > -1
  CHECK(classify_convergence({{1.0, 1.5}, {2.0}, -1.0}).boundary_convergent);
}

TEST_CASE("parameter cancellation") {
  const HypergeometricSpec reduced = cancel_parameters({{0.3, 1.7, 2.2}, {2.2, 3.1}, 0.4});
  CHECK(reduced.numerator == std::vector<double>{0.3, 1.7});
  CHECK(reduced.denominator == std::vector<double>{3.1});
  const double full = eval_pfq({{0.3, 1.7, 2.2}, {2.2, 3.1}, 0.4}).value;
  const double lower = eval_pfq({{0.3, 1.7}, {3.1}, 0.4}).value;
  CHECK(rel(full, lower) <= 1e-12);
}

TEST_CASE("zero argument") {
  const EvalResult r = eval_pfq({{1.3, -2.7, 4.0}, {0.5, 1.1}, 0.0});
  CHECK(r.value == 1.0);
  CHECK(r.terms_used <= 2);
}

TEST_CASE("reference values") {
  struct Case {
    HypergeometricSpec spec;
    double expected;
    double tol;
  };
  const Case cases[] = {
      {{{1.0, 1.0}, {2.0}, -0.5}, goldens::gauss_log, 1e-12},
      {{{1.0, 1.0, 1.5}, {2.0, 2.0}, 0.5}, goldens::log_root_half, 1e-12},
      {{{0.3}, {1.7}, -4.2}, goldens::confluent, 1e-12},
      {{{-0.5}, {1.5}, -30.0}, goldens::confluent_cancelling, 1e-12},
      {{{}, {2.5}, 3.0}, goldens::bessel_type, 1e-12},
      {{{0.5, 1.5}, {2.25}, 0.95}, goldens::gauss_near_radius, 1e-12},
      {{{-3.0, 2.0, 1.5}, {4.0, 0.5}, 0.7}, goldens::terminating, 1e-12},
      {{{2.0, 1.0}, {-8.05}, -0.9487}, goldens::gauss_cancelling, 1e-11},
      {{{0.5, 1.2, -0.7, 2.0}, {1.5, 2.5, 3.1}, 0.6}, goldens::four_three, 1e-12},
  };
  for (const Case& c : cases) {
    CAPTURE(describe(c.spec));
    const EvalResult r = eval_pfq(c.spec);
    CHECK(r.status != EvalStatus::max_terms_reached);
    CHECK(rel(r.value, c.expected) <= c.tol);
  }
}

TEST_CASE("terminating sums stop at the last term") {
  const EvalResult r = eval_pfq({{-3.0, 2.0, 1.5}, {4.0, 0.5}, 0.7});
  CHECK(r.status == EvalStatus::terminated);
  CHECK(r.terms_used <= 4);
}

TEST_CASE("unit argument") {
  const EvalResult plus = eval_pfq({{1.0, 1.0, 1.0}, {2.0, 2.5}, 1.0});
  CHECK(rel(plus.value, goldens::unit_plus) <= 1e-9);
  const EvalResult minus = eval_pfq({{0.5, 0.5}, {1.2}, -1.0});
  CHECK(rel(minus.value, goldens::unit_minus) <= 1e-9);
  const EvalResult log2 = eval_pfq({{1.0, 1.0, 1.5}, {2.0, 2.0}, 1.0});
  CHECK(rel(log2.value, goldens::s36_at_one) <= 1e-6);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(eval_pfq({{1.0}, {-2.0}, 0.5}), DomainError);
  CHECK_THROWS_AS(eval_pfq({{1.0}, {0.0}, 0.5}), DomainError);
  CHECK_THROWS_AS(eval_pfq({{1.0, 1.0}, {2.0}, 1.5}), DomainError);
  CHECK_THROWS_AS(eval_pfq({{1.0, 2.0}, {2.0 + 1e-3}, 1.0}), DomainError);
  CHECK_THROWS_AS(eval_pfq({{1.0, 1.0}, {}, 0.1}), DomainError);
  CHECK_THROWS_AS(eval_pfq({{1, 1, 1, 1, 1}, {2, 2, 2, 2}, 0.1}), ArityError);
  CHECK_THROWS_AS(eval_pfq({{std::nan("")}, {2.0}, 0.1}), DomainError);
}

TEST_CASE("max_terms budget") {
  const EvalResult r = eval_pfq({{1.0, 1.0}, {2.0}, 0.999}, 1e-13, 50);
  CHECK(r.status == EvalStatus::max_terms_reached);
  CHECK(r.terms_used <= 50);
}

TEST_CASE("split parameters") {
  const SplitValue s = split_sum({0.1, 0.2, -0.3});
  CHECK(s.value + s.residue == doctest::Approx(5.551115123125783e-17).epsilon(1e-15));
  CHECK(split_sum({1.0, 2.0}).residue == 0.0);

  const double a = 2.0488775517753606, b = 1.6468347526401628, n = 20.0;
  const HypergeometricSpec split =
      split_spec({{a, 0.0}, split_sum({a / 2, 1}), {b, 0.0}, {-n, 0.0}},
                 {{a / 2, 0.0}, split_sum({a, -b, 1}), split_sum({2 * b, -n, 1})}, 1.0);
  CHECK(rel(eval_pfq(split).value, goldens::t9_sensitive) <= 1e-12);
  const HypergeometricSpec rounded{{a, a / 2 + 1, b, -n}, {a / 2, a - b + 1, 2 * b - n + 1}, 1.0};
  CHECK(rel(eval_pfq(rounded).value, goldens::t9_sensitive) > 1e-9);

  HypergeometricSpec bad = split;
  bad.denominator_residue.pop_back();
  CHECK_THROWS_AS(eval_pfq(bad), std::invalid_argument);
}
