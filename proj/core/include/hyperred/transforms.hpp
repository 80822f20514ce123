#ifndef HYPERRED_TRANSFORMS_HPP
#define HYPERRED_TRANSFORMS_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "hyperred/bindings.hpp"
#include "hyperred/series.hpp"

namespace hyperred {

// Expressions are concrete: every factor and every term carries the numeric
// argument it is evaluated at, so rewrites compose without symbolic algebra.

enum class FactorKind {
  coefficient,                             ///< c
  argument_power,                          ///< w^p
  one_minus_argument_power,                ///< (1-w)^p
  exp_argument,                            ///< e^{p w}, p = +-1
  one_plus_sqrt_one_minus_argument_power,  ///< (1 + sqrt(1-w))^p
};

std::string_view to_string(FactorKind kind) noexcept;

struct Factor {
  FactorKind kind = FactorKind::coefficient;
  double parameter = 1.0;  ///< coefficient value, exponent, or exponential sign
  double argument = 0.0;   ///< base w; unused for coefficients

  /// NaN when the real principal branch is undefined (negative base, fractional power).
  double value() const noexcept;

  static Factor coefficient(double c) { return {FactorKind::coefficient, c, 0.0}; }
  static Factor power(double w, double p) { return {FactorKind::argument_power, p, w}; }
  static Factor one_minus_power(double w, double p) {
    return {FactorKind::one_minus_argument_power, p, w};
  }
  static Factor exp(double w, double sign) { return {FactorKind::exp_argument, sign, w}; }
  static Factor one_plus_sqrt_one_minus_power(double w, double p) {
    return {FactorKind::one_plus_sqrt_one_minus_argument_power, p, w};
  }
};

struct Prefactor {
  std::vector<Factor> factors;

  /// Product of the factors; 1 for an empty prefactor.
  double value() const noexcept;

  Prefactor& operator*=(const Factor& f) {
    factors.push_back(f);
    return *this;
  }
  Prefactor& operator*=(const Prefactor& other) {
    factors.insert(factors.end(), other.factors.begin(), other.factors.end());
    return *this;
  }
  friend Prefactor operator*(Prefactor lhs, const Factor& f) { return lhs *= f; }
  friend Prefactor operator*(Prefactor lhs, const Prefactor& rhs) { return lhs *= rhs; }
};

/// How a term's function argument is obtained from the expression argument z.
enum class ArgumentMap {
  identity,                       ///< z
  ratio_to_argument_minus_one,    ///< z/(z-1)
  negate,                         ///< -z
  sqrt,                           ///< sqrt(z)
  negated_sqrt,                   ///< -sqrt(z)
  half_one_minus_sqrt_one_minus,  ///< (1 - sqrt(1-z))/2
  one_plus_scaled_sqrt_gap,       ///< 1 + (2/z)(sqrt(1-z) - 1)
  composite,                      ///< result of chaining rewrites
};

std::string_view to_string(ArgumentMap map) noexcept;

/// Evaluates a map in cancellation-free form; throws DomainError off the real branch.
double apply(ArgumentMap map, double z);

struct Term {
  Prefactor prefactor;
  HypergeometricSpec function;  ///< argument already mapped
  ArgumentMap map = ArgumentMap::identity;
};

/// Term with function pFq(num; den; map(z)).
Term make_term(Prefactor prefactor, std::vector<double> numerator,
               std::vector<double> denominator, ArgumentMap map, double z);

/// A bare number c, represented as c * 0F0(;;0).
Term constant_term(double value);

/// An elementary term: the prefactor alone, times 0F0(;;0).
Term constant_term(Prefactor prefactor);

struct Expression {
  double argument = 0.0;
  std::vector<Term> terms;
};

/// One-term expression with unit prefactor.
Expression as_expression(const HypergeometricSpec& spec);

// 1F1(alpha; rho; z) = e^z 1F1(rho - alpha; rho; -z)
Term kummer_first(const Term& term);
Expression kummer_first(const HypergeometricSpec& spec);

// 2F1(alpha, beta; gamma; z) = (1-z)^{gamma-alpha-beta} 2F1(gamma-alpha, gamma-beta; gamma; z)
Term euler_transform(const Term& term);
Expression euler_transform(const HypergeometricSpec& spec);

// 2F1(alpha, beta; gamma; z) = (1-z)^{-alpha} 2F1(alpha, gamma-beta; gamma; z/(z-1))
Term pfaff_transform(const Term& term);
Expression pfaff_transform(const HypergeometricSpec& spec);

/// Replaces every term of `expr` by rewrite(term).
template <class Rewrite>
Expression rewrite_terms(Expression expr, Rewrite rewrite) {
  for (Term& t : expr.terms) t = rewrite(t);
  return expr;
}

/// Unnormalised weights w_l = C(k,l) (a+l)_{k-l}, so that
/// (a)_k (a+k)_n = (a)_n * sum_l w_l n(n-1)...(n-l+1).
/// Generic in T so the identity can be checked in exact integer arithmetic.
template <class T>
std::vector<T> shift_weights(T a, unsigned k) {
  std::vector<T> weights(k + 1);
  T binom = T(1);
  for (unsigned l = 0; l <= k; ++l) {
    T rising = T(1);
    for (unsigned i = 0; i < k - l; ++i) rising *= a + T(l + i);
    weights[l] = binom * rising;
    binom = binom * T(k - l) / T(l + 1);
  }
  return weights;
}

/// (a+k)_n / (a)_n as a polynomial in n: sum_l weight[l] * falling(n, l).
struct ShiftCoefficients {
  double a = 0.0;
  unsigned k = 0;
  std::vector<double> weights;  ///< already divided by (a)_k

  double operator()(double n) const noexcept;
};

ShiftCoefficients shift_coefficients(double a, unsigned k);

/// 3F2(b, c, a+k; d, a; x) written as k+1 Gauss functions
/// sum_l C(k,l) (b)_l (c)_l / ((a)_l (d)_l) x^l 2F1(b+l, c+l; d+l; x).
Expression shift_decompose(double b, double c, double a, double d, unsigned k, double x);

enum class ContiguousRelation { g20, g21, c24, l25 };

std::string_view to_string(ContiguousRelation relation) noexcept;
ContiguousRelation parse_relation(std::string_view id);

struct Residual {
  double residual = 0.0;  ///< LHS - RHS; for chained equalities the worst link
  double scale = 0.0;     ///< sum of |summands| appearing in the relation
};

/// Bindings: g20/g21 use {a, e}; c24 uses {a, d}; l25 uses {a, b, c, d}.
Residual contiguous_residual(ContiguousRelation relation, const Bindings& bindings, double z);

/// Sum over terms of prefactor * pFq; status is the worst term status.
EvalResult eval_expression(const Expression& expr, double tol = kDefaultTolerance,
                           std::size_t max_terms = kDefaultMaxTerms);

/// Sum of |prefactor * pFq| over the terms (the rounding scale of eval_expression).
double expression_magnitude(const Expression& expr, double tol = kDefaultTolerance,
                            std::size_t max_terms = kDefaultMaxTerms);

std::string describe(const Expression& expr);

}  // namespace hyperred

#endif  // HYPERRED_TRANSFORMS_HPP
