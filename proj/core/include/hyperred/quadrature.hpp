#ifndef HYPERRED_QUADRATURE_HPP
#define HYPERRED_QUADRATURE_HPP

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string_view>

#include "hyperred/bindings.hpp"
#include "hyperred/series.hpp"

namespace hyperred {

// Integral representations of a handful of 3F2 functions, evaluated by
// quadrature only. Nothing here calls the series evaluator.

enum class QuadratureRule { gauss_legendre_adaptive, double_exponential };

std::string_view to_string(QuadratureRule rule) noexcept;

struct QuadratureSpec {
  QuadratureRule rule = QuadratureRule::double_exponential;
  double abs_tol = 1e-12;
  double rel_tol = 1e-11;
  int max_refinement = 18;
};

struct IntegralEstimate {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Quadrature did not reach its tolerance; carries the best estimate.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, IntegralEstimate best)
      : std::runtime_error(what), best_(best) {}
  const IntegralEstimate& best() const noexcept { return best_; }

 private:
  IntegralEstimate best_;
};

using Integrand1D = std::function<double(double)>;

/// Globally adaptive bisection; each panel compares a 15-point Gauss-Legendre
/// value against the sum over its two halves. max_refinement bounds the depth.
IntegralEstimate gauss_legendre_adaptive(const Integrand1D& f, double lo, double hi,
                                         const QuadratureSpec& spec = {});

/// Tanh-sinh rule with step halving. Abscissae next to `lo` are formed as
/// lo + (small offset) so integrable singularities at the left end are
/// resolved to full relative precision when lo = 0.
IntegralEstimate double_exponential(const Integrand1D& f, double lo, double hi,
                                    const QuadratureSpec& spec = {});

enum class IntegrandId {
  unit,                        ///< 1 on [0, 1]
  power_ratio,                 ///< (t^a - 1)/(t^a (1-t)) on [1-z, 1], limit -a at t = 1
  log_weight,                  ///< ln y / (1 - y z)^{a+1} on [0, 1]
  shifted_beta,                ///< u^{a-1} (2-u)^{a-2b} on [0, 1 - sqrt(1-z)], u = 1 - y
  symmetric_beta,              ///< y^{2a-1} [(1+y)^{-2b} + (1-y)^{-2b}] on [0, sqrt z]
  shifted_beta_substituted,    ///< shifted_beta after s = u^a: (2 - s^{1/a})^{a-2b}
  symmetric_beta_substituted,  ///< symmetric_beta after s = y^{2a}, on [0, z^a]
};

std::string_view to_string(IntegrandId id) noexcept;

struct IntegrandDefinition {
  Integrand1D f;
  double lo = 0.0;
  double hi = 1.0;
};

IntegrandDefinition make_integrand(IntegrandId id, const Bindings& bindings, double z);

IntegralEstimate integrate(IntegrandId id, const Bindings& bindings, double z,
                           const QuadratureSpec& spec);

enum class Representation { i1, i2, i30, i31 };

std::string_view to_string(Representation rep) noexcept;
Representation parse_representation(std::string_view id);

/// The 3F2 a representation stands for:
/// i1, i2 -> 3F2(a+1, 1, 1; 2, 2; z); i30 -> 3F2(a, b, b+1/2; a+1, 2b; z);
/// i31 -> 3F2(a, b, b+1/2; a+1, 1/2; z).
HypergeometricSpec oracle_target(Representation rep, const Bindings& bindings, double z);

/// Throws ConstraintError when the representation does not apply
/// (i1: a != 0; i30/i31: a > 0, b != 0; all: 0 < z < 1).
void check_oracle_applicable(Representation rep, const Bindings& bindings, double z);

struct OracleResult {
  double value = 0.0;  ///< the 3F2 value implied by the integral
  IntegralEstimate integral;
};

/// Throws ConstraintError or QuadratureError.
OracleResult oracle_3f2(Representation rep, const Bindings& bindings, double z,
                        const QuadratureSpec& spec = {});

}  // namespace hyperred

#endif  // HYPERRED_QUADRATURE_HPP
