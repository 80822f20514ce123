#include "hyperred/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace hyperred {

namespace {

void require_arity(const HypergeometricSpec& spec, std::size_t p, std::size_t q,
                   std::string_view what) {
  if (spec.p() != p || spec.q() != q) {
    throw ArityError(std::string(what) + " needs a " + std::to_string(p) + "F" +
                     std::to_string(q) + ", got " + describe(spec));
  }
}

ArgumentMap compose_negate(ArgumentMap inner) {
  switch (inner) {
    case ArgumentMap::identity: return ArgumentMap::negate;
    case ArgumentMap::negate: return ArgumentMap::identity;
    case ArgumentMap::sqrt: return ArgumentMap::negated_sqrt;
    case ArgumentMap::negated_sqrt: return ArgumentMap::sqrt;
    default: return ArgumentMap::composite;
  }
}

ArgumentMap compose_ratio(ArgumentMap inner) {
  switch (inner) {
    case ArgumentMap::identity: return ArgumentMap::ratio_to_argument_minus_one;
    case ArgumentMap::ratio_to_argument_minus_one: return ArgumentMap::identity;
    default: return ArgumentMap::composite;
  }
}

double f(std::vector<double> num, std::vector<double> den, double z) {
  return hypergeometric(std::move(num), std::move(den), z);
}

}  // namespace

std::string_view to_string(FactorKind kind) noexcept {
  switch (kind) {
    case FactorKind::coefficient: return "coefficient";
    case FactorKind::argument_power: return "argument_power";
    case FactorKind::one_minus_argument_power: return "one_minus_argument_power";
    case FactorKind::exp_argument: return "exp_argument";
    case FactorKind::one_plus_sqrt_one_minus_argument_power:
      return "one_plus_sqrt_one_minus_argument_power";
  }
  return "unknown";
}

double Factor::value() const noexcept {
  switch (kind) {
    case FactorKind::coefficient: return parameter;
    case FactorKind::argument_power:
      return parameter == 0.0 ? 1.0 : std::pow(argument, parameter);
    case FactorKind::one_minus_argument_power:
      return parameter == 0.0 ? 1.0 : std::pow(1.0 - argument, parameter);
    case FactorKind::exp_argument: return std::exp(parameter * argument);
    case FactorKind::one_plus_sqrt_one_minus_argument_power:
      if (argument > 1.0) return std::numeric_limits<double>::quiet_NaN();
      return std::pow(1.0 + std::sqrt(1.0 - argument), parameter);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double Prefactor::value() const noexcept {
  double v = 1.0;
  for (const Factor& f : factors) v *= f.value();
  return v;
}

std::string_view to_string(ArgumentMap map) noexcept {
  switch (map) {
    case ArgumentMap::identity: return "z";
    case ArgumentMap::ratio_to_argument_minus_one: return "z/(z-1)";
    case ArgumentMap::negate: return "-z";
    case ArgumentMap::sqrt: return "sqrt(z)";
    case ArgumentMap::negated_sqrt: return "-sqrt(z)";
    case ArgumentMap::half_one_minus_sqrt_one_minus: return "(1-sqrt(1-z))/2";
    case ArgumentMap::one_plus_scaled_sqrt_gap: return "1+(2/z)(sqrt(1-z)-1)";
    case ArgumentMap::composite: return "composite";
  }
  return "unknown";
}

double apply(ArgumentMap map, double z) {
  switch (map) {
    case ArgumentMap::identity: return z;
    case ArgumentMap::ratio_to_argument_minus_one:
      if (z == 1.0) throw DomainError("z/(z-1) is undefined at z = 1");
      return z / (z - 1.0);
    case ArgumentMap::negate: return -z;
    case ArgumentMap::sqrt:
    case ArgumentMap::negated_sqrt:
      if (z < 0.0) throw DomainError("sqrt(z) needs z >= 0");
      return map == ArgumentMap::sqrt ? std::sqrt(z) : -std::sqrt(z);
    case ArgumentMap::half_one_minus_sqrt_one_minus:
      if (z > 1.0) throw DomainError("sqrt(1-z) needs z <= 1");
      // 1 - sqrt(1-z) = z / (1 + sqrt(1-z))
      return 0.5 * z / (1.0 + std::sqrt(1.0 - z));
    case ArgumentMap::one_plus_scaled_sqrt_gap:
      if (z > 1.0) throw DomainError("sqrt(1-z) needs z <= 1");
      // 1 + (2/z)(sqrt(1-z) - 1) = -z / (1 + sqrt(1-z))^2
      {
        const double root = 1.0 + std::sqrt(1.0 - z);
        return -z / (root * root);
      }
    case ArgumentMap::composite: break;
  }
  throw DomainError("a composite argument map cannot be applied directly");
}

Term make_term(Prefactor prefactor, std::vector<double> numerator,
               std::vector<double> denominator, ArgumentMap map, double z) {
  return {std::move(prefactor), {std::move(numerator), std::move(denominator), apply(map, z)},
          map};
}

Term constant_term(double value) { return constant_term(Prefactor{{Factor::coefficient(value)}}); }

Term constant_term(Prefactor prefactor) {
  return {std::move(prefactor), {{}, {}, 0.0}, ArgumentMap::identity};
}

Expression as_expression(const HypergeometricSpec& spec) {
  return {spec.argument, {Term{{}, spec, ArgumentMap::identity}}};
}

Term kummer_first(const Term& term) {
  require_arity(term.function, 1, 1, "Kummer's transform");
  const double alpha = term.function.numerator[0];
  const double rho = term.function.denominator[0];
  const double w = term.function.argument;
  return {term.prefactor * Factor::exp(w, 1.0), {{rho - alpha}, {rho}, -w},
          compose_negate(term.map)};
}

Expression kummer_first(const HypergeometricSpec& spec) {
  return rewrite_terms(as_expression(spec), [](const Term& t) { return kummer_first(t); });
}

Term euler_transform(const Term& term) {
  require_arity(term.function, 2, 1, "Euler's transform");
  const double alpha = term.function.numerator[0];
  const double beta = term.function.numerator[1];
  const double gamma = term.function.denominator[0];
  const double w = term.function.argument;
  if (std::abs(w) >= 1.0) throw DomainError("Euler's transform needs |z| < 1");
  return {term.prefactor * Factor::one_minus_power(w, gamma - alpha - beta),
          {{gamma - alpha, gamma - beta}, {gamma}, w},
          term.map};
}

Expression euler_transform(const HypergeometricSpec& spec) {
  return rewrite_terms(as_expression(spec), [](const Term& t) { return euler_transform(t); });
}

Term pfaff_transform(const Term& term) {
  require_arity(term.function, 2, 1, "Pfaff's transform");
  const double alpha = term.function.numerator[0];
  const double beta = term.function.numerator[1];
  const double gamma = term.function.denominator[0];
  const double w = term.function.argument;
  if (w >= 1.0) throw DomainError("Pfaff's transform needs z < 1");
  return {term.prefactor * Factor::one_minus_power(w, -alpha),
          {{alpha, gamma - beta}, {gamma}, w / (w - 1.0)},
          compose_ratio(term.map)};
}

Expression pfaff_transform(const HypergeometricSpec& spec) {
  return rewrite_terms(as_expression(spec), [](const Term& t) { return pfaff_transform(t); });
}

double ShiftCoefficients::operator()(double n) const noexcept {
  double v = 0.0;
  for (unsigned l = 0; l < weights.size(); ++l) v += weights[l] * falling_factorial(n, l);
  return v;
}

ShiftCoefficients shift_coefficients(double a, unsigned k) {
  for (unsigned i = 0; i < k; ++i) {
    if (std::abs(a + i) <= kIntegerTolerance) {
      throw DomainError("shift coefficients need (a)_k != 0");
    }
  }
  const double norm = pochhammer(a, k);
  ShiftCoefficients out{a, k, shift_weights(a, k)};
  for (double& w : out.weights) w /= norm;
  return out;
}

Expression shift_decompose(double b, double c, double a, double d, unsigned k, double x) {
  if (is_nonpositive_integer(a) || is_nonpositive_integer(d)) {
    throw DomainError("shift decomposition needs a and d away from non-positive integers");
  }
  if (std::abs(x) >= 1.0) throw DomainError("shift decomposition needs |x| < 1");
  Expression out{x, {}};
  out.terms.reserve(k + 1);
  for (unsigned l = 0; l <= k; ++l) {
    const double weight = binomial(k, l) * pochhammer(b, l) * pochhammer(c, l) /
                          (pochhammer(a, l) * pochhammer(d, l));
    Prefactor pre{{Factor::coefficient(weight)}};
    if (l > 0) pre *= Factor::power(x, l);
    out.terms.push_back(make_term(std::move(pre), {b + l, c + l}, {d + l},
                                  ArgumentMap::identity, x));
  }
  return out;
}

std::string_view to_string(ContiguousRelation relation) noexcept {
  switch (relation) {
    case ContiguousRelation::g20: return "G20";
    case ContiguousRelation::g21: return "G21";
    case ContiguousRelation::c24: return "C24";
    case ContiguousRelation::l25: return "L25";
  }
  return "unknown";
}

ContiguousRelation parse_relation(std::string_view id) {
  if (id == "G20") return ContiguousRelation::g20;
  if (id == "G21") return ContiguousRelation::g21;
  if (id == "C24") return ContiguousRelation::c24;
  if (id == "L25") return ContiguousRelation::l25;
  throw std::invalid_argument("unknown contiguous relation '" + std::string(id) + "'");
}

Residual contiguous_residual(ContiguousRelation relation, const Bindings& bindings, double z) {
  switch (relation) {
    case ContiguousRelation::g20: {
      const double a = slot(bindings, "a");
      const double e = slot(bindings, "e");
      const double c = a + e / 2;
      const double lhs = a * (1 - z) * f({a + 1, 1 - e / 2}, {c + 1}, z);
      const double base = c * f({a, -e / 2}, {c}, z);
      const double first = (e / 2) * f({a, 1 - e / 2}, {c + 1}, z);
      const double second = (e / 2) * f({a, -e / 2}, {c + 1}, z);
      const double third = a * e / (2 * (c + 1)) * z * f({a + 1, 1 - e / 2}, {c + 2}, z);
      const double r1 = lhs - (base - first);
      const double r2 = lhs - (base - second - third);
      return {std::abs(r1) >= std::abs(r2) ? r1 : r2,
              std::abs(lhs) + std::abs(base) + std::abs(first) + std::abs(second) +
                  std::abs(third)};
    }
    case ContiguousRelation::g21: {
      const double a = slot(bindings, "a");
      const double e = slot(bindings, "e");
      const double c = a + e / 2;
      const double lhs = -(e / 2) * a * z * f({a + 1, 1 - e / 2}, {c + 2}, z);
      const double u = c * (c + 1) * f({a, -e / 2}, {c}, z);
      const double v = c * (c + 1) * f({a, -e / 2}, {c + 1}, z);
      return {lhs - (u - v), std::abs(lhs) + std::abs(u) + std::abs(v)};
    }
    case ContiguousRelation::c24: {
      const double a = slot(bindings, "a");
      const double d = slot(bindings, "d");
      const double lhs = -a * (d + 2 * a - 1) * z * f({a + d, 1 - a, d + 2 * a}, {d + 1, d + a + 1}, z);
      const double shifted = d * (d + a) * f({a + d, -a, d + 2 * a - 1}, {d, d + a}, z);
      const double reduced = d * (d + a) * f({-a, d + 2 * a - 1}, {d}, z);
      const double base = d * (d + a) * f({a + d - 1, -a, d + 2 * a - 1}, {d, d + a}, z);
      const double r1 = lhs - (shifted - base);
      const double r2 = lhs - (reduced - base);
      return {std::abs(r1) >= std::abs(r2) ? r1 : r2,
              std::abs(lhs) + std::abs(shifted) + std::abs(reduced) + std::abs(base)};
    }
    case ContiguousRelation::l25: {
      const double a = slot(bindings, "a");
      const double b = slot(bindings, "b");
      const double c = slot(bindings, "c");
      const double d = slot(bindings, "d");
      if (std::abs(c - d) <= kIntegerTolerance) throw DomainError("relation L25 needs c != d");
      const double lhs = f({a, b, c}, {d + 1, c + 1}, z);
      const double u = c / (c - d) * f({a, b}, {d + 1}, z);
      const double v = d / (c - d) * f({a, b, c}, {d, c + 1}, z);
      return {lhs - (u - v), std::abs(lhs) + std::abs(u) + std::abs(v)};
    }
  }
  throw std::invalid_argument("unknown contiguous relation");
}

EvalResult eval_expression(const Expression& expr, double tol, std::size_t max_terms) {
  if (expr.terms.empty()) throw DomainError("expression has no terms");
  EvalResult out{0.0, 0, 0.0, EvalStatus::terminated};
  for (std::size_t i = 0; i < expr.terms.size(); ++i) {
    const Term& term = expr.terms[i];
    EvalResult r;
    try {
      r = eval_pfq(term.function, tol, max_terms);
    } catch (const DomainError& err) {
      throw DomainError("term " + std::to_string(i) + ": " + err.what());
    }
    const double pre = term.prefactor.value();
    if (!std::isfinite(pre)) {
      throw DomainError("term " + std::to_string(i) + ": prefactor is undefined at z = " +
                        std::to_string(expr.argument));
    }
    out.value += pre * r.value;
    out.terms_used += r.terms_used;
    out.tail_estimate += std::abs(pre) * r.tail_estimate;
    if (severity(r.status) > severity(out.status)) out.status = r.status;
  }
  return out;
}

double expression_magnitude(const Expression& expr, double tol, std::size_t max_terms) {
  double m = 0.0;
  for (const Term& term : expr.terms) {
    m += std::abs(term.prefactor.value() * eval_pfq(term.function, tol, max_terms).value);
  }
  return m;
}

std::string describe(const Expression& expr) {
  std::ostringstream out;
  out.precision(17);
  for (std::size_t i = 0; i < expr.terms.size(); ++i) {
    const Term& t = expr.terms[i];
    if (i) out << " + ";
    out << t.prefactor.value() << " * " << describe(t.function);
  }
  return out.str();
}

}  // namespace hyperred
