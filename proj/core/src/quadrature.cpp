#include "hyperred/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace hyperred {

namespace {

constexpr int kGaussPoints = 15;

struct GaussRule {
  std::array<double, kGaussPoints> nodes{};
  std::array<double, kGaussPoints> weights{};
};

// Newton iteration on P_n from the Chebyshev initial guesses.
GaussRule make_gauss_rule() {
  GaussRule rule;
  constexpr int n = kGaussPoints;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double derivative = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p2) / j;
      }
      derivative = n * (x * p0 - p1) / (x * x - 1.0);
      const double step = p0 / derivative;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * derivative * derivative);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

const GaussRule& gauss_rule() {
  static const GaussRule rule = make_gauss_rule();
  return rule;
}

double gauss_panel(const Integrand1D& f, double lo, double hi, std::size_t& evaluations) {
  const GaussRule& rule = gauss_rule();
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  double sum = 0.0;
  for (int i = 0; i < kGaussPoints; ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  evaluations += kGaussPoints;
  return half * sum;
}

double tolerance_for(const QuadratureSpec& spec, double value) {
  return std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConstraintError(message);
}

}  // namespace

std::string_view to_string(QuadratureRule rule) noexcept {
  switch (rule) {
    case QuadratureRule::gauss_legendre_adaptive: return "gauss_legendre_adaptive";
    case QuadratureRule::double_exponential: return "double_exponential";
  }
  return "unknown";
}

IntegralEstimate gauss_legendre_adaptive(const Integrand1D& f, double lo, double hi,
                                         const QuadratureSpec& spec) {
  struct Panel {
    double lo, hi;
    double left, right;  // Gauss values on the two halves
    double error;
    int depth;
  };
  IntegralEstimate out;
  auto make_panel = [&](double a, double b, double whole, int depth) {
    const double mid = 0.5 * (a + b);
    const double left = gauss_panel(f, a, mid, out.evaluations);
    const double right = gauss_panel(f, mid, b, out.evaluations);
    return Panel{a, b, left, right, std::abs(left + right - whole), depth};
  };

  std::vector<Panel> panels;
  panels.push_back(make_panel(lo, hi, gauss_panel(f, lo, hi, out.evaluations), 0));
  constexpr std::size_t kMaxPanels = 4096;
  while (true) {
    double total = 0.0;
    double error = 0.0;
    for (const Panel& p : panels) {
      total += p.left + p.right;
      error += p.error;
    }
    out.value = total;
    out.error_estimate = error;
    if (!std::isfinite(total)) return out;
    if (error <= tolerance_for(spec, total)) {
      out.converged = true;
      return out;
    }
    auto worst = panels.end();
    for (auto it = panels.begin(); it != panels.end(); ++it) {
      if (it->depth < spec.max_refinement && (worst == panels.end() || it->error > worst->error)) {
        worst = it;
      }
    }
    if (worst == panels.end() || panels.size() >= kMaxPanels) return out;
    const Panel parent = *worst;
    const double mid = 0.5 * (parent.lo + parent.hi);
    *worst = make_panel(parent.lo, mid, parent.left, parent.depth + 1);
    panels.push_back(make_panel(mid, parent.hi, parent.right, parent.depth + 1));
  }
}

IntegralEstimate double_exponential(const Integrand1D& f, double lo, double hi,
                                    const QuadratureSpec& spec) {
  constexpr double kHalfPi = 0.5 * std::numbers::pi;
  constexpr double kTMax = 4.5;
  const double half = 0.5 * (hi - lo);
  IntegralEstimate out;

  // Contribution of abscissa t to the (unscaled by step) sum.
  auto contribution = [&](double t) {
    const double u = kHalfPi * std::sinh(t);
    const double e = std::exp(-2.0 * std::abs(u));
    const double offset = half * 2.0 * e / (1.0 + e);
    const double weight = half * kHalfPi * std::cosh(t) * 4.0 * e / ((1.0 + e) * (1.0 + e));
    if (offset == 0.0 || weight == 0.0) return 0.0;
    const double x = t < 0.0 ? lo + offset : hi - offset;
    if (x <= lo || x >= hi) return 0.0;
    ++out.evaluations;
    const double fx = f(x);
    return std::isfinite(fx) ? weight * fx : 0.0;
  };

  double h = 1.0;
  double sum = contribution(0.0);
  for (int j = 1; j * h <= kTMax; ++j) sum += contribution(j * h) + contribution(-j * h);
  double previous = h * sum;
  out.value = previous;
  out.error_estimate = std::abs(previous);

  for (int level = 1; level <= spec.max_refinement; ++level) {
    h *= 0.5;
    for (int j = 1; j * h <= kTMax; j += 2) sum += contribution(j * h) + contribution(-j * h);
    const double current = h * sum;
    out.value = current;
    out.error_estimate = std::abs(current - previous);
    if (level >= 3 && out.error_estimate <= tolerance_for(spec, current)) {
      out.converged = true;
      return out;
    }
    previous = current;
  }
  return out;
}

std::string_view to_string(IntegrandId id) noexcept {
  switch (id) {
    case IntegrandId::unit: return "unit";
    case IntegrandId::power_ratio: return "power_ratio";
    case IntegrandId::log_weight: return "log_weight";
    case IntegrandId::shifted_beta: return "shifted_beta";
    case IntegrandId::symmetric_beta: return "symmetric_beta";
    case IntegrandId::shifted_beta_substituted: return "shifted_beta_substituted";
    case IntegrandId::symmetric_beta_substituted: return "symmetric_beta_substituted";
  }
  return "unknown";
}

IntegrandDefinition make_integrand(IntegrandId id, const Bindings& bindings, double z) {
  switch (id) {
    case IntegrandId::unit:
      return {[](double) { return 1.0; }, 0.0, 1.0};
    case IntegrandId::power_ratio: {
      const double a = slot(bindings, "a");
      require(z < 1.0, "power_ratio needs z < 1");
      return {[a](double t) {
                if (t == 1.0) return -a;
                const double log_t = std::log(t);
                return std::expm1(a * log_t) / (std::exp(a * log_t) * (1.0 - t));
              },
              1.0 - z, 1.0};
    }
    case IntegrandId::log_weight: {
      const double a = slot(bindings, "a");
      require(z < 1.0, "log_weight needs z < 1");
      return {[a, z](double y) { return std::log(y) / std::pow(1.0 - y * z, a + 1.0); }, 0.0,
              1.0};
    }
    case IntegrandId::shifted_beta: {
      const double a = slot(bindings, "a");
      const double b = slot(bindings, "b");
      require(z > 0.0 && z <= 1.0, "shifted_beta needs 0 < z <= 1");
      const double length = z / (1.0 + std::sqrt(1.0 - z));
      return {[a, b](double u) { return std::pow(u, a - 1.0) * std::pow(2.0 - u, a - 2.0 * b); },
              0.0, length};
    }
    case IntegrandId::symmetric_beta: {
      const double a = slot(bindings, "a");
      const double b = slot(bindings, "b");
      require(z > 0.0 && z < 1.0, "symmetric_beta needs 0 < z < 1");
      return {[a, b](double y) {
                return std::pow(y, 2.0 * a - 1.0) *
                       (std::pow(1.0 + y, -2.0 * b) + std::pow(1.0 - y, -2.0 * b));
              },
              0.0, std::sqrt(z)};
    }
    case IntegrandId::shifted_beta_substituted: {
      const double a = slot(bindings, "a");
      const double b = slot(bindings, "b");
      require(a > 0.0, "shifted_beta_substituted needs a > 0");
      require(z > 0.0 && z <= 1.0, "shifted_beta_substituted needs 0 < z <= 1");
      const double length = z / (1.0 + std::sqrt(1.0 - z));
      return {[a, b](double s) { return std::pow(2.0 - std::pow(s, 1.0 / a), a - 2.0 * b); }, 0.0,
              std::pow(length, a)};
    }
    case IntegrandId::symmetric_beta_substituted: {
      const double a = slot(bindings, "a");
      const double b = slot(bindings, "b");
      require(a > 0.0, "symmetric_beta_substituted needs a > 0");
      require(z > 0.0 && z < 1.0, "symmetric_beta_substituted needs 0 < z < 1");
      return {[a, b](double s) {
                const double y = std::pow(s, 0.5 / a);
                return std::pow(1.0 + y, -2.0 * b) + std::pow(1.0 - y, -2.0 * b);
              },
              0.0, std::pow(z, a)};
    }
  }
  throw std::invalid_argument("unknown integrand");
}

IntegralEstimate integrate(IntegrandId id, const Bindings& bindings, double z,
                           const QuadratureSpec& spec) {
  if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0) || spec.max_refinement < 1) {
    throw std::invalid_argument("quadrature tolerances must be positive and max_refinement >= 1");
  }
  const IntegrandDefinition def = make_integrand(id, bindings, z);
  return spec.rule == QuadratureRule::gauss_legendre_adaptive
             ? gauss_legendre_adaptive(def.f, def.lo, def.hi, spec)
             : double_exponential(def.f, def.lo, def.hi, spec);
}

std::string_view to_string(Representation rep) noexcept {
  switch (rep) {
    case Representation::i1: return "I1";
    case Representation::i2: return "I2";
    case Representation::i30: return "I30";
    case Representation::i31: return "I31";
  }
  return "unknown";
}

Representation parse_representation(std::string_view id) {
  if (id == "I1") return Representation::i1;
  if (id == "I2") return Representation::i2;
  if (id == "I30") return Representation::i30;
  if (id == "I31") return Representation::i31;
  throw std::invalid_argument("unknown integral representation '" + std::string(id) + "'");
}

HypergeometricSpec oracle_target(Representation rep, const Bindings& bindings, double z) {
  const double a = slot(bindings, "a");
  switch (rep) {
    case Representation::i1:
    case Representation::i2: return {{a + 1.0, 1.0, 1.0}, {2.0, 2.0}, z};
    case Representation::i30: {
      const double b = slot(bindings, "b");
      return {{a, b, b + 0.5}, {a + 1.0, 2.0 * b}, z};
    }
    case Representation::i31: {
      const double b = slot(bindings, "b");
      return {{a, b, b + 0.5}, {a + 1.0, 0.5}, z};
    }
  }
  throw std::invalid_argument("unknown integral representation");
}

void check_oracle_applicable(Representation rep, const Bindings& bindings, double z) {
  const std::string name(to_string(rep));
  require(z > 0.0 && z < 1.0, name + " is used only for 0 < z < 1");
  const double a = slot(bindings, "a");
  switch (rep) {
    case Representation::i1:
      require(std::abs(a) > kIntegerTolerance, "I1 needs a != 0");
      break;
    case Representation::i2: break;
    case Representation::i30:
    case Representation::i31: {
      const double b = slot(bindings, "b");
      require(a > kIntegerTolerance, name + " needs a > 0 for the integral to converge");
      require(std::abs(b) > kIntegerTolerance, name + " needs b != 0");
      if (rep == Representation::i30) {
        require(!is_nonpositive_integer(2.0 * b), "I30 needs 2b off the non-positive integers");
      }
      break;
    }
  }
}

OracleResult oracle_3f2(Representation rep, const Bindings& bindings, double z,
                        const QuadratureSpec& spec) {
  check_oracle_applicable(rep, bindings, z);
  const double a = slot(bindings, "a");
  QuadratureSpec rule = spec;
  OracleResult out;
  switch (rep) {
    case Representation::i1:
      rule.rule = QuadratureRule::gauss_legendre_adaptive;
      out.integral = integrate(IntegrandId::power_ratio, bindings, z, rule);
      // interval [1, 1-z] reversed
      out.value = -out.integral.value / (a * z);
      break;
    case Representation::i2:
      rule.rule = QuadratureRule::double_exponential;
      out.integral = integrate(IntegrandId::log_weight, bindings, z, rule);
      out.value = -out.integral.value;
      break;
    case Representation::i30: {
      const double b = slot(bindings, "b");
      rule.rule = QuadratureRule::double_exponential;
      out.integral = integrate(IntegrandId::shifted_beta_substituted, bindings, z, rule);
      out.value = std::pow(4.0, b) / std::pow(z, a) * out.integral.value;
      break;
    }
    case Representation::i31:
      rule.rule = QuadratureRule::double_exponential;
      out.integral = integrate(IntegrandId::symmetric_beta_substituted, bindings, z, rule);
      out.value = 0.5 / std::pow(z, a) * out.integral.value;
      break;
  }
  if (!out.integral.converged) {
    throw QuadratureError(std::string(to_string(rep)) + " quadrature did not converge",
                          out.integral);
  }
  return out;
}

}  // namespace hyperred
