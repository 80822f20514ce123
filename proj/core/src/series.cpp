#include "hyperred/series.hpp"

#include "compensated.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace hyperred {

namespace {

double parameter_sum(const std::vector<double>& values) {
  return std::accumulate(values.begin(), values.end(), 0.0);
}

double largest_magnitude(const HypergeometricSpec& spec) {
  double m = 0.0;
  for (double a : spec.numerator) m = std::max(m, std::abs(a));
  for (double b : spec.denominator) m = std::max(m, std::abs(b));
  return m;
}

using detail::Compensated;

// term_{j+1} / term_j
double term_ratio(const HypergeometricSpec& spec, double j) {
  double r = spec.argument / (j + 1.0);
  for (double a : spec.numerator) r *= a + j;
  for (double b : spec.denominator) r /= b + j;
  return r;
}

double residue(const std::vector<double>& residues, std::size_t i) {
  return i < residues.size() ? residues[i] : 0.0;
}

// The same ratio carried with its rounding error; a + j is formed exactly.
Compensated compensated_ratio(const HypergeometricSpec& spec, double j) {
  Compensated r = Compensated(spec.argument) / Compensated(j + 1.0);
  for (std::size_t i = 0; i < spec.numerator.size(); ++i) {
    r = r * (detail::two_sum(spec.numerator[i], j) + residue(spec.numerator_residue, i));
  }
  for (std::size_t i = 0; i < spec.denominator.size(); ++i) {
    r = r / (detail::two_sum(spec.denominator[i], j) + residue(spec.denominator_residue, i));
  }
  return r;
}

// Running term and partial sum, both compensated.
class SeriesAccumulator {
 public:
  explicit SeriesAccumulator(const HypergeometricSpec& spec) : spec_(spec) {}

  void advance(std::size_t j) {
    term_ = term_ * compensated_ratio(spec_, static_cast<double>(j));
    sum_ = sum_ + term_;
  }
  double sum() const noexcept { return sum_.value(); }
  double term() const noexcept { return term_.value(); }

 private:
  const HypergeometricSpec& spec_;
  Compensated term_{1.0};
  Compensated sum_{1.0};
};

EvalStatus status_for(double estimate, double value, double tol) {
  return estimate <= tol * std::abs(value) ? EvalStatus::converged
                                           : EvalStatus::max_terms_reached;
}

// z = +1, s = sum(b) - sum(a) > 0. Partial sums behave like
// S + c0 N^-s + c1 N^-(s+1) + ..., so three Richardson sweeps on
// N0, 2 N0, 4 N0, 8 N0 remove the leading three error terms.
EvalResult sum_at_plus_one(const HypergeometricSpec& spec, double tol, std::size_t max_terms) {
  const double s = parameter_sum(spec.denominator) - parameter_sum(spec.numerator);
  std::size_t base = std::max<std::size_t>(
      4096, static_cast<std::size_t>(64.0 * (1.0 + largest_magnitude(spec))));
  if (8 * base > max_terms) base = max_terms / 8;
  if (base < 16) {
    throw DomainError("max_terms too small for a unit-argument sum");
  }

  std::array<double, 4> partial{};
  SeriesAccumulator series(spec);
  std::size_t used = 1;
  std::size_t checkpoint = 0;
  std::size_t next_mark = base;
  for (std::size_t j = 0; checkpoint < partial.size(); ++j) {
    if (used == next_mark) {
      partial[checkpoint++] = series.sum();
      next_mark *= 2;
      if (checkpoint == partial.size()) break;
    }
    series.advance(j);
    ++used;
    if (!std::isfinite(series.sum())) {
      return {series.sum(), used, std::numeric_limits<double>::infinity(), EvalStatus::diverged};
    }
  }

  std::vector<double> level(partial.begin(), partial.end());
  double previous = level.back();
  for (int m = 0; m < 3; ++m) {
    const double factor = std::pow(2.0, s + m);
    std::vector<double> next(level.size() - 1);
    for (std::size_t i = 0; i + 1 < level.size(); ++i) {
      next[i] = (factor * level[i + 1] - level[i]) / (factor - 1.0);
    }
    previous = level.back();
    level = std::move(next);
  }
  const double value = level.front();
  const double estimate = std::abs(value - previous);
  return {value, used, estimate, status_for(estimate, value, tol)};
}

// z = -1, s > -1. The tail alternates once j exceeds every |parameter|;
// repeated averaging of the last partial sums cancels the oscillation.
EvalResult sum_at_minus_one(const HypergeometricSpec& spec, double tol, std::size_t max_terms) {
  constexpr std::size_t kLevels = 12;
  const std::size_t target = std::min(
      max_terms, std::max<std::size_t>(
                     2048, static_cast<std::size_t>(64.0 * (1.0 + largest_magnitude(spec)))));
  if (target <= kLevels + 1) {
    throw DomainError("max_terms too small for a unit-argument sum");
  }

  std::vector<double> tail_sums;
  tail_sums.reserve(kLevels + 1);
  SeriesAccumulator series(spec);
  std::size_t used = 1;
  for (std::size_t j = 0; used < target; ++j) {
    series.advance(j);
    ++used;
    if (!std::isfinite(series.sum())) {
      return {series.sum(), used, std::numeric_limits<double>::infinity(), EvalStatus::diverged};
    }
    if (used + kLevels >= target) tail_sums.push_back(series.sum());
  }

  double estimate = std::abs(series.term());
  while (tail_sums.size() > 1) {
    if (tail_sums.size() == 2) estimate = 0.5 * std::abs(tail_sums[1] - tail_sums[0]);
    for (std::size_t i = 0; i + 1 < tail_sums.size(); ++i) {
      tail_sums[i] = 0.5 * (tail_sums[i] + tail_sums[i + 1]);
    }
    tail_sums.pop_back();
  }
  const double value = tail_sums.front();
  return {value, used, estimate, status_for(estimate, value, tol)};
}

}  // namespace

std::string_view to_string(EvalStatus status) noexcept {
  switch (status) {
    case EvalStatus::converged: return "converged";
    case EvalStatus::terminated: return "terminated";
    case EvalStatus::max_terms_reached: return "max_terms_reached";
    case EvalStatus::diverged: return "diverged";
  }
  return "unknown";
}

int severity(EvalStatus status) noexcept {
  switch (status) {
    case EvalStatus::terminated: return 0;
    case EvalStatus::converged: return 1;
    case EvalStatus::max_terms_reached: return 2;
    case EvalStatus::diverged: return 3;
  }
  return 3;
}

std::string_view to_string(ConvergenceKind kind) noexcept {
  switch (kind) {
    case ConvergenceKind::entire: return "entire";
    case ConvergenceKind::unit_disk: return "unit_disk";
    case ConvergenceKind::terminating: return "terminating";
    case ConvergenceKind::divergent: return "divergent";
  }
  return "unknown";
}

double pochhammer(double a, unsigned n) noexcept {
  double r = 1.0;
  for (unsigned i = 0; i < n; ++i) r *= a + i;
  return r;
}

double falling_factorial(double n, unsigned k) noexcept {
  double r = 1.0;
  for (unsigned i = 0; i < k; ++i) r *= n - i;
  return r;
}

double binomial(unsigned n, unsigned k) noexcept {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::optional<unsigned> nonpositive_integer(double x, double tol) noexcept {
  if (!std::isfinite(x) || x > tol) return std::nullopt;
  const double nearest = std::round(x);
  if (nearest > 0.0 || std::abs(x - nearest) > tol) return std::nullopt;
  return static_cast<unsigned>(-nearest);
}

void validate(const HypergeometricSpec& spec) {
  if (spec.p() > kMaxParameters || spec.q() > kMaxParameters) {
    throw ArityError("at most " + std::to_string(kMaxParameters) +
                     " numerator and denominator parameters are supported: " + describe(spec));
  }
  for (double a : spec.numerator) {
    if (!std::isfinite(a)) throw DomainError("non-finite numerator parameter in " + describe(spec));
  }
  for (double b : spec.denominator) {
    if (!std::isfinite(b)) {
      throw DomainError("non-finite denominator parameter in " + describe(spec));
    }
    if (is_nonpositive_integer(b)) {
      throw DomainError("denominator parameter is zero or a negative integer in " +
                        describe(spec));
    }
  }
  if (!std::isfinite(spec.argument)) throw DomainError("non-finite argument in " + describe(spec));
  const auto sized = [](const std::vector<double>& residues, std::size_t n) {
    return residues.empty() || residues.size() == n;
  };
  if (!sized(spec.numerator_residue, spec.p()) || !sized(spec.denominator_residue, spec.q())) {
    throw std::invalid_argument("parameter residues do not match the parameters of " +
                                describe(spec));
  }
}

SplitValue split_sum(std::initializer_list<double> addends) noexcept {
  Compensated total;
  for (double x : addends) total = total + Compensated(x);
  return {total.hi, total.lo};
}

HypergeometricSpec split_spec(const std::vector<SplitValue>& numerator,
                              const std::vector<SplitValue>& denominator, double argument) {
  HypergeometricSpec spec;
  spec.argument = argument;
  for (const SplitValue& v : numerator) {
    spec.numerator.push_back(v.value);
    spec.numerator_residue.push_back(v.residue);
  }
  for (const SplitValue& v : denominator) {
    spec.denominator.push_back(v.value);
    spec.denominator_residue.push_back(v.residue);
  }
  return spec;
}

HypergeometricSpec cancel_parameters(HypergeometricSpec spec) {
  const auto erase = [](std::vector<double>& v, std::size_t i) {
    if (i < v.size()) v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
  };
  for (std::size_t i = 0; i < spec.numerator.size();) {
    const double a = spec.numerator[i];
    auto match = std::find_if(spec.denominator.begin(), spec.denominator.end(),
                              [a](double b) { return std::abs(a - b) <= kIntegerTolerance; });
    if (match != spec.denominator.end()) {
      const auto k = static_cast<std::size_t>(match - spec.denominator.begin());
      erase(spec.denominator, k);
      erase(spec.denominator_residue, k);
      erase(spec.numerator, i);
      erase(spec.numerator_residue, i);
    } else {
      ++i;
    }
  }
  return spec;
}

ConvergenceClass classify_convergence(const HypergeometricSpec& spec) {
  const HypergeometricSpec reduced = cancel_parameters(spec);
  ConvergenceClass out;
  if (reduced.p() == reduced.q() + 1) {
    const double excess = parameter_sum(reduced.denominator) - parameter_sum(reduced.numerator);
    out.boundary_convergent = reduced.argument == -1.0 ? excess > -1.0 : excess > 0.0;
  }
  if (std::any_of(reduced.numerator.begin(), reduced.numerator.end(),
                  [](double a) { return is_nonpositive_integer(a); })) {
    out.kind = ConvergenceKind::terminating;
  } else if (reduced.p() <= reduced.q()) {
    out.kind = ConvergenceKind::entire;
  } else if (reduced.p() == reduced.q() + 1) {
    out.kind = ConvergenceKind::unit_disk;
  } else {
    out.kind = ConvergenceKind::divergent;
  }
  return out;
}

EvalResult eval_pfq(const HypergeometricSpec& spec, double tol, std::size_t max_terms) {
  validate(spec);
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (max_terms == 0) throw std::invalid_argument("max_terms must be positive");

  HypergeometricSpec reduced = cancel_parameters(spec);
  std::optional<unsigned> last_index;
  for (std::size_t i = 0; i < reduced.numerator.size(); ++i) {
    if (auto m = nonpositive_integer(reduced.numerator[i])) {
      reduced.numerator[i] = -static_cast<double>(*m);
      if (i < reduced.numerator_residue.size()) reduced.numerator_residue[i] = 0.0;
      last_index = last_index ? std::min(*last_index, *m) : *m;
    }
  }
  const double z = reduced.argument;

  if (last_index) {
    SeriesAccumulator series(reduced);
    for (unsigned j = 0; j < *last_index && z != 0.0; ++j) series.advance(j);
    const double sum = series.sum();
    const std::size_t used = z == 0.0 ? 1 : *last_index + 1;
    if (!std::isfinite(sum)) {
      return {sum, used, std::numeric_limits<double>::infinity(), EvalStatus::diverged};
    }
    return {sum, used, 0.0, EvalStatus::terminated};
  }
  if (z == 0.0) return {1.0, 1, 0.0, EvalStatus::converged};

  const ConvergenceClass cls = classify_convergence(reduced);
  if (cls.kind == ConvergenceKind::divergent) {
    throw DomainError("series with p > q+1 diverges for nonzero argument: " + describe(spec));
  }
  if (cls.kind == ConvergenceKind::unit_disk) {
    if (std::abs(z) > 1.0) {
      throw DomainError("argument outside the unit disk: " + describe(spec));
    }
    if (std::abs(z) == 1.0) {
      if (!cls.boundary_convergent) {
        throw DomainError("series does not converge on the unit circle: " + describe(spec));
      }
      return z > 0.0 ? sum_at_plus_one(reduced, tol, max_terms)
                     : sum_at_minus_one(reduced, tol, max_terms);
    }
  }

  // Past this index every factor (a+j), (b+j) keeps its sign and |ratio| is
  // eventually monotone, so the geometric tail bound is meaningful.
  const double settle = std::ceil(largest_magnitude(reduced)) + 1.0;
  SeriesAccumulator series(reduced);
  std::size_t used = 1;
  for (std::size_t j = 0; used < max_terms; ++j) {
    const double jd = static_cast<double>(j);
    series.advance(j);
    const double sum = series.sum();
    const double term = series.term();
    ++used;
    if (!std::isfinite(sum)) {
      return {sum, used, std::numeric_limits<double>::infinity(), EvalStatus::diverged};
    }
    if (jd + 1.0 >= settle) {
      const double next = std::abs(term_ratio(reduced, jd + 1.0));
      if (next < 1.0) {
        const double tail = std::abs(term) * next / (1.0 - next);
        if (tail <= tol * std::abs(sum)) return {sum, used, tail, EvalStatus::converged};
      }
    }
  }
  return {series.sum(), used, std::abs(series.term()), EvalStatus::max_terms_reached};
}

double hypergeometric(std::vector<double> numerator, std::vector<double> denominator,
                      double argument) {
  return eval_pfq({std::move(numerator), std::move(denominator), argument}).value;
}

std::string describe(const HypergeometricSpec& spec) {
  std::ostringstream out;
  out.precision(17);
  out << spec.p() << "F" << spec.q() << "(";
  for (std::size_t i = 0; i < spec.numerator.size(); ++i) {
    out << (i ? ", " : "") << spec.numerator[i];
  }
  out << "; ";
  for (std::size_t i = 0; i < spec.denominator.size(); ++i) {
    out << (i ? ", " : "") << spec.denominator[i];
  }
  out << "; " << spec.argument << ")";
  return out.str();
}

}  // namespace hyperred
