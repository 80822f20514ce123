#ifndef HYPERRED_SERIES_HPP
#define HYPERRED_SERIES_HPP

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hyperred {

/// Parameter or argument outside the region where a function is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Wrong number of numerator/denominator parameters for an operation.
class ArityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A parameter this close to a non-positive integer is treated as that integer.
inline constexpr double kIntegerTolerance = 1e-9;
inline constexpr double kDefaultTolerance = 1e-13;
inline constexpr std::size_t kDefaultMaxTerms = 100000;
inline constexpr std::size_t kMaxParameters = 4;

/// One instance pFq(a_1..a_p; b_1..b_q; z).
struct HypergeometricSpec {
  std::vector<double> numerator;
  std::vector<double> denominator;
  double argument = 0.0;
  /// Optional rounding residues: parameter i stands for numerator[i] + numerator_residue[i].
  /// Empty means the parameters are exact as stored.
  std::vector<double> numerator_residue;
  std::vector<double> denominator_residue;

  std::size_t p() const noexcept { return numerator.size(); }
  std::size_t q() const noexcept { return denominator.size(); }

  friend bool operator==(const HypergeometricSpec&, const HypergeometricSpec&) = default;
};

/// A sum of binary64 values as its rounded value plus the rounding residue.
struct SplitValue {
  double value = 0.0;
  double residue = 0.0;
};

SplitValue split_sum(std::initializer_list<double> addends) noexcept;

/// Spec whose parameters are given as split sums.
HypergeometricSpec split_spec(const std::vector<SplitValue>& numerator,
                              const std::vector<SplitValue>& denominator, double argument);

enum class EvalStatus { converged, terminated, max_terms_reached, diverged };

std::string_view to_string(EvalStatus status) noexcept;

/// Larger is worse: terminated < converged < max_terms_reached < diverged.
int severity(EvalStatus status) noexcept;

struct EvalResult {
  double value = 0.0;
  std::size_t terms_used = 0;
  /// Magnitude of the omitted tail (or of the extrapolation correction on |z| = 1).
  double tail_estimate = 0.0;
  EvalStatus status = EvalStatus::converged;
};

enum class ConvergenceKind { entire, unit_disk, terminating, divergent };

std::string_view to_string(ConvergenceKind kind) noexcept;

struct ConvergenceClass {
  ConvergenceKind kind = ConvergenceKind::entire;
  /// For p = q+1: whether the series converges on |z| = 1 at the spec's argument
  /// sign. At z = -1 this needs sum(b) - sum(a) > -1, otherwise > 0.
  bool boundary_convergent = false;
};

/// Rising factorial (a)_n = a (a+1) ... (a+n-1).
double pochhammer(double a, unsigned n) noexcept;

/// Falling factorial n (n-1) ... (n-k+1).
double falling_factorial(double n, unsigned k) noexcept;

/// Binomial coefficient by multiplicative recurrence; exact in binary64 for n <= 50.
double binomial(unsigned n, unsigned k) noexcept;

/// Returns m if x is within tol of the non-positive integer -m.
std::optional<unsigned> nonpositive_integer(double x, double tol = kIntegerTolerance) noexcept;

inline bool is_nonpositive_integer(double x, double tol = kIntegerTolerance) noexcept {
  return nonpositive_integer(x, tol).has_value();
}

/// Throws DomainError/ArityError when the spec violates its invariants.
void validate(const HypergeometricSpec& spec);

/// Removes numerator/denominator pairs equal within kIntegerTolerance.
HypergeometricSpec cancel_parameters(HypergeometricSpec spec);

ConvergenceClass classify_convergence(const HypergeometricSpec& spec);

/// Reference evaluator: direct summation of the defining series via the
/// term-ratio recurrence. On |z| = 1 the partial sums are extrapolated
/// (Richardson in N^-s for z = 1, repeated averaging for z = -1).
EvalResult eval_pfq(const HypergeometricSpec& spec, double tol = kDefaultTolerance,
                    std::size_t max_terms = kDefaultMaxTerms);

/// Shorthand for eval_pfq(...).value with default controls.
double hypergeometric(std::vector<double> numerator, std::vector<double> denominator,
                      double argument);

std::string describe(const HypergeometricSpec& spec);

}  // namespace hyperred

#endif  // HYPERRED_SERIES_HPP
