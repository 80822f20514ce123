#ifndef HYPERRED_VERIFIER_HPP
#define HYPERRED_VERIFIER_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hyperred/bindings.hpp"
#include "hyperred/quadrature.hpp"
#include "hyperred/reductions.hpp"
#include "hyperred/transforms.hpp"

namespace hyperred {

struct SamplingPlan {
  std::uint64_t seed = 1;
  std::size_t samples_per_identity = 100;
  double parameter_lo = -5.0;
  double parameter_hi = 5.0;
  /// Fixed arguments, intersected with each record's domain and |z| <= z_limit.
  std::vector<double> z_grid = {-0.9, -0.75, -0.5, -0.25, -0.05, 0.05, 0.25, 0.5, 0.75, 0.9};
  std::size_t random_z_per_binding = 5;
  double rejection_margin = 1e-3;
  unsigned integral_max = 12;
  double z_limit = 0.9;
  /// Worker threads for verify_suite; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

struct ComparisonPolicy {
  double tol_rel = 1e-9;
  /// Used when |z| > 0.9 or a p = q+1 series runs within 0.05 of its radius.
  double tol_rel_boundary = 1e-6;
  double abs_floor = 1e-300;
  /// Used for any comparison that involves a quadrature value.
  double tol_rel_quadrature = 1e-8;
};

struct Comparison {
  double rel_error = 0.0;
  bool pass = false;
  std::string diagnostic;
};

/// rel_error = |x - y| / max(|x|, |y|, abs_floor); non-finite input fails.
Comparison compare(double x, double y, const ComparisonPolicy& policy, bool boundary);

/// Raised when the constraint rejection rate exceeds 99%.
class SamplingExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BindingDraw {
  std::vector<Bindings> bindings;
  std::size_t attempted = 0;
  std::size_t rejected = 0;
};

/// Deterministic in (plan.seed, record.id).
BindingDraw sample_bindings(const IdentityRecord& record, const SamplingPlan& plan);

/// Arguments used for one binding: the grid, closed endpoints of the domain,
/// then random draws from the domain (each open end pulled in by 5% of the width).
std::vector<double> sample_arguments(const Interval& domain, const SamplingPlan& plan,
                                     std::string_view stream, std::size_t index);

struct PathValue {
  std::string path;
  double value = 0.0;
};

/// One (bindings, z) sample: every path value and the worst pairwise comparison.
struct SampleComparison {
  Bindings bindings;
  double z = 0.0;
  std::vector<PathValue> values;
  std::string path_a;
  std::string path_b;
  double rel_error = 0.0;
  double tolerance = 0.0;
  bool boundary = false;
  bool passed = true;
};

struct SampleError {
  Bindings bindings;
  double z = 0.0;
  std::string message;
};

struct VerificationReport {
  std::string id;
  std::string kind;  ///< identity, relation, oracle or transform
  std::size_t samples_attempted = 0;
  std::size_t samples_rejected = 0;
  std::vector<SampleComparison> comparisons;
  std::vector<SampleError> errors;
  std::vector<std::size_t> failures;  ///< indices into comparisons
  double max_rel_error = 0.0;
  bool passed = false;
  bool no_data = false;
};

VerificationReport verify_identity(const IdentityRecord& record, const SamplingPlan& plan,
                                   const ComparisonPolicy& policy);

/// Residual checks: rel_error is |residual| / scale against policy.tol_rel.
VerificationReport verify_relation(ContiguousRelation relation, const SamplingPlan& plan,
                                   const ComparisonPolicy& policy);

/// Quadrature value against the series value of the target, z in (0.05, 0.9).
/// The I2 report also compares I1 and I2 against each other at policy.tol_rel.
VerificationReport verify_oracle(Representation representation, const SamplingPlan& plan,
                                 const ComparisonPolicy& policy);

/// Kummer involution (1e-12), Euler and Pfaff value preservation (1e-11) and
/// shift decomposition for k = 0..3 (1e-10).
std::vector<VerificationReport> verify_transforms(const SamplingPlan& plan);

/// 17 identity reports, 4 relation reports, 4 oracle reports, in catalog order;
/// optionally followed by the transform reports.
std::vector<VerificationReport> verify_suite(const SamplingPlan& plan,
                                             const ComparisonPolicy& policy,
                                             bool include_transforms = false);

inline bool all_passed(const std::vector<VerificationReport>& reports) {
  for (const auto& r : reports) {
    if (!r.passed) return false;
  }
  return true;
}

}  // namespace hyperred

#endif  // HYPERRED_VERIFIER_HPP
