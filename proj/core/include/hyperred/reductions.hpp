#ifndef HYPERRED_REDUCTIONS_HPP
#define HYPERRED_REDUCTIONS_HPP

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hyperred/bindings.hpp"
#include "hyperred/quadrature.hpp"
#include "hyperred/transforms.hpp"

namespace hyperred {

/// constant + sum coefficient * slot, parsed from text such as "1+a-b", "a/2+e/2" or "2b-n+1".
class AffineCombination {
 public:
  explicit AffineCombination(std::string_view text);

  double operator()(const Bindings& bindings) const;
  const std::string& text() const noexcept { return text_; }

 private:
  std::string text_;
  double constant_ = 0.0;
  std::vector<std::pair<std::string, double>> coefficients_;
};

struct ConstraintSet {
  /// Must stay off {0, -1, -2, ...}.
  std::vector<AffineCombination> integer_exclusions;
  /// Must be nonzero.
  std::vector<AffineCombination> nonzero;
  /// Slots that must hold nonnegative integers.
  std::vector<std::string> integral;
};

/// Description of the first violated constraint, if any. `margin` widens every
/// exclusion: a combination within margin of an excluded value counts as a violation.
std::optional<std::string> find_violation(const ConstraintSet& constraints,
                                          const Bindings& bindings,
                                          double margin = kIntegerTolerance);

/// Throws ConstraintError naming the violated combination.
void check_constraints(const ConstraintSet& constraints, const Bindings& bindings);

struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool lo_closed = false;
  bool hi_closed = false;

  bool contains(double z) const noexcept;
  bool is_point() const noexcept { return lo == hi; }
};

std::string to_string(const Interval& interval);

using SideBuilder = std::function<Expression(const Bindings&, double)>;
using ClosedForm = std::function<double(const Bindings&, double)>;

/// An extra evaluation path for the same function, e.g. a step of a proof chain.
struct NamedForm {
  std::string name;
  SideBuilder build;
};

/// A quadrature representation whose 3F2 equals the identity's left side.
struct OracleLink {
  Representation representation;
  std::function<Bindings(const Bindings&)> bindings;
};

struct IdentityRecord {
  std::string id;
  int equation = 0;
  std::string statement;
  std::vector<std::string> slots;
  ConstraintSet constraints;
  Interval domain;
  SideBuilder lhs;
  SideBuilder rhs;
  std::vector<NamedForm> intermediates;
  ClosedForm closed_form;
  std::vector<OracleLink> oracles;
};

/// All 17 catalogued identities, in a fixed order.
std::span<const IdentityRecord> catalog();

/// Throws std::out_of_range for an unknown id.
const IdentityRecord& lookup(std::string_view id);

/// Checks constraints and domain, then builds both sides.
std::pair<Expression, Expression> instantiate_sides(std::string_view id, const Bindings& bindings,
                                                    double z);

/// Pochhammer-ratio side of T7, T8 or T9 for the given n; bindings hold a and b.
double terminating_closed_form(std::string_view id, const Bindings& bindings, unsigned n);

/// Elementary right side of S35 ... S41. Throws std::invalid_argument for other ids.
double closed_form(std::string_view id, const Bindings& bindings, double z);

/// Crossover below which |1 - 2b| switches the S38 form to its expansion about b = 1/2.
inline constexpr double kLimitCrossover = 1e-4;

/// [(1+sqrt z)^{1-2b} - (1-sqrt z)^{1-2b}] / (2 sqrt(z) (1-2b)), 0 < z < 1, b != 1/2.
double half_power_difference(double b, double z);

/// The same quotient from the third-order expansion in (1-2b); at b = 1/2 it is
/// artanh(sqrt z)/sqrt z.
double half_power_difference_expansion(double b, double z);

}  // namespace hyperred

#endif  // HYPERRED_REDUCTIONS_HPP
