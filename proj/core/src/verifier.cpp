#include "hyperred/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <sstream>
#include <thread>

namespace hyperred {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

// Counter-based generator: draw i of stream k is mix(k + i * golden).
class Stream {
 public:
  Stream(std::uint64_t seed, std::string_view name, std::uint64_t index = 0)
      : key_(mix(mix(seed ^ fnv1a(name)) + index * kGolden)) {}

  std::uint64_t next() { return mix(key_ + ++counter_ * kGolden); }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  unsigned integer(unsigned max_inclusive) {
    return static_cast<unsigned>(next() % (static_cast<std::uint64_t>(max_inclusive) + 1));
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

struct SlotSpace {
  std::vector<std::string> slots;
  ConstraintSet constraints;
  std::function<bool(const Bindings&)> accept;
};

BindingDraw draw_bindings(const SlotSpace& space, const SamplingPlan& plan,
                          std::string_view stream_name) {
  BindingDraw out;
  const std::size_t wanted = plan.samples_per_identity;
  const std::size_t budget = 100 * wanted + 100;
  Stream stream(plan.seed, stream_name);
  const auto& integral = space.constraints.integral;
  while (out.bindings.size() < wanted) {
    if (out.attempted >= budget) {
      throw SamplingExhausted(std::string(stream_name) + ": rejected " +
                              std::to_string(out.rejected) + " of " +
                              std::to_string(out.attempted) + " draws");
    }
    ++out.attempted;
    Bindings b;
    for (const std::string& name : space.slots) {
      const bool is_integral = std::find(integral.begin(), integral.end(), name) != integral.end();
      b[name] = is_integral ? static_cast<double>(stream.integer(plan.integral_max))
                            : stream.uniform(plan.parameter_lo, plan.parameter_hi);
    }
    if (find_violation(space.constraints, b, plan.rejection_margin) ||
        (space.accept && !space.accept(b))) {
      ++out.rejected;
      continue;
    }
    out.bindings.push_back(std::move(b));
  }
  return out;
}

bool near_radius(const Expression& expr, double z_limit) {
  constexpr double kRadiusMargin = 0.05;
  bool series = false;
  for (const Term& t : expr.terms) {
    const HypergeometricSpec spec = cancel_parameters(t.function);
    const ConvergenceKind kind = classify_convergence(spec).kind;
    if (kind == ConvergenceKind::terminating || spec.argument == 0.0) continue;
    series = true;
    if (kind == ConvergenceKind::unit_disk && std::abs(spec.argument) > 1.0 - kRadiusMargin) {
      return true;
    }
  }
  return series && std::abs(expr.argument) > z_limit;
}

// A series within reach of its radius may stop on the term budget; its value
// is still usable and is judged at the boundary tolerance.
double evaluate(const Expression& expr, double z_limit = SamplingPlan{}.z_limit) {
  const EvalResult r = eval_expression(expr);
  const bool budget_ok = r.status == EvalStatus::max_terms_reached && near_radius(expr, z_limit);
  if ((r.status == EvalStatus::max_terms_reached && !budget_ok) ||
      r.status == EvalStatus::diverged) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "series " << to_string(r.status) << " after " << r.terms_used << " terms";
    throw DomainError(msg.str());
  }
  return r.value;
}

struct Path {
  std::string name;
  double value;
  bool quadrature = false;
};

using PairTolerance = std::function<double(const Path&, const Path&)>;

SampleComparison judge(const Bindings& bindings, double z, const std::vector<Path>& paths,
                       const ComparisonPolicy& policy, bool boundary,
                       const PairTolerance& tolerance) {
  SampleComparison out;
  out.bindings = bindings;
  out.z = z;
  out.boundary = boundary;
  for (const Path& p : paths) out.values.push_back({p.name, p.value});
  double worst_margin = -1.0;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    for (std::size_t j = i + 1; j < paths.size(); ++j) {
      const double tol = tolerance(paths[i], paths[j]);
      ComparisonPolicy pair_policy = policy;
      pair_policy.tol_rel = tol;
      pair_policy.tol_rel_boundary = tol;
      const Comparison c = compare(paths[i].value, paths[j].value, pair_policy, boundary);
      const double margin = std::isfinite(c.rel_error) ? c.rel_error / tol
                                                       : std::numeric_limits<double>::infinity();
      if (margin > worst_margin) {
        worst_margin = margin;
        out.path_a = paths[i].name;
        out.path_b = paths[j].name;
        out.rel_error = c.rel_error;
        out.tolerance = tol;
        out.passed = c.pass;
      }
    }
  }
  return out;
}

PairTolerance standard_tolerance(const ComparisonPolicy& policy, bool boundary) {
  return [&policy, boundary](const Path& x, const Path& y) {
    double tol = boundary ? policy.tol_rel_boundary : policy.tol_rel;
    if (x.quadrature || y.quadrature) tol = std::max(tol, policy.tol_rel_quadrature);
    return tol;
  };
}

void finish(VerificationReport& report) {
  report.failures.clear();
  report.max_rel_error = 0.0;
  for (std::size_t i = 0; i < report.comparisons.size(); ++i) {
    const SampleComparison& c = report.comparisons[i];
    if (!c.passed) report.failures.push_back(i);
    if (!(c.rel_error <= report.max_rel_error)) report.max_rel_error = c.rel_error;
  }
  report.no_data = report.comparisons.empty() && report.errors.empty();
  report.passed = report.failures.empty() && report.errors.empty();
}

std::string what(const std::exception& e) { return e.what(); }

Interval shrunk(const Interval& domain, double z_limit) {
  Interval out = domain;
  if (std::isfinite(domain.lo) && std::isfinite(domain.hi)) {
    const double pull = 0.05 * (domain.hi - domain.lo);
    if (!domain.lo_closed) out.lo += pull;
    if (!domain.hi_closed) out.hi -= pull;
  }
  out.lo = std::max(out.lo, -z_limit);
  out.hi = std::min(out.hi, z_limit);
  return out;
}

const Interval kUnitDisk{-1.0, 1.0, false, false};

}  // namespace

Comparison compare(double x, double y, const ComparisonPolicy& policy, bool boundary) {
  Comparison out;
  if (!std::isfinite(x) || !std::isfinite(y)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "non-finite value in comparison (" << x << ", " << y << ")";
    out.rel_error = std::numeric_limits<double>::infinity();
    out.diagnostic = msg.str();
    return out;
  }
  const double scale = std::max({std::abs(x), std::abs(y), policy.abs_floor});
  out.rel_error = std::abs(x - y) / scale;
  out.pass = out.rel_error <= (boundary ? policy.tol_rel_boundary : policy.tol_rel);
  return out;
}

BindingDraw sample_bindings(const IdentityRecord& record, const SamplingPlan& plan) {
  return draw_bindings({record.slots, record.constraints, {}}, plan, record.id);
}

std::vector<double> sample_arguments(const Interval& domain, const SamplingPlan& plan,
                                     std::string_view stream, std::size_t index) {
  if (domain.is_point()) return {domain.lo};
  std::vector<double> out;
  for (double g : plan.z_grid) {
    if (domain.contains(g) && std::abs(g) <= plan.z_limit) out.push_back(g);
  }
  if (domain.lo_closed && std::isfinite(domain.lo)) out.push_back(domain.lo);
  if (domain.hi_closed && std::isfinite(domain.hi)) out.push_back(domain.hi);
  const Interval range = shrunk(domain, plan.z_limit);
  if (!(range.lo < range.hi)) return out;
  Stream s(plan.seed, std::string(stream) + "/z", index);
  for (std::size_t i = 0; i < plan.random_z_per_binding; ++i) {
    for (int attempt = 0; attempt < 64; ++attempt) {
      const double z = s.uniform(range.lo, range.hi);
      if (domain.contains(z)) {
        out.push_back(z);
        break;
      }
    }
  }
  return out;
}

VerificationReport verify_identity(const IdentityRecord& record, const SamplingPlan& plan,
                                   const ComparisonPolicy& policy) {
  VerificationReport report;
  report.id = record.id;
  report.kind = "identity";
  BindingDraw draw;
  try {
    draw = sample_bindings(record, plan);
  } catch (const SamplingExhausted& e) {
    report.errors.push_back({{}, 0.0, what(e)});
    finish(report);
    return report;
  }
  report.samples_attempted = draw.attempted;
  report.samples_rejected = draw.rejected;

  for (std::size_t i = 0; i < draw.bindings.size(); ++i) {
    const Bindings& b = draw.bindings[i];
    for (double z : sample_arguments(record.domain, plan, record.id, i)) {
      try {
        std::vector<Path> paths;
        bool boundary = false;
        auto add = [&](const std::string& name, const Expression& e) {
          boundary = boundary || near_radius(e, plan.z_limit);
          paths.push_back({name, evaluate(e, plan.z_limit)});
        };
        add("lhs", record.lhs(b, z));
        add("rhs", record.rhs(b, z));
        for (const NamedForm& form : record.intermediates) add(form.name, form.build(b, z));
        if (record.closed_form) paths.push_back({"closed_form", record.closed_form(b, z)});
        for (const OracleLink& link : record.oracles) {
          const Bindings ob = link.bindings(b);
          try {
            check_oracle_applicable(link.representation, ob, z);
          } catch (const ConstraintError&) {
            continue;
          }
          paths.push_back({"oracle:" + std::string(to_string(link.representation)),
                           oracle_3f2(link.representation, ob, z).value, true});
        }
        report.comparisons.push_back(
            judge(b, z, paths, policy, boundary, standard_tolerance(policy, boundary)));
      } catch (const std::exception& e) {
        report.errors.push_back({b, z, what(e)});
      }
    }
  }
  finish(report);
  return report;
}

VerificationReport verify_relation(ContiguousRelation relation, const SamplingPlan& plan,
                                   const ComparisonPolicy& policy) {
  VerificationReport report;
  report.id = std::string(to_string(relation));
  report.kind = "relation";
  SlotSpace space;
  switch (relation) {
    case ContiguousRelation::g20:
    case ContiguousRelation::g21:
      space.slots = {"a", "e"};
      space.constraints.integer_exclusions = {AffineCombination("a+e/2"),
                                              AffineCombination("a+e/2+1")};
      break;
    case ContiguousRelation::c24:
      space.slots = {"a", "d"};
      space.constraints.integer_exclusions = {AffineCombination("d"), AffineCombination("d+a")};
      break;
    case ContiguousRelation::l25:
      space.slots = {"a", "b", "c", "d"};
      space.constraints.integer_exclusions = {AffineCombination("d"), AffineCombination("d+1"),
                                              AffineCombination("c+1")};
      space.constraints.nonzero = {AffineCombination("c-d")};
      break;
  }
  BindingDraw draw;
  try {
    draw = draw_bindings(space, plan, report.id);
  } catch (const SamplingExhausted& e) {
    report.errors.push_back({{}, 0.0, what(e)});
    finish(report);
    return report;
  }
  report.samples_attempted = draw.attempted;
  report.samples_rejected = draw.rejected;
  for (std::size_t i = 0; i < draw.bindings.size(); ++i) {
    const Bindings& b = draw.bindings[i];
    for (double z : sample_arguments(kUnitDisk, plan, report.id, i)) {
      try {
        const Residual r = contiguous_residual(relation, b, z);
        SampleComparison c;
        c.bindings = b;
        c.z = z;
        c.values = {{"residual", r.residual}, {"scale", r.scale}};
        c.path_a = "lhs";
        c.path_b = "rhs";
        c.tolerance = policy.tol_rel;
        c.rel_error = std::isfinite(r.residual) && std::isfinite(r.scale)
                          ? std::abs(r.residual) / std::max(r.scale, policy.abs_floor)
                          : std::numeric_limits<double>::infinity();
        c.passed = c.rel_error <= c.tolerance;
        report.comparisons.push_back(std::move(c));
      } catch (const std::exception& e) {
        report.errors.push_back({b, z, what(e)});
      }
    }
  }
  finish(report);
  return report;
}

VerificationReport verify_oracle(Representation representation, const SamplingPlan& plan,
                                 const ComparisonPolicy& policy) {
  VerificationReport report;
  report.id = std::string(to_string(representation));
  report.kind = "oracle";
  SlotSpace space;
  switch (representation) {
    case Representation::i1:
    case Representation::i2:
      space.slots = {"a"};
      space.constraints.nonzero = {AffineCombination("a")};
      break;
    case Representation::i30:
      space.slots = {"a", "b"};
      space.constraints.integer_exclusions = {AffineCombination("a+1"), AffineCombination("2b")};
      space.constraints.nonzero = {AffineCombination("a"), AffineCombination("b")};
      break;
    case Representation::i31:
      space.slots = {"a", "b"};
      space.constraints.integer_exclusions = {AffineCombination("a+1")};
      space.constraints.nonzero = {AffineCombination("a"), AffineCombination("b")};
      break;
  }
  space.accept = [representation](const Bindings& b) {
    try {
      check_oracle_applicable(representation, b, 0.5);
      return true;
    } catch (const ConstraintError&) {
      return false;
    }
  };
  BindingDraw draw;
  try {
    draw = draw_bindings(space, plan, report.id);
  } catch (const SamplingExhausted& e) {
    report.errors.push_back({{}, 0.0, what(e)});
    finish(report);
    return report;
  }
  report.samples_attempted = draw.attempted;
  report.samples_rejected = draw.rejected;

  const Interval range{0.05, 0.9, false, false};
  const bool cross = representation == Representation::i2;
  PairTolerance tolerance = [&policy](const Path& x, const Path& y) {
    return x.quadrature && y.quadrature ? policy.tol_rel : policy.tol_rel_quadrature;
  };
  for (std::size_t i = 0; i < draw.bindings.size(); ++i) {
    const Bindings& b = draw.bindings[i];
    for (double z : sample_arguments(range, plan, report.id, i)) {
      try {
        std::vector<Path> paths;
        paths.push_back({"oracle:" + report.id, oracle_3f2(representation, b, z).value, true});
        paths.push_back({"series", evaluate(as_expression(oracle_target(representation, b, z)), plan.z_limit)});
        if (cross) paths.push_back({"oracle:I1", oracle_3f2(Representation::i1, b, z).value, true});
        report.comparisons.push_back(judge(b, z, paths, policy, false, tolerance));
      } catch (const std::exception& e) {
        report.errors.push_back({b, z, what(e)});
      }
    }
  }
  finish(report);
  return report;
}

std::vector<VerificationReport> verify_transforms(const SamplingPlan& plan) {
  using Sides = std::function<std::pair<double, double>(const Bindings&, double)>;
  auto run = [](const SamplingPlan& plan, std::string id, const SlotSpace& space,
                const Interval& domain, double tol, const Sides& sides) {
    VerificationReport report;
    report.id = std::move(id);
    report.kind = "transform";
    ComparisonPolicy policy;
    policy.tol_rel = tol;
    policy.tol_rel_boundary = tol;
    BindingDraw draw;
    try {
      draw = draw_bindings(space, plan, report.id);
    } catch (const SamplingExhausted& e) {
      report.errors.push_back({{}, 0.0, what(e)});
      finish(report);
      return report;
    }
    report.samples_attempted = draw.attempted;
    report.samples_rejected = draw.rejected;
    const Interval range = shrunk(domain, plan.z_limit);
    for (std::size_t i = 0; i < draw.bindings.size(); ++i) {
      const Bindings& b = draw.bindings[i];
      Stream s(plan.seed, report.id + "/z", i);
      const double z = s.uniform(range.lo, range.hi);
      try {
        const auto [original, transformed] = sides(b, z);
        std::vector<Path> paths{{"original", original}, {"transformed", transformed}};
        report.comparisons.push_back(
            judge(b, z, paths, policy, false, [tol](const Path&, const Path&) { return tol; }));
      } catch (const std::exception& e) {
        report.errors.push_back({b, z, what(e)});
      }
    }
    finish(report);
    return report;
  };

  auto space = [](std::vector<std::string> slots, std::vector<std::string_view> exclusions) {
    SlotSpace s;
    s.slots = std::move(slots);
    for (auto e : exclusions) s.constraints.integer_exclusions.emplace_back(e);
    return s;
  };
  const auto gauss = [](const Bindings& b, double z) {
    return HypergeometricSpec{{slot(b, "alpha"), slot(b, "beta")}, {slot(b, "gamma")}, z};
  };

  std::vector<VerificationReport> out;
  out.push_back(run(plan, "kummer_involution", space({"alpha", "rho"}, {"rho"}), kUnitDisk, 1e-12,
                    [](const Bindings& b, double z) {
                      const HypergeometricSpec spec{{slot(b, "alpha")}, {slot(b, "rho")}, z};
                      const Expression twice = rewrite_terms(
                          kummer_first(spec), [](const Term& t) { return kummer_first(t); });
                      return std::pair{evaluate(as_expression(spec)), evaluate(twice)};
                    }));
  out.push_back(run(plan, "euler_transform", space({"alpha", "beta", "gamma"}, {"gamma"}),
                    kUnitDisk, 1e-11, [&](const Bindings& b, double z) {
                      const HypergeometricSpec spec = gauss(b, z);
                      return std::pair{evaluate(as_expression(spec)),
                                       evaluate(euler_transform(spec))};
                    }));
  // z/(z-1) leaves the unit disk for z > 1/2.
  out.push_back(run(plan, "pfaff_transform", space({"alpha", "beta", "gamma"}, {"gamma"}),
                    Interval{-1.0, 0.5, false, false}, 1e-11, [&](const Bindings& b, double z) {
                      const HypergeometricSpec spec = gauss(b, z);
                      return std::pair{evaluate(as_expression(spec)),
                                       evaluate(pfaff_transform(spec))};
                    }));

  // k uniform on {0..3}; four times the draws gives about plan.samples per k.
  SlotSpace shift = space({"a", "b", "c", "d", "k"}, {"a", "d"});
  shift.constraints.integral = {"k"};
  SamplingPlan shift_plan = plan;
  shift_plan.integral_max = 3;
  shift_plan.samples_per_identity = 4 * plan.samples_per_identity;
  out.push_back(run(shift_plan, "shift_decompose", shift, kUnitDisk, 1e-10,
                    [](const Bindings& b, double x) {
                      const double a = slot(b, "a"), p = slot(b, "b"), c = slot(b, "c"),
                                   d = slot(b, "d");
                      const auto k = static_cast<unsigned>(std::lround(slot(b, "k")));
                      const HypergeometricSpec lhs{{p, c, a + k}, {d, a}, x};
                      return std::pair{evaluate(as_expression(lhs)),
                                       evaluate(shift_decompose(p, c, a, d, k, x))};
                    }));
  return out;
}

std::vector<VerificationReport> verify_suite(const SamplingPlan& plan,
                                             const ComparisonPolicy& policy,
                                             bool include_transforms) {
  std::vector<std::function<std::vector<VerificationReport>()>> tasks;
  for (const IdentityRecord& record : catalog()) {
    tasks.emplace_back([&record, &plan, &policy] {
      return std::vector{verify_identity(record, plan, policy)};
    });
  }
  for (ContiguousRelation rel : {ContiguousRelation::g20, ContiguousRelation::g21,
                                 ContiguousRelation::c24, ContiguousRelation::l25}) {
    tasks.emplace_back([rel, &plan, &policy] {
      return std::vector{verify_relation(rel, plan, policy)};
    });
  }
  for (Representation rep : {Representation::i1, Representation::i2, Representation::i30,
                             Representation::i31}) {
    tasks.emplace_back([rep, &plan, &policy] {
      return std::vector{verify_oracle(rep, plan, policy)};
    });
  }
  if (include_transforms) tasks.emplace_back([&plan] { return verify_transforms(plan); });

  std::vector<std::vector<VerificationReport>> results(tasks.size());
  unsigned workers = plan.threads ? plan.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(tasks.size()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) results[i] = tasks[i]();
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  std::vector<VerificationReport> out;
  for (auto& group : results) {
    for (auto& r : group) out.push_back(std::move(r));
  }
  return out;
}

}  // namespace hyperred
