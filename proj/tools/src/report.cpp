#include <string>

#include "hyperred/cli.hpp"
#include "hyperred/reductions.hpp"

#ifndef HYPERRED_VERSION
#define HYPERRED_VERSION "unknown"
#endif

namespace hyperred::cli {

namespace {

nlohmann::json bindings_json(const Bindings& bindings) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [name, value] : bindings) out[name] = value;
  return out;
}

nlohmann::json comparison_json(const SampleComparison& c) {
  nlohmann::json values = nlohmann::json::array();
  for (const PathValue& v : c.values) values.push_back({{"path", v.path}, {"value", v.value}});
  return {{"bindings", bindings_json(c.bindings)},
          {"z", c.z},
          {"values", std::move(values)},
          {"paths", {c.path_a, c.path_b}},
          {"rel_error", c.rel_error},
          {"tolerance", c.tolerance},
          {"boundary", c.boundary},
          {"passed", c.passed}};
}

nlohmann::json texts(const std::vector<AffineCombination>& combinations) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : combinations) out.push_back(c.text());
  return out;
}

}  // namespace

nlohmann::json to_json(const EvalResult& result) {
  return {{"value", result.value},
          {"terms_used", result.terms_used},
          {"tail_estimate", result.tail_estimate},
          {"status", std::string(to_string(result.status))}};
}

nlohmann::json to_json(const VerificationReport& report) {
  nlohmann::json comparisons = nlohmann::json::array();
  for (const auto& c : report.comparisons) comparisons.push_back(comparison_json(c));
  nlohmann::json errors = nlohmann::json::array();
  for (const auto& e : report.errors) {
    errors.push_back({{"bindings", bindings_json(e.bindings)}, {"z", e.z}, {"message", e.message}});
  }
  return {{"id", report.id},
          {"kind", report.kind},
          {"samples_attempted", report.samples_attempted},
          {"samples_rejected", report.samples_rejected},
          {"max_rel_error", report.max_rel_error},
          {"passed", report.passed},
          {"no_data", report.no_data},
          {"failures", report.failures},
          {"errors", std::move(errors)},
          {"comparisons", std::move(comparisons)}};
}

nlohmann::json to_json(const SamplingPlan& plan) {
  return {{"seed", plan.seed},
          {"samples_per_identity", plan.samples_per_identity},
          {"parameter_range", {plan.parameter_lo, plan.parameter_hi}},
          {"z_grid", plan.z_grid},
          {"random_z_per_binding", plan.random_z_per_binding},
          {"rejection_margin", plan.rejection_margin},
          {"integral_max", plan.integral_max},
          {"z_limit", plan.z_limit}};
}

nlohmann::json to_json(const ComparisonPolicy& policy) {
  return {{"tol_rel", policy.tol_rel},
          {"tol_rel_boundary", policy.tol_rel_boundary},
          {"tol_rel_quadrature", policy.tol_rel_quadrature},
          {"abs_floor", policy.abs_floor}};
}

nlohmann::json report_document(const std::vector<VerificationReport>& reports,
                               const CommandConfig& config) {
  nlohmann::json plan = to_json(config.plan);
  plan["seed_source"] = config.seed_source;
  plan["include_transforms"] = config.include_transforms;
  if (!config.id.empty()) plan["id"] = config.id;

  nlohmann::json list = nlohmann::json::array();
  for (const auto& r : reports) list.push_back(to_json(r));
  return {{"artifact", "hyperred"},
          {"version", HYPERRED_VERSION},
          {"plan", std::move(plan)},
          {"policy", to_json(config.policy)},
          {"passed", all_passed(reports)},
          {"reports", std::move(list)}};
}

std::string serialize(const nlohmann::json& document) { return document.dump(2) + "\n"; }

nlohmann::json catalog_document() {
  nlohmann::json identities = nlohmann::json::array();
  for (const IdentityRecord& r : catalog()) {
    nlohmann::json oracles = nlohmann::json::array();
    for (const OracleLink& o : r.oracles) oracles.push_back(std::string(to_string(o.representation)));
    identities.push_back({{"id", r.id},
                          {"equation", r.equation},
                          {"statement", r.statement},
                          {"slots", r.slots},
                          {"constraints",
                           {{"integer_exclusions", texts(r.constraints.integer_exclusions)},
                            {"nonzero", texts(r.constraints.nonzero)},
                            {"integral", r.constraints.integral}}},
                          {"domain", to_string(r.domain)},
                          {"oracles", std::move(oracles)}});
  }
  return {{"artifact", "hyperred"}, {"version", HYPERRED_VERSION}, {"identities", std::move(identities)}};
}

}  // namespace hyperred::cli
