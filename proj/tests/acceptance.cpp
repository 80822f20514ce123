// Prints one verdict line per acceptance criterion and writes the same lines to
// acceptance_results.txt. Exit status is 0 once every criterion has been
// evaluated (1 if evaluation itself broke); verdicts are in the output.

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "hyperred/cli.hpp"
#include "hyperred/reductions.hpp"
#include "hyperred/verifier.hpp"

using namespace hyperred;

namespace {

constexpr std::size_t kSuiteSamples = 100;
constexpr double kSuiteSeconds = 60.0;
constexpr double kTerminatingTol = 1e-12;
constexpr unsigned kTerminatingMaxN = 20;
constexpr double kBoundarySpotTol = 1e-6;
constexpr double kSpotTol = 1e-9;
constexpr std::size_t kTransformSamples = 200;
constexpr double kLimitOffset = 1e-6;
constexpr double kLimitTol = 1e-5;

struct Verdict {
  bool passed = false;
  std::string detail;
};

double rel(double x, double y) {
  return std::abs(x - y) / std::max({std::abs(x), std::abs(y), 1e-300});
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(3);
  s << x;
  return s.str();
}

std::string summarize(const std::vector<VerificationReport>& reports) {
  std::size_t ok = 0;
  double worst = 0.0;
  std::string failing;
  for (const auto& r : reports) {
    if (r.passed) {
      ++ok;
      worst = std::max(worst, r.max_rel_error);
    } else {
      failing += (failing.empty() ? "" : ",") + r.id + "(max " + fmt(r.max_rel_error) + ")";
    }
  }
  std::string out = std::to_string(ok) + "/" + std::to_string(reports.size()) +
                    " reports passed, worst passing rel error " + fmt(worst);
  if (!failing.empty()) out += "; failing: " + failing;
  return out;
}

Verdict identity_suite() {
  SamplingPlan plan;
  plan.samples_per_identity = kSuiteSamples;
  const ComparisonPolicy policy;
  const auto start = std::chrono::steady_clock::now();
  std::vector<VerificationReport> reports;
  for (const IdentityRecord& r : catalog()) reports.push_back(verify_identity(r, plan, policy));
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {all_passed(reports) && reports.size() == 17 && seconds < kSuiteSeconds,
          summarize(reports) + "; " + fmt(seconds) + " s"};
}

Verdict oracle_agreement() {
  SamplingPlan plan;
  plan.samples_per_identity = kSuiteSamples;
  std::vector<VerificationReport> reports;
  for (Representation rep :
       {Representation::i1, Representation::i2, Representation::i30, Representation::i31}) {
    reports.push_back(verify_oracle(rep, plan, ComparisonPolicy{}));
  }
  return {all_passed(reports), summarize(reports)};
}

Verdict terminating_sums() {
  SamplingPlan plan;
  plan.samples_per_identity = kSuiteSamples;
  plan.integral_max = kTerminatingMaxN;
  std::size_t checked = 0, failed = 0;
  double worst = 0.0;
  for (const char* id : {"T7", "T8", "T9"}) {
    const IdentityRecord& record = lookup(id);
    for (const Bindings& b : sample_bindings(record, plan).bindings) {
      const auto n = static_cast<unsigned>(std::lround(b.at("n")));
      const EvalResult direct = eval_expression(record.lhs(b, 1.0));
      const double ratio = terminating_closed_form(id, b, n);
      const double e = rel(direct.value, ratio);
      worst = std::max(worst, e);
      ++checked;
      if (!(e <= kTerminatingTol) || direct.status != EvalStatus::terminated) ++failed;
    }
  }
  return {failed == 0 && checked == 3 * kSuiteSamples,
          std::to_string(checked - failed) + "/" + std::to_string(checked) +
              " draws within " + fmt(kTerminatingTol) + ", worst " + fmt(worst)};
}

Verdict spot_values() {
  struct Spot {
    const char* id;
    Bindings bindings;
    double z;
    double expected;
    double tol;
  };
  const Spot spots[] = {
      {"S36", {}, 1.0, 4.0 * std::numbers::ln2, kBoundarySpotTol},
      {"S37", {{"b", 1.0}}, 0.75, 16.0 / 9.0, kSpotTol},
      {"S39", {}, 0.25, std::log(3.0), kSpotTol},
      {"S40", {{"a", 1.0}}, 0.25, 20.0 / 9.0, kSpotTol},
  };
  bool ok = true;
  std::string detail;
  for (const Spot& s : spots) {
    const double series = eval_expression(lookup(s.id).lhs(s.bindings, s.z)).value;
    const double e = rel(series, s.expected);
    ok = ok && e <= s.tol;
    detail += std::string(detail.empty() ? "" : ", ") + s.id + " " + fmt(e);
  }
  return {ok, "rel errors " + detail};
}

Verdict transform_properties() {
  SamplingPlan plan;
  plan.samples_per_identity = kTransformSamples;
  std::vector<VerificationReport> reports = verify_transforms(plan);
  for (ContiguousRelation r : {ContiguousRelation::g20, ContiguousRelation::g21,
                               ContiguousRelation::c24, ContiguousRelation::l25}) {
    reports.push_back(verify_relation(r, plan, ComparisonPolicy{}));
  }
  return {all_passed(reports) && reports.size() == 8, summarize(reports)};
}

Verdict limit_continuity() {
  bool ok = true;
  double worst = 0.0;
  for (double z : {0.1, 0.25, 0.5}) {
    const double limit = closed_form("S39", {}, z);
    const double limit_series = eval_expression(lookup("S39").lhs({}, z)).value;
    for (double b : {0.5 - kLimitOffset, 0.5 + kLimitOffset}) {
      const Bindings bindings{{"b", b}};
      const double closed = closed_form("S38", bindings, z);
      const double series = eval_expression(lookup("S38").lhs(bindings, z)).value;
      for (double e : {rel(closed, limit), rel(series, limit), rel(closed, limit_series)}) {
        worst = std::max(worst, e);
        ok = ok && e <= kLimitTol;
      }
    }
  }
  return {ok, "worst rel error " + fmt(worst) + " against " + fmt(kLimitTol)};
}

Verdict determinism() {
  auto run_suite = [] {
    std::ostringstream out, err;
    const int status = cli::main_entry(
        {"verify", "--seed", "1", "--samples", std::to_string(kSuiteSamples), "--format", "json"},
        out, err);
    return std::pair{status, out.str()};
  };
  const auto [status_a, first] = run_suite();
  const auto [status_b, second] = run_suite();
  const bool round_trip = cli::serialize(nlohmann::json::parse(first)) == first;
  return {status_a == status_b && !first.empty() && first == second && round_trip,
          std::to_string(first.size()) + " bytes, runs " +
              (first == second ? "identical" : "differ") + ", reparse " +
              (round_trip ? "identical" : "differs")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"identity suite", identity_suite},
      {"oracle agreement", oracle_agreement},
      {"terminating sums", terminating_sums},
      {"closed-form spot values", spot_values},
      {"transform properties", transform_properties},
      {"limit continuity", limit_continuity},
      {"determinism", determinism},
  };

  std::ofstream file("acceptance_results.txt");
  int broken = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string line;
    try {
      const Verdict v = criteria[i].second();
      line = "criterion " + std::to_string(i + 1) + " " + criteria[i].first + ": " +
             (v.passed ? "PASS" : "FAIL") + " (" + v.detail + ")";
    } catch (const std::exception& e) {
      ++broken;
      line = "criterion " + std::to_string(i + 1) + " " + criteria[i].first + ": FAIL (error: " +
             e.what() + ")";
    }
    std::cout << line << std::endl;
    file << line << "\n";
  }
  return broken == 0 ? 0 : 1;
}
