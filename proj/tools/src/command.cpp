#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>

#include <CLI11.hpp>

#include "hyperred/cli.hpp"
#include "hyperred/quadrature.hpp"
#include "hyperred/reductions.hpp"
#include "hyperred/transforms.hpp"

namespace hyperred::cli {

namespace {

double parse_decimal(const std::string& text, const std::string& what) {
  const char* first = text.data();
  const char* last = first + text.size();
  if (first != last && *first == '+') ++first;
  double value = 0.0;
  const auto [end, ec] = std::from_chars(first, last, value, std::chars_format::general);
  if (first == last || ec != std::errc{} || end != last || !std::isfinite(value)) {
    throw UsageError(what + ": '" + text + "' is not a decimal literal");
  }
  return value;
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(parse_decimal(text.substr(start, comma - start), what));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string format_number(double x) {
  std::ostringstream s;
  s << std::setprecision(17) << x;
  return s.str();
}

std::string format_bindings(const Bindings& bindings) {
  std::string out = "{";
  for (const auto& [name, value] : bindings) {
    if (out.size() > 1) out += ", ";
    out += name + "=" + format_number(value);
  }
  return out + "}";
}

std::string format_args(const std::vector<double>& values) {
  std::string out;
  for (double v : values) {
    if (!out.empty()) out += ",";
    out += format_number(v);
  }
  return out;
}

// Rejects unknown and missing slots.
void check_slot_names(const std::string& id, const std::vector<std::string>& slots,
                      const Bindings& bindings) {
  for (const auto& [name, value] : bindings) {
    if (std::find(slots.begin(), slots.end(), name) == slots.end()) {
      throw UsageError(id + ": unknown binding '" + name + "'");
    }
  }
  for (const std::string& name : slots) {
    if (!bindings.contains(name)) throw UsageError(id + ": missing binding '" + name + "'");
  }
}

std::vector<std::string> oracle_slots(Representation rep) {
  if (rep == Representation::i1 || rep == Representation::i2) return {"a"};
  return {"a", "b"};
}

bool is_relation(const std::string& id) {
  return id == "G20" || id == "G21" || id == "C24" || id == "L25";
}

bool is_oracle(const std::string& id) {
  return id == "I1" || id == "I2" || id == "I30" || id == "I31";
}

bool is_transform(const std::string& id) {
  return id == "kummer_involution" || id == "euler_transform" || id == "pfaff_transform" ||
         id == "shift_decompose";
}

bool in_catalog(const std::string& id) {
  const auto records = catalog();
  return std::any_of(records.begin(), records.end(),
                     [&](const IdentityRecord& r) { return r.id == id; });
}

std::string constraint_text(const ConstraintSet& c) {
  std::string out;
  auto append = [&](const std::string& label, const std::vector<std::string>& items) {
    if (items.empty()) return;
    if (!out.empty()) out += "; ";
    out += label + " ";
    for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + items[i];
  };
  auto texts = [](const std::vector<AffineCombination>& v) {
    std::vector<std::string> out;
    for (const auto& a : v) out.push_back(a.text());
    return out;
  };
  append("not in {0,-1,...}:", texts(c.integer_exclusions));
  append("nonzero:", texts(c.nonzero));
  append("integer:", c.integral);
  return out.empty() ? "-" : out;
}

std::string slot_text(const std::vector<std::string>& slots) {
  if (slots.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < slots.size(); ++i) out += (i ? "," : "") + slots[i];
  return out;
}

void emit(const CommandConfig& config, const std::string& text, std::ostream& out) {
  if (config.output_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(config.output_path, std::ios::binary);
  if (!file) throw UsageError("cannot open output file '" + config.output_path + "'");
  file << text;
  if (!file) throw std::runtime_error("failed writing '" + config.output_path + "'");
}

int run_eval(const CommandConfig& config, std::ostream& out) {
  const HypergeometricSpec spec{config.numerator, config.denominator, *config.z};
  const EvalResult r = eval_pfq(spec, config.tol, config.max_terms);
  if (config.format == OutputFormat::json) {
    nlohmann::json doc = to_json(r);
    doc["function"] = describe(spec);
    emit(config, serialize(doc), out);
  } else {
    std::ostringstream s;
    s << describe(spec) << "\n"
      << "value " << format_number(r.value) << "\n"
      << "terms_used " << r.terms_used << "\n"
      << "tail_estimate " << format_number(r.tail_estimate) << "\n"
      << "status " << to_string(r.status) << "\n";
    emit(config, s.str(), out);
  }
  return r.status == EvalStatus::diverged ? kExitFailure : kExitSuccess;
}

int run_identity(const CommandConfig& config, std::ostream& out) {
  const IdentityRecord& record = lookup(config.id);
  const double z = *config.z;
  check_slot_names(record.id, record.slots, config.bindings);
  check_constraints(record.constraints, config.bindings);
  if (!record.domain.contains(z)) {
    throw UsageError(record.id + ": z = " + format_number(z) + " outside " +
                     to_string(record.domain));
  }

  const auto [lhs_expr, rhs_expr] = instantiate_sides(record.id, config.bindings, z);
  const EvalResult lhs = eval_expression(lhs_expr);
  const EvalResult rhs = eval_expression(rhs_expr);
  std::optional<double> closed;
  if (record.closed_form) closed = record.closed_form(config.bindings, z);

  const bool boundary = std::abs(z) > config.plan.z_limit;
  const Comparison cmp = compare(lhs.value, rhs.value, config.policy, boundary);
  const bool usable = lhs.status != EvalStatus::diverged && rhs.status != EvalStatus::diverged;

  if (config.format == OutputFormat::json) {
    nlohmann::json doc = {{"id", record.id},
                          {"bindings", nlohmann::json(config.bindings)},
                          {"z", z},
                          {"lhs", to_json(lhs)},
                          {"rhs", to_json(rhs)},
                          {"difference", lhs.value - rhs.value},
                          {"rel_error", cmp.rel_error},
                          {"passed", cmp.pass && usable}};
    if (closed) doc["closed_form"] = *closed;
    emit(config, serialize(doc), out);
  } else {
    std::ostringstream s;
    s << record.id << " " << format_bindings(config.bindings) << " z=" << format_number(z) << "\n"
      << "lhs " << format_number(lhs.value) << " (" << to_string(lhs.status) << ")\n"
      << "rhs " << format_number(rhs.value) << " (" << to_string(rhs.status) << ")\n";
    if (closed) s << "closed_form " << format_number(*closed) << "\n";
    s << "difference " << format_number(lhs.value - rhs.value) << "\n"
      << "rel_error " << format_number(cmp.rel_error) << "\n";
    if (!cmp.diagnostic.empty()) s << "diagnostic " << cmp.diagnostic << "\n";
    emit(config, s.str(), out);
  }
  return cmp.pass && usable ? kExitSuccess : kExitFailure;
}

int run_oracle(const CommandConfig& config, std::ostream& out) {
  const Representation rep = parse_representation(config.id);
  const double z = *config.z;
  check_slot_names(config.id, oracle_slots(rep), config.bindings);
  check_oracle_applicable(rep, config.bindings, z);

  const HypergeometricSpec target = oracle_target(rep, config.bindings, z);
  const EvalResult series = eval_pfq(target);
  const OracleResult oracle = oracle_3f2(rep, config.bindings, z);
  Comparison cmp = compare(oracle.value, series.value, config.policy, false);
  cmp.pass = cmp.rel_error <= config.policy.tol_rel_quadrature;

  if (config.format == OutputFormat::json) {
    const nlohmann::json doc = {
        {"id", config.id},
        {"bindings", nlohmann::json(config.bindings)},
        {"z", z},
        {"target", describe(target)},
        {"oracle", oracle.value},
        {"integral",
         {{"value", oracle.integral.value},
          {"error_estimate", oracle.integral.error_estimate},
          {"evaluations", oracle.integral.evaluations}}},
        {"series", to_json(series)},
        {"rel_error", cmp.rel_error},
        {"passed", cmp.pass}};
    emit(config, serialize(doc), out);
  } else {
    std::ostringstream s;
    s << config.id << " " << format_bindings(config.bindings) << " z=" << format_number(z) << "\n"
      << "target " << describe(target) << "\n"
      << "oracle " << format_number(oracle.value) << " (" << oracle.integral.evaluations
      << " evaluations, error estimate " << format_number(oracle.integral.error_estimate) << ")\n"
      << "series " << format_number(series.value) << " (" << to_string(series.status) << ")\n"
      << "rel_error " << format_number(cmp.rel_error) << "\n";
    emit(config, s.str(), out);
  }
  return cmp.pass ? kExitSuccess : kExitFailure;
}

std::vector<VerificationReport> run_reports(const CommandConfig& config) {
  const std::string& id = config.id;
  if (id.empty()) return verify_suite(config.plan, config.policy, config.include_transforms);
  if (in_catalog(id)) return {verify_identity(lookup(id), config.plan, config.policy)};
  if (is_relation(id)) return {verify_relation(parse_relation(id), config.plan, config.policy)};
  if (is_oracle(id)) return {verify_oracle(parse_representation(id), config.plan, config.policy)};
  if (is_transform(id)) {
    for (VerificationReport& r : verify_transforms(config.plan)) {
      if (r.id == id) return {std::move(r)};
    }
  }
  throw UsageError("unknown verification target '" + id + "'");
}

std::string verify_text(const std::vector<VerificationReport>& reports) {
  constexpr std::size_t kShown = 3;
  std::ostringstream s;
  for (const VerificationReport& r : reports) {
    s << std::left << std::setw(18) << r.id << " " << (r.passed ? "PASS" : "FAIL")
      << (r.no_data ? " (no data)" : "") << "  comparisons=" << r.comparisons.size()
      << " failures=" << r.failures.size() << " errors=" << r.errors.size()
      << " max_rel_error=" << format_number(r.max_rel_error) << "\n";
    for (std::size_t i = 0; i < std::min(kShown, r.failures.size()); ++i) {
      const SampleComparison& c = r.comparisons[r.failures[i]];
      s << "  " << r.id << " " << format_bindings(c.bindings) << " z=" << format_number(c.z)
        << ": " << c.path_a << " vs " << c.path_b << " rel_error=" << format_number(c.rel_error)
        << " tolerance=" << format_number(c.tolerance) << "\n";
    }
    for (std::size_t i = 0; i < std::min(kShown, r.errors.size()); ++i) {
      const SampleError& e = r.errors[i];
      s << "  " << r.id << " " << format_bindings(e.bindings) << " z=" << format_number(e.z)
        << ": " << e.message << "\n";
    }
  }
  s << (all_passed(reports) ? "all passed" : "verification failed") << "\n";
  return s.str();
}

int run_verify(const CommandConfig& config, std::ostream& out) {
  const std::vector<VerificationReport> reports = run_reports(config);
  if (config.format == OutputFormat::json) {
    emit(config, serialize(report_document(reports, config)), out);
  } else {
    emit(config, verify_text(reports), out);
  }
  return all_passed(reports) ? kExitSuccess : kExitFailure;
}

int run_list(const CommandConfig& config, std::ostream& out) {
  if (config.format == OutputFormat::json) {
    emit(config, serialize(catalog_document()), out);
    return kExitSuccess;
  }
  std::ostringstream s;
  s << std::left << std::setw(5) << "id" << std::setw(5) << "eq" << std::setw(8) << "slots"
    << std::setw(13) << "domain" << "constraints\n";
  for (const IdentityRecord& r : catalog()) {
    s << std::setw(5) << r.id << std::setw(5) << r.equation << std::setw(8) << slot_text(r.slots)
      << std::setw(13) << to_string(r.domain) << constraint_text(r.constraints) << "\n";
  }
  emit(config, s.str(), out);
  return kExitSuccess;
}

std::string context(const CommandConfig& config) {
  std::string out;
  if (!config.id.empty()) out += config.id + " ";
  if (config.subcommand == Subcommand::eval) {
    out += "num=[" + format_args(config.numerator) + "] den=[" + format_args(config.denominator) +
           "] ";
  } else if (!config.bindings.empty()) {
    out += format_bindings(config.bindings) + " ";
  }
  if (config.z) out += "z=" + format_number(*config.z) + " ";
  return out;
}

}  // namespace

Bindings parse_bindings(const std::vector<std::string>& tokens) {
  Bindings out;
  for (const std::string& token : tokens) {
    const std::size_t eq = token.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw UsageError("binding '" + token + "' is not of the form key=value");
    }
    const std::string key = token.substr(0, eq);
    if (out.contains(key)) throw UsageError("binding '" + key + "' given twice");
    out[key] = parse_decimal(token.substr(eq + 1), "binding " + key);
  }
  return out;
}

CommandConfig parse_command_line(const std::vector<std::string>& args,
                                 std::optional<std::string> seed_override) {
  CLI::App app{"Evaluate and verify hypergeometric reduction identities", "hyperred"};
  app.require_subcommand(1);

  std::string format = "text";
  std::string output;
  std::string z_text;
  const auto common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("-o,--output", output, "Write the output to this file");
  };

  CommandConfig config;
  std::size_t p = 0, q = 0;
  std::string num_text, den_text;
  CLI::App* eval = app.add_subcommand("eval", "Sum a pFq series");
  eval->add_option("--p", p, "Number of numerator parameters");
  eval->add_option("--q", q, "Number of denominator parameters");
  eval->add_option("--num", num_text, "Comma-separated numerator parameters");
  eval->add_option("--den", den_text, "Comma-separated denominator parameters");
  eval->add_option("--z", z_text, "Argument")->required();
  eval->add_option("--tol", config.tol, "Relative truncation tolerance")
      ->check(CLI::PositiveNumber);
  eval->add_option("--max-terms", config.max_terms, "Term budget")->check(CLI::PositiveNumber);
  common(eval);

  std::vector<std::string> binding_tokens;
  CLI::App* identity = app.add_subcommand("identity", "Evaluate both sides of a catalog identity");
  identity->add_option("--id", config.id, "Identity id (see list)")->required();
  identity->add_option("--z", z_text, "Argument")->required();
  identity->add_option("bindings", binding_tokens, "Slot values as key=value");
  common(identity);

  CLI::App* oracle = app.add_subcommand("oracle", "Compare a quadrature oracle with the series");
  oracle->add_option("--id,--rep", config.id, "I1, I2, I30 or I31")
      ->required()
      ->check(CLI::IsMember({"I1", "I2", "I30", "I31"}));
  oracle->add_option("--z", z_text, "Argument")->required();
  oracle->add_option("bindings", binding_tokens, "Slot values as key=value");
  common(oracle);

  std::uint64_t seed = config.plan.seed;
  CLI::App* verify = app.add_subcommand("verify", "Run the verification suite or one target");
  auto* seed_option = verify->add_option("--seed", seed, "Sampling seed");
  verify->add_option("--samples", config.plan.samples_per_identity, "Bindings per target");
  verify->add_option("--id", config.id, "Single identity, relation, oracle or transform");
  verify->add_flag("--transforms", config.include_transforms, "Append transform property reports");
  verify->add_option("--threads", config.plan.threads, "Worker threads (0 = hardware)");
  verify->add_option("--tol-rel", config.policy.tol_rel)->check(CLI::PositiveNumber);
  verify->add_option("--tol-rel-boundary", config.policy.tol_rel_boundary)
      ->check(CLI::PositiveNumber);
  verify->add_option("--tol-rel-quadrature", config.policy.tol_rel_quadrature)
      ->check(CLI::PositiveNumber);
  verify->add_option("--abs-floor", config.policy.abs_floor)->check(CLI::PositiveNumber);
  common(verify);

  CLI::App* list = app.add_subcommand("list", "Print the identity catalog");
  common(list);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    CLI::App* target = &app;
    for (CLI::App* sub : app.get_subcommands()) target = sub;
    throw HelpRequested(target->help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  config.format = format == "json" ? OutputFormat::json : OutputFormat::text;
  config.output_path = output;
  if (!z_text.empty()) config.z = parse_decimal(z_text, "--z");

  if (eval->parsed()) {
    config.subcommand = Subcommand::eval;
    config.numerator = parse_list(num_text, "--num");
    config.denominator = parse_list(den_text, "--den");
    if (eval->count("--p") > 0) {
      config.p = p;
      if (p != config.numerator.size()) {
        throw UsageError("--p " + std::to_string(p) + " but " +
                         std::to_string(config.numerator.size()) + " numerator parameters");
      }
    }
    if (eval->count("--q") > 0) {
      config.q = q;
      if (q != config.denominator.size()) {
        throw UsageError("--q " + std::to_string(q) + " but " +
                         std::to_string(config.denominator.size()) + " denominator parameters");
      }
    }
  } else if (identity->parsed()) {
    config.subcommand = Subcommand::identity;
    if (!in_catalog(config.id)) throw UsageError("unknown identity '" + config.id + "'");
    config.bindings = parse_bindings(binding_tokens);
  } else if (oracle->parsed()) {
    config.subcommand = Subcommand::oracle;
    config.bindings = parse_bindings(binding_tokens);
  } else if (verify->parsed()) {
    config.subcommand = Subcommand::verify;
    if (seed_option->count() > 0) {
      config.seed_source = "flag";
    } else if (seed_override) {
      const double v = parse_decimal(*seed_override, kSeedEnvironment);
      if (v < 0.0 || v != std::floor(v) || v > 9007199254740992.0) {
        throw UsageError(std::string(kSeedEnvironment) + " must be a nonnegative integer");
      }
      seed = static_cast<std::uint64_t>(v);
      config.seed_source = "environment";
    }
    config.plan.seed = seed;
    if (!config.id.empty() && !in_catalog(config.id) && !is_relation(config.id) &&
        !is_oracle(config.id) && !is_transform(config.id)) {
      throw UsageError("unknown verification target '" + config.id + "'");
    }
  } else {
    config.subcommand = Subcommand::list;
  }
  return config;
}

int run(const CommandConfig& config, std::ostream& out, std::ostream& err) {
  try {
    switch (config.subcommand) {
      case Subcommand::eval: return run_eval(config, out);
      case Subcommand::identity: return run_identity(config, out);
      case Subcommand::oracle: return run_oracle(config, out);
      case Subcommand::verify: return run_verify(config, out);
      case Subcommand::list: return run_list(config, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConstraintError& e) {
    err << "error: " << context(config) << e.what() << "\n";
    return kExitUsage;
  } catch (const ArityError& e) {
    err << "error: " << context(config) << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << context(config) << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
               std::optional<std::string> seed_override) {
  CommandConfig config;
  try {
    config = parse_command_line(args, std::move(seed_override));
  } catch (const HelpRequested& help) {
    out << help.what();
    return kExitSuccess;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return run(config, out, err);
}

}  // namespace hyperred::cli
