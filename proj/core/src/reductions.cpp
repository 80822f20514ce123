#include "hyperred/reductions.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hyperred {

AffineCombination::AffineCombination(std::string_view text) : text_(text) {
  std::size_t i = 0;
  auto read_number = [&](double& out) {
    const std::size_t start = i;
    while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '.')) {
      ++i;
    }
    if (i == start) return false;
    out = std::stod(std::string(text.substr(start, i - start)));
    return true;
  };
  auto fail = [&] { throw std::invalid_argument("bad affine combination '" + text_ + "'"); };
  if (text.empty()) fail();
  while (i < text.size()) {
    double sign = 1.0;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1.0 : 1.0;
      ++i;
    } else if (i != 0) {
      fail();
    }
    double coefficient = 1.0;
    const bool has_number = read_number(coefficient);
    std::string name;
    while (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i]))) name += text[i++];
    if (!has_number && name.empty()) fail();
    if (i < text.size() && text[i] == '/') {
      ++i;
      double divisor = 0.0;
      if (!read_number(divisor) || divisor == 0.0) fail();
      coefficient /= divisor;
    }
    coefficient *= sign;
    if (name.empty()) {
      constant_ += coefficient;
    } else {
      auto it = std::find_if(coefficients_.begin(), coefficients_.end(),
                             [&](const auto& c) { return c.first == name; });
      if (it == coefficients_.end()) {
        coefficients_.emplace_back(std::move(name), coefficient);
      } else {
        it->second += coefficient;
      }
    }
  }
}

double AffineCombination::operator()(const Bindings& bindings) const {
  double v = constant_;
  for (const auto& [name, coefficient] : coefficients_) v += coefficient * slot(bindings, name);
  return v;
}

std::optional<std::string> find_violation(const ConstraintSet& constraints,
                                          const Bindings& bindings, double margin) {
  std::ostringstream out;
  out.precision(17);
  for (const std::string& name : constraints.integral) {
    const double v = slot(bindings, name);
    if (!(v >= 0.0) || std::abs(v - std::round(v)) > kIntegerTolerance) {
      out << name << " = " << v << " must be a nonnegative integer";
      return out.str();
    }
  }
  for (const AffineCombination& c : constraints.integer_exclusions) {
    const double v = c(bindings);
    if (v <= margin && std::abs(v - std::round(v)) <= margin) {
      out << c.text() << " = " << v << " is (within " << margin
          << " of) a non-positive integer";
      return out.str();
    }
  }
  for (const AffineCombination& c : constraints.nonzero) {
    const double v = c(bindings);
    if (std::abs(v) <= margin) {
      out << c.text() << " = " << v << " must be nonzero";
      return out.str();
    }
  }
  return std::nullopt;
}

void check_constraints(const ConstraintSet& constraints, const Bindings& bindings) {
  if (auto violation = find_violation(constraints, bindings)) throw ConstraintError(*violation);
}

bool Interval::contains(double z) const noexcept {
  const bool above = lo_closed ? z >= lo : z > lo;
  const bool below = hi_closed ? z <= hi : z < hi;
  return above && below;
}

std::string to_string(const Interval& interval) {
  std::ostringstream out;
  if (interval.is_point()) {
    out << "{" << interval.lo << "}";
    return out.str();
  }
  out << (interval.lo_closed ? "[" : "(") << interval.lo << ", " << interval.hi
      << (interval.hi_closed ? "]" : ")");
  return out.str();
}

double half_power_difference(double b, double z) {
  if (!(z > 0.0 && z < 1.0)) throw DomainError("needs 0 < z < 1");
  const double c = 1.0 - 2.0 * b;
  if (c == 0.0) throw DomainError("the direct form is singular at b = 1/2");
  const double r = std::sqrt(z);
  const double up = std::log1p(r);
  const double down = std::log1p(-r);
  // (1+r)^c - (1-r)^c = (1-r)^c expm1(c (up - down))
  return std::exp(c * down) * std::expm1(c * (up - down)) / (2.0 * r * c);
}

double half_power_difference_expansion(double b, double z) {
  if (!(z > 0.0 && z < 1.0)) throw DomainError("needs 0 < z < 1");
  const double c = 1.0 - 2.0 * b;
  const double r = std::sqrt(z);
  const double up = std::log1p(r);
  const double down = std::log1p(-r);
  const double first = up - down;
  const double second = (up * up - down * down) / 2.0;
  const double third = (up * up * up - down * down * down) / 6.0;
  return (first + c * second + c * c * third) / (2.0 * r);
}

namespace {

using F = Factor;

Expression single(double z, Term term) { return {z, {std::move(term)}}; }

Term plain(std::vector<double> num, std::vector<double> den, double z,
           ArgumentMap map = ArgumentMap::identity) {
  return make_term({}, std::move(num), std::move(den), map, z);
}

double get(const Bindings& b, std::string_view name) { return slot(b, name); }

ConstraintSet constraints(std::vector<std::string_view> exclusions,
                          std::vector<std::string_view> nonzero = {},
                          std::vector<std::string> integral = {}) {
  ConstraintSet out;
  for (auto e : exclusions) out.integer_exclusions.emplace_back(e);
  for (auto e : nonzero) out.nonzero.emplace_back(e);
  out.integral = std::move(integral);
  return out;
}

Interval open(double lo, double hi) { return {lo, hi, false, false}; }

// 4^b [1+sqrt(1-z)]^{-2b} 2F1(2b-a, 1; a+1; 1 + (2/z)(sqrt(1-z) - 1))
Expression gap_form(double a, double b, double z) {
  return single(z, make_term({{F::coefficient(std::pow(4.0, b)),
                               F::one_plus_sqrt_one_minus_power(z, -2.0 * b)}},
                             {2.0 * b - a, 1.0}, {a + 1.0}, ArgumentMap::one_plus_scaled_sqrt_gap,
                             z));
}

// 2^a [1+sqrt(1-z)]^{-a} 2F1(2b-a, a; a+1; (1 - sqrt(1-z))/2)
Expression half_gap_form(double a, double b, double z) {
  return single(z, make_term({{F::coefficient(std::pow(2.0, a)),
                               F::one_plus_sqrt_one_minus_power(z, -a)}},
                             {2.0 * b - a, a}, {a + 1.0},
                             ArgumentMap::half_one_minus_sqrt_one_minus, z));
}

// (1/2) [2F1(2b, 2a; 2a+1; -sqrt z) + 2F1(2b, 2a; 2a+1; sqrt z)]
Expression root_split_form(double a, double b, double z) {
  Prefactor half{{F::coefficient(0.5)}};
  return {z,
          {make_term(half, {2.0 * b, 2.0 * a}, {2.0 * a + 1.0}, ArgumentMap::negated_sqrt, z),
           make_term(half, {2.0 * b, 2.0 * a}, {2.0 * a + 1.0}, ArgumentMap::sqrt, z)}};
}

SideBuilder reduce(SideBuilder inner, Term (*rewrite)(const Term&)) {
  return [inner = std::move(inner), rewrite](const Bindings& b, double z) {
    return rewrite_terms(inner(b, z), rewrite);
  };
}

Bindings with(std::initializer_list<std::pair<const std::string, double>> values) {
  return Bindings(values);
}

SplitValue x(double v) { return {v, 0.0}; }

double unit_argument_ratio(std::string_view id, double a, double b, unsigned n) {
  const auto p = [n](double x) { return pochhammer(x, n); };
  if (id == "T7") return p(2 + a - b) * p(b - a - 1) / (p(b) * p(a - b + 1));
  if (id == "T8") {
    return p(a - 2 * b) * p(a / 2 - b + 1) * p(-b) / (p(a - b + 1) * p(a / 2 - b) * p(-2 * b));
  }
  if (id == "T9") return p(a - 2 * b) * p(-b) / (p(a - b + 1) * p(-2 * b));
  throw std::invalid_argument("no terminating closed form for '" + std::string(id) + "'");
}

double s35(const Bindings& bb, double z) {
  const double n = get(bb, "n");
  if (z == 0.0) return 1.0;
  if (z > 1.0) throw DomainError("needs z <= 1");
  // 1 - 2^{-n}(1+sqrt(1-z))^n = -expm1(n log1p(-t)), t = (1 - sqrt(1-z))/2
  const double t = 0.5 * z / (1.0 + std::sqrt(1.0 - z));
  return -4.0 * std::expm1(n * std::log1p(-t)) / (n * z);
}

double s36(const Bindings&, double z) {
  if (z == 0.0) return 1.0;
  if (z > 1.0) throw DomainError("needs z <= 1");
  const double t = 0.5 * z / (1.0 + std::sqrt(1.0 - z));
  return -4.0 * std::log1p(-t) / z;
}

double s37(const Bindings& bb, double z) {
  if (z > 1.0) throw DomainError("needs z <= 1");
  return std::pow(2.0 / (1.0 + std::sqrt(1.0 - z)), 2.0 * get(bb, "b"));
}

double s38(const Bindings& bb, double z) {
  const double b = get(bb, "b");
  return std::abs(1.0 - 2.0 * b) < kLimitCrossover ? half_power_difference_expansion(b, z)
                                                   : half_power_difference(b, z);
}

double s39(const Bindings&, double z) {
  if (!(z > 0.0 && z < 1.0)) throw DomainError("needs 0 < z < 1");
  const double r = std::sqrt(z);
  return std::atanh(r) / r;
}

double s40(const Bindings& bb, double z) {
  if (!(z >= 0.0 && z < 1.0)) throw DomainError("needs 0 <= z < 1");
  const double a = get(bb, "a");
  const double r = std::sqrt(z);
  return 0.5 * (std::pow(1.0 + r, -2.0 * a) + std::pow(1.0 - r, -2.0 * a));
}

Expression s41_euler_form(const Bindings& bb, double z) {
  const double a = get(bb, "a");
  return rewrite_terms(root_split_form(a, a - 0.5, z),
                       [](const Term& t) { return euler_transform(t); });
}

double s41(const Bindings& bb, double z) {
  if (!(z >= 0.0 && z < 1.0)) throw DomainError("needs 0 <= z < 1");
  return eval_expression(s41_euler_form(bb, z)).value;
}

SideBuilder elementary(ClosedForm form) {
  return [form = std::move(form)](const Bindings& b, double z) {
    return single(z, constant_term(form(b, z)));
  };
}

std::vector<IdentityRecord> build_catalog() {
  std::vector<IdentityRecord> out;
  const Interval unit_disk = open(-1.0, 1.0);
  const Interval positive_unit = open(0.0, 1.0);
  const Interval unit_point{1.0, 1.0, true, true};

  // Confluent pair in y.
  {
    IdentityRecord r;
    r.id = "E3";
    r.equation = 3;
    r.statement = "e^y 2F2(a,1+a/2;a/2,b;-y) = 2F2(2+a-b,b-a-1;b,1+a-b;y)";
    r.slots = {"a", "b"};
    r.constraints = constraints({"a/2", "b", "1+a-b"});
    r.lhs = [](const Bindings& bb, double y) {
      const double a = get(bb, "a"), b = get(bb, "b");
      return single(y, make_term({{F::exp(y, 1.0)}}, {a, 1 + a / 2}, {a / 2, b},
                                 ArgumentMap::negate, y));
    };
    r.rhs = [](const Bindings& bb, double y) {
      const double a = get(bb, "a"), b = get(bb, "b");
      return single(y, plain({2 + a - b, b - a - 1}, {b, 1 + a - b}, y));
    };
    SideBuilder confluent = [](const Bindings& bb, double y) {
      const double a = get(bb, "a"), b = get(bb, "b");
      return Expression{y,
                        {plain({b - a - 1}, {b}, y),
                         make_term({{F::coefficient(-1 / b), F::power(y, 1)}}, {b - a}, {b + 1},
                                   ArgumentMap::identity, y)}};
    };
    r.intermediates = {
        {"confluent_split", confluent},
        {"kummer_split", reduce(confluent, kummer_first)},
        {"shifted_split",
         [](const Bindings& bb, double y) {
           const double a = get(bb, "a"), b = get(bb, "b");
           return Expression{
               y,
               {make_term({{F::exp(y, 1.0)}}, {a}, {b}, ArgumentMap::negate, y),
                make_term({{F::exp(y, 1.0), F::coefficient(-2 / b), F::power(y, 1)}}, {a + 1},
                          {b + 1}, ArgumentMap::negate, y)}};
         }},
    };
    r.domain = {};
    out.push_back(std::move(r));
  }

  {
    IdentityRecord r;
    r.id = "E4";
    r.equation = 4;
    r.statement = "(1-y)^-h 3F2(h,a,1+a/2;a/2,b;y/(y-1)) = 3F2(h,2+a-b,b-a-1;b,1+a-b;y)";
    r.slots = {"a", "b", "h"};
    r.constraints = constraints({"a/2", "b", "1+a-b"});
    r.domain = open(-1.0, 0.5);
    r.lhs = [](const Bindings& bb, double y) {
      const double a = get(bb, "a"), b = get(bb, "b"), h = get(bb, "h");
      return single(y, make_term({{F::one_minus_power(y, -h)}}, {h, a, 1 + a / 2}, {a / 2, b},
                                 ArgumentMap::ratio_to_argument_minus_one, y));
    };
    r.rhs = [](const Bindings& bb, double y) {
      const double a = get(bb, "a"), b = get(bb, "b"), h = get(bb, "h");
      return single(y, plain({h, 2 + a - b, b - a - 1}, {b, 1 + a - b}, y));
    };
    SideBuilder gauss = [](const Bindings& bb, double y) {
      const double a = get(bb, "a"), b = get(bb, "b"), h = get(bb, "h");
      return Expression{y,
                        {plain({h, b - a - 1}, {b}, y),
                         make_term({{F::coefficient(-h / b), F::power(y, 1)}}, {h + 1, b - a},
                                   {b + 1}, ArgumentMap::identity, y)}};
    };
    r.intermediates = {
        {"gauss_split", gauss},
        {"pfaff_split", reduce(gauss, pfaff_transform)},
        {"reduced_pfaff_split",
         [](const Bindings& bb, double y) {
           const double a = get(bb, "a"), b = get(bb, "b"), h = get(bb, "h");
           const auto map = ArgumentMap::ratio_to_argument_minus_one;
           return Expression{
               y,
               {make_term({{F::one_minus_power(y, -h)}}, {h, a}, {b}, map, y),
                make_term({{F::one_minus_power(y, -h - 1), F::coefficient(-2 * h / b),
                            F::power(y, 1)}},
                          {h + 1, a + 1}, {b + 1}, map, y)}};
         }},
    };
    out.push_back(std::move(r));
  }

  {
    IdentityRecord r;
    r.id = "E5";
    r.equation = 5;
    r.statement =
        "2F1(a,-e/2;1+a+e/2;x) = (1-x)^e 3F2(a+e,1+a/2+e/2,e/2;1+a+e/2,a/2+e/2;x)";
    r.slots = {"a", "e"};
    r.constraints = constraints({"1+a+e/2", "a/2+e/2"});
    r.domain = unit_disk;
    r.lhs = [](const Bindings& bb, double x) {
      const double a = get(bb, "a"), e = get(bb, "e");
      return single(x, plain({a, -e / 2}, {1 + a + e / 2}, x));
    };
    r.rhs = [](const Bindings& bb, double x) {
      const double a = get(bb, "a"), e = get(bb, "e");
      return single(x, make_term({{F::one_minus_power(x, e)}}, {a + e, 1 + a / 2 + e / 2, e / 2},
                                 {1 + a + e / 2, a / 2 + e / 2}, ArgumentMap::identity, x));
    };
    SideBuilder gauss = [](const Bindings& bb, double x) {
      const double a = get(bb, "a"), e = get(bb, "e");
      const double c = a + e / 2 + 1;
      return Expression{
          x,
          {make_term({{F::one_minus_power(x, e)}}, {a + e, e / 2}, {c}, ArgumentMap::identity, x),
           make_term({{F::one_minus_power(x, e), F::coefficient(e / c), F::power(x, 1)}},
                     {a + e + 1, e / 2 + 1}, {c + 1}, ArgumentMap::identity, x)}};
    };
    r.intermediates = {{"gauss_split", gauss}, {"euler_split", reduce(gauss, euler_transform)}};
    out.push_back(std::move(r));
  }

  {
    IdentityRecord r;
    r.id = "E6";
    r.equation = 6;
    r.statement =
        "2F1(a+d-1,-2a;d;y) = (1-y)^-a 4F3(a+d-1,-a,2-d-2a,d+2a-1;d,d+a,1-d-2a;y)";
    r.slots = {"a", "d"};
    r.constraints = constraints({"d", "d+a", "1-d-2a"});
    r.domain = unit_disk;
    r.lhs = [](const Bindings& bb, double y) {
      const double a = get(bb, "a"), d = get(bb, "d");
      return single(y, plain({a + d - 1, -2 * a}, {d}, y));
    };
    r.rhs = [](const Bindings& bb, double y) {
      const double a = get(bb, "a"), d = get(bb, "d");
      return single(y, make_term({{F::one_minus_power(y, -a)}},
                                 {a + d - 1, -a, 2 - d - 2 * a, d + 2 * a - 1},
                                 {d, d + a, 1 - d - 2 * a}, ArgumentMap::identity, y));
    };
    r.intermediates = {
        {"clausen_split",
         [](const Bindings& bb, double y) {
           const double a = get(bb, "a"), d = get(bb, "d");
           return Expression{
               y,
               {make_term({{F::one_minus_power(y, -a)}}, {a + d - 1, -a, d + 2 * a - 1},
                          {d, d + a}, ArgumentMap::identity, y),
                make_term({{F::one_minus_power(y, -a),
                            F::coefficient(a * (a + d - 1) / (d * (a + d))), F::power(y, 1)}},
                          {a + d, 1 - a, d + 2 * a}, {d + 1, d + a + 1}, ArgumentMap::identity,
                          y)}};
         }},
    };
    out.push_back(std::move(r));
  }

  // Terminating sums at unit argument.
  struct Terminating {
    const char* id;
    int equation;
    const char* statement;
    std::vector<std::string_view> exclusions;
    std::vector<SplitValue> (*num)(double, double, double);
    std::vector<SplitValue> (*den)(double, double, double);
  };
  using V = std::vector<SplitValue>;
  const Terminating terminating[] = {
      {"T7", 7, "3F2(a,a/2+1,-n;a/2,b;1) = (2+a-b)_n (b-a-1)_n / ((b)_n (a-b+1)_n)",
       {"a/2", "b", "a-b+1"},
       [](double a, double, double n) { return V{x(a), split_sum({a / 2, 1}), x(-n)}; },
       [](double a, double b, double) { return V{x(a / 2), x(b)}; }},
      {"T8", 8,
       "3F2(a,b,-n;a-b+1,2b-n+1;1) = (a-2b)_n (a/2-b+1)_n (-b)_n / ((a-b+1)_n (a/2-b)_n (-2b)_n)",
       {"a-b+1", "2b-n+1", "a/2-b", "-2b"},
       [](double a, double b, double n) { return V{x(a), x(b), x(-n)}; },
       [](double a, double b, double n) {
         return V{split_sum({a, -b, 1}), split_sum({2 * b, -n, 1})};
       }},
      {"T9", 9,
       "4F3(a,a/2+1,b,-n;a/2,a-b+1,2b-n+1;1) = (a-2b)_n (-b)_n / ((a-b+1)_n (-2b)_n)",
       {"a/2", "a-b+1", "2b-n+1", "-2b"},
       [](double a, double b, double n) { return V{x(a), split_sum({a / 2, 1}), x(b), x(-n)}; },
       [](double a, double b, double n) {
         return V{x(a / 2), split_sum({a, -b, 1}), split_sum({2 * b, -n, 1})};
       }},
  };
  for (const Terminating& t : terminating) {
    IdentityRecord r;
    r.id = t.id;
    r.equation = t.equation;
    r.statement = t.statement;
    r.slots = {"a", "b", "n"};
    r.constraints = constraints(t.exclusions, {}, {"n"});
    r.domain = unit_point;
    r.lhs = [num = t.num, den = t.den](const Bindings& bb, double z) {
      const double a = get(bb, "a"), b = get(bb, "b"), n = get(bb, "n");
      return single(z, Term{{}, split_spec(num(a, b, n), den(a, b, n), z), ArgumentMap::identity});
    };
    r.rhs = [id = std::string(t.id)](const Bindings& bb, double z) {
      const auto n = static_cast<unsigned>(std::lround(get(bb, "n")));
      return single(z, constant_term(terminating_closed_form(id, bb, n)));
    };
    out.push_back(std::move(r));
  }

  {
    IdentityRecord r;
    r.id = "R32";
    r.equation = 32;
    r.statement = "3F2(a,b,b+1/2;a+1,2b;z) = 4^b [1+sqrt(1-z)]^-2b 2F1(2b-a,1;a+1;1+(2/z)(sqrt(1-z)-1))";
    r.slots = {"a", "b"};
    r.constraints = constraints({"a+1", "2b"}, {"a", "b"});
    r.domain = unit_disk;
    r.lhs = [](const Bindings& bb, double z) {
      const double a = get(bb, "a"), b = get(bb, "b");
      return single(z, plain({a, b, b + 0.5}, {a + 1, 2 * b}, z));
    };
    r.rhs = [](const Bindings& bb, double z) { return gap_form(get(bb, "a"), get(bb, "b"), z); };
    r.intermediates = {
        {"half_gap_form",
         [](const Bindings& bb, double z) { return half_gap_form(get(bb, "a"), get(bb, "b"), z); }},
        {"pfaff_of_gap_form", reduce(r.rhs, pfaff_transform)},
    };
    r.oracles = {{Representation::i30, [](const Bindings& bb) { return bb; }}};
    out.push_back(r);

    IdentityRecord s = r;
    s.id = "R33";
    s.equation = 33;
    s.statement = "3F2(a,b,b+1/2;a+1,2b;z) = 2^a [1+sqrt(1-z)]^-a 2F1(2b-a,a;a+1;(1-sqrt(1-z))/2)";
    s.rhs = r.intermediates[0].build;
    s.intermediates = {{"gap_form", r.rhs}};
    out.push_back(std::move(s));
  }

  {
    IdentityRecord r;
    r.id = "R34";
    r.equation = 34;
    r.statement =
        "3F2(a,b,b+1/2;a+1,1/2;z) = [2F1(2b,2a;2a+1;-sqrt z) + 2F1(2b,2a;2a+1;sqrt z)]/2";
    r.slots = {"a", "b"};
    r.constraints = constraints({"a+1", "2a+1"}, {"a", "b"});
    r.domain = {0.0, 1.0, true, false};
    r.lhs = [](const Bindings& bb, double z) {
      const double a = get(bb, "a"), b = get(bb, "b");
      return single(z, plain({a, b, b + 0.5}, {a + 1, 0.5}, z));
    };
    r.rhs = [](const Bindings& bb, double z) {
      return root_split_form(get(bb, "a"), get(bb, "b"), z);
    };
    r.oracles = {{Representation::i31, [](const Bindings& bb) { return bb; }}};
    out.push_back(std::move(r));
  }

  {
    IdentityRecord r;
    r.id = "S35";
    r.equation = 35;
    r.statement = "3F2(1,1-n/2,3/2-n/2;2,2-n;z) = (4/(n z)) [1 - 2^-n (1+sqrt(1-z))^n]";
    r.slots = {"n"};
    r.constraints = constraints({"2-n"}, {"n"});
    r.domain = unit_disk;
    r.lhs = [](const Bindings& bb, double z) {
      const double n = get(bb, "n");
      return single(z, plain({1, 1 - n / 2, 1.5 - n / 2}, {2, 2 - n}, z));
    };
    r.closed_form = s35;
    r.rhs = elementary(s35);
    r.intermediates = {{"half_gap_form", [](const Bindings& bb, double z) {
                          return half_gap_form(1.0, 1.0 - get(bb, "n") / 2, z);
                        }}};
    r.oracles = {{Representation::i30, [](const Bindings& bb) {
                    return with({{"a", 1.0}, {"b", 1.0 - get(bb, "n") / 2}});
                  }}};
    out.push_back(std::move(r));
  }

  {
    IdentityRecord r;
    r.id = "S36";
    r.equation = 36;
    r.statement = "3F2(1,1,3/2;2,2;z) = -(4/z) ln[(1+sqrt(1-z))/2]";
    r.domain = {-1.0, 1.0, false, true};
    r.lhs = [](const Bindings&, double z) { return single(z, plain({1, 1, 1.5}, {2, 2}, z)); };
    r.closed_form = s36;
    r.rhs = elementary(s36);
    r.intermediates = {
        {"half_gap_form", [](const Bindings&, double z) { return half_gap_form(1.0, 1.0, z); }},
        {"gap_form", [](const Bindings&, double z) { return gap_form(1.0, 1.0, z); }},
    };
    r.oracles = {
        {Representation::i30, [](const Bindings&) { return with({{"a", 1.0}, {"b", 1.0}}); }},
        {Representation::i1, [](const Bindings&) { return with({{"a", 0.5}}); }},
        {Representation::i2, [](const Bindings&) { return with({{"a", 0.5}}); }},
    };
    out.push_back(std::move(r));
  }

  {
    IdentityRecord r;
    r.id = "S37";
    r.equation = 37;
    r.statement = "3F2(2b,b,b+1/2;2b+1,2b;z) = 2F1(b,b+1/2;2b+1;z) = 2^2b / [1+sqrt(1-z)]^2b";
    r.slots = {"b"};
    r.constraints = constraints({"2b+1", "2b"}, {"b"});
    r.domain = unit_disk;
    r.lhs = [](const Bindings& bb, double z) {
      const double b = get(bb, "b");
      return single(z, plain({2 * b, b, b + 0.5}, {2 * b + 1, 2 * b}, z));
    };
    r.rhs = [](const Bindings& bb, double z) {
      const double b = get(bb, "b");
      return single(z, constant_term(Prefactor{{F::coefficient(std::pow(4.0, b)),
                                                F::one_plus_sqrt_one_minus_power(z, -2 * b)}}));
    };
    r.closed_form = s37;
    r.intermediates = {
        {"gauss_form",
         [](const Bindings& bb, double z) {
           const double b = get(bb, "b");
           return single(z, plain({b, b + 0.5}, {2 * b + 1}, z));
         }},
        {"half_gap_form",
         [](const Bindings& bb, double z) {
           const double b = get(bb, "b");
           return half_gap_form(2 * b, b, z);
         }},
    };
    r.oracles = {{Representation::i30, [](const Bindings& bb) {
                    const double b = get(bb, "b");
                    return with({{"a", 2 * b}, {"b", b}});
                  }}};
    out.push_back(std::move(r));
  }

  {
    IdentityRecord r;
    r.id = "S38";
    r.equation = 38;
    r.statement =
        "3F2(1/2,b,b+1/2;3/2,1/2;z) = [(1+sqrt z)^(1-2b) - (1-sqrt z)^(1-2b)] / (2 sqrt(z) (1-2b))";
    r.slots = {"b"};
    r.domain = positive_unit;
    r.lhs = [](const Bindings& bb, double z) {
      const double b = get(bb, "b");
      return single(z, plain({0.5, b, b + 0.5}, {1.5, 0.5}, z));
    };
    r.closed_form = s38;
    r.rhs = elementary(s38);
    r.intermediates = {
        {"gauss_form",
         [](const Bindings& bb, double z) {
           const double b = get(bb, "b");
           return single(z, plain({b, b + 0.5}, {1.5}, z));
         }},
        {"root_split_form",
         [](const Bindings& bb, double z) { return root_split_form(0.5, get(bb, "b"), z); }},
    };
    r.oracles = {{Representation::i31, [](const Bindings& bb) {
                    return with({{"a", 0.5}, {"b", get(bb, "b")}});
                  }}};
    out.push_back(std::move(r));
  }

  {
    IdentityRecord r;
    r.id = "S39";
    r.equation = 39;
    r.statement = "2F1(1/2,1;3/2;z) = ln[(1+sqrt z)/(1-sqrt z)] / (2 sqrt z)";
    r.domain = positive_unit;
    r.lhs = [](const Bindings&, double z) { return single(z, plain({0.5, 1}, {1.5}, z)); };
    r.closed_form = s39;
    r.rhs = elementary(s39);
    r.intermediates = {
        {"log_form",
         elementary([](const Bindings&, double z) {
           const double r = std::sqrt(z);
           return (std::log1p(r) - 0.5 * std::log1p(-z)) / r;
         })},
        {"expansion_at_half",
         elementary([](const Bindings&, double z) { return half_power_difference_expansion(0.5, z); })},
    };
    r.oracles = {{Representation::i31,
                  [](const Bindings&) { return with({{"a", 0.5}, {"b", 0.5}}); }}};
    out.push_back(std::move(r));
  }

  {
    IdentityRecord r;
    r.id = "S40";
    r.equation = 40;
    r.statement = "3F2(a,a+1/2,a+1;a+1,1/2;z) = [(1+sqrt z)^-2a + (1-sqrt z)^-2a]/2";
    r.slots = {"a"};
    r.constraints = constraints({"a+1", "2a+1"}, {"a"});
    r.domain = positive_unit;
    r.lhs = [](const Bindings& bb, double z) {
      const double a = get(bb, "a");
      return single(z, plain({a, a + 0.5, a + 1}, {a + 1, 0.5}, z));
    };
    r.rhs = [](const Bindings& bb, double z) {
      const double a = get(bb, "a");
      const double root = std::sqrt(z);
      return Expression{
          z,
          {constant_term(Prefactor{{F::coefficient(0.5), F::one_minus_power(-root, -2 * a)}}),
           constant_term(Prefactor{{F::coefficient(0.5), F::one_minus_power(root, -2 * a)}})}};
    };
    r.closed_form = s40;
    r.intermediates = {
        {"gauss_form",
         [](const Bindings& bb, double z) {
           const double a = get(bb, "a");
           return single(z, plain({a, a + 0.5}, {0.5}, z));
         }},
        {"root_split_form",
         [](const Bindings& bb, double z) {
           const double a = get(bb, "a");
           return root_split_form(a, a + 0.5, z);
         }},
    };
    r.oracles = {{Representation::i31, [](const Bindings& bb) {
                    const double a = get(bb, "a");
                    return with({{"a", a}, {"b", a + 0.5}});
                  }}};
    out.push_back(std::move(r));
  }

  {
    IdentityRecord r;
    r.id = "S41";
    r.equation = 41;
    r.statement =
        "3F2(a,a-1/2,a;a+1,1/2;z) = [2F1(2a-1,2a;2a+1;-sqrt z) + 2F1(2a-1,2a;2a+1;sqrt z)]/2";
    r.slots = {"a"};
    r.constraints = constraints({"a+1", "2a+1"}, {"a", "2a-1"});
    r.domain = positive_unit;
    r.lhs = [](const Bindings& bb, double z) {
      const double a = get(bb, "a");
      return single(z, plain({a, a - 0.5, a}, {a + 1, 0.5}, z));
    };
    r.rhs = [](const Bindings& bb, double z) {
      const double a = get(bb, "a");
      return root_split_form(a, a - 0.5, z);
    };
    r.closed_form = s41;
    r.intermediates = {{"euler_form", s41_euler_form}};
    r.oracles = {{Representation::i31, [](const Bindings& bb) {
                    const double a = get(bb, "a");
                    return with({{"a", a}, {"b", a - 0.5}});
                  }}};
    out.push_back(std::move(r));
  }

  return out;
}

void check_slots(const IdentityRecord& record, const Bindings& bindings) {
  for (const auto& [name, value] : bindings) {
    if (std::find(record.slots.begin(), record.slots.end(), name) == record.slots.end()) {
      throw ConstraintError(record.id + " has no parameter '" + name + "'");
    }
    if (!std::isfinite(value)) throw ConstraintError(record.id + ": " + name + " is not finite");
  }
  for (const std::string& name : record.slots) {
    if (!bindings.contains(name)) {
      throw ConstraintError(record.id + " needs a value for '" + name + "'");
    }
  }
}

}  // namespace

std::span<const IdentityRecord> catalog() {
  static const std::vector<IdentityRecord> records = build_catalog();
  return records;
}

const IdentityRecord& lookup(std::string_view id) {
  for (const IdentityRecord& r : catalog()) {
    if (r.id == id) return r;
  }
  throw std::out_of_range("no catalogued identity '" + std::string(id) + "'");
}

std::pair<Expression, Expression> instantiate_sides(std::string_view id, const Bindings& bindings,
                                                    double z) {
  const IdentityRecord& record = lookup(id);
  check_slots(record, bindings);
  if (auto violation = find_violation(record.constraints, bindings)) {
    throw ConstraintError(record.id + ": " + *violation);
  }
  if (!record.domain.contains(z)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << record.id << ": z = " << z << " outside " << to_string(record.domain);
    throw DomainError(msg.str());
  }
  return {record.lhs(bindings, z), record.rhs(bindings, z)};
}

double terminating_closed_form(std::string_view id, const Bindings& bindings, unsigned n) {
  const IdentityRecord& record = lookup(id);
  Bindings full = bindings;
  full["n"] = n;
  check_slots(record, full);
  if (auto violation = find_violation(record.constraints, full)) {
    throw ConstraintError(record.id + ": " + *violation);
  }
  return unit_argument_ratio(id, slot(bindings, "a"), slot(bindings, "b"), n);
}

double closed_form(std::string_view id, const Bindings& bindings, double z) {
  const IdentityRecord& record = lookup(id);
  if (!record.closed_form) {
    throw std::invalid_argument(record.id + " has no elementary closed form");
  }
  check_slots(record, bindings);
  if (auto violation = find_violation(record.constraints, bindings)) {
    throw ConstraintError(record.id + ": " + *violation);
  }
  if (!record.domain.contains(z) && z != 0.0) {
    std::ostringstream msg;
    msg.precision(17);
    msg << record.id << ": z = " << z << " outside " << to_string(record.domain);
    throw DomainError(msg.str());
  }
  return record.closed_form(bindings, z);
}

}  // namespace hyperred
