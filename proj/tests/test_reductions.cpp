#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "goldens.hpp"
#include "hyperred/reductions.hpp"

using namespace hyperred;

namespace {

double rel(double x, double y) { return std::abs(x - y) / std::max(std::abs(x), std::abs(y)); }

double side_value(const Expression& e) { return eval_expression(e).value; }

}  // namespace

TEST_CASE("affine combinations") {
  const Bindings b{{"a", 1.5}, {"b", -0.25}, {"e", 3.0}, {"n", 4.0}};
  CHECK(AffineCombination("1+a-b")(b) == doctest::Approx(2.75));
  CHECK(AffineCombination("a/2+e/2")(b) == doctest::Approx(2.25));
  CHECK(AffineCombination("2b-n+1")(b) == doctest::Approx(-3.5));
  CHECK(AffineCombination("-2b")(b) == doctest::Approx(0.5));
  CHECK(AffineCombination("1-d-2a")({{"a", 1.0}, {"d", 0.5}}) == doctest::Approx(-1.5));
  CHECK(AffineCombination("a/2-b").text() == "a/2-b");
  CHECK_THROWS(AffineCombination("a*b"));
  CHECK_THROWS(AffineCombination(""));
  CHECK_THROWS(AffineCombination("x")(b));
}

TEST_CASE("constraint checks") {
  ConstraintSet c;
  c.integer_exclusions.emplace_back("b");
  c.nonzero.emplace_back("a");
  c.integral.push_back("n");
  CHECK_FALSE(find_violation(c, {{"a", 1.0}, {"b", 0.5}, {"n", 3.0}}).has_value());
  CHECK(find_violation(c, {{"a", 1.0}, {"b", -2.0}, {"n", 3.0}}).has_value());
  CHECK(find_violation(c, {{"a", 0.0}, {"b", 0.5}, {"n", 3.0}}).has_value());
  CHECK(find_violation(c, {{"a", 1.0}, {"b", 0.5}, {"n", 2.5}}).has_value());
  CHECK(find_violation(c, {{"a", 1.0}, {"b", 0.5}, {"n", -1.0}}).has_value());
  // a margin widens every exclusion
  CHECK_FALSE(find_violation(c, {{"a", 1.0}, {"b", -2.0005}, {"n", 3.0}}).has_value());
  CHECK(find_violation(c, {{"a", 1.0}, {"b", -2.0005}, {"n", 3.0}}, 1e-3).has_value());
  CHECK_THROWS_AS(check_constraints(c, {{"a", 1.0}, {"b", -1.0}, {"n", 3.0}}), ConstraintError);
}

TEST_CASE("intervals") {
  const Interval open{-1.0, 1.0, false, false};
  CHECK(open.contains(0.0));
  CHECK_FALSE(open.contains(1.0));
  const Interval half{-1.0, 1.0, false, true};
  CHECK(half.contains(1.0));
  CHECK(to_string(half) == "(-1, 1]");
  const Interval point{1.0, 1.0, true, true};
  CHECK(point.is_point());
  CHECK(to_string(point) == "{1}");
}

TEST_CASE("catalog contents") {
  const auto records = catalog();
  REQUIRE(records.size() == 17);
  const char* ids[] = {"E3",  "E4",  "E5",  "E6",  "T7",  "T8",  "T9",  "R32", "R33",
                       "R34", "S35", "S36", "S37", "S38", "S39", "S40", "S41"};
  for (std::size_t i = 0; i < records.size(); ++i) CHECK(records[i].id == ids[i]);
  CHECK(lookup("S36").equation == 36);
  CHECK(lookup("S36").domain.hi_closed);
  CHECK(lookup("T8").constraints.integral == std::vector<std::string>{"n"});
  CHECK_THROWS_AS(lookup("X1"), std::out_of_range);
  for (const IdentityRecord& r : records) {
    CAPTURE(r.id);
    CHECK(r.lhs);
    CHECK(r.rhs);
    CHECK_FALSE(r.statement.empty());
  }
}

TEST_CASE("identity sides at fixed bindings") {
  struct Case {
    const char* id;
    Bindings bindings;
    double z;
    double expected;
  };
  const Case cases[] = {
      {"E3", {{"a", 1.3}, {"b", 0.6}}, 0.7, goldens::e3_lhs},
      {"E5", {{"a", 0.4}, {"e", 0.9}}, 0.3, goldens::e5_lhs},
      {"R32", {{"a", 0.8}, {"b", 0.35}}, -0.6, goldens::r32_lhs},
      {"R33", {{"a", 0.8}, {"b", 0.35}}, -0.6, goldens::r32_lhs},
      {"S36", {}, 0.5, goldens::log_root_half},
      {"S38", {{"b", 0.3}}, 0.4, goldens::s38_lhs},
      {"S41", {{"a", 0.8}}, 0.3, goldens::s41_lhs},
  };
  for (const Case& c : cases) {
    CAPTURE(c.id);
    const auto [lhs, rhs] = instantiate_sides(c.id, c.bindings, c.z);
    CHECK(rel(side_value(lhs), c.expected) <= 1e-12);
    CHECK(rel(side_value(rhs), c.expected) <= 1e-11);
  }
}

TEST_CASE("printed sixth identity does not hold") {
  const auto [lhs, rhs] = instantiate_sides("E6", {{"a", 0.4}, {"d", 1.3}}, 0.25);
  CHECK(rel(side_value(lhs), side_value(rhs)) > 0.1);
}

TEST_CASE("terminating closed forms") {
  const Bindings b{{"a", 1.7}, {"b", 0.45}};
  CHECK(rel(terminating_closed_form("T9", b, 5), goldens::t9_ratio) <= 1e-14);
  Bindings with_n = b;
  with_n["n"] = 5.0;
  const auto [lhs, rhs] = instantiate_sides("T9", with_n, 1.0);
  CHECK(rel(side_value(lhs), goldens::t9_sum) <= 1e-13);
  CHECK(rel(side_value(rhs), goldens::t9_ratio) <= 1e-14);
  CHECK(terminating_closed_form("T7", b, 0) == 1.0);
  CHECK_THROWS(terminating_closed_form("S36", b, 3));
}

TEST_CASE("closed forms") {
  CHECK(rel(closed_form("S36", {}, 1.0), 4.0 * std::log(2.0)) <= 1e-15);
  CHECK(rel(closed_form("S37", {{"b", 1.0}}, 0.75), 16.0 / 9.0) <= 1e-15);
  CHECK(rel(closed_form("S39", {}, 0.25), std::log(3.0)) <= 1e-15);
  CHECK(rel(closed_form("S40", {{"a", 1.0}}, 0.25), 20.0 / 9.0) <= 1e-15);
  CHECK(rel(closed_form("S38", {{"b", 0.3}}, 0.4), goldens::s38_lhs) <= 1e-13);
  CHECK(rel(closed_form("S41", {{"a", 0.8}}, 0.3), goldens::s41_lhs) <= 1e-12);
  CHECK(rel(closed_form("S36", {}, 0.5), goldens::log_root_half) <= 1e-14);
  CHECK_THROWS_AS(closed_form("E3", {{"a", 1.0}, {"b", 0.5}}, 0.3), std::invalid_argument);
}

TEST_CASE("half-power difference near b = 1/2") {
  for (double z : {0.1, 0.25, 0.5, 0.9}) {
    const double limit = std::atanh(std::sqrt(z)) / std::sqrt(z);
    CHECK(rel(half_power_difference_expansion(0.5, z), limit) <= 1e-14);
    for (double db : {5e-5, 1e-5, -1e-5}) {
      CHECK(rel(half_power_difference(0.5 + db, z), half_power_difference_expansion(0.5 + db, z)) <=
            1e-9);
    }
  }
  CHECK_THROWS(half_power_difference(0.5, 0.3));
}

TEST_CASE("slot validation") {
  CHECK_THROWS(instantiate_sides("E3", {{"a", 1.0}}, 0.2));
  CHECK_THROWS(instantiate_sides("E3", {{"a", 1.0}, {"b", 0.5}, {"c", 2.0}}, 0.2));
  CHECK_THROWS(instantiate_sides("E3", {{"a", 1.0}, {"b", std::nan("")}}, 0.2));
  CHECK_THROWS_AS(instantiate_sides("E3", {{"a", 1.0}, {"b", -2.0}}, 0.2), ConstraintError);
  CHECK_THROWS_AS(instantiate_sides("X9", {}, 0.2), std::out_of_range);
}
