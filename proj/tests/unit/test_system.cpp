#include "obspart/errors.hpp"
#include "obspart/system.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace obspart;
using P = std::pair<std::size_t, std::size_t>;

TEST_CASE("make_system converts 1-based pairs") {
  const P a[] = {{2, 1}, {3, 2}};
  const P h[] = {{1, 3}};
  StructuredSystem sys = make_system(3, 1, a, h);
  CHECK(sys.a_pattern == std::vector<Entry>{{1, 0}, {2, 1}});
  CHECK(sys.h_pattern == std::vector<Entry>{{0, 2}});
}

TEST_CASE("validation rejects bad input") {
  const P none[] = {{1, 1}};
  SECTION("zero states") {
    CHECK_THROWS_AS(make_system(0, 0, {}, {}), InputError);
  }
  SECTION("out of range, named 1-based") {
    const P a[] = {{4, 1}};
    CHECK_THROWS_WITH(make_system(3, 0, a, {}), Catch::Matchers::ContainsSubstring("(4, 1)"));
    CHECK_THROWS_AS(make_system(3, 0, {}, none), InputError);
  }
  SECTION("zero index") {
    const P a[] = {{0, 1}};
    CHECK_THROWS_AS(make_system(3, 0, a, {}), InputError);
  }
  SECTION("duplicates") {
    const P a[] = {{2, 1}, {2, 1}};
    CHECK_THROWS_AS(make_system(3, 0, a, {}), InputError);
  }
}

TEST_CASE("zero rows and columns of A are legal") {
  const P h[] = {{1, 2}};
  StructuredSystem sys = make_system(2, 1, {}, h);
  CHECK(sys.a_pattern.empty());
  CHECK_NOTHROW(validate(sys));
}

TEST_CASE("measurement helpers") {
  const P a[] = {{2, 1}, {3, 2}};
  const P h[] = {{1, 3}, {2, 1}, {2, 2}};
  StructuredSystem sys = make_system(3, 2, a, h);

  CHECK(measured_states(sys, 1) == StateSet{0, 1});
  CHECK(without_measurements(sys).p == 0);

  std::size_t rows[] = {1};
  StructuredSystem one = select_measurements(sys, rows);
  CHECK(one.p == 1);
  CHECK(measured_states(one, 0) == StateSet{0, 1});

  StructuredSystem dropped = drop_measurement(sys, 0);
  CHECK(dropped.p == 1);
  CHECK(measured_states(dropped, 0) == StateSet{0, 1});

  std::size_t states[] = {2, 0};
  StructuredSystem more = with_state_sensors(sys, states);
  CHECK(more.p == 4);
  CHECK(measured_states(more, 2) == StateSet{2});
  CHECK(measured_states(more, 3) == StateSet{0});
}

TEST_CASE("labels are 1-based") {
  CHECK(state_label(0) == "x1");
  std::size_t s[] = {0, 3};
  CHECK(format_states(s) == "{x1, x4}");
  CHECK(format_states(StateSet{}) == "{}");
}

TEST_CASE("canonical sorts patterns") {
  StructuredSystem sys{2, 0, {{1, 0}, {0, 1}}, {}};
  CHECK(canonical(sys).a_pattern == std::vector<Entry>{{0, 1}, {1, 0}});
}
