#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hardy/dyadic.hpp"
#include "hardy/error.hpp"
#include "hardy/random.hpp"
#include "oracles.hpp"

using namespace hardy;

namespace {

IntervalFamily chain(int depth) {
  std::vector<DyadicInterval> members;
  for (int j = 0; j <= depth; ++j) members.emplace_back(j, 0);
  return IntervalFamily(members);
}

IntervalFamily full_tree(int depth) {
  std::vector<DyadicInterval> members;
  for (int level = 0; level <= depth; ++level) {
    for (std::uint32_t k = 0; k < (1u << level); ++k) members.emplace_back(level, k);
  }
  return IntervalFamily(members);
}

std::vector<oracle::Cell> cells(const IntervalFamily& family) {
  std::vector<oracle::Cell> out;
  for (const auto& i : family) out.push_back({i.level(), i.position()});
  return out;
}

template <class Fn>
void expect_error(ErrorCode code, Fn&& fn) {
  try {
    fn();
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == code);
  }
}

}  // namespace

TEST_CASE("dyadic rationals are exact") {
  const DyadicRational a(7, 2);
  CHECK(a.to_string() == "7/4");
  CHECK(a.to_double() == 1.75);
  CHECK((DyadicRational(1, 1) + DyadicRational(1, 2)).to_string() == "3/4");
  CHECK(DyadicRational(2, 1).to_string() == "1");
  CHECK(DyadicRational(3, 2) * DyadicRational(3, 1) == DyadicRational(9, 3));
  CHECK(DyadicRational(1, 40) < DyadicRational(1, 39));
  CHECK(DyadicRational(5, 0) > DyadicRational(9, 1));
  CHECK(DyadicRational::power_of_two(10) == DyadicRational(1, 10));
}

TEST_CASE("interval measure") {
  CHECK(measure(DyadicInterval(0, 0)) == DyadicRational(1, 0));
  CHECK(measure(DyadicInterval(2, 3)).to_string() == "1/4");
  CHECK(measure(DyadicInterval(10, 0)).to_double() == std::ldexp(1.0, -10));
}

TEST_CASE("interval geometry") {
  const DyadicInterval unit(0, 0);
  const DyadicInterval left(1, 0);
  const DyadicInterval right(1, 1);
  CHECK(contains(unit, left));
  CHECK_FALSE(contains(left, right));
  CHECK(contains(left, left));
  CHECK_FALSE(contains(left, unit));
  CHECK(disjoint(left, right));
  CHECK(DyadicInterval(3, 5).parent() == DyadicInterval(2, 2));
  CHECK(DyadicInterval(2, 2).left_child() == DyadicInterval(3, 4));
  CHECK(DyadicInterval(2, 2).right_child() == DyadicInterval(3, 5));
  CHECK(DyadicInterval(4, 13).ancestor_at(1) == DyadicInterval(1, 1));
  CHECK(DyadicInterval(3, 5).key() == "3/5");
  expect_error(ErrorCode::OutOfRange, [] { DyadicInterval(2, 4); });
  expect_error(ErrorCode::OutOfRange, [] { DyadicInterval(-1, 0); });
}

TEST_CASE("families are sorted and deduplicated") {
  IntervalFamily family({DyadicInterval(2, 1), DyadicInterval(0, 0), DyadicInterval(2, 1)});
  REQUIRE(family.size() == 2);
  CHECK(family[0] == DyadicInterval(0, 0));
  CHECK(family.contains(DyadicInterval(2, 1)));
  CHECK(family.nearest_strict_ancestor(DyadicInterval(2, 1)) == DyadicInterval(0, 0));
  CHECK_FALSE(family.nearest_strict_ancestor(DyadicInterval(0, 0)).has_value());
  expect_error(ErrorCode::OutOfRange, [] { IntervalFamily({DyadicInterval(3, 0)}, 2); });
}

TEST_CASE("carleson constant examples") {
  CHECK(carleson_constant(IntervalFamily({DyadicInterval(0, 0)})) == DyadicRational(1, 0));
  CHECK(carleson_constant(chain(2)).to_string() == "7/4");
  CHECK(carleson_constant(full_tree(2)) == DyadicRational(3, 0));
  expect_error(ErrorCode::EmptyFamily, [] { carleson_constant(IntervalFamily{}); });
}

TEST_CASE("carleson constant agrees with the quadratic oracle") {
  for (std::uint64_t trial = 0; trial < 300; ++trial) {
    auto rng = make_stream(11, trial);
    const auto family = random_family(static_cast<int>(trial % 8), rng);
    const double expected = oracle::carleson(cells(family));
    const auto c = carleson_constant(family);
    CHECK(c.to_double() == doctest::Approx(expected).epsilon(1e-15));
    CHECK(c >= DyadicRational(1, 0));
    const bool pairwise_disjoint = maximal_intervals(family).size() == family.size();
    CHECK((c == DyadicRational(1, 0)) == pairwise_disjoint);
  }
}

TEST_CASE("maximal intervals") {
  const auto a = maximal_intervals(IntervalFamily({DyadicInterval(0, 0), DyadicInterval(1, 0)}));
  CHECK(a == IntervalFamily({DyadicInterval(0, 0)}));
  const IntervalFamily halves({DyadicInterval(1, 0), DyadicInterval(1, 1)});
  CHECK(maximal_intervals(halves) == halves);
  CHECK(maximal_intervals(IntervalFamily{}).empty());
  for (std::uint64_t trial = 0; trial < 200; ++trial) {
    auto rng = make_stream(12, trial);
    const auto family = random_family(6, rng);
    const auto top = maximal_intervals(family);
    CHECK(carleson_constant(top) == DyadicRational(1, 0));
    CHECK(covered_measure(top) == covered_measure(family));
    CHECK(covered_measure(family).to_double() == oracle::covered(cells(family), 6));
  }
}

TEST_CASE("generations") {
  const auto single = generations(IntervalFamily({DyadicInterval(0, 0)}));
  REQUIRE(single.size() == 1);
  const auto gens = generations(chain(2));
  REQUIRE(gens.size() == 3);
  for (int j = 0; j < 3; ++j) CHECK(gens[j] == IntervalFamily({DyadicInterval(j, 0)}));

  for (std::uint64_t trial = 0; trial < 200; ++trial) {
    auto rng = make_stream(13, trial);
    const auto family = random_family(6, rng);
    const auto parts = generations(family);
    const auto depth = oracle::generation_index(cells(family));
    std::size_t total = 0;
    for (std::size_t g = 0; g < parts.size(); ++g) {
      total += parts[g].size();
      CHECK(carleson_constant(parts[g]) == DyadicRational(1, 0));
      for (const auto& interval : parts[g]) {
        CHECK(depth[*family.index_of(interval)] == static_cast<int>(g));
      }
    }
    CHECK(total == family.size());
  }
}

TEST_CASE("generation decay bound") {
  const auto c = chain(5);
  const DyadicInterval unit(0, 0);
  CHECK(generation_decay_check(c, unit, 0));
  // G_3 of the chain is {[0,1/8)} and the Carleson constant is 63/32.
  CHECK(generation_measure(c, unit, 3).to_string() == "1/8");
  const double bound = 4.0 * std::pow(2.0, -6.0 / (4.0 * 63.0 / 32.0 + 1.0));
  CHECK(generation_decay_bound(carleson_constant(c), unit, 3) == doctest::Approx(bound));
  CHECK(generation_decay_check(c, unit, 3));
  expect_error(ErrorCode::NotMember, [&] { generation_decay_check(c, DyadicInterval(1, 1), 1); });

  for (std::uint64_t trial = 0; trial < 300; ++trial) {
    auto rng = make_stream(14, trial);
    const auto family = random_family(static_cast<int>(trial % 8), rng);
    const auto carleson = carleson_constant(family);
    for (const auto& interval : family) {
      for (int level = 0; level < 10; ++level) {
        CHECK(generation_decay_check(family, carleson, interval, level));
      }
    }
  }
}

TEST_CASE("blocks") {
  const DyadicInterval unit(0, 0);
  const DyadicInterval half(1, 0);
  const DyadicInterval quarter(2, 0);
  const IntervalFamily ambient({unit, half, quarter});
  CHECK(is_block(IntervalFamily({unit}), ambient));
  CHECK_FALSE(is_block(IntervalFamily({unit, quarter}), ambient));
  CHECK(is_block(IntervalFamily({unit, half}), IntervalFamily({unit, half})));
  CHECK_FALSE(is_block(IntervalFamily({half, DyadicInterval(1, 1)}),
                       IntervalFamily({half, DyadicInterval(1, 1)})));
  expect_error(ErrorCode::NotSubset,
               [&] { is_block(IntervalFamily({DyadicInterval(1, 1)}), ambient); });
}
