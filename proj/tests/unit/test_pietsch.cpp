#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hardy/error.hpp"
#include "hardy/pietsch.hpp"
#include "hardy/random.hpp"
#include "oracles.hpp"

using namespace hardy;

namespace {

const DyadicInterval kUnit(0, 0);

template <class Fn>
void expect_error(ErrorCode code, Fn&& fn) {
  try {
    fn();
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == code);
  }
}

HaarExpansion random_instance(std::uint64_t seed, std::uint64_t trial, int dimension = 1) {
  auto rng = make_stream(seed, trial);
  for (;;) {
    auto u = gen_random(1 + static_cast<int>(trial % 7), dimension, 0.6, rng);
    if (!u.is_zero()) return u;
  }
}

// ω_I from the defining formula, with every norm taken from the sampling oracle.
std::map<DyadicInterval, double> expected_hardy_weights(const HaarExpansion& u, double p,
                                                        const PietschMeasure& m) {
  const double norm_power = std::pow(oracle::hp_norm(u, p), p);
  std::map<DyadicInterval, double> out;
  for (std::size_t i = 0; i < m.decomposition.size(); ++i) {
    const auto piece = m.decomposition.piece(u, i);
    const double l2 = std::sqrt(oracle::l2_pointwise_squared(piece));
    const double top = measure(m.decomposition[i].top).to_double();
    for (const auto& [interval, value] : piece.to_map()) {
      out[interval] = std::pow(top, 1.0 - p / 2.0) / std::pow(l2, 2.0 - p) * value[0] * value[0] *
                      measure(interval).to_double() / (m.normalizer * norm_power);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("single interval has unit weight") {
  const auto u = HaarExpansion::scalar(2, {{kUnit, 1.0}});
  const auto m = weights_hp(u, 1.0);
  CHECK(m.normalizer == 1.0);
  CHECK(m.weights.at(kUnit) == doctest::Approx(1.0));
  CHECK(m.constant() == 1.0);
  const auto v = weights_vector(HaarExpansion(2, 2, {{kUnit, {1.0, 0.0}}}), 1.0);
  CHECK(v.weights.at(kUnit) == doctest::Approx(1.0));
}

TEST_CASE("hardy weights match the defining formula") {
  for (std::uint64_t trial = 0; trial < 80; ++trial) {
    const auto u = random_instance(41, trial);
    for (double p : {0.5, 1.0, 1.5, 2.0}) {
      const auto m = weights_hp(u, p);
      const auto expected = expected_hardy_weights(u, p, m);
      REQUIRE(expected.size() == m.weights.size());
      for (const auto& [interval, w] : expected) {
        CHECK(oracle::relative_error(m.weights.at(interval), w) < 1e-10);
      }
      CHECK(m.total() <= 1.0 + 1e-12);
      CHECK(verify_measure(u, m).passed());
    }
  }
}

TEST_CASE("p = 2 collapses the block factor") {
  const auto u = random_instance(42, 3);
  const auto m = weights_hp(u, 2.0);
  const double l2sq = oracle::l2_pointwise_squared(u);
  for (const auto& [interval, value] : u.to_map()) {
    CHECK(m.weights.at(interval) ==
          doctest::Approx(value[0] * value[0] * measure(interval).to_double() / (m.normalizer * l2sq)));
  }
  CHECK(m.total() == doctest::Approx(1.0 / m.normalizer));
}

TEST_CASE("triebel-lizorkin weights") {
  for (std::uint64_t trial = 0; trial < 60; ++trial) {
    const auto u = random_instance(43, trial);
    for (auto [p, q] : {std::pair{1.5, 2.0}, {1.0, 3.0}, {2.0, 4.0}}) {
      const auto m = weights_tl(u, p, q);
      CHECK(m.exponent == q);
      CHECK(m.total() <= 1.0 + 1e-12);
      CHECK(verify_measure(u, m).passed());
    }
    // p = q: ω_I = |x_I|^q |I| / (A ‖u‖_{f_q^q}^q).
    const double q = 3.0;
    const auto m = weights_tl(u, q, q);
    const double norm_power = std::pow(oracle::norm(u, q, q), q);
    for (const auto& [interval, value] : u.to_map()) {
      CHECK(oracle::relative_error(m.weights.at(interval),
                                   std::pow(std::abs(value[0]), q) * measure(interval).to_double() /
                                       (m.normalizer * norm_power)) < 1e-10);
    }
    CHECK(m.total() == doctest::Approx(1.0 / m.normalizer));
    // q = 2 reproduces the Hardy weights.
    const auto tl = weights_tl(u, 1.0, 2.0);
    const auto hp = weights_hp(u, 1.0);
    for (const auto& [interval, w] : hp.weights) CHECK(oracle::relative_error(tl.weights.at(interval), w) < 1e-12);
  }
}

TEST_CASE("vector weights") {
  for (std::uint64_t trial = 0; trial < 60; ++trial) {
    const auto u = random_instance(44, trial, 3);
    for (double p : {0.5, 1.0, 1.5, 2.0}) {
      const auto m = weights_vector(u, p);
      CHECK(m.total() <= 1.0 + 1e-12);
      CHECK(verify_measure(u, m).passed());
      if (p > 1.0) CHECK(m.lower_constant < 1.0);
      for (std::size_t i = 0; i < m.decomposition.size(); ++i) {
        double sum = 0.0;
        for (const auto& [interval, mu] : block_measure(u, m.decomposition, i)) sum += mu;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("multiplier bound") {
  const auto single = HaarExpansion::scalar(2, {{kUnit, 2.0}});
  const auto m1 = weights_hp(single, 2.0);
  const auto r1 = check_multiplier_bound(single, {{kUnit, 0.5}}, m1);
  CHECK(r1.lhs == doctest::Approx(1.0));
  CHECK(r1.holds);

  for (std::uint64_t trial = 0; trial < 60; ++trial) {
    const auto u = random_instance(45, trial);
    const auto v = random_instance(46, trial, 2);
    auto rng = make_stream(47, trial);
    const std::vector<PietschMeasure> measures = {weights_hp(u, 1.0), weights_hp(u, 0.5),
                                                  weights_tl(u, 1.0, 3.0), weights_tl(u, 1.5, 2.0)};
    Multiplier ones;
    for (const auto& interval : u.support()) ones[interval] = 1.0;
    for (const auto& m : measures) {
      CHECK(check_multiplier_bound(u, ones, m).holds);
      for (int k = 0; k < 20; ++k) CHECK(check_multiplier_bound(u, random_multiplier(u, rng), m).holds);
    }
    const auto mv = weights_vector(v, 1.5);
    for (int k = 0; k < 20; ++k) CHECK(check_multiplier_bound(v, random_multiplier(v, rng), mv).holds);
  }
}

TEST_CASE("vector H2 multiplier identity") {
  for (std::uint64_t trial = 0; trial < 40; ++trial) {
    const auto u = random_instance(48, trial, 2);
    auto rng = make_stream(49, trial);
    const auto m = weights_vector(u, 1.0);
    for (std::size_t i = 0; i < m.decomposition.size(); ++i) {
      const auto piece = m.decomposition.piece(u, i);
      const auto phi = random_multiplier(piece, rng);
      const double lhs = std::pow(oracle::hp_norm(multiply(phi, piece), 2.0), 2.0);
      double weighted = 0.0;
      for (const auto& [interval, mu] : block_measure(u, m.decomposition, i)) {
        weighted += phi.at(interval) * phi.at(interval) * mu;
      }
      CHECK(oracle::relative_error(lhs, std::pow(l2_norm(piece), 2.0) * weighted) < 1e-12);
    }
  }
}

TEST_CASE("errors and tampering") {
  const auto u = random_instance(50, 1);
  expect_error(ErrorCode::ZeroInput, [] { weights_hp(HaarExpansion(2, 1), 1.0); });
  expect_error(ErrorCode::DimensionMismatch, [] { weights_hp(HaarExpansion(0, 2, {{kUnit, {1.0, 1.0}}}), 1.0); });
  expect_error(ErrorCode::InvalidArgument, [&] { weights_tl(u, 3.0, 2.0); });
  const auto other = HaarExpansion::scalar(u.max_level(), {{DyadicInterval(u.max_level(), 0), 1.0}});
  const auto m = weights_hp(u, 1.0);
  expect_error(ErrorCode::Mismatch, [&] { verify_measure(other, m); });

  auto doubled = m;
  doubled.weights.begin()->second *= 2.0;
  const auto report = verify_measure(u, doubled);
  CHECK_FALSE(report.passed());
  CHECK_FALSE(report.matches_formula);

  auto negative = m;
  negative.weights.begin()->second *= -1.0;
  CHECK_FALSE(verify_measure(u, negative).nonnegative);
}
