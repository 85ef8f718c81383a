#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hardy/error.hpp"
#include "hardy/pisier.hpp"
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

HaarExpansion random_instance(std::uint64_t seed, std::uint64_t trial) {
  auto rng = make_stream(seed, trial);
  for (;;) {
    auto u = gen_random(1 + static_cast<int>(trial % 6), 1, 0.6, rng);
    if (!u.is_zero()) return u;
  }
}

}  // namespace

TEST_CASE("theta") {
  CHECK(theta(4.0 / 3.0, 2.0) == doctest::Approx(0.5));
  CHECK(theta(1.0 + 1e-9, 2.0) < 1e-8);
  CHECK(theta(1.5, 3.0) == doctest::Approx(1.5 * (0.5 / 1.5)));
  expect_error(ErrorCode::DegenerateTheta, [] { theta(2.0, 2.0); });
  expect_error(ErrorCode::InvalidArgument, [] { theta(1.0, 2.0); });
  expect_error(ErrorCode::InvalidArgument, [] { theta(3.0, 2.0); });
}

TEST_CASE("single interval factorization") {
  const auto u = HaarExpansion::scalar(2, {{kUnit, 1.0}});
  const auto f = factorize(u, 4.0 / 3.0, 2.0);
  const double omega = f.measure.weights.at(kUnit);
  const double y = f.y.scalar_coefficient(kUnit);
  CHECK(y == doctest::Approx(std::sqrt(omega)));
  CHECK(f.x.scalar_coefficient(kUnit) == doctest::Approx(1.0 / y));
  const auto est = x0_norm_estimate(f, u, 0, 0);
  CHECK(est.samples == 0);
  CHECK(est.value == est.canonical);
  CHECK(est.canonical == doctest::Approx(std::pow(tl_norm(u, f.p, f.q), 1.0 / (1.0 - f.theta))));
}

TEST_CASE("random factorizations") {
  for (std::uint64_t trial = 0; trial < 80; ++trial) {
    const auto u = random_instance(61, trial);
    for (auto [p, q] : {std::pair{4.0 / 3.0, 2.0}, {1.5, 3.0}, {2.0, 4.0}}) {
      const auto f = factorize(u, p, q);
      CHECK(f.x.support() == u.support());
      CHECK(f.y.support() == u.support());
      const auto report = verify_factorization(u, f);
      CHECK(report.passed());
      CHECK(report.max_rel_error < 1e-10);
      // ‖y‖_{f_q^q}^q = Σ ω_I, evaluated pointwise.
      CHECK(std::pow(oracle::norm(f.y, q, q), q) == doctest::Approx(f.measure.total()).epsilon(1e-12));
      const auto est = x0_norm_estimate(f, u, 50, trial);
      CHECK(est.passed());
      CHECK(est.max_holder <= 1.0 + 1e-9);
      CHECK(est.value >= est.canonical);
    }
  }
}

TEST_CASE("sampled estimates are deterministic") {
  const auto u = random_instance(62, 4);
  const auto f = factorize(u, 1.5, 2.5);
  const auto a = x0_norm_estimate(f, u, 30, 9);
  const auto b = x0_norm_estimate(f, u, 30, 9);
  CHECK(a.value == b.value);
  CHECK(a.max_lattice == b.max_lattice);
}

TEST_CASE("perturbations are detected") {
  const auto u = random_instance(63, 2);
  auto f = factorize(u, 4.0 / 3.0, 2.0);
  auto x = f.x.to_map();
  x.begin()->second[0] *= 1.0 + 1e-3;
  f.x = HaarExpansion(u.max_level(), 1, x);
  CHECK_FALSE(verify_factorization(u, f).identity);

  auto g = factorize(u, 4.0 / 3.0, 2.0);
  auto y = g.y.to_map();
  for (auto& [interval, value] : y) value[0] *= 2.0;
  g.y = HaarExpansion(u.max_level(), 1, y);
  CHECK_FALSE(verify_factorization(u, g).y_bounded);
}

TEST_CASE("factorization errors") {
  expect_error(ErrorCode::ZeroInput, [] { factorize(HaarExpansion(2, 1), 1.5, 2.0); });
  expect_error(ErrorCode::DegenerateTheta, [] { factorize(HaarExpansion::scalar(0, {{kUnit, 1.0}}), 2.0, 2.0); });
  expect_error(ErrorCode::DimensionMismatch,
               [] { factorize(HaarExpansion(0, 2, {{kUnit, {1.0, 1.0}}}), 1.5, 2.0); });
}
