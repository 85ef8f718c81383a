#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "hardy/error.hpp"
#include "hardy/io.hpp"
#include "hardy/random.hpp"
#include "suite.hpp"

using namespace hardy;

namespace {

template <class Fn>
void expect_error(ErrorCode code, Fn&& fn) {
  try {
    fn();
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == code);
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const char* kSingle = R"({"max_level":0,"dimension":1,"coefficients":[{"level":0,"pos":0,"value":[1]}]})";

}  // namespace

TEST_CASE("minimal file") {
  const auto u = parse_expansion(kSingle);
  CHECK(u.max_level() == 0);
  CHECK(u.size() == 1);
  CHECK(u.scalar_coefficient(DyadicInterval(0, 0)) == 1.0);
}

TEST_CASE("input errors are distinct") {
  expect_error(ErrorCode::MalformedInput, [] { parse_expansion("{\"max_level\": 1,"); });
  expect_error(ErrorCode::MalformedInput, [] { parse_expansion(R"({"max_level":1,"dimension":1})"); });
  expect_error(ErrorCode::MalformedInput,
               [] { parse_expansion(R"({"max_level":"1","dimension":1,"coefficients":[]})"); });
  expect_error(ErrorCode::OutOfRange, [] {
    parse_expansion(R"({"max_level":2,"dimension":1,"coefficients":[{"level":1,"pos":2,"value":[1]}]})");
  });
  expect_error(ErrorCode::OutOfRange, [] {
    parse_expansion(R"({"max_level":1,"dimension":1,"coefficients":[{"level":2,"pos":0,"value":[1]}]})");
  });
  expect_error(ErrorCode::OutOfRange, [] { parse_expansion(R"({"max_level":99,"dimension":1,"coefficients":[]})"); });
  expect_error(ErrorCode::DuplicateKey, [] {
    parse_expansion(R"({"max_level":1,"dimension":1,"coefficients":[
      {"level":1,"pos":0,"value":[1]},{"level":1,"pos":0,"value":[2]}]})");
  });
  expect_error(ErrorCode::DuplicateKey,
               [] { parse_expansion(R"({"max_level":1,"max_level":2,"dimension":1,"coefficients":[]})"); });
  expect_error(ErrorCode::DimensionMismatch, [] {
    parse_expansion(R"({"max_level":1,"dimension":2,"coefficients":[{"level":0,"pos":0,"value":[1]}]})");
  });
  expect_error(ErrorCode::Io, [] { load("/nonexistent/expansion.json"); });
}

TEST_CASE("save and load round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "hardy_cli_test";
  std::filesystem::create_directories(dir);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto u = gen_random(5, 1 + static_cast<int>(seed % 3), 0.5, seed);
    save(dir / "a.json", u);
    const auto v = load(dir / "a.json");
    CHECK(v == u);
    save(dir / "b.json", v);
    CHECK(read_file(dir / "a.json") == read_file(dir / "b.json"));
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("random generation") {
  CHECK(gen_random(2, 1, 1.0, 5).size() == 7);
  CHECK(gen_random(6, 2, 0.4, 8) == gen_random(6, 2, 0.4, 8));
  CHECK_FALSE(gen_random(6, 2, 0.4, 8) == gen_random(6, 2, 0.4, 9));
  expect_error(ErrorCode::InvalidArgument, [] { gen_random(2, 1, 0.0, 1); });
  expect_error(ErrorCode::InvalidArgument, [] { gen_random(2, 1, 1.5, 1); });

  // 15 intervals at density 1/2: mean support size 7.5, variance 15/4 per draw.
  const int trials = 10000;
  double total = 0.0;
  for (int t = 0; t < trials; ++t) {
    auto rng = make_stream(77, static_cast<std::uint64_t>(t));
    total += static_cast<double>(gen_random(3, 1, 0.5, rng).size());
  }
  const double mean = total / trials;
  const double sigma = std::sqrt(15.0 * 0.25 / trials);
  CHECK(std::abs(mean - 7.5) < 3.0 * sigma);
}

TEST_CASE("commands on the single interval") {
  const auto u = parse_expansion(kSingle);
  CHECK(cli::cmd_norm(u, 1.0, std::nullopt).output["norm"] == 1.0);
  const auto pietsch = cli::cmd_pietsch(u, 1.0, std::nullopt);
  CHECK(pietsch.exit_code == cli::kExitPass);
  CHECK(pietsch.output["weights"]["0/0"] == 1.0);
  CHECK(pietsch.output["A"] == 1.0);
  const auto f = cli::cmd_factorize(u, 1.3333, 2.0);
  CHECK(f.exit_code == cli::kExitPass);
  CHECK(f.output["theta"].get<double>() == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(f.output["identity"] == true);
  const auto dec = cli::cmd_decompose(u, 1.0);
  CHECK(dec.output["pieces"].size() == 1);
  CHECK(dec.output["pieces"][0]["top"] == "0/0");
  CHECK(cli::cmd_norm(u, 1.0, 3.0).output["space"] == "triebel-lizorkin");
}

TEST_CASE("verification suite") {
  cli::SuiteOptions options;
  options.trials = 40;
  options.seed = 42;
  options.samples = 20;
  options.threads = 4;
  const auto a = cli::run_suite(options);
  CHECK(a.passed);
  options.threads = 1;
  const auto b = cli::run_suite(options);
  CHECK(a.report.dump() == b.report.dump());

  options.mutant = cli::Mutant::OmegaTimesTwo;
  CHECK_FALSE(cli::run_suite(options).passed);
  options.mutant = cli::Mutant::PerturbX;
  const auto perturbed = cli::run_suite(options);
  CHECK_FALSE(perturbed.passed);
  bool named = false;
  for (const auto& check : perturbed.report["checks"]) {
    if (check["name"] == "pisier.identity") {
      CHECK(check["first_failure"]["seed"] == 42);
      CHECK(check["first_failure"]["trial"] == 0);
      named = true;
    }
  }
  CHECK(named);

  options.mutant = cli::Mutant::None;
  options.p = 3.0;
  expect_error(ErrorCode::InvalidArgument, [&] { cli::run_suite(options); });
  options.p = 1.5;
  options.q = 1.0;
  expect_error(ErrorCode::InvalidArgument, [&] { cli::run_suite(options); });
  expect_error(ErrorCode::InvalidArgument, [] { cli::parse_mutant("bogus"); });
}
