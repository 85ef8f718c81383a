#pragma once

// Randomized verification of every inequality the library promises, over
// seeded trials. The report is a deterministic function of the options.

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

namespace hardy::cli {

enum class Mutant { None, OmegaTimesTwo, PerturbX };

struct SuiteOptions {
  double p = 1.0;
  double q = 2.0;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  double density = 0.5;
  int max_level = 6;
  int dimension = 2;            // vector checks use max(2, dimension)
  std::size_t multipliers = 10;  // φ per instance and target space
  std::size_t samples = 100;     // z per factorization
  Mutant mutant = Mutant::None;
  unsigned threads = 0;          // 0 = hardware concurrency
};

struct SuiteResult {
  bool passed = false;
  nlohmann::ordered_json report;
};

// Throws hardy::Error(InvalidArgument) for options outside the supported ranges.
void validate(const SuiteOptions& options);

SuiteResult run_suite(const SuiteOptions& options);

Mutant parse_mutant(const std::string& name);
std::string to_string(Mutant mutant);

}  // namespace hardy::cli
