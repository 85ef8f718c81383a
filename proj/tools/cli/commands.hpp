#pragma once

// Thin command wrappers around the library. Each returns the process exit
// code: 0 pass, 1 verification failure; input errors propagate as hardy::Error.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "hardy/haar.hpp"
#include "suite.hpp"

namespace hardy::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct CommandResult {
  int exit_code = kExitPass;
  nlohmann::ordered_json output;
};

// {"level/pos": value} in canonical order; vector coefficients become arrays.
nlohmann::ordered_json coefficients_by_key(const HaarExpansion& u);

CommandResult cmd_gen(int max_level, int dimension, double density, std::uint64_t seed);
CommandResult cmd_norm(const HaarExpansion& u, double p, std::optional<double> q);
CommandResult cmd_decompose(const HaarExpansion& u, double p);
CommandResult cmd_pietsch(const HaarExpansion& u, double p, std::optional<double> q);
CommandResult cmd_factorize(const HaarExpansion& u, double p, double q);
CommandResult cmd_verify(const SuiteOptions& options);

// Writes the JSON document to path, or to out when path is empty.
void emit(const nlohmann::ordered_json& doc, const std::string& path, std::ostream& out);

}  // namespace hardy::cli
