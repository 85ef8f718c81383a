#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "hardy/error.hpp"
#include "hardy/io.hpp"

namespace {

using hardy::cli::CommandResult;

struct Flags {
  double p = 1.0;
  double q = 2.0;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  double density = 0.5;
  int max_level = 6;
  int dimension = 1;
  std::size_t multipliers = 10;
  std::size_t samples = 100;
  unsigned threads = 0;
  std::string mutant = "none";
  std::string out;
  std::string input;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Atomic decompositions, Pietsch measures and Pisier factorizations of Haar expansions"};
  app.require_subcommand(1);
  Flags f;

  auto* gen = app.add_subcommand("gen", "Generate a random Haar expansion");
  gen->add_option("--max-level", f.max_level, "Finest dyadic level")->capture_default_str();
  gen->add_option("--dimension", f.dimension, "Coefficient dimension")->capture_default_str();
  gen->add_option("--density", f.density, "Inclusion probability per interval")->capture_default_str();
  gen->add_option("--seed", f.seed, "Random seed")->capture_default_str();

  auto* norm = app.add_subcommand("norm", "H^p norm, or f_p^q norm with --q");
  auto* decompose = app.add_subcommand("decompose", "Atomic decomposition and its report");
  auto* pietsch = app.add_subcommand("pietsch", "Pietsch weights (f_p^q with --q)");
  auto* factorize = app.add_subcommand("factorize", "Pisier factorization");
  std::optional<double> q_opt;
  for (auto* cmd : {norm, decompose, pietsch, factorize}) {
    cmd->add_option("--p", f.p, "Exponent p")->capture_default_str();
    cmd->add_option("input", f.input, "Expansion JSON file")->required()->check(CLI::ExistingFile);
  }
  norm->add_option("--q", q_opt, "Exponent q");
  pietsch->add_option("--q", q_opt, "Exponent q");
  factorize->add_option("--q", f.q, "Exponent q")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Run the randomized verification suite");
  verify->add_option("--p", f.p, "Exponent p in (0,2]")->capture_default_str();
  verify->add_option("--q", f.q, "Exponent q >= p")->capture_default_str();
  verify->add_option("--trials", f.trials, "Number of random instances")->capture_default_str();
  verify->add_option("--seed", f.seed, "Random seed")->capture_default_str();
  verify->add_option("--density", f.density, "Inclusion probability per interval")->capture_default_str();
  verify->add_option("--max-level", f.max_level, "Finest dyadic level")->capture_default_str();
  verify->add_option("--dimension", f.dimension, "Vector dimension (at least 2 is used)")
      ->capture_default_str();
  verify->add_option("--multipliers", f.multipliers, "Random multipliers per instance")
      ->capture_default_str();
  verify->add_option("--samples", f.samples, "Sampled z per factorization")->capture_default_str();
  verify->add_option("--threads", f.threads, "Worker threads, 0 for all cores")->capture_default_str();
  verify->add_option("--mutant", f.mutant, "Inject a fault: none, omega-x2, x-perturb")
      ->check(CLI::IsMember({"none", "omega-x2", "x-perturb"}))
      ->capture_default_str();

  for (auto* cmd : app.get_subcommands({})) {
    cmd->add_option("--out", f.out, "Write JSON here instead of stdout");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : hardy::cli::kExitUsage;
  }

  try {
    CommandResult result;
    if (*gen) {
      result = hardy::cli::cmd_gen(f.max_level, f.dimension, f.density, f.seed);
    } else if (*verify) {
      hardy::cli::SuiteOptions options;
      options.p = f.p;
      options.q = f.q;
      options.trials = f.trials;
      options.seed = f.seed;
      options.density = f.density;
      options.max_level = f.max_level;
      options.dimension = f.dimension;
      options.multipliers = f.multipliers;
      options.samples = f.samples;
      options.threads = f.threads;
      options.mutant = hardy::cli::parse_mutant(f.mutant);
      result = hardy::cli::cmd_verify(options);
    } else {
      const auto u = hardy::load(f.input);
      if (*norm) result = hardy::cli::cmd_norm(u, f.p, q_opt);
      if (*decompose) result = hardy::cli::cmd_decompose(u, f.p);
      if (*pietsch) result = hardy::cli::cmd_pietsch(u, f.p, q_opt);
      if (*factorize) result = hardy::cli::cmd_factorize(u, f.p, f.q);
    }
    hardy::cli::emit(result.output, f.out, std::cout);
    return result.exit_code;
  } catch (const hardy::Error& e) {
    std::cerr << "error [" << hardy::to_string(e.code()) << "]: " << e.what() << '\n';
    return e.code() == hardy::ErrorCode::VerificationFailed ? hardy::cli::kExitFailure
                                                            : hardy::cli::kExitUsage;
  }
}
