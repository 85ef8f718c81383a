#include "suite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "hardy/atomic.hpp"
#include "hardy/error.hpp"
#include "hardy/haar.hpp"
#include "hardy/parallel.hpp"
#include "hardy/pietsch.hpp"
#include "hardy/pisier.hpp"
#include "hardy/random.hpp"

namespace hardy::cli {

namespace {

constexpr double kH2Tolerance = 1e-12;
constexpr double kConvexTolerance = 1e-10;
constexpr double kChainTolerance = 1e-10;
constexpr int kDecayMaxLevel = 7;

const std::vector<std::string> kChecks = {
    "decomposition.partition",
    "decomposition.tops_dyadic",
    "decomposition.blocks",
    "decomposition.carleson",
    "decomposition.lower_chain",
    "decomposition.middle_chain",
    "decomposition.multiplier_split",
    "pietsch.hp.measure",
    "pietsch.hp.bound",
    "pietsch.tl.measure",
    "pietsch.tl.bound",
    "pietsch.vector.measure",
    "pietsch.vector.bound",
    "identity.h2",
    "identity.convexify",
    "identity.vector_h2",
    "pisier.identity",
    "pisier.y_norm",
    "pisier.power_mean",
    "pisier.z_identity",
    "pisier.holder",
    "pisier.lattice",
    "decay",
    "runtime",
};

enum class Fold { Max, Min, Sum };

struct Case {
  std::string check;
  bool ok = false;
  std::optional<double> lhs;
  std::optional<double> rhs;
  std::string detail;
};

struct Extreme {
  std::string name;
  double value;
  Fold fold;
};

struct TrialOutcome {
  std::vector<Case> cases;
  std::vector<Extreme> extremes;

  void expect(std::string check, bool ok) { cases.push_back({std::move(check), ok, {}, {}, {}}); }
  // lhs <= rhs (1 + tol) style checks where ok was decided by the library.
  void compare(std::string check, bool ok, double lhs, double rhs) {
    cases.push_back({std::move(check), ok, lhs, rhs, {}});
  }
  void note(std::string name, double value, Fold fold = Fold::Max) {
    extremes.push_back({std::move(name), value, fold});
  }
};

double relative_error(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
}

void double_largest_weight(PietschMeasure& m) {
  auto it = std::max_element(m.weights.begin(), m.weights.end(),
                             [](const auto& a, const auto& b) { return a.second < b.second; });
  if (it != m.weights.end()) it->second *= 2.0;
}

void check_measure(TrialOutcome& out, const std::string& prefix, const HaarExpansion& u,
                   PietschMeasure m, const SuiteOptions& options, Rng& rng) {
  if (options.mutant == Mutant::OmegaTimesTwo) double_largest_weight(m);
  const auto report = verify_measure(u, m);
  out.compare(prefix + ".measure", report.passed(), report.total, 1.0);
  out.note(prefix == "pietsch.hp" ? "A_hp" : prefix == "pietsch.tl" ? "A_tl" : "A_vector",
           m.normalizer);
  out.note("max_weight_total", report.total);
  for (std::size_t k = 0; k < options.multipliers; ++k) {
    const auto phi = random_multiplier(u, rng);
    const auto bound = check_multiplier_bound(u, phi, m);
    out.compare(prefix + ".bound", bound.holds, bound.lhs, bound.rhs);
    if (bound.rhs > 0.0) out.note("max_bound_ratio", bound.lhs / bound.rhs);
  }
}

void check_decomposition(TrialOutcome& out, const HaarExpansion& u, double p, Rng& rng) {
  const auto raw = decompose_unchecked(u);
  const auto raw_carleson = carleson_constant(raw.tops());
  out.note("level_set_carleson", raw_carleson.to_double());
  const auto dec = sparsify_tops(u, raw);
  if (dec.size() != raw.size()) out.note("sparsified_instances", 1.0, Fold::Sum);
  const auto report = verify_decomposition(u, p, dec);
  out.expect("decomposition.partition", report.partition);
  out.expect("decomposition.tops_dyadic", report.tops_dyadic);
  out.expect("decomposition.blocks", report.blocks);
  out.compare("decomposition.carleson", report.carleson_ok, report.tops_carleson.to_double(), 4.0);
  out.compare("decomposition.lower_chain", report.lower_chain,
              report.lower_constant * report.norm_power, report.sum_piece_power);
  out.compare("decomposition.middle_chain", report.middle_chain, report.sum_piece_power,
              report.sum_sup_power);
  out.note("tops_carleson", report.tops_carleson.to_double());
  out.note("observed_A_p", report.observed_upper);

  // a_p ‖φ·u‖^p <= Σ ‖φ·u_i‖^p for sup |φ_I| <= 1.
  const auto phi = random_multiplier(u, rng);
  double pieces = 0.0;
  for (std::size_t i = 0; i < dec.size(); ++i) {
    pieces += hp_norm_power(multiply(phi, dec.piece(u, i)), p);
  }
  const double whole = report.lower_constant * hp_norm_power(multiply(phi, u), p);
  out.compare("decomposition.multiplier_split", whole <= pieces * (1.0 + kChainTolerance), whole,
              pieces);
}

void check_identities(TrialOutcome& out, const HaarExpansion& u, double p, double q) {
  double closed = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    closed += u.norm_squared(i) * measure(u.interval(i)).to_double();
  }
  const double h2 = hp_norm(u, 2.0);
  const double err = relative_error(h2 * h2, closed);
  out.compare("identity.h2", err <= kH2Tolerance, err, kH2Tolerance);

  const double tl = tl_norm(u, p, q);
  const double convex = std::pow(hp_norm(convexify(u, q), 2.0 * p / q), 2.0 / q);
  const double err_tl = relative_error(tl, convex);
  out.compare("identity.convexify", err_tl <= kConvexTolerance, err_tl, kConvexTolerance);
}

void check_vector_h2(TrialOutcome& out, const HaarExpansion& u, const PietschMeasure& m,
                     Rng& rng) {
  double worst = 0.0;
  for (std::size_t i = 0; i < m.decomposition.size(); ++i) {
    const auto piece = m.decomposition.piece(u, i);
    const auto phi = random_multiplier(piece, rng);
    const double lhs = std::pow(hp_norm(multiply(phi, piece), 2.0), 2.0);
    const double l2 = l2_norm(piece);
    double weighted = 0.0;
    for (const auto& [interval, mu] : block_measure(u, m.decomposition, i)) {
      weighted += phi.at(interval) * phi.at(interval) * mu;
    }
    worst = std::max(worst, relative_error(lhs, l2 * l2 * weighted));
  }
  out.compare("identity.vector_h2", worst <= kH2Tolerance, worst, kH2Tolerance);
}

void check_pisier(TrialOutcome& out, const HaarExpansion& u, double p, double q,
                  const SuiteOptions& options, Rng& rng) {
  auto f = factorize(u, p, q);
  if (options.mutant == Mutant::PerturbX) {
    auto x = f.x.to_map();
    x.begin()->second[0] *= 1.0 + 1e-3;
    f.x = HaarExpansion(u.max_level(), 1, x);
  }
  const auto report = verify_factorization(u, f);
  out.compare("pisier.identity", report.identity, report.max_rel_error, kConvexTolerance);
  out.compare("pisier.y_norm", report.y_bounded, report.y_norm, 1.0);
  if (!report.identity) return;
  const auto est = x0_norm_estimate(f, u, options.samples, rng());
  out.compare("pisier.power_mean", est.failures[0] == 0, est.max_power_mean_ratio, 1.0);
  out.compare("pisier.z_identity", est.failures[1] == 0, est.max_identity_error, kConvexTolerance);
  out.compare("pisier.holder", est.failures[2] == 0, est.max_holder, 1.0);
  out.compare("pisier.lattice", est.failures[3] == 0, est.max_lattice, est.bound);
  if (est.canonical > 0.0) out.note("x0_gain_over_canonical", est.value / est.canonical);
}

void check_decay(TrialOutcome& out, Rng& rng) {
  const int max_level = std::uniform_int_distribution<int>(0, kDecayMaxLevel)(rng);
  const auto family = random_family(max_level, rng);
  const auto carleson = carleson_constant(family);
  const auto gens = generations(family);
  bool ok = true;
  double worst = 0.0;
  for (const auto& interval : family) {
    for (int level = 0; level <= static_cast<int>(gens.size()); ++level) {
      const double size = generation_measure(family, interval, level).to_double();
      const double bound = generation_decay_bound(carleson, interval, level);
      worst = std::max(worst, size / bound);
      ok = ok && generation_decay_check(family, carleson, interval, level);
    }
  }
  out.compare("decay", ok, worst, 1.0);
  out.note("decay_family_carleson", carleson.to_double());
}

TrialOutcome run_trial(const SuiteOptions& options, std::size_t trial) {
  TrialOutcome out;
  auto rng = make_stream(options.seed, trial);
  const int vector_dim = std::max(2, options.dimension);
  const bool pisier_native = options.p > 1.0 && options.p < options.q;
  const double pisier_p = pisier_native ? options.p : 4.0 / 3.0;
  const double pisier_q = pisier_native ? options.q : 2.0;
  try {
    const auto u = gen_random(options.max_level, 1, options.density, rng);
    const auto v = gen_random(options.max_level, vector_dim, options.density, rng);
    if (u.is_zero()) {
      out.note("zero_instances", 1.0, Fold::Sum);
    } else {
      check_decomposition(out, u, options.p, rng);
      check_identities(out, u, options.p, options.q);
      check_measure(out, "pietsch.hp", u, weights_hp(u, options.p), options, rng);
      check_measure(out, "pietsch.tl", u, weights_tl(u, options.p, options.q), options, rng);
      check_pisier(out, u, pisier_p, pisier_q, options, rng);
    }
    if (v.is_zero()) {
      out.note("zero_instances", 1.0, Fold::Sum);
    } else {
      auto m = weights_vector(v, options.p);
      out.note("a_p", m.lower_constant, Fold::Min);
      out.note("C_vector", m.constant());
      check_vector_h2(out, v, m, rng);
      check_measure(out, "pietsch.vector", v, std::move(m), options, rng);
    }
    check_decay(out, rng);
  } catch (const Error& e) {
    out.cases.push_back({"runtime", false, {}, {}, std::string(to_string(e.code())) + ": " + e.what()});
  }
  return out;
}

nlohmann::ordered_json optional_number(const std::optional<double>& x) {
  if (!x) return nullptr;
  return *x;
}

}  // namespace

Mutant parse_mutant(const std::string& name) {
  if (name == "none") return Mutant::None;
  if (name == "omega-x2") return Mutant::OmegaTimesTwo;
  if (name == "x-perturb") return Mutant::PerturbX;
  throw Error(ErrorCode::InvalidArgument, "unknown mutant \"" + name + "\"");
}

std::string to_string(Mutant mutant) {
  switch (mutant) {
    case Mutant::None: return "none";
    case Mutant::OmegaTimesTwo: return "omega-x2";
    case Mutant::PerturbX: return "x-perturb";
  }
  return "none";
}

void validate(const SuiteOptions& o) {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::InvalidArgument, msg); };
  if (!(o.p > 0.0 && o.p <= 2.0)) fail("--p must lie in (0, 2]");
  if (!(o.q >= o.p) || !std::isfinite(o.q)) fail("--q must satisfy p <= q < inf");
  if (o.trials == 0) fail("--trials must be positive");
  if (!(o.density > 0.0 && o.density <= 1.0)) fail("--density must lie in (0, 1]");
  if (o.max_level < 0 || o.max_level > kMaxExpansionLevel) {
    fail("--max-level must lie in [0, " + std::to_string(kMaxExpansionLevel) + "]");
  }
  if (o.dimension < 1) fail("--dimension must be positive");
}

SuiteResult run_suite(const SuiteOptions& options) {
  validate(options);
  std::vector<TrialOutcome> outcomes(options.trials);
  parallel_for(
      options.trials, [&](std::size_t t) { outcomes[t] = run_trial(options, t); },
      options.threads == 0 ? default_threads() : options.threads);

  struct Stats {
    std::size_t cases = 0;
    std::size_t failures = 0;
    double worst_ratio = -std::numeric_limits<double>::infinity();
    nlohmann::ordered_json worst = nullptr;
    nlohmann::ordered_json first_failure = nullptr;
  };
  std::map<std::string, Stats> stats;
  std::vector<std::string> extreme_order;
  std::map<std::string, Extreme> extremes;

  for (std::size_t t = 0; t < outcomes.size(); ++t) {
    for (const auto& c : outcomes[t].cases) {
      auto& s = stats[c.check];
      ++s.cases;
      if (c.lhs && c.rhs) {
        const double ratio = *c.rhs != 0.0 ? *c.lhs / *c.rhs : (*c.lhs == 0.0 ? 0.0 : INFINITY);
        if (ratio > s.worst_ratio) {
          s.worst_ratio = ratio;
          s.worst = {{"trial", t}, {"lhs", *c.lhs}, {"rhs", *c.rhs}, {"ratio", ratio}};
        }
      }
      if (!c.ok) {
        ++s.failures;
        if (s.first_failure.is_null()) {
          s.first_failure = {{"seed", options.seed}, {"trial", t}, {"lhs", optional_number(c.lhs)},
                             {"rhs", optional_number(c.rhs)}};
          if (!c.detail.empty()) s.first_failure["detail"] = c.detail;
        }
      }
    }
    for (const auto& e : outcomes[t].extremes) {
      auto it = extremes.find(e.name);
      if (it == extremes.end()) {
        extreme_order.push_back(e.name);
        extremes.emplace(e.name, e);
        continue;
      }
      auto& acc = it->second.value;
      switch (e.fold) {
        case Fold::Max: acc = std::max(acc, e.value); break;
        case Fold::Min: acc = std::min(acc, e.value); break;
        case Fold::Sum: acc += e.value; break;
      }
    }
  }

  SuiteResult result;
  result.passed = true;
  auto checks = nlohmann::ordered_json::array();
  for (const auto& name : kChecks) {
    auto it = stats.find(name);
    if (it == stats.end()) continue;
    const auto& s = it->second;
    result.passed = result.passed && s.failures == 0;
    nlohmann::ordered_json entry = {{"name", name},
                                    {"passed", s.failures == 0},
                                    {"cases", s.cases},
                                    {"failures", s.failures}};
    if (!s.worst.is_null()) entry["worst"] = s.worst;
    if (!s.first_failure.is_null()) entry["first_failure"] = s.first_failure;
    checks.push_back(std::move(entry));
  }
  std::sort(extreme_order.begin(), extreme_order.end());
  nlohmann::ordered_json extreme_json = nlohmann::ordered_json::object();
  for (const auto& name : extreme_order) extreme_json[name] = extremes.at(name).value;

  const bool pisier_native = options.p > 1.0 && options.p < options.q;
  auto& r = result.report;
  r["command"] = "verify";
  r["passed"] = result.passed;
  r["options"] = {{"p", options.p},
                  {"q", options.q},
                  {"trials", options.trials},
                  {"seed", options.seed},
                  {"density", options.density},
                  {"max_level", options.max_level},
                  {"dimension", std::max(2, options.dimension)},
                  {"multipliers", options.multipliers},
                  {"samples", options.samples},
                  {"mutant", to_string(options.mutant)}};
  r["pisier_exponents"] = {{"p", pisier_native ? options.p : 4.0 / 3.0},
                           {"q", pisier_native ? options.q : 2.0}};
  r["checks"] = std::move(checks);
  r["extremes"] = std::move(extreme_json);
  return result;
}

}  // namespace hardy::cli
