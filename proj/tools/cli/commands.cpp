#include "commands.hpp"

#include <fstream>

#include "hardy/atomic.hpp"
#include "hardy/error.hpp"
#include "hardy/io.hpp"
#include "hardy/pietsch.hpp"
#include "hardy/pisier.hpp"
#include "hardy/random.hpp"

namespace hardy::cli {

using nlohmann::ordered_json;

namespace {

ordered_json weights_by_key(const std::map<DyadicInterval, double>& weights) {
  ordered_json out = ordered_json::object();
  for (const auto& [interval, w] : weights) out[interval.key()] = w;
  return out;
}

ordered_json family_keys(const IntervalFamily& family) {
  auto out = ordered_json::array();
  for (const auto& interval : family) out.push_back(interval.key());
  return out;
}

ordered_json report_json(const DecompositionReport& r) {
  return {{"passed", r.passed()},
          {"partition", r.partition},
          {"tops_dyadic", r.tops_dyadic},
          {"blocks", r.blocks},
          {"tops_carleson", r.tops_carleson.to_string()},
          {"carleson_ok", r.carleson_ok},
          {"lower_constant", r.lower_constant},
          {"lower_chain", r.lower_chain},
          {"middle_chain", r.middle_chain},
          {"norm_power", r.norm_power},
          {"sum_piece_power", r.sum_piece_power},
          {"sum_sup_power", r.sum_sup_power},
          {"observed_upper", r.observed_upper}};
}

}  // namespace

ordered_json coefficients_by_key(const HaarExpansion& u) {
  ordered_json out = ordered_json::object();
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto value = u.value(i);
    if (u.is_scalar()) {
      out[u.interval(i).key()] = value[0];
    } else {
      out[u.interval(i).key()] = std::vector<double>(value.begin(), value.end());
    }
  }
  return out;
}

CommandResult cmd_gen(int max_level, int dimension, double density, std::uint64_t seed) {
  return {kExitPass, expansion_to_json(gen_random(max_level, dimension, density, seed))};
}

CommandResult cmd_norm(const HaarExpansion& u, double p, std::optional<double> q) {
  ordered_json out;
  if (q) {
    out["space"] = "triebel-lizorkin";
    out["p"] = p;
    out["q"] = *q;
    out["norm"] = tl_norm(u, p, *q);
  } else {
    out["space"] = "hardy";
    out["p"] = p;
    out["norm"] = hp_norm(u, p);
  }
  out["l2_norm"] = l2_norm(u);
  return {kExitPass, out};
}

CommandResult cmd_decompose(const HaarExpansion& u, double p) {
  const auto dec = sparsify_tops(u, decompose_unchecked(u));
  const auto report = verify_decomposition(u, p, dec);
  auto pieces = ordered_json::array();
  for (const auto& piece : dec.pieces()) {
    pieces.push_back({{"top", piece.top.key()},
                      {"generation", piece.generation},
                      {"block", family_keys(piece.block)}});
  }
  ordered_json out;
  out["p"] = p;
  out["A"] = instance_constant(u, p, dec);
  out["pieces"] = std::move(pieces);
  out["report"] = report_json(report);
  return {report.passed() ? kExitPass : kExitFailure, out};
}

CommandResult cmd_pietsch(const HaarExpansion& u, double p, std::optional<double> q) {
  PietschMeasure m;
  if (q) {
    m = weights_tl(u, p, *q);
  } else if (u.is_scalar()) {
    m = weights_hp(u, p);
  } else {
    m = weights_vector(u, p);
  }
  const auto check = verify_measure(u, m);
  ordered_json out;
  out["weights"] = weights_by_key(m.weights);
  out["A"] = m.normalizer;
  out["space"] = std::string(to_string(m.space));
  out["p"] = m.p;
  if (q) out["q"] = m.q;
  out["s"] = m.exponent;
  out["C"] = m.constant();
  out["a_p"] = m.lower_constant;
  out["total"] = check.total;
  out["tops_carleson"] = m.tops_carleson.to_string();
  out["measure_ok"] = check.passed();
  return {check.passed() ? kExitPass : kExitFailure, out};
}

CommandResult cmd_factorize(const HaarExpansion& u, double p, double q) {
  const auto f = factorize(u, p, q);
  const auto check = verify_factorization(u, f);
  ordered_json out;
  out["theta"] = f.theta;
  out["p"] = f.p;
  out["q"] = f.q;
  out["x"] = coefficients_by_key(f.x);
  out["y"] = coefficients_by_key(f.y);
  out["A"] = f.measure.normalizer;
  out["C"] = f.measure.constant();
  out["identity"] = check.identity;
  out["max_rel_error"] = check.max_rel_error;
  out["y_norm"] = check.y_norm;
  out["y_bounded"] = check.y_bounded;
  return {check.passed() ? kExitPass : kExitFailure, out};
}

CommandResult cmd_verify(const SuiteOptions& options) {
  auto result = run_suite(options);
  return {result.passed ? kExitPass : kExitFailure, std::move(result.report)};
}

void emit(const ordered_json& doc, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << doc.dump(2) << '\n';
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::Io, "cannot write " + path);
  file << doc.dump(2) << '\n';
}

}  // namespace hardy::cli
