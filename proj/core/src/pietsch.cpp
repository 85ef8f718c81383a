#include "hardy/pietsch.hpp"

#include <algorithm>
#include <cmath>

#include "hardy/error.hpp"

namespace hardy {

namespace {

constexpr double kBoundTolerance = 1e-9;
constexpr double kTotalTolerance = 1e-12;
constexpr double kFormulaTolerance = 1e-10;

void require_nonzero(const HaarExpansion& u) {
  if (u.is_zero()) throw Error(ErrorCode::ZeroInput, "Pietsch measure of the zero expansion");
}

void require_scalar(const HaarExpansion& u, const char* what) {
  if (!u.is_scalar()) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " needs a scalar expansion");
  }
}

// Σ_{I ∈ piece} |x_I|^q |I|, the closed form of ‖u_i‖_{f_q^q}^q.
double diagonal_power_sum(const HaarExpansion& piece, double q) {
  double total = 0.0;
  for (std::size_t i = 0; i < piece.size(); ++i) {
    total += std::pow(std::abs(piece.value(i)[0]), q) * measure(piece.interval(i)).to_double();
  }
  return total;
}

// ω_I = |I_i|^{1-p/2} ‖x_I‖²|I| / (A ‖u_i‖_2^{2-p} ‖u‖_{H^p}^p), shared by the
// scalar construction and its recomputation in verify_measure.
std::map<DyadicInterval, double> hardy_formula(const HaarExpansion& u, double p,
                                               const AtomicDecomposition& dec, double normalizer) {
  const double norm_power = hp_norm_power(u, p);
  std::map<DyadicInterval, double> weights;
  for (std::size_t i = 0; i < dec.size(); ++i) {
    const auto piece = dec.piece(u, i);
    const double top = measure(dec[i].top).to_double();
    const double factor = std::pow(top, 1.0 - p / 2.0) / std::pow(l2_norm(piece), 2.0 - p);
    for (std::size_t j = 0; j < piece.size(); ++j) {
      weights[piece.interval(j)] = factor * piece.norm_squared(j) *
                                   measure(piece.interval(j)).to_double() /
                                   (normalizer * norm_power);
    }
  }
  return weights;
}

// ω_I = |I_i|^{1-p/q} |x_I|^q |I| / (A ‖u_i‖_{f_q^q}^{q-p} ‖u‖_{f_p^q}^p).
std::map<DyadicInterval, double> triebel_formula(const HaarExpansion& u, double p, double q,
                                                 const AtomicDecomposition& dec,
                                                 double normalizer) {
  const double norm_power = tl_norm_power(u, p, q);
  std::map<DyadicInterval, double> weights;
  for (std::size_t i = 0; i < dec.size(); ++i) {
    const auto piece = dec.piece(u, i);
    const double top = measure(dec[i].top).to_double();
    const double piece_norm = std::pow(diagonal_power_sum(piece, q), 1.0 / q);
    const double factor = std::pow(top, 1.0 - p / q) / std::pow(piece_norm, q - p);
    for (std::size_t j = 0; j < piece.size(); ++j) {
      weights[piece.interval(j)] = factor * std::pow(std::abs(piece.value(j)[0]), q) *
                                   measure(piece.interval(j)).to_double() /
                                   (normalizer * norm_power);
    }
  }
  return weights;
}

// ω_I = ‖u_i‖_{H²}^p |I_i|^{1-p/2} μ^{(i)}_I / (A ‖u‖_{H^p}^p).
std::map<DyadicInterval, double> vector_formula(const HaarExpansion& u, double p,
                                                const AtomicDecomposition& dec,
                                                double normalizer) {
  const double norm_power = hp_norm_power(u, p);
  std::map<DyadicInterval, double> weights;
  for (std::size_t i = 0; i < dec.size(); ++i) {
    const double l2 = l2_norm(dec.piece(u, i));
    const double top = measure(dec[i].top).to_double();
    const double scale = std::pow(l2, p) * std::pow(top, 1.0 - p / 2.0) / (normalizer * norm_power);
    for (const auto& [interval, mu] : block_measure(u, dec, i)) weights[interval] = scale * mu;
  }
  return weights;
}

}  // namespace

std::string_view to_string(TargetSpace space) noexcept {
  switch (space) {
    case TargetSpace::Hardy: return "hardy";
    case TargetSpace::TriebelLizorkin: return "triebel-lizorkin";
    case TargetSpace::VectorHardy: return "vector-hardy";
  }
  return "unknown";
}

double PietschMeasure::total() const noexcept {
  double sum = 0.0;
  for (const auto& [interval, w] : weights) sum += w;
  return sum;
}

double PietschMeasure::constant() const {
  return std::pow(normalizer / lower_constant, 1.0 / p);
}

std::map<DyadicInterval, double> block_measure(const HaarExpansion& u,
                                               const AtomicDecomposition& dec, std::size_t i) {
  const auto piece = dec.piece(u, i);
  const double l2 = l2_norm(piece);
  std::map<DyadicInterval, double> mu;
  for (std::size_t j = 0; j < piece.size(); ++j) {
    mu[piece.interval(j)] =
        piece.norm_squared(j) * measure(piece.interval(j)).to_double() / (l2 * l2);
  }
  return mu;
}

PietschMeasure weights_hp(const HaarExpansion& u, double p) {
  require_scalar(u, "weights_hp");
  require_nonzero(u);
  PietschMeasure m;
  m.space = TargetSpace::Hardy;
  m.p = p;
  m.exponent = 2.0;
  m.decomposition = decompose(u, p);
  m.tops_carleson = carleson_constant(m.decomposition.tops());
  m.normalizer = instance_constant(u, p, m.decomposition);
  m.weights = hardy_formula(u, p, m.decomposition, m.normalizer);
  return m;
}

PietschMeasure weights_tl(const HaarExpansion& u, double p, double q) {
  require_scalar(u, "weights_tl");
  require_nonzero(u);
  if (!(p > 0.0) || !(q >= p) || !std::isfinite(q)) {
    throw Error(ErrorCode::InvalidArgument, "weights_tl needs 0 < p <= q < inf");
  }
  // Decompose |u|^{q/2} in H^{2p/q}; blocks and tops carry over to u.
  const auto convex = convexify(u, q);
  const double hardy_p = 2.0 * p / q;
  PietschMeasure m;
  m.space = TargetSpace::TriebelLizorkin;
  m.p = p;
  m.q = q;
  m.exponent = q;
  m.decomposition = decompose(convex, hardy_p);
  m.tops_carleson = carleson_constant(m.decomposition.tops());
  m.normalizer = instance_constant(convex, hardy_p, m.decomposition);
  m.weights = triebel_formula(u, p, q, m.decomposition, m.normalizer);
  return m;
}

PietschMeasure weights_vector(const HaarExpansion& u, double p) {
  require_nonzero(u);
  PietschMeasure m;
  m.space = TargetSpace::VectorHardy;
  m.p = p;
  m.exponent = 2.0;
  m.decomposition = decompose(u, p);
  m.tops_carleson = carleson_constant(m.decomposition.tops());
  m.normalizer = instance_constant(u, p, m.decomposition);
  m.lower_constant = lower_chain_constant(u.dimension(), p, m.tops_carleson);
  m.weights = vector_formula(u, p, m.decomposition, m.normalizer);
  return m;
}

namespace {

void require_belongs(const HaarExpansion& u, const PietschMeasure& m) {
  if (m.decomposition.max_level() != u.max_level() ||
      m.decomposition.dimension() != u.dimension()) {
    throw Error(ErrorCode::Mismatch, "Pietsch measure was built for a different expansion shape");
  }
  if (m.space != TargetSpace::VectorHardy && !u.is_scalar()) {
    throw Error(ErrorCode::Mismatch, "scalar Pietsch measure used with a vector expansion");
  }
  for (const auto& [interval, w] : m.weights) {
    if (!u.support().contains(interval)) {
      throw Error(ErrorCode::Mismatch,
                  "Pietsch weight on " + interval.key() + " outside the Haar support");
    }
  }
}

}  // namespace

MultiplierReport check_multiplier_bound(const HaarExpansion& u, const Multiplier& phi,
                                        const PietschMeasure& m) {
  require_belongs(u, m);
  MultiplierReport report;
  const auto product = multiply(phi, u);
  for (const auto& [interval, w] : m.weights) {
    auto it = phi.find(interval);
    if (it == phi.end()) continue;
    report.weighted_sum += std::pow(std::abs(it->second), m.exponent) * w;
  }
  report.constant = m.constant();
  double norm = 0.0;
  if (m.space == TargetSpace::TriebelLizorkin) {
    report.lhs = tl_norm(product, m.p, m.q);
    norm = tl_norm(u, m.p, m.q);
  } else {
    report.lhs = hp_norm(product, m.p);
    norm = hp_norm(u, m.p);
  }
  report.rhs = report.constant * norm * std::pow(report.weighted_sum, 1.0 / m.exponent);
  report.holds = report.lhs <= report.rhs * (1.0 + kBoundTolerance);
  return report;
}

MeasureReport verify_measure(const HaarExpansion& u, const PietschMeasure& m) {
  require_belongs(u, m);
  MeasureReport report;
  report.total = m.total();
  report.normalized = report.total <= 1.0 + kTotalTolerance;
  report.nonnegative = std::all_of(m.weights.begin(), m.weights.end(),
                                   [](const auto& entry) { return entry.second >= 0.0; });
  report.supported = m.weights.size() <= u.size();

  // Recompute along the other route: the f_p^q weights through the H^{2p/q}
  // formula of |u|^{q/2}, the H^p and vector weights through each other.
  std::map<DyadicInterval, double> expected;
  switch (m.space) {
    case TargetSpace::Hardy:
      expected = vector_formula(u, m.p, m.decomposition, m.normalizer);
      break;
    case TargetSpace::VectorHardy:
      expected = hardy_formula(u, m.p, m.decomposition, m.normalizer);
      break;
    case TargetSpace::TriebelLizorkin:
      expected = hardy_formula(convexify(u, m.q), 2.0 * m.p / m.q, m.decomposition, m.normalizer);
      break;
  }
  report.supported = report.supported && expected.size() == m.weights.size();
  for (const auto& [interval, w] : expected) {
    auto it = m.weights.find(interval);
    const double actual = it == m.weights.end() ? 0.0 : it->second;
    const double scale = std::max(std::abs(w), std::abs(actual));
    if (scale > 0.0) {
      report.max_rel_deviation = std::max(report.max_rel_deviation, std::abs(actual - w) / scale);
    }
  }
  report.matches_formula = report.max_rel_deviation <= kFormulaTolerance;
  return report;
}

}  // namespace hardy
