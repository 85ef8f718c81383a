#include "hardy/haar.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hardy/error.hpp"

namespace hardy {

namespace {

void require_hp_exponent(double p) {
  if (!(p > 0.0 && p <= 2.0)) {
    throw Error(ErrorCode::InvalidArgument,
                "H^p exponent must lie in (0, 2], got " + std::to_string(p));
  }
}

void require_tl_exponents(double p, double q) {
  if (!(p > 0.0) || !std::isfinite(q) || !(q >= p)) {
    throw Error(ErrorCode::InvalidArgument, "f_p^q needs 0 < p <= q < inf, got p=" +
                                                std::to_string(p) + " q=" + std::to_string(q));
  }
}

void require_scalar(const HaarExpansion& u, const char* what) {
  if (!u.is_scalar()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + " is defined for scalar expansions only");
  }
}

// Per-leaf sums Σ_{J ∋ leaf} w(J) over the leaves of root at level N, where
// w(J) = weight(i) for the i-th support interval. Terms neither inside nor
// above root are ignored.
template <typename Weight>
std::vector<double> local_leaf_sums(const HaarExpansion& u, const DyadicInterval& root,
                                    Weight&& weight) {
  const int depth = u.max_level() - root.level();
  if (depth < 0) throw Error(ErrorCode::InvalidArgument, "root below the finest level");
  const std::size_t leaves = std::size_t{1} << depth;
  std::vector<double> tree(2 * leaves, 0.0);  // heap order, node 1 = root
  double above = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto& interval = u.interval(i);
    if (contains(root, interval)) {
      const int rel = interval.level() - root.level();
      const std::size_t offset = static_cast<std::size_t>(root.position()) << rel;
      tree[(std::size_t{1} << rel) + (interval.position() - offset)] += weight(i);
    } else if (contains(interval, root)) {
      above += weight(i);
    }
  }
  tree[1] += above;
  for (std::size_t node = 2; node < 2 * leaves; ++node) tree[node] += tree[node / 2];
  return {tree.begin() + static_cast<std::ptrdiff_t>(leaves), tree.end()};
}

std::vector<double> leaf_square_sums(const HaarExpansion& u, const DyadicInterval& root) {
  return local_leaf_sums(u, root, [&](std::size_t i) { return u.norm_squared(i); });
}

double sum_of_powers(std::span<const double> values, double exponent) {
  double total = 0.0;
  if (exponent == 1.0) {
    for (double v : values) total += v;
  } else {
    for (double v : values) {
      if (v > 0.0) total += std::pow(v, exponent);
    }
  }
  return total;
}

}  // namespace

// ---------------------------------------------------------------------------
// HaarExpansion

HaarExpansion::HaarExpansion(int max_level, int dimension)
    : max_level_(max_level), dimension_(dimension), support_({}, std::min(max_level, kMaxLevel)) {
  if (max_level < 0 || max_level > kMaxExpansionLevel) {
    throw Error(ErrorCode::OutOfRange, "max_level must lie in [0, " +
                                           std::to_string(kMaxExpansionLevel) + "], got " +
                                           std::to_string(max_level));
  }
  if (dimension < 1) {
    throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  }
}

HaarExpansion::HaarExpansion(int max_level, int dimension,
                             const std::map<DyadicInterval, std::vector<double>>& coefficients)
    : HaarExpansion(max_level, dimension) {
  std::vector<DyadicInterval> intervals;
  intervals.reserve(coefficients.size());
  for (const auto& [interval, value] : coefficients) {
    if (interval.level() > max_level) {
      throw Error(ErrorCode::OutOfRange,
                  "interval " + interval.key() + " exceeds max_level " + std::to_string(max_level));
    }
    if (value.size() != static_cast<std::size_t>(dimension)) {
      throw Error(ErrorCode::DimensionMismatch,
                  "coefficient of " + interval.key() + " has length " +
                      std::to_string(value.size()) + ", expected " + std::to_string(dimension));
    }
    for (double v : value) {
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::InvalidArgument, "non-finite coefficient at " + interval.key());
      }
    }
    if (std::all_of(value.begin(), value.end(), [](double v) { return v == 0.0; })) continue;
    intervals.push_back(interval);
    values_.insert(values_.end(), value.begin(), value.end());
  }
  // std::map iterates in (level, position) order, matching IntervalFamily.
  support_ = IntervalFamily(std::move(intervals), max_level);
}

HaarExpansion HaarExpansion::scalar(int max_level,
                                    const std::map<DyadicInterval, double>& coefficients) {
  std::map<DyadicInterval, std::vector<double>> lifted;
  for (const auto& [interval, value] : coefficients) lifted.emplace(interval, std::vector{value});
  return HaarExpansion(max_level, 1, lifted);
}

std::span<const double> HaarExpansion::value(std::size_t i) const {
  return std::span<const double>(values_).subspan(i * static_cast<std::size_t>(dimension_),
                                                  static_cast<std::size_t>(dimension_));
}

double HaarExpansion::norm_squared(std::size_t i) const {
  double total = 0.0;
  for (double v : value(i)) total += v * v;
  return total;
}

std::span<const double> HaarExpansion::coefficient(const DyadicInterval& interval) const {
  if (auto idx = support_.index_of(interval)) return value(*idx);
  return {};
}

double HaarExpansion::scalar_coefficient(const DyadicInterval& interval) const {
  require_scalar(*this, "scalar_coefficient");
  auto c = coefficient(interval);
  return c.empty() ? 0.0 : c[0];
}

HaarExpansion HaarExpansion::restricted_to(const IntervalFamily& family) const {
  std::map<DyadicInterval, std::vector<double>> kept;
  for (const auto& interval : family) {
    auto c = coefficient(interval);
    if (!c.empty()) kept.emplace(interval, std::vector<double>(c.begin(), c.end()));
  }
  return HaarExpansion(max_level_, dimension_, kept);
}

std::map<DyadicInterval, std::vector<double>> HaarExpansion::to_map() const {
  std::map<DyadicInterval, std::vector<double>> out;
  for (std::size_t i = 0; i < size(); ++i) {
    auto v = value(i);
    out.emplace(interval(i), std::vector<double>(v.begin(), v.end()));
  }
  return out;
}

// ---------------------------------------------------------------------------
// StepFunction

StepFunction::StepFunction(int max_level, std::vector<double> values)
    : max_level_(max_level), values_(std::move(values)) {
  if (values_.size() != (std::size_t{1} << max_level)) {
    throw Error(ErrorCode::DimensionMismatch, "step function needs 2^max_level values");
  }
}

double StepFunction::value_at(double t) const {
  if (!(t >= 0.0 && t < 1.0)) throw Error(ErrorCode::OutOfRange, "point outside [0,1)");
  const auto leaf = static_cast<std::size_t>(std::ldexp(t, max_level_));
  return values_[std::min(leaf, values_.size() - 1)];
}

double StepFunction::sup() const noexcept {
  return values_.empty() ? 0.0 : *std::max_element(values_.begin(), values_.end());
}

double StepFunction::integral_power(double p) const {
  double total = 0.0;
  for (double v : values_) {
    if (v > 0.0) total += (p == 1.0) ? v : std::pow(v, p);
  }
  return std::ldexp(total, -max_level_);
}

// ---------------------------------------------------------------------------
// Square functions and norms

int evaluate_haar(const DyadicInterval& interval, double t) noexcept {
  if (!interval.contains_point(t)) return 0;
  const double mid = std::ldexp(2.0 * interval.position() + 1.0, -(interval.level() + 1));
  return t < mid ? 1 : -1;
}

StepFunction square_function(const HaarExpansion& u) {
  auto sums = leaf_square_sums(u, DyadicInterval{});
  for (double& v : sums) v = std::sqrt(v);
  return StepFunction(u.max_level(), std::move(sums));
}

StepFunction q_variation(const HaarExpansion& u, double q) {
  require_scalar(u, "q-variation");
  if (!(q > 0.0) || !std::isfinite(q)) {
    throw Error(ErrorCode::InvalidArgument, "q-variation needs 0 < q < inf");
  }
  auto sums = local_leaf_sums(u, DyadicInterval{},
                              [&](std::size_t i) { return std::pow(std::abs(u.value(i)[0]), q); });
  for (double& v : sums) v = (v > 0.0) ? std::pow(v, 1.0 / q) : 0.0;
  return StepFunction(u.max_level(), std::move(sums));
}

double hp_norm_power(const HaarExpansion& u, double p) {
  require_hp_exponent(p);
  return local_hp_norm_power(u, DyadicInterval{}, p);
}

double hp_norm(const HaarExpansion& u, double p) {
  return std::pow(hp_norm_power(u, p), 1.0 / p);
}

double local_hp_norm_power(const HaarExpansion& u, const DyadicInterval& root, double p) {
  require_hp_exponent(p);
  const auto sums = leaf_square_sums(u, root);
  return std::ldexp(sum_of_powers(sums, p / 2.0), -u.max_level());
}

double local_sup_square(const HaarExpansion& u, const DyadicInterval& root) {
  const auto sums = leaf_square_sums(u, root);
  return sums.empty() ? 0.0 : std::sqrt(*std::max_element(sums.begin(), sums.end()));
}

double tl_norm_power(const HaarExpansion& u, double p, double q) {
  require_scalar(u, "f_p^q norm");
  require_tl_exponents(p, q);
  const auto sums = local_leaf_sums(
      u, DyadicInterval{}, [&](std::size_t i) { return std::pow(std::abs(u.value(i)[0]), q); });
  return std::ldexp(sum_of_powers(sums, p / q), -u.max_level());
}

double tl_norm(const HaarExpansion& u, double p, double q) {
  return std::pow(tl_norm_power(u, p, q), 1.0 / p);
}

double l2_norm(const HaarExpansion& u) {
  double total = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    total += std::ldexp(u.norm_squared(i), -u.interval(i).level());
  }
  return std::sqrt(total);
}

HaarExpansion convexify(const HaarExpansion& u, double q) {
  require_scalar(u, "convexification");
  if (!(q > 0.0) || !std::isfinite(q)) {
    throw Error(ErrorCode::InvalidArgument, "convexification needs 0 < q < inf");
  }
  std::map<DyadicInterval, double> powered;
  for (std::size_t i = 0; i < u.size(); ++i) {
    powered.emplace(u.interval(i), std::pow(std::abs(u.value(i)[0]), q / 2.0));
  }
  return HaarExpansion::scalar(u.max_level(), powered);
}

HaarExpansion multiply(const Multiplier& phi, const HaarExpansion& u) {
  std::map<DyadicInterval, std::vector<double>> product;
  for (std::size_t i = 0; i < u.size(); ++i) {
    auto it = phi.find(u.interval(i));
    if (it == phi.end() || it->second == 0.0) continue;
    auto v = u.value(i);
    std::vector<double> scaled(v.begin(), v.end());
    for (double& x : scaled) x *= it->second;
    product.emplace(u.interval(i), std::move(scaled));
  }
  return HaarExpansion(u.max_level(), u.dimension(), product);
}

}  // namespace hardy
