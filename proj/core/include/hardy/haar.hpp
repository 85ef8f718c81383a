#pragma once

// Finite Haar expansions u = Σ x_I h_I with coefficients in R^d, their square
// functions and the H^p, f_p^q and L^2 norms. All integrands are constant on
// the 2^N leaves of the finest level, so integrals are finite sums.

#include <map>
#include <span>
#include <vector>

#include "hardy/dyadic.hpp"

namespace hardy {

// Dense leaf arrays have 2^max_level entries.
inline constexpr int kMaxExpansionLevel = 20;

using Multiplier = std::map<DyadicInterval, double>;

class HaarExpansion {
 public:
  HaarExpansion() = default;
  HaarExpansion(int max_level, int dimension);
  // Zero vectors are dropped; every interval must have level <= max_level and
  // every vector length dimension.
  HaarExpansion(int max_level, int dimension,
                const std::map<DyadicInterval, std::vector<double>>& coefficients);

  static HaarExpansion scalar(int max_level, const std::map<DyadicInterval, double>& coefficients);

  int max_level() const noexcept { return max_level_; }
  int dimension() const noexcept { return dimension_; }
  bool is_scalar() const noexcept { return dimension_ == 1; }
  bool is_zero() const noexcept { return support_.empty(); }
  std::size_t size() const noexcept { return support_.size(); }

  // Haar support, sorted by (level, position).
  const IntervalFamily& support() const noexcept { return support_; }
  const DyadicInterval& interval(std::size_t i) const { return support_[i]; }
  std::span<const double> value(std::size_t i) const;
  double norm_squared(std::size_t i) const;  // ‖x_I‖²

  // Empty span when the interval is not in the support.
  std::span<const double> coefficient(const DyadicInterval& interval) const;
  // Scalar coefficient, 0 off the support. Requires dimension 1.
  double scalar_coefficient(const DyadicInterval& interval) const;

  // Σ_{I ∈ family} x_I h_I; intervals of the family outside the support are ignored.
  HaarExpansion restricted_to(const IntervalFamily& family) const;

  std::map<DyadicInterval, std::vector<double>> to_map() const;

  bool operator==(const HaarExpansion& other) const = default;

 private:
  int max_level_ = 0;
  int dimension_ = 1;
  IntervalFamily support_;
  std::vector<double> values_;  // size() × dimension(), row per interval
};

// Piecewise-constant function on the leaves [j·2^{-N}, (j+1)·2^{-N}).
class StepFunction {
 public:
  StepFunction(int max_level, std::vector<double> values);

  int max_level() const noexcept { return max_level_; }
  std::span<const double> values() const noexcept { return values_; }
  double value_at(double t) const;
  double sup() const noexcept;
  // ∫_0^1 f^p for f >= 0.
  double integral_power(double p) const;

 private:
  int max_level_;
  std::vector<double> values_;
};

// +1 on the left half of I, -1 on the right half, 0 elsewhere.
int evaluate_haar(const DyadicInterval& interval, double t) noexcept;

StepFunction square_function(const HaarExpansion& u);
StepFunction q_variation(const HaarExpansion& u, double q);

double hp_norm(const HaarExpansion& u, double p);
double tl_norm(const HaarExpansion& u, double p, double q);
double l2_norm(const HaarExpansion& u);

// ‖u‖_{H^p}^p and ‖u‖_{f_p^q}^p, skipping the final root.
double hp_norm_power(const HaarExpansion& u, double p);
double tl_norm_power(const HaarExpansion& u, double p, double q);

// ‖u‖_{H^p}^p for u supported inside root; only the leaves of root are visited.
double local_hp_norm_power(const HaarExpansion& u, const DyadicInterval& root, double p);
// ‖S(u)‖_∞ for u supported inside root.
double local_sup_square(const HaarExpansion& u, const DyadicInterval& root);

// (|x_I|^{q/2})_I, the q/2-convexification.
HaarExpansion convexify(const HaarExpansion& u, double q);

// Σ φ_I x_I h_I; intervals missing from φ count as 0.
HaarExpansion multiply(const Multiplier& phi, const HaarExpansion& u);

}  // namespace hardy
