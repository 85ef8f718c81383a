#include "hardy/dyadic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "hardy/error.hpp"

namespace hardy {

namespace {

constexpr int kMaxExponent = 62;

}  // namespace

// ---------------------------------------------------------------------------
// DyadicRational

DyadicRational::DyadicRational(std::uint64_t numerator, int exponent)
    : num_(numerator), exp_(exponent) {
  if (exponent < 0) {
    if (exponent < -kMaxExponent || (numerator >> (64 + exponent)) != 0) {
      throw Error(ErrorCode::OutOfRange, "dyadic rational overflow");
    }
    num_ = numerator << -exponent;
    exp_ = 0;
  }
  if (exp_ > kMaxExponent) {
    throw Error(ErrorCode::OutOfRange, "dyadic rational exponent too large");
  }
  normalize();
}

DyadicRational DyadicRational::power_of_two(int exponent) {
  return DyadicRational(1, exponent);
}

void DyadicRational::normalize() noexcept {
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  const int shift = std::min(std::countr_zero(num_), exp_);
  num_ >>= shift;
  exp_ -= shift;
}

double DyadicRational::to_double() const noexcept {
  return std::ldexp(static_cast<double>(num_), -exp_);
}

std::string DyadicRational::to_string() const {
  if (exp_ == 0) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(std::uint64_t{1} << exp_);
}

DyadicRational DyadicRational::operator+(const DyadicRational& other) const {
  const int e = std::max(exp_, other.exp_);
  const int sa = e - exp_;
  const int sb = e - other.exp_;
  if ((sa > 0 && (num_ >> (64 - sa)) != 0) ||
      (sb > 0 && (other.num_ >> (64 - sb)) != 0)) {
    throw Error(ErrorCode::OutOfRange, "dyadic rational overflow");
  }
  const std::uint64_t a = num_ << sa;
  const std::uint64_t b = other.num_ << sb;
  if (a > std::numeric_limits<std::uint64_t>::max() - b) {
    throw Error(ErrorCode::OutOfRange, "dyadic rational overflow");
  }
  return DyadicRational(a + b, e);
}

DyadicRational& DyadicRational::operator+=(const DyadicRational& other) {
  *this = *this + other;
  return *this;
}

DyadicRational DyadicRational::operator*(const DyadicRational& other) const {
  if (num_ != 0 && other.num_ > std::numeric_limits<std::uint64_t>::max() / num_) {
    throw Error(ErrorCode::OutOfRange, "dyadic rational overflow");
  }
  return DyadicRational(num_ * other.num_, exp_ + other.exp_);
}

std::strong_ordering DyadicRational::operator<=>(const DyadicRational& other) const {
  // Scale the operand with the smaller exponent; if that overflows it is larger.
  if (exp_ >= other.exp_) {
    const int shift = exp_ - other.exp_;
    if (shift > 0 && (other.num_ >> (64 - shift)) != 0) return std::strong_ordering::less;
    return num_ <=> (other.num_ << shift);
  }
  const int shift = other.exp_ - exp_;
  if ((num_ >> (64 - shift)) != 0) return std::strong_ordering::greater;
  return (num_ << shift) <=> other.num_;
}

// ---------------------------------------------------------------------------
// DyadicInterval

DyadicInterval::DyadicInterval(int level, std::uint32_t position)
    : level_(level), position_(position) {
  if (level < 0 || level > kMaxLevel) {
    throw Error(ErrorCode::OutOfRange,
                "dyadic level " + std::to_string(level) + " outside [0, " +
                    std::to_string(kMaxLevel) + "]");
  }
  if (static_cast<std::uint64_t>(position) >= (std::uint64_t{1} << level)) {
    throw Error(ErrorCode::OutOfRange, "dyadic position " + std::to_string(position) +
                                           " outside [0, 2^" + std::to_string(level) + ")");
  }
}

double DyadicInterval::left() const noexcept {
  return std::ldexp(static_cast<double>(position_), -level_);
}

double DyadicInterval::right() const noexcept {
  return std::ldexp(static_cast<double>(position_) + 1.0, -level_);
}

bool DyadicInterval::contains_point(double t) const noexcept {
  return left() <= t && t < right();
}

DyadicInterval DyadicInterval::parent() const {
  if (level_ == 0) throw Error(ErrorCode::InvalidArgument, "[0,1) has no parent");
  return DyadicInterval(level_ - 1, position_ >> 1);
}

DyadicInterval DyadicInterval::left_child() const {
  return DyadicInterval(level_ + 1, position_ << 1);
}

DyadicInterval DyadicInterval::right_child() const {
  return DyadicInterval(level_ + 1, (position_ << 1) | 1u);
}

DyadicInterval DyadicInterval::ancestor_at(int level) const {
  if (level < 0 || level > level_) {
    throw Error(ErrorCode::InvalidArgument, "ancestor level out of range");
  }
  return DyadicInterval(level, position_ >> (level_ - level));
}

std::string DyadicInterval::key() const {
  return std::to_string(level_) + "/" + std::to_string(position_);
}

DyadicRational measure(const DyadicInterval& interval) {
  return DyadicRational::power_of_two(interval.level());
}

bool contains(const DyadicInterval& outer, const DyadicInterval& inner) noexcept {
  if (inner.level() < outer.level()) return false;
  return (inner.position() >> (inner.level() - outer.level())) == outer.position();
}

bool disjoint(const DyadicInterval& a, const DyadicInterval& b) noexcept {
  return !contains(a, b) && !contains(b, a);
}

// ---------------------------------------------------------------------------
// IntervalFamily

IntervalFamily::IntervalFamily(std::vector<DyadicInterval> intervals, int max_level)
    : intervals_(std::move(intervals)), max_level_(max_level) {
  if (max_level < 0 || max_level > kMaxLevel) {
    throw Error(ErrorCode::OutOfRange, "family max level outside [0, 30]");
  }
  std::sort(intervals_.begin(), intervals_.end());
  intervals_.erase(std::unique(intervals_.begin(), intervals_.end()), intervals_.end());
  for (const auto& interval : intervals_) {
    if (interval.level() > max_level_) {
      throw Error(ErrorCode::OutOfRange, "interval " + interval.key() +
                                             " exceeds family max level " +
                                             std::to_string(max_level_));
    }
  }
}

bool IntervalFamily::contains(const DyadicInterval& interval) const noexcept {
  return std::binary_search(intervals_.begin(), intervals_.end(), interval);
}

std::optional<std::size_t> IntervalFamily::index_of(const DyadicInterval& interval) const noexcept {
  auto it = std::lower_bound(intervals_.begin(), intervals_.end(), interval);
  if (it == intervals_.end() || *it != interval) return std::nullopt;
  return static_cast<std::size_t>(it - intervals_.begin());
}

bool IntervalFamily::is_subset_of(const IntervalFamily& other) const noexcept {
  return std::includes(other.intervals_.begin(), other.intervals_.end(), intervals_.begin(),
                       intervals_.end());
}

std::optional<DyadicInterval> IntervalFamily::nearest_strict_ancestor(
    const DyadicInterval& interval) const {
  for (int level = interval.level() - 1; level >= 0; --level) {
    const auto ancestor = interval.ancestor_at(level);
    if (contains(ancestor)) return ancestor;
  }
  return std::nullopt;
}

IntervalFamily IntervalFamily::restricted_to(const DyadicInterval& interval) const {
  std::vector<DyadicInterval> inside;
  for (const auto& member : intervals_) {
    if (hardy::contains(interval, member)) inside.push_back(member);
  }
  return IntervalFamily(std::move(inside), max_level_);
}

IntervalFamily IntervalFamily::without(const IntervalFamily& removed) const {
  std::vector<DyadicInterval> rest;
  std::set_difference(intervals_.begin(), intervals_.end(), removed.intervals_.begin(),
                      removed.intervals_.end(), std::back_inserter(rest));
  return IntervalFamily(std::move(rest), max_level_);
}

// ---------------------------------------------------------------------------
// Family combinatorics

namespace {

// Number of strict ancestors of each member that also lie in the family, and
// optionally only those ancestors contained in `within`.
std::vector<int> strict_ancestor_counts(const IntervalFamily& family,
                                        std::optional<DyadicInterval> within = std::nullopt) {
  std::vector<int> counts(family.size(), 0);
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto& member = family[i];
    const int top = within ? within->level() : 0;
    for (int level = member.level() - 1; level >= top; --level) {
      if (family.contains(member.ancestor_at(level))) ++counts[i];
    }
  }
  return counts;
}

}  // namespace

DyadicRational carleson_constant(const IntervalFamily& family) {
  if (family.empty()) {
    throw Error(ErrorCode::EmptyFamily, "Carleson constant of an empty family");
  }
  // Work in units of 2^{-deepest} so every |J| is an integer.
  int deepest = 0;
  for (const auto& member : family) deepest = std::max(deepest, member.level());

  std::vector<std::uint64_t> packed(family.size(), 0);
  for (std::size_t j = 0; j < family.size(); ++j) {
    const auto& member = family[j];
    const std::uint64_t size = std::uint64_t{1} << (deepest - member.level());
    for (int level = member.level(); level >= 0; --level) {
      if (auto idx = family.index_of(member.ancestor_at(level))) packed[*idx] += size;
    }
  }

  DyadicRational best;
  for (std::size_t i = 0; i < family.size(); ++i) {
    // packed[i]·2^{-deepest} / 2^{-level} = packed[i] / 2^{deepest - level}
    const DyadicRational ratio(packed[i], deepest - family[i].level());
    if (ratio > best) best = ratio;
  }
  return best;
}

IntervalFamily maximal_intervals(const IntervalFamily& family) {
  std::vector<DyadicInterval> maximal;
  for (const auto& member : family) {
    if (!family.nearest_strict_ancestor(member)) maximal.push_back(member);
  }
  return IntervalFamily(std::move(maximal), family.max_level());
}

std::vector<IntervalFamily> generations(const IntervalFamily& family) {
  // G_n(E) consists exactly of the members with n strict ancestors in E.
  const auto counts = strict_ancestor_counts(family);
  std::vector<std::vector<DyadicInterval>> layers;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto n = static_cast<std::size_t>(counts[i]);
    if (layers.size() <= n) layers.resize(n + 1);
    layers[n].push_back(family[i]);
  }
  std::vector<IntervalFamily> out;
  out.reserve(layers.size());
  for (auto& layer : layers) out.emplace_back(std::move(layer), family.max_level());
  return out;
}

DyadicRational covered_measure(const IntervalFamily& family) {
  DyadicRational total;
  for (const auto& member : maximal_intervals(family)) total += measure(member);
  return total;
}

DyadicRational generation_measure(const IntervalFamily& family, const DyadicInterval& interval,
                                  int generation) {
  if (!family.contains(interval)) {
    throw Error(ErrorCode::NotMember, "interval " + interval.key() + " is not in the family");
  }
  if (generation < 0) throw Error(ErrorCode::InvalidArgument, "negative generation index");
  const auto local = family.restricted_to(interval);
  const auto counts = strict_ancestor_counts(local, interval);
  DyadicRational total;
  for (std::size_t i = 0; i < local.size(); ++i) {
    if (counts[i] == generation) total += measure(local[i]);
  }
  return total;
}

double generation_decay_bound(const DyadicRational& carleson, const DyadicInterval& interval,
                              int generation) {
  const double c = carleson.to_double();
  return 4.0 * std::exp2(-2.0 * generation / (4.0 * c + 1.0)) * measure(interval).to_double();
}

bool generation_decay_check(const IntervalFamily& family, const DyadicRational& carleson,
                            const DyadicInterval& interval, int generation) {
  const double covered = generation_measure(family, interval, generation).to_double();
  return covered <= generation_decay_bound(carleson, interval, generation);
}

bool generation_decay_check(const IntervalFamily& family, const DyadicInterval& interval,
                            int generation) {
  if (!family.contains(interval)) {
    throw Error(ErrorCode::NotMember, "interval " + interval.key() + " is not in the family");
  }
  return generation_decay_check(family, carleson_constant(family), interval, generation);
}

bool is_block(const IntervalFamily& candidate, const IntervalFamily& ambient) {
  if (!candidate.is_subset_of(ambient)) {
    throw Error(ErrorCode::NotSubset, "block candidate is not a subfamily");
  }
  const auto maximal = maximal_intervals(candidate);
  if (maximal.size() != 1) return false;
  const auto top = maximal[0];
  for (const auto& member : candidate) {
    for (int level = member.level() - 1; level > top.level(); --level) {
      const auto between = member.ancestor_at(level);
      if (ambient.contains(between) && !candidate.contains(between)) return false;
    }
  }
  return true;
}

}  // namespace hardy
