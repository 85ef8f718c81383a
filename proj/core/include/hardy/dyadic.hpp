#pragma once

// Dyadic intervals of [0,1), finite families of them, and the combinatorics
// used by the atomic decomposition: Carleson constants, maximal intervals,
// generations and blocks.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hardy {

inline constexpr int kMaxLevel = 30;

// Nonnegative dyadic rational numerator / 2^exponent, kept in lowest terms.
class DyadicRational {
 public:
  constexpr DyadicRational() = default;
  DyadicRational(std::uint64_t numerator, int exponent);

  static DyadicRational power_of_two(int exponent);  // 2^{-exponent}

  std::uint64_t numerator() const noexcept { return num_; }
  int exponent() const noexcept { return exp_; }

  double to_double() const noexcept;
  std::string to_string() const;  // "7/4", "1", "1/1024"

  DyadicRational operator+(const DyadicRational& other) const;
  DyadicRational& operator+=(const DyadicRational& other);
  DyadicRational operator*(const DyadicRational& other) const;

  std::strong_ordering operator<=>(const DyadicRational& other) const;
  bool operator==(const DyadicRational& other) const = default;

 private:
  void normalize() noexcept;

  std::uint64_t num_ = 0;
  int exp_ = 0;
};

// I = [position·2^{-level}, (position+1)·2^{-level}), positions 0-based.
class DyadicInterval {
 public:
  constexpr DyadicInterval() = default;
  DyadicInterval(int level, std::uint32_t position);

  int level() const noexcept { return level_; }
  std::uint32_t position() const noexcept { return position_; }

  double left() const noexcept;
  double right() const noexcept;
  bool contains_point(double t) const noexcept;

  bool is_root() const noexcept { return level_ == 0; }
  DyadicInterval parent() const;
  DyadicInterval left_child() const;
  DyadicInterval right_child() const;
  // Ancestor at the given coarser level (level <= this->level()).
  DyadicInterval ancestor_at(int level) const;

  std::string key() const;  // "level/pos"

  auto operator<=>(const DyadicInterval&) const = default;

 private:
  int level_ = 0;
  std::uint32_t position_ = 0;
};

DyadicRational measure(const DyadicInterval& interval);

// True iff inner ⊆ outer.
bool contains(const DyadicInterval& outer, const DyadicInterval& inner) noexcept;
bool disjoint(const DyadicInterval& a, const DyadicInterval& b) noexcept;

// Finite set of dyadic intervals, stored sorted by (level, position).
class IntervalFamily {
 public:
  IntervalFamily() = default;
  explicit IntervalFamily(std::vector<DyadicInterval> intervals,
                          int max_level = kMaxLevel);

  int max_level() const noexcept { return max_level_; }
  bool empty() const noexcept { return intervals_.empty(); }
  std::size_t size() const noexcept { return intervals_.size(); }
  std::span<const DyadicInterval> intervals() const noexcept { return intervals_; }
  auto begin() const noexcept { return intervals_.begin(); }
  auto end() const noexcept { return intervals_.end(); }
  const DyadicInterval& operator[](std::size_t i) const { return intervals_[i]; }

  bool contains(const DyadicInterval& interval) const noexcept;
  std::optional<std::size_t> index_of(const DyadicInterval& interval) const noexcept;
  bool is_subset_of(const IntervalFamily& other) const noexcept;
  // Smallest member strictly containing interval, if any.
  std::optional<DyadicInterval> nearest_strict_ancestor(const DyadicInterval& interval) const;
  // Members J with J ⊆ interval ("I ∩ E").
  IntervalFamily restricted_to(const DyadicInterval& interval) const;
  IntervalFamily without(const IntervalFamily& removed) const;

  bool operator==(const IntervalFamily& other) const noexcept {
    return intervals_ == other.intervals_;
  }

 private:
  std::vector<DyadicInterval> intervals_;
  int max_level_ = kMaxLevel;
};

// sup over I ∈ E of |I|^{-1} Σ_{J ∈ E, J ⊆ I} |J|, exact.
DyadicRational carleson_constant(const IntervalFamily& family);

// G_0(E): the maximal members.
IntervalFamily maximal_intervals(const IntervalFamily& family);

// [G_0(E), G_1(E), ...]; G_n(E) = G_0(E \ (G_0 ∪ ... ∪ G_{n-1})).
std::vector<IntervalFamily> generations(const IntervalFamily& family);

// Measure of the set covered by the family.
DyadicRational covered_measure(const IntervalFamily& family);

// |G_ℓ^*(I,E)| as an exact dyadic rational; I must belong to E.
DyadicRational generation_measure(const IntervalFamily& family,
                                  const DyadicInterval& interval, int generation);

// Decay bound 4·2^{-2ℓ/(4⟦E⟧+1)}·|I| for |G_ℓ^*(I,E)|.
double generation_decay_bound(const DyadicRational& carleson,
                              const DyadicInterval& interval, int generation);

bool generation_decay_check(const IntervalFamily& family,
                            const DyadicInterval& interval, int generation);

// Variant that reuses a precomputed Carleson constant of the family.
bool generation_decay_check(const IntervalFamily& family, const DyadicRational& carleson,
                            const DyadicInterval& interval, int generation);

// C is a block in L: unique maximal interval I, and every K ∈ L lying between
// a member of C and I belongs to C. Throws NotSubset unless C ⊆ L.
bool is_block(const IntervalFamily& candidate, const IntervalFamily& ambient);

}  // namespace hardy
