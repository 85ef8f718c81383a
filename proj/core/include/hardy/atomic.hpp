#pragma once

// Stopping-time atomic decomposition of a finite Haar expansion into blocks
// with dyadic tops, and a verifier for everything the decomposition promises.

#include <vector>

#include "hardy/dyadic.hpp"
#include "hardy/haar.hpp"

namespace hardy {

struct AtomicPiece {
  IntervalFamily block;
  DyadicInterval top;
  int generation = 0;  // level-set index k of the block
};

class AtomicDecomposition {
 public:
  AtomicDecomposition() = default;
  AtomicDecomposition(int max_level, int dimension, std::vector<AtomicPiece> pieces);

  int max_level() const noexcept { return max_level_; }
  int dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return pieces_.size(); }
  const std::vector<AtomicPiece>& pieces() const noexcept { return pieces_; }
  const AtomicPiece& operator[](std::size_t i) const { return pieces_[i]; }

  IntervalFamily tops() const;
  // u_i = Σ_{J ∈ G_i} x_J h_J.
  HaarExpansion piece(const HaarExpansion& u, std::size_t i) const;

 private:
  int max_level_ = 0;
  int dimension_ = 1;
  std::vector<AtomicPiece> pieces_;
};

// Level-set stopping time on S(u) followed by sparsify_tops. Throws ZeroInput for u = 0 and
// VerificationFailed if the result does not pass verify_decomposition.
AtomicDecomposition decompose(const HaarExpansion& u, double p);

// Level-set construction alone, without sparsify_tops or verification.
AtomicDecomposition decompose_unchecked(const HaarExpansion& u);

// Folds pieces into the piece of their top's nearest support ancestor until
// the tops have Carleson constant <= 4. Partition and block structure are
// preserved; a decomposition that already satisfies the bound is returned as is.
AtomicDecomposition sparsify_tops(const HaarExpansion& u, const AtomicDecomposition& dec);

struct DecompositionReport {
  bool partition = false;        // blocks disjoint, union = Haar support
  bool tops_dyadic = false;      // top ∈ block and contains every member
  bool blocks = false;           // each block is a block in the support
  DyadicRational tops_carleson;  // ⟦{I_i}⟧
  bool carleson_ok = false;      // ⟦{I_i}⟧ <= 4

  double norm_power = 0.0;         // ‖u‖^p
  double sum_piece_power = 0.0;    // Σ ‖u_i‖^p
  double sum_sup_power = 0.0;      // Σ |I_i| ‖S(u_i)‖_∞^p
  double lower_constant = 1.0;     // a_p used in the left inequality
  bool lower_chain = false;        // a_p ‖u‖^p <= Σ ‖u_i‖^p
  bool middle_chain = false;       // ‖u_i‖^p <= |I_i| ‖S(u_i)‖_∞^p for every i
  double observed_upper = 0.0;     // Σ |I_i| ‖S(u_i)‖_∞^p / ‖u‖^p

  bool passed() const noexcept {
    return partition && tops_dyadic && blocks && carleson_ok && lower_chain && middle_chain;
  }
};

// Checks the decomposition of u. Throws Mismatch when dec was built for a
// different shape (max level, dimension) or names intervals outside the support.
DecompositionReport verify_decomposition(const HaarExpansion& u, double p,
                                         const AtomicDecomposition& dec);

// ‖S(u_i)‖_∞.
double sup_square(const HaarExpansion& piece);

// 1 + 4^{1/p} Σ_{ℓ>=1} 2^{-2ℓ/(p(4C+1))}, summed in closed form.
double generation_sum_constant(double p, const DyadicRational& carleson);
double generation_sum_constant(double p, double carleson);

// a_p for the left inequality: 1 for scalar expansions or p <= 1, otherwise
// generation_sum_constant^{-p} at the tops' Carleson constant.
double lower_chain_constant(int dimension, double p, const DyadicRational& tops_carleson);

// max(1, Σ_i |I_i|^{1-p/2} ‖u_i‖_2^p / ‖u‖_{H^p}^p).
double instance_constant(const HaarExpansion& u, double p, const AtomicDecomposition& dec);

}  // namespace hardy
