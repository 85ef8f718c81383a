#pragma once

// Explicit Pietsch measures for Haar multipliers φ ↦ Σ φ_I x_I h_I into H^p,
// f_p^q and Hilbert-valued H^p, built from the atomic decomposition.

#include <map>

#include "hardy/atomic.hpp"
#include "hardy/haar.hpp"

namespace hardy {

enum class TargetSpace { Hardy, TriebelLizorkin, VectorHardy };

std::string_view to_string(TargetSpace space) noexcept;

struct PietschMeasure {
  TargetSpace space = TargetSpace::Hardy;
  std::map<DyadicInterval, double> weights;  // ω_I on the Haar support
  double normalizer = 1.0;                   // per-instance A
  double exponent = 2.0;                     // s in (Σ |φ_I|^s ω_I)^{1/s}
  double p = 1.0;
  double q = 2.0;                            // f_p^q only
  double lower_constant = 1.0;               // a_p, vector case only
  DyadicRational tops_carleson;
  AtomicDecomposition decomposition;         // of u, or of |u|^{q/2} for f_p^q

  double total() const noexcept;
  // Multiplier-bound constant C: A^{1/p}, or (A/a_p)^{1/p} in the vector case.
  double constant() const;
};

PietschMeasure weights_hp(const HaarExpansion& u, double p);
PietschMeasure weights_tl(const HaarExpansion& u, double p, double q);
PietschMeasure weights_vector(const HaarExpansion& u, double p);

// μ^{(i)}_I = ‖x_I‖²|I| / ‖u_i‖²_2 on the block of piece i.
std::map<DyadicInterval, double> block_measure(const HaarExpansion& u,
                                               const AtomicDecomposition& dec, std::size_t i);

struct MultiplierReport {
  double lhs = 0.0;           // ‖φ·u‖
  double rhs = 0.0;           // C ‖u‖ (Σ |φ_I|^s ω_I)^{1/s}
  double constant = 0.0;      // C
  double weighted_sum = 0.0;  // Σ |φ_I|^s ω_I
  bool holds = false;         // lhs <= rhs (1 + 1e-9)
};

// Throws Mismatch if m does not belong to u (shape, support or target space).
MultiplierReport check_multiplier_bound(const HaarExpansion& u, const Multiplier& phi,
                                        const PietschMeasure& m);

struct MeasureReport {
  double total = 0.0;
  bool normalized = false;       // Σ ω_I <= 1 + 1e-12
  bool nonnegative = false;
  bool supported = false;        // support(ω) ⊆ support(u)
  double max_rel_deviation = 0;  // against the defining formula, recomputed
  bool matches_formula = false;  // max_rel_deviation <= 1e-10

  bool passed() const noexcept { return normalized && nonnegative && supported && matches_formula; }
};

// Recomputes ω from u and compares entry by entry.
MeasureReport verify_measure(const HaarExpansion& u, const PietschMeasure& m);

}  // namespace hardy
