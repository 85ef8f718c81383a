#pragma once

// Pisier factorization |u| = |x|^{1-θ} |y|^θ of u ∈ f_p^q with y in the unit
// ball of f_q^q, and sampled lower bounds for the X_0 norm of x.

#include <cstdint>

#include "hardy/haar.hpp"
#include "hardy/pietsch.hpp"

namespace hardy {

// θ = (q/(q-1)) ((p-1)/p). Requires 1 < p < q < ∞; p = q throws DegenerateTheta.
double theta(double p, double q);

struct Factorization {
  HaarExpansion x;  // X_0 factor
  HaarExpansion y;  // f_q^q factor, y_I = (ω_I / |I|)^{1/q}
  double theta = 0.0;
  double p = 0.0;
  double q = 0.0;
  PietschMeasure measure;  // weights_tl(u, p, q)
};

Factorization factorize(const HaarExpansion& u, double p, double q);

struct FactorizationReport {
  double max_rel_error = 0.0;  // max_I | |x_I|^{1-θ}|y_I|^θ - |u_I| | / |u_I|
  bool identity = false;       // max_rel_error <= 1e-10 and supports agree
  double y_norm = 0.0;         // ‖y‖_{f_q^q}
  bool y_bounded = false;      // y_norm <= 1 + 1e-12

  bool passed() const noexcept { return identity && y_bounded; }
};

FactorizationReport verify_factorization(const HaarExpansion& u, const Factorization& f);

// For each candidate z with ‖z‖_{f_q^q} <= 1 and φ_I = (z_I / y_I)^θ, the
// chain checked is, with r = q/θ:
//   1. (Σ φ^q ω)^{1/q} <= (Σ φ^r ω)^{1/r}
//   2. Σ φ^r ω = ‖z‖_{f_q^q}^q
//   3. (Σ φ^q ω)^{1/q} <= 1
//   4. ‖|u| φ‖_{f_p^q} <= C ‖u‖_{f_p^q} (Σ φ^q ω)^{1/q} <= C ‖u‖_{f_p^q}
struct X0Estimate {
  double value = 0.0;      // max over candidates of ‖|x|^{1-θ}|z|^θ‖_{f_p^q}^{1/(1-θ)}
  double canonical = 0.0;  // the z = y candidate
  std::size_t samples = 0;
  double bound = 0.0;      // C ‖u‖_{f_p^q}

  double max_power_mean_ratio = 0.0;  // step 1, lhs / rhs
  double max_identity_error = 0.0;    // step 2, relative
  double max_holder = 0.0;            // step 3 lhs
  double max_lattice = 0.0;           // step 4 lhs
  std::size_t failures[4] = {0, 0, 0, 0};

  bool passed() const noexcept {
    return failures[0] == 0 && failures[1] == 0 && failures[2] == 0 && failures[3] == 0;
  }
};

// Draws n_samples z on the support of u with log-uniform magnitudes, rescaled
// to ‖z‖_{f_q^q} = 1, plus the canonical candidate z = y.
X0Estimate x0_norm_estimate(const Factorization& f, const HaarExpansion& u,
                            std::size_t n_samples, std::uint64_t seed);

}  // namespace hardy
