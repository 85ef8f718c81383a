#include "hardy/pisier.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hardy/error.hpp"
#include "hardy/random.hpp"

namespace hardy {

namespace {

constexpr double kIdentityTolerance = 1e-10;
constexpr double kUnitTolerance = 1e-12;
constexpr double kChainTolerance = 1e-9;
constexpr double kLogSpread = 6.0;

// ‖z‖_{f_q^q}^q = Σ |z_I|^q |I|.
double diagonal_power(const HaarExpansion& z, double q) {
  double total = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    total += std::pow(std::abs(z.value(i)[0]), q) * measure(z.interval(i)).to_double();
  }
  return total;
}

struct Candidate {
  double value;      // ‖|x|^{1-θ}|z|^θ‖_{f_p^q}^{1/(1-θ)}
  double holder;     // (Σ φ^q ω)^{1/q}
  double power_mean; // (Σ φ^r ω)^{1/r}
  double identity;   // relative gap between Σ φ^r ω and ‖z‖_{f_q^q}^q
  double z_power;    // ‖z‖_{f_q^q}^q
  double lattice;    // ‖|u| φ‖_{f_p^q}
};

Candidate evaluate(const Factorization& f, const HaarExpansion& u,
                   const std::map<DyadicInterval, double>& z) {
  const double r = f.q / f.theta;
  std::map<DyadicInterval, double> lattice;
  double sum_q = 0.0;
  double sum_r = 0.0;
  double z_power = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto& interval = u.interval(i);
    const double zi = z.at(interval);
    const double phi = std::pow(zi / f.y.scalar_coefficient(interval), f.theta);
    const double w = f.measure.weights.at(interval);
    lattice[interval] = std::abs(u.value(i)[0]) * phi;
    sum_q += std::pow(phi, f.q) * w;
    sum_r += std::pow(phi, r) * w;
    z_power += std::pow(zi, f.q) * measure(interval).to_double();
  }
  const double norm = tl_norm(HaarExpansion::scalar(u.max_level(), lattice), f.p, f.q);
  const double gap = std::abs(sum_r - z_power) / std::max(sum_r, z_power);
  return {std::pow(norm, 1.0 / (1.0 - f.theta)), std::pow(sum_q, 1.0 / f.q),
          std::pow(sum_r, 1.0 / r), gap, z_power, norm};
}

}  // namespace

double theta(double p, double q) {
  if (!(p > 1.0) || !std::isfinite(q)) {
    throw Error(ErrorCode::InvalidArgument, "theta needs 1 < p <= q < inf");
  }
  if (p == q) throw Error(ErrorCode::DegenerateTheta, "theta = 1 at p = q");
  if (!(q > p)) throw Error(ErrorCode::InvalidArgument, "theta needs p <= q");
  return (q / (q - 1.0)) * ((p - 1.0) / p);
}

Factorization factorize(const HaarExpansion& u, double p, double q) {
  if (!u.is_scalar()) throw Error(ErrorCode::DimensionMismatch, "factorize needs a scalar expansion");
  if (u.is_zero()) throw Error(ErrorCode::ZeroInput, "cannot factorize the zero expansion");
  Factorization f;
  f.theta = theta(p, q);
  f.p = p;
  f.q = q;
  f.measure = weights_tl(u, p, q);
  std::map<DyadicInterval, double> x;
  std::map<DyadicInterval, double> y;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto& interval = u.interval(i);
    const double yi = std::pow(f.measure.weights.at(interval) / measure(interval).to_double(),
                               1.0 / q);
    y[interval] = yi;
    x[interval] = std::pow(std::abs(u.value(i)[0]) * std::pow(yi, -f.theta), 1.0 / (1.0 - f.theta));
  }
  f.x = HaarExpansion::scalar(u.max_level(), x);
  f.y = HaarExpansion::scalar(u.max_level(), y);
  return f;
}

FactorizationReport verify_factorization(const HaarExpansion& u, const Factorization& f) {
  FactorizationReport report;
  bool supports = f.x.support() == u.support() && f.y.support() == u.support() &&
                  f.x.max_level() == u.max_level() && f.y.max_level() == u.max_level() &&
                  u.is_scalar();
  if (supports) {
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double target = std::abs(u.value(i)[0]);
      const double product = std::pow(std::abs(f.x.value(i)[0]), 1.0 - f.theta) *
                             std::pow(std::abs(f.y.value(i)[0]), f.theta);
      report.max_rel_error = std::max(report.max_rel_error, std::abs(product - target) / target);
    }
  }
  report.identity = supports && report.max_rel_error <= kIdentityTolerance;
  report.y_norm = std::pow(diagonal_power(f.y, f.q), 1.0 / f.q);
  report.y_bounded = report.y_norm <= 1.0 + kUnitTolerance;
  return report;
}

X0Estimate x0_norm_estimate(const Factorization& f, const HaarExpansion& u,
                            std::size_t n_samples, std::uint64_t seed) {
  if (f.x.support() != u.support()) {
    throw Error(ErrorCode::Mismatch, "factorization was built for a different expansion");
  }
  X0Estimate est;
  est.bound = f.measure.constant() * tl_norm(u, f.p, f.q);

  const double constant = f.measure.constant();
  const double u_norm = tl_norm(u, f.p, f.q);
  auto record = [&](const Candidate& c) {
    est.value = std::max(est.value, c.value);
    est.max_power_mean_ratio = std::max(est.max_power_mean_ratio, c.holder / c.power_mean);
    est.max_identity_error = std::max(est.max_identity_error, c.identity);
    est.max_holder = std::max(est.max_holder, c.holder);
    est.max_lattice = std::max(est.max_lattice, c.lattice);
    if (c.holder > c.power_mean * (1.0 + kChainTolerance)) ++est.failures[0];
    if (c.identity > kIdentityTolerance || c.z_power > 1.0 + kChainTolerance) ++est.failures[1];
    if (c.holder > 1.0 + kChainTolerance) ++est.failures[2];
    if (c.lattice > constant * u_norm * c.holder * (1.0 + kChainTolerance) ||
        c.lattice > est.bound * (1.0 + kChainTolerance)) {
      ++est.failures[3];
    }
  };

  std::map<DyadicInterval, double> canonical;
  for (std::size_t i = 0; i < f.y.size(); ++i) canonical[f.y.interval(i)] = f.y.value(i)[0];
  const auto base = evaluate(f, u, canonical);
  est.canonical = base.value;
  record(base);

  std::uniform_real_distribution<double> spread(-kLogSpread, kLogSpread);
  for (std::size_t s = 0; s < n_samples; ++s) {
    auto rng = make_stream(seed, s);
    std::map<DyadicInterval, double> z;
    double power = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double zi = std::exp(spread(rng));
      z[u.interval(i)] = zi;
      power += std::pow(zi, f.q) * measure(u.interval(i)).to_double();
    }
    const double scale = std::pow(power, -1.0 / f.q);
    for (auto& [interval, zi] : z) zi *= scale;
    record(evaluate(f, u, z));
  }
  est.samples = n_samples;
  return est;
}

}  // namespace hardy
