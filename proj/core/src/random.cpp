#include "hardy/random.hpp"

#include <cmath>

#include "hardy/error.hpp"

namespace hardy {

Rng make_stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

HaarExpansion gen_random(int max_level, int dimension, double density, std::uint64_t seed) {
  auto rng = make_stream(seed, 0);
  return gen_random(max_level, dimension, density, rng);
}

HaarExpansion gen_random(int max_level, int dimension, double density, Rng& rng) {
  if (!(density > 0.0 && density <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "density must lie in (0,1]");
  }
  if (max_level < 0 || max_level > kMaxExpansionLevel) {
    throw Error(ErrorCode::OutOfRange, "max_level out of range");
  }
  if (dimension < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  std::bernoulli_distribution keep(density);
  std::normal_distribution<double> normal;
  std::map<DyadicInterval, std::vector<double>> coefficients;
  for (int level = 0; level <= max_level; ++level) {
    const std::uint32_t count = std::uint32_t{1} << level;
    for (std::uint32_t pos = 0; pos < count; ++pos) {
      if (!keep(rng)) continue;
      std::vector<double> value(static_cast<std::size_t>(dimension));
      for (auto& entry : value) entry = normal(rng);
      coefficients.emplace(DyadicInterval(level, pos), std::move(value));
    }
  }
  return HaarExpansion(max_level, dimension, coefficients);
}

Multiplier random_multiplier(const HaarExpansion& u, Rng& rng) {
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  Multiplier phi;
  for (const auto& interval : u.support()) phi.emplace(interval, uniform(rng));
  return phi;
}

IntervalFamily random_family(int max_level, Rng& rng) {
  std::uniform_real_distribution<double> unit;
  std::vector<DyadicInterval> members;
  // Per-level densities vary so that both sparse and nearly full trees appear.
  for (int level = 0; level <= max_level; ++level) {
    const double density = unit(rng);
    const std::uint32_t count = std::uint32_t{1} << level;
    for (std::uint32_t pos = 0; pos < count; ++pos) {
      if (unit(rng) < density) members.emplace_back(level, pos);
    }
  }
  if (members.empty()) members.emplace_back(0, 0);
  return IntervalFamily(std::move(members), max_level);
}

}  // namespace hardy
