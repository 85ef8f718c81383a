#include "hardy/atomic.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <map>
#include <optional>
#include <string>

#include "hardy/error.hpp"

namespace hardy {

namespace {

constexpr double kChainTolerance = 1e-10;
constexpr int kNoLevel = INT_MIN;

// Largest k with 2^k < s; kNoLevel for s = 0.
int level_index(double s) {
  if (!(s > 0.0)) return kNoLevel;
  int k = static_cast<int>(std::floor(std::log2(s)));
  while (std::ldexp(1.0, k + 1) < s) ++k;
  while (!(std::ldexp(1.0, k) < s)) --k;
  return k;
}

std::size_t heap_index(const DyadicInterval& interval) {
  return (std::size_t{1} << interval.level()) + interval.position();
}

}  // namespace

AtomicDecomposition::AtomicDecomposition(int max_level, int dimension,
                                         std::vector<AtomicPiece> pieces)
    : max_level_(max_level), dimension_(dimension), pieces_(std::move(pieces)) {}

IntervalFamily AtomicDecomposition::tops() const {
  std::vector<DyadicInterval> out;
  out.reserve(pieces_.size());
  for (const auto& piece : pieces_) out.push_back(piece.top);
  return IntervalFamily(std::move(out), max_level_);
}

HaarExpansion AtomicDecomposition::piece(const HaarExpansion& u, std::size_t i) const {
  return u.restricted_to(pieces_.at(i).block);
}

AtomicDecomposition decompose_unchecked(const HaarExpansion& u) {
  if (u.is_zero()) throw Error(ErrorCode::ZeroInput, "cannot decompose the zero expansion");
  const int n = u.max_level();
  const auto square = square_function(u);

  // kappa[J] = largest k such that more than half of J lies in {S > 2^k}, i.e.
  // the (floor(|J|/2)+1)-th largest leaf index inside J. Sorted runs are merged
  // bottom-up one level at a time.
  const std::size_t leaves = std::size_t{1} << n;
  std::vector<int> kappa(2 * leaves, kNoLevel);
  std::vector<int> runs(leaves);
  for (std::size_t j = 0; j < leaves; ++j) runs[j] = level_index(square.values()[j]);
  std::vector<int> merged(leaves);
  for (int level = n; level >= 0; --level) {
    const std::size_t width = std::size_t{1} << (n - level);
    const std::size_t count = std::size_t{1} << level;
    if (width > 1) {
      const std::size_t half = width / 2;
      for (std::size_t node = 0; node < count; ++node) {
        auto first = runs.begin() + static_cast<std::ptrdiff_t>(node * width);
        std::merge(first, first + static_cast<std::ptrdiff_t>(half),
                   first + static_cast<std::ptrdiff_t>(half),
                   first + static_cast<std::ptrdiff_t>(width),
                   merged.begin() + static_cast<std::ptrdiff_t>(node * width),
                   std::greater<>());
      }
      runs.swap(merged);
    }
    for (std::size_t node = 0; node < count; ++node) {
      kappa[count + node] = runs[node * width + width / 2];
    }
  }

  // k(I) = max over ancestors-or-self J of kappa[J]: I ⊆ Ω̃_k exactly when
  // some dyadic J ⊇ I has |J ∩ {S > 2^k}| > |J|/2.
  std::vector<int> generation(2 * leaves, kNoLevel);
  generation[1] = kappa[1];
  for (std::size_t node = 2; node < 2 * leaves; ++node) {
    generation[node] = std::max(generation[node / 2], kappa[node]);
  }

  // Intervals arrive coarse to fine. An interval joins the piece of its
  // nearest support ancestor when both share a generation; otherwise it is
  // maximal in its generation and opens a new piece.
  std::map<DyadicInterval, std::size_t> owner;
  std::vector<std::vector<DyadicInterval>> members;
  std::vector<AtomicPiece> pieces;
  for (const auto& interval : u.support()) {
    const int k = generation[heap_index(interval)];
    const auto ancestor = u.support().nearest_strict_ancestor(interval);
    if (ancestor && generation[heap_index(*ancestor)] == k) {
      const std::size_t idx = owner.at(*ancestor);
      owner.emplace(interval, idx);
      members[idx].push_back(interval);
    } else {
      owner.emplace(interval, pieces.size());
      members.push_back({interval});
      pieces.push_back(AtomicPiece{IntervalFamily{}, interval, k});
    }
  }
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    pieces[i].block = IntervalFamily(std::move(members[i]), n);
  }
  return AtomicDecomposition(n, u.dimension(), std::move(pieces));
}

AtomicDecomposition sparsify_tops(const HaarExpansion& u, const AtomicDecomposition& dec) {
  if (dec.max_level() != u.max_level() || dec.dimension() != u.dimension()) {
    throw Error(ErrorCode::Mismatch, "decomposition was built for a different expansion shape");
  }
  std::vector<AtomicPiece> pieces = dec.pieces();
  const DyadicRational bound(4, 0);
  while (true) {
    std::vector<DyadicInterval> top_list;
    for (const auto& piece : pieces) top_list.push_back(piece.top);
    const IntervalFamily tops(top_list, dec.max_level());
    if (tops.empty() || carleson_constant(tops) <= bound) break;

    // Packed measure Σ_{J ⊆ I} |J| for every top I.
    std::vector<double> packed(tops.size(), 0.0);
    for (const auto& j : tops) {
      const double size = measure(j).to_double();
      for (int level = j.level(); level >= 0; --level) {
        if (auto idx = tops.index_of(j.ancestor_at(level))) packed[*idx] += size;
      }
    }
    std::size_t worst = 0;
    for (std::size_t i = 1; i < tops.size(); ++i) {
      if (packed[i] / measure(tops[i]).to_double() >
          packed[worst] / measure(tops[worst]).to_double()) {
        worst = i;
      }
    }

    // Fold the coarsest top strictly inside the worst one into the piece of
    // its nearest support ancestor.
    std::optional<std::size_t> victim;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      const auto& top = pieces[i].top;
      if (top == tops[worst] || !contains(tops[worst], top)) continue;
      if (!victim || top < pieces[*victim].top) victim = i;
    }
    const auto ancestor = u.support().nearest_strict_ancestor(pieces[*victim].top);
    std::size_t host = 0;
    while (!pieces[host].block.contains(*ancestor)) ++host;
    std::vector<DyadicInterval> members(pieces[host].block.begin(), pieces[host].block.end());
    members.insert(members.end(), pieces[*victim].block.begin(), pieces[*victim].block.end());
    pieces[host].block = IntervalFamily(std::move(members), dec.max_level());
    pieces.erase(pieces.begin() + static_cast<std::ptrdiff_t>(*victim));
  }
  return AtomicDecomposition(dec.max_level(), dec.dimension(), std::move(pieces));
}

AtomicDecomposition decompose(const HaarExpansion& u, double p) {
  auto dec = sparsify_tops(u, decompose_unchecked(u));
  const auto report = verify_decomposition(u, p, dec);
  if (!report.passed()) {
    throw Error(ErrorCode::VerificationFailed,
                "atomic decomposition failed verification (tops Carleson " +
                    report.tops_carleson.to_string() + ")");
  }
  return dec;
}

DecompositionReport verify_decomposition(const HaarExpansion& u, double p,
                                         const AtomicDecomposition& dec) {
  if (dec.max_level() != u.max_level() || dec.dimension() != u.dimension()) {
    throw Error(ErrorCode::Mismatch, "decomposition was built for a different expansion shape");
  }
  for (const auto& piece : dec.pieces()) {
    if (!piece.block.is_subset_of(u.support())) {
      throw Error(ErrorCode::Mismatch, "decomposition names intervals outside the Haar support");
    }
  }

  DecompositionReport report;

  std::vector<DyadicInterval> all;
  for (const auto& piece : dec.pieces()) {
    all.insert(all.end(), piece.block.begin(), piece.block.end());
  }
  std::sort(all.begin(), all.end());
  const bool distinct = std::adjacent_find(all.begin(), all.end()) == all.end();
  report.partition = distinct && all.size() == u.size();

  report.tops_dyadic = true;
  report.blocks = true;
  for (const auto& piece : dec.pieces()) {
    const bool top_in_block = piece.block.contains(piece.top);
    const bool covered = std::all_of(piece.block.begin(), piece.block.end(),
                                     [&](const auto& j) { return contains(piece.top, j); });
    report.tops_dyadic = report.tops_dyadic && top_in_block && covered;
    report.blocks = report.blocks && is_block(piece.block, u.support());
  }

  if (dec.size() > 0) report.tops_carleson = carleson_constant(dec.tops());
  report.carleson_ok = dec.size() > 0 && report.tops_carleson <= DyadicRational(4, 0);

  report.norm_power = hp_norm_power(u, p);
  report.middle_chain = true;
  for (std::size_t i = 0; i < dec.size(); ++i) {
    const auto& top = dec[i].top;
    const auto piece = dec.piece(u, i);
    const double piece_power = local_hp_norm_power(piece, top, p);
    const double sup_power =
        std::pow(local_sup_square(piece, top), p) * measure(top).to_double();
    report.sum_piece_power += piece_power;
    report.sum_sup_power += sup_power;
    report.middle_chain = report.middle_chain && piece_power <= sup_power * (1.0 + kChainTolerance);
  }
  report.middle_chain = report.middle_chain &&
                        report.sum_piece_power <= report.sum_sup_power * (1.0 + kChainTolerance);

  report.lower_constant =
      dec.size() > 0 ? lower_chain_constant(u.dimension(), p, report.tops_carleson) : 1.0;
  report.lower_chain = report.lower_constant * report.norm_power <=
                       report.sum_piece_power * (1.0 + kChainTolerance);
  report.observed_upper =
      report.norm_power > 0.0 ? report.sum_sup_power / report.norm_power : 0.0;
  return report;
}

double sup_square(const HaarExpansion& piece) { return square_function(piece).sup(); }

double generation_sum_constant(double p, double carleson) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw Error(ErrorCode::InvalidArgument, "generation-sum constant needs p >= 1");
  }
  if (!(carleson >= 1.0) || !std::isfinite(carleson)) {
    throw Error(ErrorCode::InvalidArgument, "generation-sum constant needs Carleson constant >= 1");
  }
  // Σ_{ℓ>=1} r^ℓ = r / (1 - r) with r = 2^{-2/(p(4C+1))}.
  const double exponent = -2.0 * std::log(2.0) / (p * (4.0 * carleson + 1.0));
  const double r = std::exp(exponent);
  return 1.0 + std::pow(4.0, 1.0 / p) * r / -std::expm1(exponent);
}

double generation_sum_constant(double p, const DyadicRational& carleson) {
  return generation_sum_constant(p, carleson.to_double());
}

double lower_chain_constant(int dimension, double p, const DyadicRational& tops_carleson) {
  if (dimension == 1 || p <= 1.0) return 1.0;
  return std::pow(generation_sum_constant(p, tops_carleson), -p);
}

double instance_constant(const HaarExpansion& u, double p, const AtomicDecomposition& dec) {
  const double norm_power = hp_norm_power(u, p);
  if (!(norm_power > 0.0)) throw Error(ErrorCode::ZeroInput, "instance constant of zero input");
  double total = 0.0;
  for (std::size_t i = 0; i < dec.size(); ++i) {
    const double l2 = l2_norm(dec.piece(u, i));
    total += std::pow(measure(dec[i].top).to_double(), 1.0 - p / 2.0) * std::pow(l2, p);
  }
  return std::max(1.0, total / norm_power);
}

}  // namespace hardy
