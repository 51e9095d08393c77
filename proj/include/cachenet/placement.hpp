#ifndef CACHENET_PLACEMENT_HPP
#define CACHENET_PLACEMENT_HPP

// Cache placement policies: local-popularity greedy (LPF), global-popularity
// caching (GPC), random caching (RC), and an exact 0/1 knapsack used to check
// the greedy.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "cachenet/model.hpp"
#include "cachenet/popularity.hpp"
#include "cachenet/random.hpp"

namespace cachenet {

struct KnapsackSolution {
  std::vector<bool> selected;
  double value = 0.0;
  double weight = 0.0;
};

/// Admit items in the given order while they fit; items that do not fit are
/// skipped and the scan continues.
inline KnapsackSolution admit_in_order(std::span<const double> sizes, std::span<const double> values,
                                       double capacity, std::span<const std::size_t> order) {
  KnapsackSolution out;
  out.selected.assign(sizes.size(), false);
  for (std::size_t k : order) {
    if (fits_capacity(out.weight + sizes[k], capacity)) {
      out.selected[k] = true;
      out.weight += sizes[k];
      out.value += values[k];
    }
  }
  return out;
}

/// Greedy by value density (value / size), descending; equal densities keep
/// index order.
inline KnapsackSolution greedy_knapsack(std::span<const double> sizes, std::span<const double> values,
                                        double capacity) {
  if (sizes.size() != values.size()) throw UsageError("sizes and values differ in length");
  std::vector<std::size_t> order(sizes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] / sizes[a] > values[b] / sizes[b];
  });
  return admit_in_order(sizes, values, capacity, order);
}

struct KnapsackLimits {
  std::size_t max_cells = 50'000'000;  // items x capacity cells of the DP table
};

/// Exact 0/1 knapsack by dynamic programming over an integer capacity grid.
inline KnapsackSolution knapsack_exact(std::span<const std::int64_t> sizes,
                                       std::span<const double> values, std::int64_t capacity,
                                       const KnapsackLimits& limits = {}) {
  if (sizes.size() != values.size()) throw UsageError("sizes and values differ in length");
  const std::size_t n = sizes.size();
  KnapsackSolution out;
  out.selected.assign(n, false);
  if (capacity < 0) return out;
  for (std::size_t k = 0; k < n; ++k) {
    if (sizes[k] <= 0) throw UsageError("knapsack sizes must be positive integers");
    if (values[k] < 0.0) throw UsageError("knapsack values must be nonnegative");
  }
  const auto cap = static_cast<std::size_t>(capacity);
  if (static_cast<double>(n) * static_cast<double>(cap + 1) > static_cast<double>(limits.max_cells))
    throw UsageError("knapsack grid has " + std::to_string(n * (cap + 1)) +
                     " cells; use a coarser quantization");

  std::vector<double> best(cap + 1, 0.0);
  std::vector<std::uint8_t> take(n * (cap + 1), 0);
  for (std::size_t k = 0; k < n; ++k) {
    const auto w = static_cast<std::size_t>(sizes[k]);
    if (w > cap) continue;
    for (std::size_t c = cap; c >= w; --c) {
      const double with = best[c - w] + values[k];
      if (with > best[c]) {
        best[c] = with;
        take[k * (cap + 1) + c] = 1;
      }
      if (c == w) break;
    }
  }
  std::size_t c = cap;
  for (std::size_t k = n; k-- > 0;) {
    if (take[k * (cap + 1) + c]) {
      out.selected[k] = true;
      c -= static_cast<std::size_t>(sizes[k]);
    }
  }
  for (std::size_t k = 0; k < n; ++k)
    if (out.selected[k]) {
      out.value += values[k];
      out.weight += static_cast<double>(sizes[k]);
    }
  return out;
}

/// Byte-sized variant: sizes are rounded up and the capacity down to `grid`
/// cells, so the returned subset always fits. Exact when every size is a
/// multiple of the grid.
inline KnapsackSolution knapsack_exact_bytes(std::span<const double> sizes,
                                             std::span<const double> values, double capacity,
                                             double grid_bytes = 0.1e6,
                                             const KnapsackLimits& limits = {}) {
  if (!(grid_bytes > 0.0)) throw UsageError("grid must be positive");
  std::vector<std::int64_t> cells(sizes.size());
  for (std::size_t k = 0; k < sizes.size(); ++k)
    cells[k] = static_cast<std::int64_t>(std::ceil(sizes[k] / grid_bytes - 1e-9));
  const auto cap = static_cast<std::int64_t>(std::floor(capacity / grid_bytes + 1e-9));
  auto out = knapsack_exact(cells, values, cap, limits);
  out.weight = 0.0;
  for (std::size_t k = 0; k < sizes.size(); ++k)
    if (out.selected[k]) out.weight += sizes[k];
  return out;
}

struct PlacementResult {
  CachePlacement placement;
  std::vector<double> hit;  // psi_j = sum_k psi_jk y_jk per SBS
};

/// Local-popularity placement: each SBS independently runs the density greedy
/// on its own popularity row.
inline PlacementResult lpf_greedy(const Scenario& s, const PopularityTable& pop) {
  if (pop.sbs_count() != s.sbs_count() || pop.file_count() != s.file_count())
    throw UsageError("popularity table shape does not match scenario");
  PlacementResult out{CachePlacement(s.sbs_count(), s.file_count()),
                      std::vector<double>(s.sbs_count(), 0.0)};
  for (std::size_t j = 0; j < s.sbs_count(); ++j) {
    const auto row = pop.psi.row(j);
    const auto sol = greedy_knapsack(s.file_size_bytes, std::vector<double>(row.begin(), row.end()),
                                     s.cache_capacity_bytes[j]);
    for (std::size_t k = 0; k < s.file_count(); ++k)
      if (sol.selected[k]) out.placement.set(j, k);
    out.hit[j] = sol.value;
  }
  return out;
}

/// Zipf popularity over file ranks 1..F (file index order).
inline std::vector<double> zipf_popularity(std::size_t file_count, double exponent) {
  if (exponent < 0.0) throw UsageError("Zipf exponent must be nonnegative");
  std::vector<double> p(file_count);
  double total = 0.0;
  for (std::size_t k = 0; k < file_count; ++k) {
    p[k] = std::pow(static_cast<double>(k + 1), -exponent);
    total += p[k];
  }
  for (double& v : p) v /= total;
  return p;
}

/// Global-popularity caching: every SBS caches by the same global Zipf rank.
inline CachePlacement gpc_placement(const Scenario& s, double zipf_exponent = 0.8) {
  const auto global = zipf_popularity(s.file_count(), zipf_exponent);
  std::vector<std::size_t> order(s.file_count());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return global[a] > global[b]; });
  CachePlacement y(s.sbs_count(), s.file_count());
  for (std::size_t j = 0; j < s.sbs_count(); ++j) {
    const auto sol = admit_in_order(s.file_size_bytes, global, s.cache_capacity_bytes[j], order);
    for (std::size_t k = 0; k < s.file_count(); ++k)
      if (sol.selected[k]) y.set(j, k);
  }
  return y;
}

/// Random caching: an independent uniform file order per SBS.
inline CachePlacement rc_placement(const Scenario& s, std::uint64_t seed) {
  Rng rng(seed);
  CachePlacement y(s.sbs_count(), s.file_count());
  const std::vector<double> unit(s.file_count(), 1.0);
  for (std::size_t j = 0; j < s.sbs_count(); ++j) {
    std::vector<std::size_t> order(s.file_count());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const auto sol = admit_in_order(s.file_size_bytes, unit, s.cache_capacity_bytes[j], order);
    for (std::size_t k = 0; k < s.file_count(); ++k)
      if (sol.selected[k]) y.set(j, k);
  }
  return y;
}

struct HitRatio {
  std::vector<double> per_sbs;
  double mean = 0.0;
};

inline HitRatio hit_ratio(const CachePlacement& y, const PopularityTable& pop) {
  if (y.sbs_count() != pop.sbs_count() || y.file_count() != pop.file_count())
    throw UsageError("placement and popularity shapes differ");
  HitRatio h;
  h.per_sbs.assign(y.sbs_count(), 0.0);
  for (std::size_t j = 0; j < y.sbs_count(); ++j) {
    for (std::size_t k = 0; k < y.file_count(); ++k)
      if (y.cached(j, k)) h.per_sbs[j] += pop.psi(j, k);
    h.mean += h.per_sbs[j];
  }
  if (!h.per_sbs.empty()) h.mean /= static_cast<double>(h.per_sbs.size());
  return h;
}

}  // namespace cachenet

#endif  // CACHENET_PLACEMENT_HPP
