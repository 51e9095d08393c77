#ifndef CACHENET_POPULARITY_HPP
#define CACHENET_POPULARITY_HPP

// User preferences, per-cell local file popularity, and demand sampling that
// reproduces the local popularity as closely as integrality allows.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "cachenet/matrix.hpp"
#include "cachenet/model.hpp"
#include "cachenet/random.hpp"

namespace cachenet {

struct PreferenceMatrix {
  Matrix<double> rho;                 // users x files, rows sum to 1
  std::vector<double> request_prob;   // per user, relative request intensity

  friend bool operator==(const PreferenceMatrix&, const PreferenceMatrix&) = default;
};

struct PopularityTable {
  Matrix<double> psi;                              // SBSs x files
  std::vector<std::vector<std::size_t>> zones;     // central-zone users of each SBS

  std::size_t sbs_count() const noexcept { return psi.rows(); }
  std::size_t file_count() const noexcept { return psi.cols(); }
};

struct PreferenceOptions {
  // Gaussian kernel variance, in squared file-index units.
  double variance_min = 25.0;
  double variance_max = 2500.0;
};

/// Users whose distance to each SBS is within the central-zone radius.
/// A user may belong to several zones.
inline std::vector<std::vector<std::size_t>> central_zones(const Scenario& s) {
  std::vector<std::vector<std::size_t>> zones(s.sbs_count());
  for (std::size_t j = 0; j < s.sbs_count(); ++j)
    for (std::size_t i = 0; i < s.user_count(); ++i)
      if (distance(s.user_positions[i], s.sbs_positions[j]) <= s.central_zone_radius_m)
        zones[j].push_back(i);
  return zones;
}

/// Discretised Gaussian kernel over file indices 1..F centred at `mean`,
/// normalised to a probability vector.
inline std::vector<double> gaussian_preference(std::size_t file_count, double mean,
                                               double variance) {
  std::vector<double> row(file_count);
  double total = 0.0;
  for (std::size_t k = 0; k < file_count; ++k) {
    const double z = static_cast<double>(k + 1) - mean;
    row[k] = std::exp(-0.5 * z * z / variance);
    total += row[k];
  }
  if (!(total > 0.0)) {
    // mean far outside [1, F] with tiny variance: mass sits on the nearest end
    std::fill(row.begin(), row.end(), 0.0);
    row[mean < 1.0 ? 0 : file_count - 1] = 1.0;
    return row;
  }
  for (double& v : row) v /= total;
  return row;
}

inline PreferenceMatrix sample_preferences(const Scenario& s, std::uint64_t seed,
                                           const PreferenceOptions& opt = {}) {
  if (s.file_count() == 0) throw UsageError("need at least one file");
  if (!(opt.variance_min > 0.0) || opt.variance_max < opt.variance_min)
    throw UsageError("preference variance range must be positive and ordered");
  Rng rng(seed);
  std::uniform_real_distribution<double> mean_dist(1.0, static_cast<double>(s.file_count()));
  std::uniform_real_distribution<double> var_dist(opt.variance_min, opt.variance_max);
  PreferenceMatrix prefs;
  prefs.rho = Matrix<double>(s.user_count(), s.file_count());
  prefs.request_prob.assign(s.user_count(), 1.0 / static_cast<double>(s.user_count()));
  for (std::size_t i = 0; i < s.user_count(); ++i) {
    const double mean = mean_dist(rng);
    const double var = var_dist(rng);
    const auto row = gaussian_preference(s.file_count(), mean, var);
    std::copy(row.begin(), row.end(), prefs.rho.row(i).begin());
  }
  return prefs;
}

/// psi_jk = sum_{i in zone j} p(u_i) rho_ik, with p(u_i) normalised inside the
/// zone (equal request probabilities give 1/|zone|). An empty zone gets a
/// uniform row.
inline PopularityTable local_popularity(const Scenario& s, const PreferenceMatrix& prefs) {
  if (prefs.rho.rows() != s.user_count() || prefs.rho.cols() != s.file_count())
    throw UsageError("preference matrix shape does not match scenario");
  PopularityTable table;
  table.zones = central_zones(s);
  table.psi = Matrix<double>(s.sbs_count(), s.file_count(), 0.0);
  const double uniform = 1.0 / static_cast<double>(s.file_count());
  for (std::size_t j = 0; j < s.sbs_count(); ++j) {
    const auto& zone = table.zones[j];
    double weight_total = 0.0;
    for (std::size_t i : zone) weight_total += prefs.request_prob.at(i);
    if (zone.empty() || !(weight_total > 0.0)) {
      for (std::size_t k = 0; k < s.file_count(); ++k) table.psi(j, k) = uniform;
      continue;
    }
    for (std::size_t i : zone) {
      const double w = prefs.request_prob[i] / weight_total;
      for (std::size_t k = 0; k < s.file_count(); ++k) table.psi(j, k) += w * prefs.rho(i, k);
    }
  }
  return table;
}

/// Largest-remainder apportionment of `slots` requests over `shares`
/// (which sum to 1). Ties on the remainder go to the lower index.
inline std::vector<std::size_t> largest_remainder(const std::vector<double>& shares,
                                                  std::size_t slots) {
  const std::size_t n = shares.size();
  std::vector<std::size_t> quota(n, 0);
  std::vector<double> remainder(n, 0.0);
  std::size_t assigned = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double exact = shares[k] * static_cast<double>(slots);
    // guard against 0.49999999 style round-off on exact products
    const double fl = std::floor(exact + 1e-9);
    quota[k] = static_cast<std::size_t>(std::max(0.0, fl));
    remainder[k] = exact - fl;
    assigned += quota[k];
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t r = 0; assigned < slots && r < n; ++r, ++assigned) ++quota[order[r]];
  // shares summing slightly above 1 can overshoot; trim from the smallest remainders
  for (std::size_t r = n; assigned > slots && r > 0; --r) {
    auto& q = quota[order[r - 1]];
    if (q > 0) {
      --q;
      --assigned;
    }
  }
  return quota;
}

/// Each central-zone user of each cell requests one file so that the per-cell
/// request fractions follow psi (largest remainder, then a seeded shuffle
/// decides who gets which file). Users outside every zone draw from their own
/// preference row. Users in several zones are fixed by the first zone
/// processed and count against the later zones' quotas.
inline DemandMatrix sample_demands(const Scenario& s, const PopularityTable& pop,
                                   const PreferenceMatrix& prefs, std::uint64_t seed) {
  const std::size_t none = static_cast<std::size_t>(-1);
  DemandMatrix d;
  d.requested.assign(s.user_count(), none);
  Rng rng(seed);
  for (std::size_t j = 0; j < pop.sbs_count(); ++j) {
    const auto& zone = pop.zones.at(j);
    if (zone.empty()) continue;
    std::vector<double> shares(pop.psi.row(j).begin(), pop.psi.row(j).end());
    auto quota = largest_remainder(shares, zone.size());
    std::vector<std::size_t> open;
    for (std::size_t i : zone) {
      if (d.requested[i] == none) {
        open.push_back(i);
      } else if (quota[d.requested[i]] > 0) {
        --quota[d.requested[i]];
      }
    }
    std::vector<std::size_t> files;
    for (std::size_t k = 0; k < quota.size(); ++k) files.insert(files.end(), quota[k], k);
    std::shuffle(files.begin(), files.end(), rng);
    for (std::size_t n = 0; n < open.size(); ++n) {
      // an overlapping user may have consumed a zero-quota slot; fall back to argmax psi
      d.requested[open[n]] =
          n < files.size()
              ? files[n]
              : static_cast<std::size_t>(std::max_element(shares.begin(), shares.end()) -
                                         shares.begin());
    }
  }
  for (std::size_t i = 0; i < s.user_count(); ++i) {
    if (d.requested[i] != none) continue;
    const auto row = prefs.rho.row(i);
    std::discrete_distribution<std::size_t> pick(row.begin(), row.end());
    d.requested[i] = pick(rng);
  }
  return d;
}

}  // namespace cachenet

#endif  // CACHENET_POPULARITY_HPP
