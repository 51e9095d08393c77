#ifndef CACHENET_BASELINES_HPP
#define CACHENET_BASELINES_HPP

// Minimum-power recovery for a fixed association and the DOA / EMA
// comparison schemes.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "cachenet/lp.hpp"
#include "cachenet/model.hpp"

namespace cachenet {

struct Solution {
  Association x;
  PowerVector p;
};

/// min sum_j T_j p_j over 0 <= p <= P^max with the SINR requirement of every
/// user at its serving SBS; nullopt when no such p exists.
inline std::optional<PowerVector> min_power_for(const Scenario& s, const DemandMatrix& d,
                                                const Association& x, const LpOptions& opt = {}) {
  const std::size_t b = s.sbs_count(), u = s.user_count();
  if (x.user_count() != u || x.sbs_count() != b) throw UsageError("association shape does not match scenario");
  if (!x.complete()) throw UsageError("every user must be associated with exactly one SBS");
  LinearProgram lp(Sense::Minimize, u, b);
  lp.cost = serving_time(s, d, x, DelayMode::Relaxed);
  for (std::size_t j = 0; j < b; ++j) lp.upper[j] = s.max_power_w[j];
  for (std::size_t i = 0; i < u; ++i) {
    const std::size_t j = x.serving(i);
    const double gamma = requested_sinr(s, d, i);
    for (std::size_t l = 0; l < b; ++l) lp.rows(i, l) = l == j ? s.gains(i, j) : -gamma * s.gains(i, l);
    lp.rhs[i] = gamma * s.noise_power_w;
    lp.row_sense[i] = RowSense::GreaterEqual;
  }
  const auto res = solve_lp(lp, opt);
  const auto* sol = std::get_if<LpOptimal>(&res);
  if (sol == nullptr) return std::nullopt;
  PowerVector p(b);
  for (std::size_t j = 0; j < b; ++j) p[j] = std::clamp(sol->x[j], 0.0, s.max_power_w[j]);
  return p;
}

/// SBS j is in user i's neighbourhood when P_j^max g_ij / sigma^2 >= gamma_i.
inline bool reachable(const Scenario& s, const DemandMatrix& d, std::size_t user, std::size_t sbs) {
  return s.max_power_w[sbs] * s.gains(user, sbs) / s.noise_power_w >= requested_sinr(s, d, user);
}

inline std::vector<std::size_t> neighbourhood(const Scenario& s, const DemandMatrix& d, std::size_t user) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < s.sbs_count(); ++j)
    if (reachable(s, d, user, j)) out.push_back(j);
  return out;
}

namespace detail {

/// Makes `x` power-feasible by moving users along their ranked candidate
/// lists, hardest users (largest gamma / best gain) first; falls back to
/// one SBS shared by all users.
inline std::optional<Solution> repair(const Scenario& s, const DemandMatrix& d, Association x,
                                      const std::vector<std::vector<std::size_t>>& ranked,
                                      const LpOptions& opt) {
  if (auto p = min_power_for(s, d, x, opt)) return Solution{x, *p};
  const std::size_t u = s.user_count();
  std::vector<std::size_t> order(u);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> hardness(u);
  for (std::size_t i = 0; i < u; ++i) {
    double best = 0.0;
    for (std::size_t j = 0; j < s.sbs_count(); ++j) best = std::max(best, s.gains(i, j));
    hardness[i] = requested_sinr(s, d, i) / best;
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) { return hardness[a] > hardness[c]; });

  std::vector<std::size_t> pos(u, 0);
  for (std::size_t i = 0; i < u; ++i) {
    const auto it = std::find(ranked[i].begin(), ranked[i].end(), x.serving(i));
    pos[i] = static_cast<std::size_t>(it - ranked[i].begin());
  }
  for (;;) {
    for (std::size_t i : order) {
      for (std::size_t k = pos[i] + 1; k < ranked[i].size(); ++k) {
        Association trial = x;
        trial.assign(i, ranked[i][k]);
        if (auto p = min_power_for(s, d, trial, opt)) return Solution{trial, *p};
      }
    }
    bool moved = false;
    for (std::size_t i : order) {
      if (pos[i] + 1 < ranked[i].size()) {
        x.assign(i, ranked[i][++pos[i]]);
        moved = true;
        break;
      }
    }
    if (!moved) break;
    if (auto p = min_power_for(s, d, x, opt)) return Solution{x, *p};
  }
  for (std::size_t j = 0; j < s.sbs_count(); ++j) {
    Association common(std::vector<std::size_t>(u, j), s.sbs_count());
    if (auto p = min_power_for(s, d, common, opt)) return Solution{common, *p};
  }
  return std::nullopt;
}

inline std::vector<std::vector<std::size_t>> checked_neighbourhoods(const Scenario& s, const DemandMatrix& d) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < s.user_count(); ++i) {
    out.push_back(neighbourhood(s, d, i));
    if (out.back().empty()) throw InfeasibleError("user " + std::to_string(i) + " has no reachable SBS");
  }
  return out;
}

}  // namespace detail

/// Delay-oriented association: each user picks the reachable SBS with the
/// smallest delivery delay (caching SBSs first, stronger gain on ties), the
/// result is repaired for power feasibility, then improved by best-improvement
/// single-user moves that lower total delay.
inline Solution doa(const Scenario& s, const DemandMatrix& d, const CachePlacement& y,
                    const LpOptions& opt = {}) {
  s.validate();
  check_demands(s, d);
  const std::size_t u = s.user_count();
  const auto cost = delay_cost_matrix(s, d, y);
  auto ranked = detail::checked_neighbourhoods(s, d);
  for (std::size_t i = 0; i < u; ++i) {
    const std::size_t f = d.file_of(i);
    std::stable_sort(ranked[i].begin(), ranked[i].end(), [&](std::size_t a, std::size_t c) {
      if (y.cached(a, f) != y.cached(c, f)) return y.cached(a, f) > y.cached(c, f);
      if (cost(i, a) != cost(i, c)) return cost(i, a) < cost(i, c);
      return s.gains(i, a) > s.gains(i, c);
    });
  }
  std::vector<std::size_t> first(u);
  for (std::size_t i = 0; i < u; ++i) first[i] = ranked[i].front();
  auto sol = detail::repair(s, d, Association(first, s.sbs_count()), ranked, opt);
  if (!sol) throw InfeasibleError("no power-feasible association found");

  auto delay_of = [&](const Association& x) { return total_delay(s, d, y, x, DelayMode::Relaxed); };
  double current = delay_of(sol->x);
  for (std::size_t step = 0; step < 10 * u; ++step) {
    std::optional<Solution> best;
    double best_delay = current;
    for (std::size_t i = 0; i < u; ++i) {
      for (std::size_t j : ranked[i]) {
        if (j == sol->x.serving(i)) continue;
        const double delta = cost(i, j) - cost(i, sol->x.serving(i));
        if (!(current + delta < best_delay - 1e-12 * std::abs(best_delay))) continue;
        Association trial = sol->x;
        trial.assign(i, j);
        if (auto p = min_power_for(s, d, trial, opt)) {
          best = Solution{trial, *p};
          best_delay = current + delta;
        }
      }
    }
    if (!best) break;
    sol = best;
    current = delay_of(sol->x);
  }
  return *sol;
}

/// Energy-minded nearest-SBS association (ties to the lowest index),
/// repaired for power feasibility like DOA.
inline Solution ema(const Scenario& s, const DemandMatrix& d, const LpOptions& opt = {}) {
  s.validate();
  check_demands(s, d);
  const std::size_t u = s.user_count();
  auto ranked = detail::checked_neighbourhoods(s, d);
  std::vector<std::size_t> nearest(u);
  for (std::size_t i = 0; i < u; ++i) {
    auto dist = [&](std::size_t j) { return distance(s.user_positions[i], s.sbs_positions[j]); };
    std::stable_sort(ranked[i].begin(), ranked[i].end(), [&](std::size_t a, std::size_t c) { return dist(a) < dist(c); });
    nearest[i] = 0;
    for (std::size_t j = 1; j < s.sbs_count(); ++j)
      if (dist(j) < dist(nearest[i])) nearest[i] = j;
    if (!reachable(s, d, i, nearest[i])) nearest[i] = ranked[i].front();
  }
  auto sol = detail::repair(s, d, Association(nearest, s.sbs_count()), ranked, opt);
  if (!sol) throw InfeasibleError("no power-feasible association found");
  return *sol;
}

}  // namespace cachenet

#endif  // CACHENET_BASELINES_HPP
