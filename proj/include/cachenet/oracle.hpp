#ifndef CACHENET_ORACLE_HPP
#define CACHENET_ORACLE_HPP

// Exhaustive reference solver for tiny instances.

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cachenet/baselines.hpp"
#include "cachenet/lp.hpp"
#include "cachenet/model.hpp"

namespace cachenet {

struct OracleOptions {
  double max_associations = 1e6;
  LpOptions lp;
};

/// One power-feasible association with its minimum-power vector.
struct OracleCandidate {
  Association x;
  PowerVector p;
  double energy = 0.0;  // relaxed
  double delay = 0.0;   // relaxed
};

struct OracleResult {
  Association x;
  PowerVector p;
  ObjectiveValue relaxed;
  ObjectiveValue exact;
  std::size_t feasible_count = 0;
};

/// Every power-feasible binary association, in mixed-radix order over users
/// (the last user changes fastest, i.e. lexicographic order of serving SBSs).
inline std::vector<OracleCandidate> enumerate_feasible(const Scenario& s, const DemandMatrix& d,
                                                       const CachePlacement& y,
                                                       const OracleOptions& opt = {}) {
  s.validate();
  check_demands(s, d);
  const std::size_t b = s.sbs_count(), u = s.user_count();
  const double count = std::pow(static_cast<double>(b), static_cast<double>(u));
  if (count > opt.max_associations)
    throw UsageError("instance has " + std::to_string(count) + " associations, above the oracle cap of " +
                     std::to_string(opt.max_associations) + "; use a smaller instance");
  std::vector<OracleCandidate> out;
  std::vector<std::size_t> digits(u, 0);
  for (;;) {
    Association x(digits, b);
    if (auto p = min_power_for(s, d, x, opt.lp)) {
      const auto v = objective(s, d, y, x, *p, 0.0, DelayMode::Relaxed);
      out.push_back({x, *p, v.energy, v.delay});
    }
    std::size_t pos = u;
    while (pos > 0) {
      --pos;
      if (++digits[pos] < b) break;
      digits[pos] = 0;
      if (pos == 0) return out;
    }
    if (u == 0) return out;
  }
}

/// Minimiser of alpha E + (1 - alpha) D among candidates; the first one wins ties.
inline std::optional<OracleResult> best_candidate(const Scenario& s, const DemandMatrix& d,
                                                  const CachePlacement& y,
                                                  const std::vector<OracleCandidate>& candidates,
                                                  double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw UsageError("alpha must lie in [0, 1]");
  const OracleCandidate* best = nullptr;
  double best_value = kInf;
  for (const auto& c : candidates) {
    const double v = alpha * c.energy + (1.0 - alpha) * c.delay;
    if (v < best_value) {
      best_value = v;
      best = &c;
    }
  }
  if (best == nullptr) return std::nullopt;
  OracleResult r;
  r.x = best->x;
  r.p = best->p;
  r.relaxed = objective(s, d, y, r.x, r.p, alpha, DelayMode::Relaxed);
  r.exact = objective(s, d, y, r.x, r.p, alpha, DelayMode::Exact);
  r.feasible_count = candidates.size();
  return r;
}

/// Global optimum of the relaxed weighted objective; nullopt when no
/// association admits feasible power.
inline std::optional<OracleResult> brute_force(const Scenario& s, const DemandMatrix& d,
                                               const CachePlacement& y, double alpha,
                                               const OracleOptions& opt = {}) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw UsageError("alpha must lie in [0, 1]");
  return best_candidate(s, d, y, enumerate_feasible(s, d, y, opt), alpha);
}

/// brute_force at several alphas, enumerating once.
inline std::vector<std::optional<OracleResult>> brute_force_sweep(const Scenario& s, const DemandMatrix& d,
                                                                  const CachePlacement& y,
                                                                  const std::vector<double>& alphas,
                                                                  const OracleOptions& opt = {}) {
  for (double a : alphas)
    if (!(a >= 0.0 && a <= 1.0)) throw UsageError("alpha must lie in [0, 1]");
  const auto candidates = enumerate_feasible(s, d, y, opt);
  std::vector<std::optional<OracleResult>> out;
  for (double a : alphas) out.push_back(best_candidate(s, d, y, candidates, a));
  return out;
}

}  // namespace cachenet

#endif  // CACHENET_ORACLE_HPP
