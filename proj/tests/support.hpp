#ifndef CACHENET_TESTS_SUPPORT_HPP
#define CACHENET_TESTS_SUPPORT_HPP

// Independent oracles and certificate checks shared by the unit tests and the
// acceptance binary. Nothing here calls the simplex kernel.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cachenet/lp.hpp"
#include "cachenet/model.hpp"

namespace support {

using cachenet::LinearProgram;
using cachenet::Matrix;
using cachenet::RowSense;
using cachenet::Sense;

inline double binom(std::size_t n, std::size_t k) {
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

/// Solve a square system by Gaussian elimination; nullopt when singular.
inline std::optional<std::vector<double>> solve_square(Matrix<double> a, std::vector<double> b,
                                                       double pivot_min = 1e-10) {
  const std::size_t n = b.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t r = k + 1; r < n; ++r)
      if (std::abs(a(r, k)) > std::abs(a(p, k))) p = r;
    if (std::abs(a(p, k)) < pivot_min) return std::nullopt;
    if (p != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(p, c));
      std::swap(b[k], b[p]);
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      const double f = a(r, k) / a(k, k);
      if (f == 0.0) continue;
      for (std::size_t c = k; c < n; ++c) a(r, c) -= f * a(k, c);
      b[r] -= f * b[k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t k = n; k-- > 0;) {
    double s = b[k];
    for (std::size_t c = k + 1; c < n; ++c) s -= a(k, c) * x[c];
    x[k] = s / a(k, k);
  }
  return x;
}

/// Calls f(subset) for every k-subset of {0..n-1} in lexicographic order.
inline void for_each_subset(std::size_t n, std::size_t k,
                            const std::function<void(const std::vector<std::size_t>&)>& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

struct EnumeratedLp {
  enum class Status { Optimal, Unbounded, Infeasible } status;
  double objective = 0.0;
};

/// Ground truth for LPs with nonnegative variables: every basic solution of
/// the slack form is tried, and unboundedness is decided by enumerating the
/// extreme rays of the recession cone (vertices of {Md = 0, d >= 0, 1'd = 1}).
inline EnumeratedLp enumerate_lp(const LinearProgram& lp, double tol = 1e-9) {
  const std::size_t n = lp.var_count();
  for (double l : lp.lower)
    if (l != 0.0) throw std::invalid_argument("enumerate_lp needs nonnegative variables");
  // rows: original plus finite upper bounds; columns: x then one slack per inequality
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  std::vector<RowSense> sense;
  for (std::size_t r = 0; r < lp.row_count(); ++r) {
    rows.emplace_back(lp.rows.row(r).begin(), lp.rows.row(r).end());
    rhs.push_back(lp.rhs[r]);
    sense.push_back(lp.row_sense[r]);
  }
  for (std::size_t j = 0; j < n; ++j)
    if (std::isfinite(lp.upper[j])) {
      std::vector<double> row(n, 0.0);
      row[j] = 1.0;
      rows.push_back(row);
      rhs.push_back(lp.upper[j]);
      sense.push_back(RowSense::LessEqual);
    }
  std::size_t m = rows.size();
  std::size_t slacks = 0;
  for (auto s : sense) slacks += s == RowSense::Equal ? 0 : 1;
  const std::size_t cols = n + slacks;
  Matrix<double> full(m, cols, 0.0);
  std::size_t sc = n;
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t j = 0; j < n; ++j) full(r, j) = rows[r][j];
    if (sense[r] == RowSense::LessEqual) full(r, sc++) = 1.0;
    if (sense[r] == RowSense::GreaterEqual) full(r, sc++) = -1.0;
  }
  // drop dependent rows so every basis can be square and nonsingular
  {
    std::vector<std::vector<double>> echelon;  // reduced copies of kept rows
    std::vector<double> echelon_rhs;
    std::vector<std::size_t> pivots, kept;
    for (std::size_t r = 0; r < m; ++r) {
      std::vector<double> v(full.row(r).begin(), full.row(r).end());
      double b = rhs[r], norm = std::abs(b);
      for (double a : v) norm = std::max(norm, std::abs(a));
      for (std::size_t e = 0; e < echelon.size(); ++e) {
        const double f = v[pivots[e]] / echelon[e][pivots[e]];
        if (f == 0.0) continue;
        for (std::size_t c = 0; c < cols; ++c) v[c] -= f * echelon[e][c];
        b -= f * echelon_rhs[e];
      }
      std::size_t p = 0;
      for (std::size_t c = 1; c < cols; ++c)
        if (std::abs(v[c]) > std::abs(v[p])) p = c;
      if (cols == 0 || std::abs(v[p]) <= 1e-10 * std::max(norm, 1.0)) {
        if (std::abs(b) > 1e-9 * std::max(norm, 1.0)) return {EnumeratedLp::Status::Infeasible, 0.0};
        continue;
      }
      echelon.push_back(v);
      echelon_rhs.push_back(b);
      pivots.push_back(p);
      kept.push_back(r);
    }
    if (kept.size() < m) {
      Matrix<double> reduced(kept.size(), cols, 0.0);
      std::vector<double> reduced_rhs;
      for (std::size_t k = 0; k < kept.size(); ++k) {
        for (std::size_t c = 0; c < cols; ++c) reduced(k, c) = full(kept[k], c);
        reduced_rhs.push_back(rhs[kept[k]]);
      }
      full = reduced;
      rhs = reduced_rhs;
      m = kept.size();
    }
  }

  std::vector<double> cost(cols, 0.0);
  const double s = lp.sense == Sense::Maximize ? -1.0 : 1.0;
  for (std::size_t j = 0; j < n; ++j) cost[j] = s * lp.cost[j];

  bool feasible = false;
  double best = cachenet::kInf;
  for_each_subset(cols, m, [&](const std::vector<std::size_t>& basis) {
    Matrix<double> bm(m, m);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t k = 0; k < m; ++k) bm(r, k) = full(r, basis[k]);
    const auto x = solve_square(bm, rhs);
    if (!x) return;
    double scale = 1.0;
    for (double v : *x) scale = std::max(scale, std::abs(v));
    for (double v : *x)
      if (v < -tol * scale) return;
    feasible = true;
    double obj = 0.0;
    for (std::size_t k = 0; k < m; ++k) obj += cost[basis[k]] * (*x)[k];
    best = std::min(best, obj);
  });
  if (m == 0) {
    feasible = true;
    best = 0.0;
  }
  if (!feasible) return {EnumeratedLp::Status::Infeasible, 0.0};

  bool unbounded = false;
  Matrix<double> cone(m + 1, cols, 0.0);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < cols; ++c) cone(r, c) = full(r, c);
  for (std::size_t c = 0; c < cols; ++c) cone(m, c) = 1.0;
  std::vector<double> cone_rhs(m + 1, 0.0);
  cone_rhs[m] = 1.0;
  for_each_subset(cols, m + 1, [&](const std::vector<std::size_t>& basis) {
    if (unbounded) return;
    Matrix<double> bm(m + 1, m + 1);
    for (std::size_t r = 0; r <= m; ++r)
      for (std::size_t k = 0; k <= m; ++k) bm(r, k) = cone(r, basis[k]);
    const auto d = solve_square(bm, cone_rhs);
    if (!d) return;
    for (double v : *d)
      if (v < -tol) return;
    double obj = 0.0, mag = 0.0;
    for (std::size_t k = 0; k <= m; ++k) {
      obj += cost[basis[k]] * (*d)[k];
      mag += std::abs(cost[basis[k]] * (*d)[k]);
    }
    if (obj < -1e-9 * std::max(1.0, mag)) unbounded = true;
  });
  if (unbounded) return {EnumeratedLp::Status::Unbounded, 0.0};
  return {EnumeratedLp::Status::Optimal, s * best};
}

inline double row_activity(const LinearProgram& lp, std::size_t r, const std::vector<double>& x) {
  double v = 0.0;
  for (std::size_t j = 0; j < lp.var_count(); ++j) v += lp.rows(r, j) * x[j];
  return v;
}

/// Empty string when x satisfies every row and bound within `tol` relative.
inline std::string primal_violation(const LinearProgram& lp, const std::vector<double>& x,
                                    double tol, bool homogeneous = false) {
  if (x.size() != lp.var_count()) return "wrong length";
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double mag = std::max(1.0, std::abs(x[j]));
    if (lp.lower[j] == 0.0 && x[j] < -tol * mag) return "lower bound " + std::to_string(j);
    const double ub = homogeneous ? (std::isfinite(lp.upper[j]) ? 0.0 : cachenet::kInf) : lp.upper[j];
    if (x[j] > ub + tol * mag) return "upper bound " + std::to_string(j);
  }
  for (std::size_t r = 0; r < lp.row_count(); ++r) {
    const double act = row_activity(lp, r, x);
    const double b = homogeneous ? 0.0 : lp.rhs[r];
    double sc = std::abs(b);
    for (std::size_t j = 0; j < lp.var_count(); ++j) sc += std::abs(lp.rows(r, j) * x[j]);
    double xmax = 0.0, amag = 0.0;
    for (std::size_t j = 0; j < lp.var_count(); ++j) {
      xmax = std::max(xmax, std::abs(x[j]));
      amag += std::abs(lp.rows(r, j));
    }
    const double t = tol * std::max(sc, homogeneous ? amag * xmax : 1.0);
    const bool ok = lp.row_sense[r] == RowSense::LessEqual      ? act <= b + t
                    : lp.row_sense[r] == RowSense::GreaterEqual ? act >= b - t
                                                                : std::abs(act - b) <= t;
    if (!ok) return "row " + std::to_string(r);
  }
  return {};
}

/// Checks that (y, w) is a Farkas certificate in the minimisation sign
/// convention documented in lp.hpp.
inline std::string farkas_violation(const LinearProgram& lp, const std::vector<double>& y,
                                    const std::vector<double>& w, double tol = 1e-9) {
  double ymag = 0.0;
  for (double v : y) ymag = std::max(ymag, std::abs(v));
  for (double v : w) ymag = std::max(ymag, std::abs(v));
  if (!(ymag > 0.0)) return "zero certificate";
  for (std::size_t r = 0; r < lp.row_count(); ++r) {
    if (lp.row_sense[r] == RowSense::LessEqual && y[r] > tol * ymag) return "sign of row " + std::to_string(r);
    if (lp.row_sense[r] == RowSense::GreaterEqual && y[r] < -tol * ymag)
      return "sign of row " + std::to_string(r);
  }
  for (std::size_t j = 0; j < lp.var_count(); ++j) {
    if (w[j] > tol * ymag) return "sign of bound " + std::to_string(j);
    if (!std::isfinite(lp.upper[j]) && w[j] != 0.0) return "multiplier on absent bound";
    double col = w[j], mag = std::abs(w[j]);
    for (std::size_t r = 0; r < lp.row_count(); ++r) {
      col += lp.rows(r, j) * y[r];
      mag += std::abs(lp.rows(r, j) * y[r]);
    }
    if (col > tol * std::max(mag, ymag)) return "column " + std::to_string(j);
    if (lp.lower[j] != 0.0 && std::abs(col) > tol * std::max(mag, ymag)) return "free column " + std::to_string(j);
  }
  double val = 0.0, mag = 0.0;
  for (std::size_t r = 0; r < lp.row_count(); ++r) {
    val += lp.rhs[r] * y[r];
    mag += std::abs(lp.rhs[r] * y[r]);
  }
  for (std::size_t j = 0; j < lp.var_count(); ++j)
    if (std::isfinite(lp.upper[j])) {
      val += lp.upper[j] * w[j];
      mag += std::abs(lp.upper[j] * w[j]);
    }
  if (!(val > tol * std::max(mag, 1e-300))) return "certificate value not positive";
  return {};
}

/// Minimum power for a complete association by the monotone fixed point
/// p_j = max_{i on j} gamma_i (sum_{l != j} g_il p_l + sigma^2) / g_ij.
/// nullopt when some iterate exceeds the power budget.
inline std::optional<std::vector<double>> yates_min_power(const cachenet::Scenario& s,
                                                          const cachenet::DemandMatrix& d,
                                                          const cachenet::Association& x) {
  const std::size_t b = s.sbs_count();
  std::vector<double> p(b, 0.0);
  for (int it = 0; it < 200000; ++it) {
    std::vector<double> next(b, 0.0);
    for (std::size_t i = 0; i < s.user_count(); ++i) {
      const std::size_t j = x.serving(i);
      double interference = s.noise_power_w;
      for (std::size_t l = 0; l < b; ++l)
        if (l != j) interference += s.gains(i, l) * p[l];
      next[j] = std::max(next[j], cachenet::requested_sinr(s, d, i) * interference / s.gains(i, j));
    }
    double change = 0.0;
    for (std::size_t j = 0; j < b; ++j) {
      if (next[j] > s.max_power_w[j] * (1.0 + 1e-12)) return std::nullopt;
      change = std::max(change, std::abs(next[j] - p[j]) / std::max(next[j], 1e-300));
    }
    p = next;
    if (change < 1e-15) break;
  }
  return p;
}

/// Calls f(association) for every complete association in mixed-radix order.
inline void for_each_association(std::size_t users, std::size_t sbs,
                                 const std::function<void(const cachenet::Association&)>& f) {
  std::vector<std::size_t> digits(users, 0);
  while (true) {
    f(cachenet::Association(digits, sbs));
    std::size_t i = users;
    while (i > 0) {
      if (++digits[i - 1] < sbs) break;
      digits[i - 1] = 0;
      --i;
    }
    if (i == 0) return;
  }
}

/// Dual feasibility and zero duality gap of an optimal result, using the sign
/// convention documented in lp.hpp.
inline std::string dual_violation(const LinearProgram& lp, const cachenet::LpOptimal& opt,
                                  double tol = 1e-8) {
  const double f = lp.sense == Sense::Maximize ? -1.0 : 1.0;  // map to minimisation
  double ymag = 1e-300;
  for (double v : opt.duals) ymag = std::max(ymag, std::abs(v));
  for (std::size_t r = 0; r < lp.row_count(); ++r) {
    const double y = f * opt.duals[r];
    if (lp.row_sense[r] == RowSense::LessEqual && y > tol * ymag) return "sign of row " + std::to_string(r);
    if (lp.row_sense[r] == RowSense::GreaterEqual && y < -tol * ymag)
      return "sign of row " + std::to_string(r);
  }
  double primal = 0.0, dual = 0.0, mag = 0.0;
  for (std::size_t j = 0; j < lp.var_count(); ++j) {
    const double w = f * opt.bound_duals[j];
    if (w > tol * std::max(1.0, ymag)) return "sign of bound " + std::to_string(j);
    double col = w, cmag = std::abs(w) + std::abs(lp.cost[j]);
    for (std::size_t r = 0; r < lp.row_count(); ++r) {
      col += lp.rows(r, j) * f * opt.duals[r];
      cmag += std::abs(lp.rows(r, j) * opt.duals[r]);
    }
    const double reduced = f * lp.cost[j] - col;
    if (reduced < -tol * std::max(1.0, cmag)) return "reduced cost of column " + std::to_string(j);
    if (lp.lower[j] != 0.0 && std::abs(reduced) > tol * std::max(1.0, cmag))
      return "free column " + std::to_string(j);
    primal += lp.cost[j] * opt.x[j];
    mag += std::abs(lp.cost[j] * opt.x[j]);
    if (std::isfinite(lp.upper[j])) {
      dual += lp.upper[j] * opt.bound_duals[j];
      mag += std::abs(lp.upper[j] * opt.bound_duals[j]);
    }
  }
  for (std::size_t r = 0; r < lp.row_count(); ++r) {
    dual += lp.rhs[r] * opt.duals[r];
    mag += std::abs(lp.rhs[r] * opt.duals[r]);
  }
  if (std::abs(primal - dual) > tol * std::max(1.0, mag)) return "duality gap";
  return {};
}

/// Random dense LP; a share of instances uses small integer data to provoke
/// degeneracy.
inline LinearProgram random_lp(std::mt19937_64& rng, std::size_t m, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::bernoulli_distribution coin(0.5), zero(0.2), bounded(0.25), integral(0.3);
  std::discrete_distribution<int> sense_pick({45, 40, 15});
  const bool ints = integral(rng);
  auto val = [&] { return ints ? std::round(3.0 * u(rng)) : u(rng); };
  LinearProgram lp(coin(rng) ? Sense::Maximize : Sense::Minimize, m, n);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t j = 0; j < n; ++j) lp.rows(r, j) = zero(rng) ? 0.0 : val();
    lp.rhs[r] = val();
    const int s = sense_pick(rng);
    lp.row_sense[r] = s == 0 ? RowSense::LessEqual : s == 1 ? RowSense::GreaterEqual : RowSense::Equal;
  }
  for (std::size_t j = 0; j < n; ++j) {
    lp.cost[j] = val();
    if (bounded(rng)) lp.upper[j] = ints ? 1.0 + std::floor(3.0 * std::abs(u(rng))) : 0.5 + 2.5 * std::abs(u(rng));
  }
  return lp;
}

/// Number of bases the enumeration oracle visits for `lp`.
inline double enumeration_work(const LinearProgram& lp) {
  std::size_t m = lp.row_count(), cols = lp.var_count();
  for (std::size_t r = 0; r < lp.row_count(); ++r) cols += lp.row_sense[r] == RowSense::Equal ? 0 : 1;
  for (double u : lp.upper)
    if (std::isfinite(u)) {
      ++m;
      ++cols;
    }
  return binom(cols, m) + binom(cols, m + 1);
}

/// Hand-sized scenario: SBSs 100 m apart on the x axis, users given by
/// position, unit noise and bandwidth, 1-byte files with threshold 1, no
/// caches, no backhaul, equal load coefficients. Gains follow from positions.
inline cachenet::Scenario tiny_scenario(std::size_t sbs, const std::vector<cachenet::Point>& users,
                                        std::size_t files = 1) {
  cachenet::Scenario s;
  for (std::size_t j = 0; j < sbs; ++j) s.sbs_positions.push_back({100.0 * static_cast<double>(j), 0.0});
  s.user_positions = users;
  s.max_power_w.assign(sbs, 1.0);
  s.cache_capacity_bytes.assign(sbs, 0.0);
  s.backhaul_mean_s.assign(sbs, 0.0);
  s.load_coefficients.assign(sbs, 1.0 / static_cast<double>(sbs));
  s.file_size_bytes.assign(files, 1.0);
  s.sinr_threshold.assign(files, 1.0);
  s.bandwidth_hz = 1.0;
  s.noise_power_w = 1.0;
  cachenet::compute_gains(s);
  return s;
}

/// Overwrites the gain matrix, row-major.
inline void set_gains(cachenet::Scenario& s, const std::vector<double>& g) {
  for (std::size_t i = 0; i < s.user_count(); ++i)
    for (std::size_t j = 0; j < s.sbs_count(); ++j) s.gains(i, j) = g.at(i * s.sbs_count() + j);
}

}  // namespace support

#endif  // CACHENET_TESTS_SUPPORT_HPP
