#ifndef CACHENET_BENDERS_HPP
#define CACHENET_BENDERS_HPP

// Benders decomposition for joint user association and power control (UCWT):
// the dual power-control subproblem, optimality / feasibility cuts, an exact
// branch-and-bound master over binary associations, the penalty form of the
// master, and the bound bookkeeping of the outer loop.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "cachenet/lp.hpp"
#include "cachenet/matrix.hpp"
#include "cachenet/model.hpp"

namespace cachenet {

/// UCWT ran out of iterations before finding any feasible association.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Big-M constant: min_i 1 / (gamma_i ((I - 1) pbar gbar + sigma^2)).
/// `interferers` is I; it defaults to the SBS count.
inline double varrho(const Scenario& s, const DemandMatrix& d,
                     std::optional<double> interferers = std::nullopt) {
  check_demands(s, d);
  const double count = interferers.value_or(static_cast<double>(s.sbs_count()));
  if (count < 1.0) throw UsageError("interferer count must be at least 1");
  double pbar = 0.0, gbar = 0.0;
  for (double p : s.max_power_w) pbar = std::max(pbar, p);
  for (double g : s.gains.data()) gbar = std::max(gbar, g);
  double rho = kInf;
  for (std::size_t i = 0; i < s.user_count(); ++i) {
    const double gamma = requested_sinr(s, d, i);
    if (!(gamma > 0.0)) throw UsageError("user " + std::to_string(i) + " has a nonpositive SINR threshold");
    rho = std::min(rho, 1.0 / (gamma * ((count - 1.0) * pbar * gbar + s.noise_power_w)));
  }
  return rho;
}

namespace detail {

inline void check_association(const Scenario& s, const Association& x) {
  if (x.user_count() != s.user_count() || x.sbs_count() != s.sbs_count())
    throw UsageError("association shape does not match scenario");
}

inline std::size_t nu_index(const Scenario& s, std::size_t user, std::size_t sbs) {
  return s.sbs_count() + user * s.sbs_count() + sbs;
}

}  // namespace detail

/// Dual of the power subproblem for a fixed association. Variables are
/// mu_0..mu_{B-1} followed by nu_ij in row-major order; all nonnegative.
///   max  sum_j -P_j mu_j + sum_ij (sigma^2 gamma_i - (1 - x_ij) / varrho) nu_ij
///   s.t. -mu_j + sum_i g_ij nu_ij - sum_i sum_{l != j} gamma_i g_ij nu_il <= T_j
/// with T_j = beta_j D the relaxed serving time. Row j's dual value is p_j.
inline LinearProgram build_subproblem_dual(const Scenario& s, const DemandMatrix& d,
                                           const Association& x, double rho) {
  check_demands(s, d);
  detail::check_association(s, x);
  const std::size_t b = s.sbs_count(), u = s.user_count();
  LinearProgram lp(Sense::Maximize, b, b + u * b);
  const auto t = serving_time(s, d, x, DelayMode::Relaxed);
  for (std::size_t j = 0; j < b; ++j) {
    lp.cost[j] = -s.max_power_w[j];
    lp.rows(j, j) = -1.0;
    lp.rhs[j] = t[j];
  }
  for (std::size_t i = 0; i < u; ++i) {
    const double gamma = requested_sinr(s, d, i);
    for (std::size_t l = 0; l < b; ++l) {
      const std::size_t col = detail::nu_index(s, i, l);
      lp.cost[col] = s.noise_power_w * gamma - (1.0 - x.x(i, l)) / rho;
      for (std::size_t j = 0; j < b; ++j)
        lp.rows(j, col) = j == l ? s.gain(i, l) : -gamma * s.gain(i, j);
    }
  }
  return lp;
}

/// The primal power subproblem: variables p_0..p_{B-1} >= 0,
///   min sum_j T_j p_j
///   s.t. p_j <= P_j                                             (rows 0..B-1)
///        g_il p_l - gamma_i sum_{j != l} g_ij p_j >= gamma_i sigma^2 - (1 - x_il) / varrho
///                                                               (row B + i B + l)
inline LinearProgram build_subproblem_primal(const Scenario& s, const DemandMatrix& d,
                                             const Association& x, double rho) {
  check_demands(s, d);
  detail::check_association(s, x);
  const std::size_t b = s.sbs_count(), u = s.user_count();
  LinearProgram lp(Sense::Minimize, b + u * b, b);
  const auto t = serving_time(s, d, x, DelayMode::Relaxed);
  for (std::size_t j = 0; j < b; ++j) {
    lp.cost[j] = t[j];
    lp.rows(j, j) = 1.0;
    lp.rhs[j] = s.max_power_w[j];
  }
  for (std::size_t i = 0; i < u; ++i) {
    const double gamma = requested_sinr(s, d, i);
    for (std::size_t l = 0; l < b; ++l) {
      const std::size_t row = detail::nu_index(s, i, l);
      for (std::size_t j = 0; j < b; ++j) lp.rows(row, j) = j == l ? s.gain(i, l) : -gamma * s.gain(i, j);
      lp.rhs[row] = gamma * s.noise_power_w - (1.0 - x.x(i, l)) / rho;
      lp.row_sense[row] = RowSense::GreaterEqual;
    }
  }
  return lp;
}

struct DualPoint {
  enum class Kind { ExtremePoint, ExtremeRay };
  std::vector<double> mu;  // per SBS
  Matrix<double> nu;       // users x SBSs
  Kind kind = Kind::ExtremePoint;
};

struct SubproblemResult {
  DualPoint dual;
  double value = 0.0;  // M: minimum relaxed energy, +inf when the association admits no power
  PowerVector power;   // prices of the dual rows; empty when unbounded

  bool bounded() const noexcept { return dual.kind == DualPoint::Kind::ExtremePoint; }
};

inline SubproblemResult solve_subproblem(const Scenario& s, const DemandMatrix& d,
                                         const Association& x, double rho,
                                         const LpOptions& opt = {}) {
  const auto lp = build_subproblem_dual(s, d, x, rho);
  const auto res = solve_lp(lp, opt);
  const std::size_t b = s.sbs_count(), u = s.user_count();
  auto unpack = [&](const std::vector<double>& v, DualPoint::Kind kind) {
    DualPoint p;
    p.kind = kind;
    p.mu.assign(b, 0.0);
    p.nu = Matrix<double>(u, b, 0.0);
    for (std::size_t j = 0; j < b; ++j) p.mu[j] = std::max(0.0, v[j]);
    for (std::size_t i = 0; i < u; ++i)
      for (std::size_t j = 0; j < b; ++j) p.nu(i, j) = std::max(0.0, v[detail::nu_index(s, i, j)]);
    return p;
  };
  SubproblemResult out;
  if (const auto* opt_res = std::get_if<LpOptimal>(&res)) {
    out.dual = unpack(opt_res->x, DualPoint::Kind::ExtremePoint);
    out.value = opt_res->objective;
    out.power.assign(b, 0.0);
    for (std::size_t j = 0; j < b; ++j) out.power[j] = std::max(0.0, opt_res->duals[j]);
    return out;
  }
  if (const auto* unb = std::get_if<LpUnbounded>(&res)) {
    auto ray = unb->ray;
    double peak = 0.0;
    for (double v : ray) peak = std::max(peak, std::abs(v));
    if (peak > 0.0)
      for (double& v : ray) v /= peak;
    out.dual = unpack(ray, DualPoint::Kind::ExtremeRay);
    out.value = kInf;
    return out;
  }
  throw std::logic_error("dual subproblem reported infeasible although the origin is feasible");
}

/// Minimum-power vector for a complete association, from the primal
/// subproblem; nullopt when no power vector within the budget exists.
inline std::optional<PowerVector> solve_primal_power(const Scenario& s, const DemandMatrix& d,
                                                     const Association& x, double rho,
                                                     const LpOptions& opt = {}) {
  const auto lp = build_subproblem_primal(s, d, x, rho);
  const auto res = solve_lp(lp, opt);
  const auto* opt_res = std::get_if<LpOptimal>(&res);
  if (opt_res == nullptr) return std::nullopt;
  PowerVector p(s.sbs_count());
  for (std::size_t j = 0; j < p.size(); ++j)
    p[j] = std::clamp(opt_res->x[j], 0.0, s.max_power_w[j]);
  return p;
}

/// h(X) = base - sum_ij w_ij (1 - x_ij), i.e. the dual objective at X, with
/// base = -sum_j P_j mu_j + sum_ij sigma^2 gamma_i nu_ij and w_ij = nu_ij / varrho.
/// Keeping the two parts apart avoids cancelling the large 1/varrho terms
/// against the small noise terms.
struct Cut {
  enum class Type { Optimality, Feasibility };
  Type type = Type::Optimality;
  double base = 0.0;
  Matrix<double> weight;           // users x SBSs, nonnegative
  std::vector<double> row_total;   // sum_j weight(i, j)
  std::vector<double> row_min;     // min_j weight(i, j)

  /// Constant term of the affine form in x: base - sum_ij w_ij.
  double constant() const {
    double c = base;
    for (double t : row_total) c -= t;
    return c;
  }
  /// Coefficient of x_ij.
  double coefficient(std::size_t user, std::size_t sbs) const { return weight(user, sbs); }

  double evaluate(const Association& x) const {
    double h = base;
    for (std::size_t i = 0; i < weight.rows(); ++i)
      for (std::size_t j = 0; j < weight.cols(); ++j)
        if (x.serving(i) != j) h -= weight(i, j);
    return h;
  }
  /// Fractional X given as a users x SBSs matrix.
  double evaluate(const Matrix<double>& x) const {
    double h = base;
    for (std::size_t i = 0; i < weight.rows(); ++i)
      for (std::size_t j = 0; j < weight.cols(); ++j) h -= weight(i, j) * (1.0 - x(i, j));
    return h;
  }
  /// Magnitude of the terms that enter evaluate(x); used for relative tolerances.
  double scale(const Association& x) const { return std::abs(base) + (base - evaluate(x)); }

  friend bool operator==(const Cut& a, const Cut& b) {
    return a.type == b.type && a.base == b.base && a.weight == b.weight;
  }
};

inline Cut make_cut(const Scenario& s, const DemandMatrix& d, const DualPoint& p, double rho) {
  Cut c;
  c.type = p.kind == DualPoint::Kind::ExtremePoint ? Cut::Type::Optimality : Cut::Type::Feasibility;
  const std::size_t b = s.sbs_count(), u = s.user_count();
  for (std::size_t j = 0; j < b; ++j) c.base -= s.max_power_w[j] * p.mu[j];
  c.weight = Matrix<double>(u, b, 0.0);
  c.row_total.assign(u, 0.0);
  c.row_min.assign(u, kInf);
  for (std::size_t i = 0; i < u; ++i) {
    const double gamma = requested_sinr(s, d, i);
    for (std::size_t j = 0; j < b; ++j) {
      c.base += s.noise_power_w * gamma * p.nu(i, j);
      c.weight(i, j) = p.nu(i, j) / rho;
      c.row_total[i] += c.weight(i, j);
      c.row_min[i] = std::min(c.row_min[i], c.weight(i, j));
    }
  }
  return c;
}

struct MasterOptions {
  double cut_tolerance = 1e-9;  // feasibility cut slack, relative to the cut's scale
};

/// Master value of a binary association under the cuts: alpha * eta +
/// (1 - alpha) * delay with eta = max(0, optimality cuts); nullopt when a
/// feasibility cut excludes it.
inline std::optional<double> master_objective(const Matrix<double>& delay_cost,
                                              const std::vector<Cut>& cuts, double alpha,
                                              const Association& x, double* eta_out = nullptr,
                                              const MasterOptions& opt = {}) {
  double eta = 0.0, delay = 0.0;
  for (const auto& c : cuts) {
    const double h = c.evaluate(x);
    if (c.type == Cut::Type::Optimality) {
      eta = std::max(eta, h);
    } else if (h > opt.cut_tolerance * c.scale(x)) {
      return std::nullopt;
    }
  }
  for (std::size_t i = 0; i < x.user_count(); ++i) delay += delay_cost(i, x.serving(i));
  if (eta_out) *eta_out = eta;
  return alpha * eta + (1.0 - alpha) * delay;
}

struct MasterResult {
  Association x;
  double eta = 0.0;
  double value = 0.0;  // N
  std::size_t nodes = 0;
};

namespace detail {

class MasterSearch {
 public:
  MasterSearch(const Matrix<double>& cost, const std::vector<Cut>& cuts, double alpha,
               const MasterOptions& opt)
      : cost_(cost), cuts_(cuts), alpha_(alpha), opt_(opt) {
    const std::size_t u = cost.rows(), b = cost.cols();
    order_.resize(u);
    min_cost_.assign(u, kInf);
    for (std::size_t i = 0; i < u; ++i) {
      for (std::size_t j = 0; j < b; ++j) {
        order_[i].push_back(j);
        min_cost_[i] = std::min(min_cost_[i], cost(i, j));
      }
      std::stable_sort(order_[i].begin(), order_[i].end(),
                       [&](std::size_t a, std::size_t c) { return cost(i, a) < cost(i, c); });
    }
    serving_.assign(u, Association::kUnassigned);
    // cut lower bounds with every user free: base - sum_i (total_i - min_i)
    lb_.resize(cuts.size());
    for (std::size_t k = 0; k < cuts.size(); ++k) {
      lb_[k] = cuts[k].base;
      for (std::size_t i = 0; i < u; ++i) lb_[k] -= cuts[k].row_total[i] - cuts[k].row_min[i];
    }
  }

  std::optional<MasterResult> run() {
    double delay_lb = 0.0;
    for (double c : min_cost_) delay_lb += c;
    descend(0, delay_lb);
    if (!best_) return std::nullopt;
    best_->nodes = nodes_;
    return best_;
  }

 private:
  double bound(double delay_lb) const {
    double eta = 0.0;
    for (std::size_t k = 0; k < cuts_.size(); ++k)
      if (cuts_[k].type == Cut::Type::Optimality) eta = std::max(eta, lb_[k]);
    return alpha_ * eta + (1.0 - alpha_) * delay_lb;
  }

  bool excluded() const {
    for (std::size_t k = 0; k < cuts_.size(); ++k) {
      if (cuts_[k].type != Cut::Type::Feasibility) continue;
      const double scale = std::abs(cuts_[k].base) + (cuts_[k].base - lb_[k]);
      if (lb_[k] > opt_.cut_tolerance * scale) return true;
    }
    return false;
  }

  void descend(std::size_t user, double delay_lb) {
    ++nodes_;
    if (excluded()) return;
    const double bnd = bound(delay_lb);
    if (best_ && bnd >= best_->value) return;
    if (user == serving_.size()) {
      // exact re-evaluation; the running bounds carry rounding drift
      MasterResult r;
      r.x = Association(serving_, cost_.cols());
      const auto v = master_objective(cost_, cuts_, alpha_, r.x, &r.eta, opt_);
      if (!v || (best_ && *v >= best_->value)) return;
      r.value = *v;
      best_ = r;
      return;
    }
    for (std::size_t j : order_[user]) {
      const double shift_delay = cost_(user, j) - min_cost_[user];
      for (std::size_t k = 0; k < cuts_.size(); ++k)
        lb_[k] -= cuts_[k].row_min[user] - cuts_[k].weight(user, j);
      serving_[user] = j;
      descend(user + 1, delay_lb + shift_delay);
      for (std::size_t k = 0; k < cuts_.size(); ++k)
        lb_[k] += cuts_[k].row_min[user] - cuts_[k].weight(user, j);
    }
    serving_[user] = Association::kUnassigned;
  }

  const Matrix<double>& cost_;
  const std::vector<Cut>& cuts_;
  double alpha_;
  MasterOptions opt_;
  std::vector<std::vector<std::size_t>> order_;
  std::vector<double> min_cost_;
  std::vector<std::size_t> serving_;
  std::vector<double> lb_;
  std::optional<MasterResult> best_;
  std::size_t nodes_ = 0;
};

}  // namespace detail

/// Exact master over binary associations by depth-first branch and bound.
/// Users are fixed in index order, SBSs tried by ascending delay; a node's
/// bound uses, per cut, the smallest value any completion can give. Among
/// equal optima the first one found is kept.
inline MasterResult solve_master(const Scenario& s, const DemandMatrix& d, const CachePlacement& y,
                                 const std::vector<Cut>& cuts, double alpha,
                                 const MasterOptions& opt = {}) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw UsageError("alpha must lie in [0, 1]");
  for (const auto& c : cuts)
    if (c.weight.rows() != s.user_count() || c.weight.cols() != s.sbs_count())
      throw UsageError("cut shape does not match scenario");
  const auto cost = delay_cost_matrix(s, d, y);
  detail::MasterSearch search(cost, cuts, alpha, opt);
  auto res = search.run();
  if (!res) throw InfeasibleError("no feasible association exists");
  return *res;
}

/// Penalty form of the master: alpha eta + (1 - alpha) sum c_ij x_ij +
/// lambda sum_ij (x_ij - x_ij^2), for fractional x in [0, 1].
inline double rmp_penalty_value(const Scenario& s, const DemandMatrix& d, const CachePlacement& y,
                                double alpha, double lambda, double eta, const Matrix<double>& x) {
  if (x.rows() != s.user_count() || x.cols() != s.sbs_count())
    throw UsageError("association matrix shape does not match scenario");
  const auto cost = delay_cost_matrix(s, d, y);
  double delay = 0.0, penalty = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) {
      const double v = x(i, j);
      if (!(v >= 0.0 && v <= 1.0)) throw UsageError("association entries must lie in [0, 1]");
      delay += cost(i, j) * v;
      penalty += v - v * v;
    }
  return alpha * eta + (1.0 - alpha) * delay + lambda * penalty;
}

/// Smallest eta the cuts allow at a fractional x (at least 0); nullopt when a
/// feasibility cut is violated.
inline std::optional<double> cut_eta(const std::vector<Cut>& cuts, const Matrix<double>& x,
                                     const MasterOptions& opt = {}) {
  double eta = 0.0;
  for (const auto& c : cuts) {
    const double h = c.evaluate(x);
    if (c.type == Cut::Type::Optimality) {
      eta = std::max(eta, h);
    } else {
      double scale = std::abs(c.base);
      for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) scale += c.weight(i, j) * (1.0 - x(i, j));
      if (h > opt.cut_tolerance * scale) return std::nullopt;
    }
  }
  return eta;
}

/// One evaluated association: X^(r), the subproblem value at it, and its delay.
struct IterationRecord {
  Association x;
  double energy = kInf;  // M, +inf when unbounded
  double delay = 0.0;    // relaxed total delay; meaningful when x is complete
};

struct Bounds {
  double lower = -kInf;
  double upper = kInf;
  std::ptrdiff_t omega = -1;  // index into the history, -1 when no incumbent
};

/// Psi_L = N; Psi_U = min over complete, bounded records of alpha M + (1 - alpha) delay.
inline Bounds update_bounds(const std::vector<IterationRecord>& history, double master_value,
                            double alpha) {
  Bounds b;
  b.lower = master_value;
  for (std::size_t r = 0; r < history.size(); ++r) {
    const auto& h = history[r];
    if (!h.x.complete() || !std::isfinite(h.energy)) continue;
    const double v = alpha * h.energy + (1.0 - alpha) * h.delay;
    if (v < b.upper) {
      b.upper = v;
      b.omega = static_cast<std::ptrdiff_t>(r);
    }
  }
  return b;
}

struct UcwtOptions {
  double epsilon = 0.0;            // absolute gap tolerance
  double relative_epsilon = 1e-6;  // gap tolerance relative to |Psi_U|
  std::size_t max_iters = 500;
  std::optional<double> interferers;  // I in varrho
  LpOptions lp;
  MasterOptions master;
};

struct TraceRow {
  std::size_t t = 0;
  double psi_lower = -kInf;
  double psi_upper = kInf;
  bool bounded = true;  // subproblem status at X^(t-1)
  double m = 0.0;
  double n = 0.0;
  std::ptrdiff_t omega = -1;
};

struct UcwtResult {
  Association x;
  PowerVector p;
  ObjectiveValue relaxed;  // at (x, p) with relaxed delays
  ObjectiveValue exact;    // at (x, p) with Shannon-rate delays
  bool converged = false;
  double tolerance = 0.0;  // gap threshold used for the stopping test
  std::vector<TraceRow> trace;
  std::vector<Cut> cuts;
  std::vector<IterationRecord> history;
  double rho = 0.0;
};

inline double gap_tolerance(const UcwtOptions& opt, double upper) {
  return std::max(opt.epsilon, opt.relative_epsilon * std::abs(upper));
}

/// Alternates subproblem and master from X^(0) = 0 until Psi_U - Psi_L is
/// within tolerance or max_iters is reached.
inline UcwtResult ucwt(const Scenario& s, const DemandMatrix& d, const CachePlacement& y,
                       double alpha, const UcwtOptions& opt = {}) {
  s.validate();
  check_demands(s, d);
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw UsageError("alpha must lie in [0, 1]");
  if (opt.epsilon < 0.0 || opt.relative_epsilon < 0.0 || (opt.epsilon == 0.0 && opt.relative_epsilon == 0.0))
    throw UsageError("gap tolerance must be positive");
  if (opt.max_iters == 0) throw UsageError("max_iters must be positive");
  if (y.sbs_count() != s.sbs_count() || y.file_count() != s.file_count())
    throw UsageError("cache placement shape does not match scenario");

  UcwtResult out;
  out.rho = varrho(s, d, opt.interferers);
  Association x = Association::unassigned(s.user_count(), s.sbs_count());
  Bounds bounds;
  for (std::size_t t = 1; t <= opt.max_iters; ++t) {
    const auto sub = solve_subproblem(s, d, x, out.rho, opt.lp);
    IterationRecord rec{x, sub.value, x.complete() ? total_delay(s, d, y, x, DelayMode::Relaxed) : 0.0};
    out.history.push_back(rec);
    auto cut = make_cut(s, d, sub.dual, out.rho);

    TraceRow row;
    row.t = t;
    row.bounded = sub.bounded();
    row.m = sub.value;
    if (std::find(out.cuts.begin(), out.cuts.end(), cut) != out.cuts.end()) {
      // the master proposed an association it has already seen: numerical stall
      bounds = update_bounds(out.history, bounds.lower, alpha);
      row.psi_lower = bounds.lower;
      row.psi_upper = bounds.upper;
      row.n = bounds.lower;
      row.omega = bounds.omega;
      out.trace.push_back(row);
      break;
    }
    out.cuts.push_back(std::move(cut));
    const auto master = solve_master(s, d, y, out.cuts, alpha, opt.master);
    bounds = update_bounds(out.history, master.value, alpha);
    row.psi_lower = bounds.lower;
    row.psi_upper = bounds.upper;
    row.n = master.value;
    row.omega = bounds.omega;
    out.trace.push_back(row);
    out.tolerance = gap_tolerance(opt, bounds.upper);
    if (std::isfinite(bounds.upper) && bounds.upper - bounds.lower <= out.tolerance) {
      out.converged = true;
      break;
    }
    x = master.x;
  }
  if (bounds.omega < 0) throw ConvergenceError("no feasible association found within max_iters");
  out.tolerance = gap_tolerance(opt, bounds.upper);
  out.x = out.history[static_cast<std::size_t>(bounds.omega)].x;
  auto p = solve_primal_power(s, d, out.x, out.rho, opt.lp);
  if (!p) throw std::logic_error("incumbent association lost its feasible power vector");
  out.p = *p;
  out.relaxed = objective(s, d, y, out.x, out.p, alpha, DelayMode::Relaxed);
  out.exact = objective(s, d, y, out.x, out.p, alpha, DelayMode::Exact);
  return out;
}

/// CSV with one row per iteration: t, psi_lower, psi_upper, subproblem_status, M, N, omega.
inline void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& trace) {
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return std::string(buf);
  };
  os << "t,psi_lower,psi_upper,subproblem_status,M,N,omega\n";
  for (const auto& r : trace)
    os << r.t << ',' << num(r.psi_lower) << ',' << num(r.psi_upper) << ','
       << (r.bounded ? "bounded" : "unbounded") << ',' << num(r.m) << ',' << num(r.n) << ','
       << r.omega << '\n';
}

}  // namespace cachenet

#endif  // CACHENET_BENDERS_HPP
