#ifndef CACHENET_LP_HPP
#define CACHENET_LP_HPP

// Dense two-phase revised simplex with dual values, unbounded rays and Farkas
// infeasibility certificates.
//
// Dual sign convention (Lagrangian, stated for a minimisation): the optimal
// `duals` y and `bound_duals` w satisfy
//   y_r <= 0 on <= rows, y_r >= 0 on >= rows, y_r free on = rows, w_j <= 0,
//   (A^T y + w)_j <= c_j for x_j >= 0 and == c_j for free x_j,
//   c^T x == b^T y + u^T w.
// For a maximisation every sign flips (y_r >= 0 on <= rows, w_j >= 0,
// A^T y + w >= c). A Farkas certificate uses the minimisation signs with
// A^T y + w <= 0 (== 0 on free columns) and b^T y + u^T w > 0, whatever the
// objective sense.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "cachenet/matrix.hpp"
#include "cachenet/model.hpp"

namespace cachenet {

enum class Sense { Minimize, Maximize };
enum class RowSense { LessEqual, Equal, GreaterEqual };

struct LinearProgram {
  Sense sense = Sense::Minimize;
  std::vector<double> cost;
  Matrix<double> rows;  // constraints x variables
  std::vector<double> rhs;
  std::vector<RowSense> row_sense;
  std::vector<double> lower;  // 0 or -inf
  std::vector<double> upper;  // finite or +inf

  LinearProgram() = default;
  /// Nonnegative variables without upper bounds.
  LinearProgram(Sense s, std::size_t row_count, std::size_t var_count)
      : sense(s),
        cost(var_count, 0.0),
        rows(row_count, var_count, 0.0),
        rhs(row_count, 0.0),
        row_sense(row_count, RowSense::LessEqual),
        lower(var_count, 0.0),
        upper(var_count, kInf) {}

  std::size_t var_count() const noexcept { return cost.size(); }
  std::size_t row_count() const noexcept { return rhs.size(); }

  std::vector<std::string> violations() const {
    std::vector<std::string> out;
    const std::size_t n = var_count(), m = row_count();
    if (rows.rows() != m || rows.cols() != n)
      out.emplace_back("constraint matrix is " + std::to_string(rows.rows()) + "x" +
                       std::to_string(rows.cols()) + ", expected " + std::to_string(m) + "x" +
                       std::to_string(n));
    if (row_sense.size() != m) out.emplace_back("row_sense length differs from rhs length");
    if (lower.size() != n || upper.size() != n)
      out.emplace_back("bound vectors must have one entry per variable");
    for (double v : cost)
      if (!std::isfinite(v)) {
        out.emplace_back("cost vector contains a non-finite value");
        break;
      }
    for (double v : rhs)
      if (!std::isfinite(v)) {
        out.emplace_back("rhs contains a non-finite value");
        break;
      }
    for (double v : rows.data())
      if (!std::isfinite(v)) {
        out.emplace_back("constraint matrix contains a non-finite value");
        break;
      }
    for (std::size_t j = 0; j < lower.size() && j < upper.size(); ++j) {
      if (!(lower[j] == 0.0 || lower[j] == -kInf))
        out.push_back("lower bound of variable " + std::to_string(j) + " must be 0 or -inf");
      if (std::isnan(upper[j]) || upper[j] == -kInf)
        out.push_back("upper bound of variable " + std::to_string(j) + " must be finite or +inf");
    }
    return out;
  }
};

struct LpOptions {
  double optimality_tol = 1e-9;    // reduced cost, relative to the column's price scale
  double infeasibility_rel = 1e-9; // phase-1 residual relative to its starting value
  std::size_t degenerate_streak = 50;
  std::size_t refactor_every = 64;
  std::size_t max_iterations = 0;  // 0: automatic
  bool scale = true;
};

struct LpOptimal {
  std::vector<double> x;
  std::vector<double> duals;        // one per row
  std::vector<double> bound_duals;  // one per variable, zero where upper is +inf
  double objective = 0.0;
};

struct LpUnbounded {
  std::vector<double> point;
  std::vector<double> ray;
};

struct LpInfeasible {
  std::vector<double> row_multipliers;
  std::vector<double> bound_multipliers;
};

using LpResult = std::variant<LpOptimal, LpUnbounded, LpInfeasible>;

namespace detail {

inline double pow2_round(double v) { return std::exp2(std::round(std::log2(v))); }

class Simplex {
 public:
  static constexpr double kNoise = 1e-13;

  Simplex(const LinearProgram& lp, const LpOptions& opt) : lp_(lp), opt_(opt) { build(); }

  LpResult run() {
    refactor();
    if (phase1_needed_) {
      const double w0 = artificial_sum();
      set_phase1_cost();
      const auto st = iterate(true);
      if (st == Status::Unbounded) throw std::logic_error("phase 1 cannot be unbounded");
      refactor();
      const double w = artificial_sum();
      if (w > opt_.infeasibility_rel * w0) return infeasible_certificate();
      drive_out_artificials();
    }
    set_phase2_cost();
    const auto st = iterate(false);
    refactor();
    if (st == Status::Unbounded) return unbounded_result();
    return optimal_result();
  }

 private:
  enum class Status { Optimal, Unbounded };

  void build() {
    const std::size_t n0 = lp_.var_count(), m0 = lp_.row_count();
    // structural columns after splitting free variables
    for (std::size_t j = 0; j < n0; ++j) {
      origin_.push_back(j);
      sign_.push_back(1);
      if (lp_.lower[j] == -kInf) {
        origin_.push_back(j);
        sign_.push_back(-1);
      }
    }
    n_struct_ = origin_.size();

    for (std::size_t j = 0; j < n0; ++j)
      if (std::isfinite(lp_.upper[j])) bound_var_.push_back(j);
    m_ = m0 + bound_var_.size();

    Matrix<double> a(m_, n_struct_, 0.0);
    b_.assign(m_, 0.0);
    std::vector<RowSense> sense(m_, RowSense::LessEqual);
    for (std::size_t r = 0; r < m0; ++r) {
      for (std::size_t c = 0; c < n_struct_; ++c) a(r, c) = sign_[c] * lp_.rows(r, origin_[c]);
      b_[r] = lp_.rhs[r];
      sense[r] = lp_.row_sense[r];
    }
    for (std::size_t k = 0; k < bound_var_.size(); ++k) {
      const std::size_t r = m0 + k, j = bound_var_[k];
      for (std::size_t c = 0; c < n_struct_; ++c)
        if (origin_[c] == j) a(r, c) = sign_[c];
      b_[r] = lp_.upper[j];
    }
    row_sign_.assign(m_, 1);
    for (std::size_t r = 0; r < m_; ++r) {
      const bool flip = b_[r] < 0.0 || (b_[r] == 0.0 && sense[r] == RowSense::GreaterEqual);
      if (!flip) continue;
      row_sign_[r] = -1;
      b_[r] = -b_[r];
      for (std::size_t c = 0; c < n_struct_; ++c) a(r, c) = -a(r, c);
      if (sense[r] == RowSense::LessEqual)
        sense[r] = RowSense::GreaterEqual;
      else if (sense[r] == RowSense::GreaterEqual)
        sense[r] = RowSense::LessEqual;
    }

    row_scale_.assign(m_, 1.0);
    col_scale_.assign(n_struct_, 1.0);
    if (opt_.scale) equilibrate(a);
    for (std::size_t r = 0; r < m_; ++r) {
      b_[r] *= row_scale_[r];
      for (std::size_t c = 0; c < n_struct_; ++c) a(r, c) *= row_scale_[r] * col_scale_[c];
    }

    // slack / surplus / artificial columns
    std::size_t extra = 0;
    for (std::size_t r = 0; r < m_; ++r)
      extra += sense[r] == RowSense::GreaterEqual ? 2 : 1;
    n_ = n_struct_ + extra;
    a_ = Matrix<double>(m_, n_, 0.0);
    for (std::size_t r = 0; r < m_; ++r)
      for (std::size_t c = 0; c < n_struct_; ++c) a_(r, c) = a(r, c);
    artificial_.assign(n_, false);
    basis_.assign(m_, 0);
    std::size_t col = n_struct_;
    for (std::size_t r = 0; r < m_; ++r) {
      if (sense[r] == RowSense::LessEqual) {
        a_(r, col) = 1.0;
        basis_[r] = col++;
      } else {
        if (sense[r] == RowSense::GreaterEqual) a_(r, col++) = -1.0;
        a_(r, col) = 1.0;
        artificial_[col] = true;
        basis_[r] = col++;
        phase1_needed_ = true;
      }
    }
    cost_.assign(n_, 0.0);
    in_basis_.assign(n_, false);
    for (std::size_t c : basis_) in_basis_[c] = true;
    max_iter_ = opt_.max_iterations ? opt_.max_iterations : 100 * (m_ + n_) + 1000;
  }

  // Geometric-mean equilibration with power-of-two factors.
  void equilibrate(const Matrix<double>& a) {
    for (int pass = 0; pass < 6; ++pass) {
      for (std::size_t r = 0; r < m_; ++r) {
        double lo = kInf, hi = 0.0;
        for (std::size_t c = 0; c < n_struct_; ++c) {
          const double v = std::abs(a(r, c)) * col_scale_[c];
          if (v == 0.0) continue;
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
        if (hi > 0.0) row_scale_[r] = pow2_round(1.0 / std::sqrt(lo * hi));
      }
      for (std::size_t c = 0; c < n_struct_; ++c) {
        double lo = kInf, hi = 0.0;
        for (std::size_t r = 0; r < m_; ++r) {
          const double v = std::abs(a(r, c)) * row_scale_[r];
          if (v == 0.0) continue;
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
        if (hi > 0.0) col_scale_[c] = pow2_round(1.0 / std::sqrt(lo * hi));
      }
    }
  }

  void set_phase1_cost() {
    std::fill(cost_.begin(), cost_.end(), 0.0);
    for (std::size_t c = 0; c < n_; ++c)
      if (artificial_[c]) cost_[c] = 1.0;
  }

  void set_phase2_cost() {
    std::fill(cost_.begin(), cost_.end(), 0.0);
    const double s = lp_.sense == Sense::Maximize ? -1.0 : 1.0;
    for (std::size_t c = 0; c < n_struct_; ++c)
      cost_[c] = s * sign_[c] * lp_.cost[origin_[c]] * col_scale_[c];
  }

  double artificial_sum() const {
    double w = 0.0;
    for (std::size_t r = 0; r < m_; ++r)
      if (artificial_[basis_[r]]) w += std::max(0.0, xb_[r]);
    return w;
  }

  void refactor() {
    Matrix<double> bm(m_, 2 * m_, 0.0);
    for (std::size_t r = 0; r < m_; ++r) {
      for (std::size_t k = 0; k < m_; ++k) bm(r, k) = a_(r, basis_[k]);
      bm(r, m_ + r) = 1.0;
    }
    for (std::size_t k = 0; k < m_; ++k) {
      std::size_t piv = k;
      for (std::size_t r = k + 1; r < m_; ++r)
        if (std::abs(bm(r, k)) > std::abs(bm(piv, k))) piv = r;
      if (bm(piv, k) == 0.0) throw std::runtime_error("simplex basis became singular");
      if (piv != k)
        for (std::size_t c = 0; c < 2 * m_; ++c) std::swap(bm(k, c), bm(piv, c));
      const double d = bm(k, k);
      for (std::size_t c = 0; c < 2 * m_; ++c) bm(k, c) /= d;
      for (std::size_t r = 0; r < m_; ++r) {
        if (r == k || bm(r, k) == 0.0) continue;
        const double f = bm(r, k);
        for (std::size_t c = 0; c < 2 * m_; ++c) bm(r, c) -= f * bm(k, c);
      }
    }
    binv_ = Matrix<double>(m_, m_);
    for (std::size_t r = 0; r < m_; ++r)
      for (std::size_t c = 0; c < m_; ++c) binv_(r, c) = bm(r, m_ + c);
    xb_.assign(m_, 0.0);
    for (std::size_t r = 0; r < m_; ++r)
      for (std::size_t c = 0; c < m_; ++c) xb_[r] += binv_(r, c) * b_[c];
    since_refactor_ = 0;
  }

  std::vector<double> prices() const {
    std::vector<double> y(m_, 0.0);
    for (std::size_t k = 0; k < m_; ++k) {
      const double cb = cost_[basis_[k]];
      if (cb == 0.0) continue;
      for (std::size_t c = 0; c < m_; ++c) y[c] += cb * binv_(k, c);
    }
    return y;
  }

  std::vector<double> column(std::size_t q) const {
    std::vector<double> alpha(m_, 0.0);
    for (std::size_t r = 0; r < m_; ++r) {
      double s = 0.0;
      for (std::size_t c = 0; c < m_; ++c) s += binv_(r, c) * a_(c, q);
      alpha[r] = s;
    }
    return alpha;
  }

  void pivot(std::size_t r, std::size_t q, const std::vector<double>& alpha) {
    const double theta = std::max(0.0, xb_[r]) / alpha[r];
    for (std::size_t i = 0; i < m_; ++i)
      if (i != r) xb_[i] -= theta * alpha[i];
    xb_[r] = theta;
    const double piv = alpha[r];
    for (std::size_t c = 0; c < m_; ++c) binv_(r, c) /= piv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || alpha[i] == 0.0) continue;
      const double f = alpha[i];
      for (std::size_t c = 0; c < m_; ++c) binv_(i, c) -= f * binv_(r, c);
    }
    in_basis_[basis_[r]] = false;
    basis_[r] = q;
    in_basis_[q] = true;
    if (++since_refactor_ >= opt_.refactor_every) refactor();
  }

  Status iterate(bool phase1) {
    std::size_t streak = 0;
    for (std::size_t it = 0; it < max_iter_; ++it) {
      const bool bland = streak >= opt_.degenerate_streak;
      const auto y = prices();
      double ymax = 0.0;
      for (double v : y) ymax = std::max(ymax, std::abs(v));
      std::size_t q = n_;
      double best = 0.0;
      for (std::size_t c = 0; c < n_; ++c) {
        if (in_basis_[c] || (!phase1 && artificial_[c])) continue;
        double dot = 0.0, mag = std::abs(cost_[c]), colsum = 0.0;
        for (std::size_t r = 0; r < m_; ++r) {
          const double t = y[r] * a_(r, c);
          dot += t;
          mag += std::abs(t);
          colsum += std::abs(a_(r, c));
        }
        const double d = cost_[c] - dot;
        if (!(d < -opt_.optimality_tol * mag)) continue;
        // rounding noise in the prices themselves
        if (!(d < -kNoise * (std::abs(cost_[c]) + ymax * colsum))) continue;
        if (bland) {
          q = c;
          break;
        }
        if (d < best) {
          best = d;
          q = c;
        }
      }
      if (q == n_) return Status::Optimal;

      const auto alpha = column(q);
      double amax = 0.0;
      for (double v : alpha) amax = std::max(amax, std::abs(v));
      const double piv_tol = std::max(1e-11, 1e-9 * amax);
      std::size_t leave = m_;
      double ratio = kInf;
      for (std::size_t r = 0; r < m_; ++r) {
        double rr;
        if (!phase1 && artificial_[basis_[r]] && std::abs(alpha[r]) > piv_tol) {
          rr = 0.0;  // artificial stuck at zero must leave before it moves
        } else if (alpha[r] > piv_tol) {
          rr = std::max(0.0, xb_[r]) / alpha[r];
        } else {
          continue;
        }
        bool take = false;
        if (leave == m_ || rr < ratio * (1.0 - 1e-12)) {
          take = true;
        } else if (rr <= ratio * (1.0 + 1e-9)) {
          take = bland ? basis_[r] < basis_[leave] : std::abs(alpha[r]) > std::abs(alpha[leave]);
        }
        if (take) {
          leave = r;
          ratio = std::min(ratio, rr);
        }
      }
      if (leave == m_) {
        entering_ = q;
        ray_alpha_ = alpha;
        return Status::Unbounded;
      }
      if (artificial_[basis_[leave]] && !phase1 && alpha[leave] < 0.0) {
        // negative pivot on an artificial at zero keeps the step at zero
        xb_[leave] = 0.0;
      }
      const double step = std::max(0.0, xb_[leave]) / alpha[leave];
      streak = step > 0.0 ? 0 : streak + 1;
      pivot(leave, q, alpha);
    }
    throw std::runtime_error("simplex iteration limit reached");
  }

  void drive_out_artificials() {
    for (std::size_t r = 0; r < m_; ++r) {
      if (!artificial_[basis_[r]]) continue;
      std::size_t q = n_;
      double best = 0.0;
      for (std::size_t c = 0; c < n_; ++c) {
        if (in_basis_[c] || artificial_[c]) continue;
        double v = 0.0;
        for (std::size_t k = 0; k < m_; ++k) v += binv_(r, k) * a_(k, c);
        if (std::abs(v) > best) {
          best = std::abs(v);
          q = c;
        }
      }
      if (q == n_ || best < 1e-9) continue;  // redundant row
      auto alpha = column(q);
      xb_[r] = 0.0;
      pivot(r, q, alpha);
    }
    refactor();
    for (std::size_t r = 0; r < m_; ++r)
      if (artificial_[basis_[r]]) xb_[r] = 0.0;
  }

  std::vector<double> scaled_point() const {
    std::vector<double> x(n_, 0.0);
    for (std::size_t r = 0; r < m_; ++r) x[basis_[r]] = std::max(0.0, xb_[r]);
    return x;
  }

  std::vector<double> to_original(const std::vector<double>& xs) const {
    std::vector<double> x(lp_.var_count(), 0.0);
    for (std::size_t c = 0; c < n_struct_; ++c) x[origin_[c]] += sign_[c] * col_scale_[c] * xs[c];
    return x;
  }

  // z_r = R_r s_r yhat_r, split into original rows and upper-bound rows.
  void map_duals(const std::vector<double>& yhat, double flip, std::vector<double>& rows,
                 std::vector<double>& bounds) const {
    const std::size_t m0 = lp_.row_count();
    rows.assign(m0, 0.0);
    bounds.assign(lp_.var_count(), 0.0);
    for (std::size_t r = 0; r < m_; ++r) {
      const double z = flip * row_scale_[r] * row_sign_[r] * yhat[r];
      if (r < m0)
        rows[r] = z;
      else
        bounds[bound_var_[r - m0]] = z;
    }
  }

  LpResult optimal_result() const {
    LpOptimal out;
    out.x = to_original(scaled_point());
    const double flip = lp_.sense == Sense::Maximize ? -1.0 : 1.0;
    map_duals(prices(), flip, out.duals, out.bound_duals);
    for (std::size_t j = 0; j < out.x.size(); ++j) out.objective += lp_.cost[j] * out.x[j];
    return out;
  }

  LpResult unbounded_result() const {
    LpUnbounded out;
    out.point = to_original(scaled_point());
    std::vector<double> d(n_, 0.0);
    d[entering_] = 1.0;
    for (std::size_t r = 0; r < m_; ++r) d[basis_[r]] = -ray_alpha_[r];
    out.ray = to_original(d);
    return out;
  }

  LpResult infeasible_certificate() const {
    LpInfeasible out;
    map_duals(prices(), 1.0, out.row_multipliers, out.bound_multipliers);
    return out;
  }

  const LinearProgram& lp_;
  LpOptions opt_;
  std::size_t m_ = 0, n_ = 0, n_struct_ = 0, max_iter_ = 0, since_refactor_ = 0;
  std::vector<std::size_t> origin_;
  std::vector<int> sign_;
  std::vector<std::size_t> bound_var_;
  std::vector<int> row_sign_;
  std::vector<double> row_scale_, col_scale_;
  Matrix<double> a_;
  std::vector<double> b_, cost_;
  std::vector<bool> artificial_, in_basis_;
  std::vector<std::size_t> basis_;
  Matrix<double> binv_;
  std::vector<double> xb_;
  bool phase1_needed_ = false;
  std::size_t entering_ = 0;
  std::vector<double> ray_alpha_;
};

}  // namespace detail

inline LpResult solve_lp(const LinearProgram& lp, const LpOptions& opt = {}) {
  const auto v = lp.violations();
  if (!v.empty()) {
    std::string msg = "invalid linear program:";
    for (const auto& s : v) msg += "\n  - " + s;
    throw UsageError(msg);
  }
  detail::Simplex solver(lp, opt);
  return solver.run();
}

/// Plain-text dump in a fixed order: sense, sizes, cost, one line per row
/// (sense, rhs, coefficients), lower bounds, upper bounds.
inline void write_lp(std::ostream& os, const LinearProgram& lp) {
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  os << "sense " << (lp.sense == Sense::Minimize ? "min" : "max") << '\n';
  os << "vars " << lp.var_count() << '\n' << "rows " << lp.row_count() << '\n';
  os << "cost";
  for (double c : lp.cost) os << ' ' << num(c);
  os << '\n';
  for (std::size_t r = 0; r < lp.row_count(); ++r) {
    const char* s = lp.row_sense[r] == RowSense::LessEqual ? "<="
                    : lp.row_sense[r] == RowSense::Equal   ? "="
                                                           : ">=";
    os << "row " << s << ' ' << num(lp.rhs[r]) << " :";
    for (std::size_t c = 0; c < lp.var_count(); ++c) os << ' ' << num(lp.rows(r, c));
    os << '\n';
  }
  os << "lower";
  for (double v : lp.lower) os << ' ' << num(v);
  os << "\nupper";
  for (double v : lp.upper) os << ' ' << num(v);
  os << '\n';
}

}  // namespace cachenet

#endif  // CACHENET_LP_HPP
