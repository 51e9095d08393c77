#ifndef CACHENET_MODEL_HPP
#define CACHENET_MODEL_HPP

// Domain types and the physical / objective formulas of a cache-enabled dense
// small-cell network: SINR, Shannon rate, end-to-end delivery delay, serving
// time, the weighted energy-delay objective and its feasibility constraints.
//
// All quantities are linear-scale SI. File sizes are bytes and are converted
// to bits wherever they meet a rate.

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cachenet/matrix.hpp"

namespace cachenet {

/// Caller passed arguments that violate a documented precondition.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// No association / power vector satisfies the constraints.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kBitsPerByte = 8.0;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

inline double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

using PowerVector = std::vector<double>;

/// One network instance. Treated as immutable once validated; every
/// algorithm takes it by const reference.
struct Scenario {
  std::vector<Point> sbs_positions;
  std::vector<Point> user_positions;

  std::vector<double> max_power_w;           // per SBS
  std::vector<double> cache_capacity_bytes;  // per SBS
  std::vector<double> backhaul_mean_s;       // per SBS, mean of the exponential backhaul delay
  std::vector<double> load_coefficients;     // per SBS, sums to 1

  std::vector<double> file_size_bytes;  // per file
  std::vector<double> sinr_threshold;   // per file, linear

  double bandwidth_hz = 200e3;
  double noise_power_w = 0.0;
  double pathloss_exponent = 3.0;
  double alpha = 0.5;
  double central_zone_radius_m = 25.0;

  Matrix<double> gains;  // users x SBSs

  std::size_t sbs_count() const noexcept { return sbs_positions.size(); }
  std::size_t user_count() const noexcept { return user_positions.size(); }
  std::size_t file_count() const noexcept { return file_size_bytes.size(); }

  double gain(std::size_t user, std::size_t sbs) const { return gains(user, sbs); }

  /// R_k = W log2(1 + gamma_k), bits/s.
  double rate_requirement(std::size_t file) const {
    return bandwidth_hz * std::log2(1.0 + sinr_threshold.at(file));
  }

  /// Wireless transmission time of a file at exactly its required rate.
  double relaxed_transmission_time(std::size_t file) const {
    return kBitsPerByte * file_size_bytes.at(file) / rate_requirement(file);
  }

  /// Human-readable list of broken invariants; empty when valid.
  std::vector<std::string> violations() const;

  void validate() const {
    const auto v = violations();
    if (v.empty()) return;
    std::ostringstream os;
    os << "invalid scenario:";
    for (const auto& s : v) os << "\n  - " << s;
    throw UsageError(os.str());
  }

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Path-loss gain d^-kappa with the distance floored at `min_distance_m`.
inline double pathloss_gain(double distance_m, double kappa, double min_distance_m = 1.0) {
  return std::pow(std::max(distance_m, min_distance_m), -kappa);
}

/// Fills `s.gains` from positions and the path-loss exponent.
inline void compute_gains(Scenario& s, double min_distance_m = 1.0) {
  s.gains = Matrix<double>(s.user_count(), s.sbs_count());
  for (std::size_t i = 0; i < s.user_count(); ++i)
    for (std::size_t j = 0; j < s.sbs_count(); ++j)
      s.gains(i, j) = pathloss_gain(distance(s.user_positions[i], s.sbs_positions[j]),
                                    s.pathloss_exponent, min_distance_m);
}

inline std::vector<std::string> Scenario::violations() const {
  std::vector<std::string> out;
  const std::size_t b = sbs_count(), u = user_count(), f = file_count();
  if (b == 0) out.emplace_back("sbs_count must be positive");
  if (u == 0) out.emplace_back("user_count must be positive");
  if (f == 0) out.emplace_back("file_count must be positive");
  auto per_sbs = [&](const std::vector<double>& v, const char* name, bool strictly_positive) {
    if (v.size() != b) {
      out.push_back(std::string(name) + " must have one entry per SBS");
      return;
    }
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (!std::isfinite(v[j]) || v[j] < 0.0 || (strictly_positive && v[j] == 0.0))
        out.push_back(std::string(name) + "[" + std::to_string(j) + "] out of range");
    }
  };
  per_sbs(max_power_w, "max_power_w", true);
  per_sbs(cache_capacity_bytes, "cache_capacity_bytes", false);
  per_sbs(backhaul_mean_s, "backhaul_mean_s", false);
  per_sbs(load_coefficients, "load_coefficients", true);
  if (load_coefficients.size() == b && b > 0) {
    double sum = 0.0;
    for (double v : load_coefficients) sum += v;
    if (std::abs(sum - 1.0) > 1e-9) out.emplace_back("load_coefficients must sum to 1");
  }
  if (sinr_threshold.size() != f) out.emplace_back("sinr_threshold must have one entry per file");
  for (std::size_t k = 0; k < f; ++k) {
    if (!(file_size_bytes[k] > 0.0) || !std::isfinite(file_size_bytes[k]))
      out.push_back("file_size_bytes[" + std::to_string(k) + "] must be positive");
    if (k < sinr_threshold.size() &&
        (!(sinr_threshold[k] > 0.0) || !std::isfinite(sinr_threshold[k])))
      out.push_back("sinr_threshold[" + std::to_string(k) + "] must be positive");
  }
  if (!(bandwidth_hz > 0.0)) out.emplace_back("bandwidth_hz must be positive");
  if (!(noise_power_w > 0.0)) out.emplace_back("noise_power_w must be positive");
  if (!(pathloss_exponent >= 2.0 && pathloss_exponent <= 5.0))
    out.emplace_back("pathloss_exponent must lie in [2, 5]");
  if (!(alpha >= 0.0 && alpha <= 1.0)) out.emplace_back("alpha must lie in [0, 1]");
  if (!(central_zone_radius_m >= 0.0)) out.emplace_back("central_zone_radius_m must be >= 0");
  if (gains.rows() != u || gains.cols() != b) {
    out.emplace_back("gains must be user_count x sbs_count");
  } else {
    for (double g : gains.data())
      if (!(g > 0.0) || !std::isfinite(g)) {
        out.emplace_back("gains must be finite and positive");
        break;
      }
  }
  return out;
}

/// theta: which file each user requests. Each user requests exactly one file,
/// so the binary U x F matrix is stored as one file index per user.
struct DemandMatrix {
  std::vector<std::size_t> requested;

  std::size_t user_count() const noexcept { return requested.size(); }
  std::size_t file_of(std::size_t user) const { return requested.at(user); }
  int theta(std::size_t user, std::size_t file) const {
    return requested.at(user) == file ? 1 : 0;
  }

  friend bool operator==(const DemandMatrix&, const DemandMatrix&) = default;
};

/// Threshold of the file requested by `user` (gamma_{f_i}).
inline double requested_sinr(const Scenario& s, const DemandMatrix& d, std::size_t user) {
  return s.sinr_threshold.at(d.file_of(user));
}

inline void check_demands(const Scenario& s, const DemandMatrix& d) {
  if (d.user_count() != s.user_count())
    throw UsageError("demand matrix has " + std::to_string(d.user_count()) + " rows, expected " +
                     std::to_string(s.user_count()));
  for (std::size_t i = 0; i < d.user_count(); ++i)
    if (d.requested[i] >= s.file_count())
      throw UsageError("user " + std::to_string(i) + " requests unknown file");
}

/// x: serving SBS per user. A user may be unassigned, which represents an
/// all-zero row (the starting point of the decomposition).
class Association {
 public:
  static constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);

  Association() = default;
  Association(std::vector<std::size_t> serving, std::size_t sbs_count)
      : serving_(std::move(serving)), sbs_count_(sbs_count) {
    for (std::size_t j : serving_)
      if (j != kUnassigned && j >= sbs_count_) throw UsageError("association index out of range");
  }

  static Association unassigned(std::size_t users, std::size_t sbs_count) {
    return Association(std::vector<std::size_t>(users, kUnassigned), sbs_count);
  }

  std::size_t user_count() const noexcept { return serving_.size(); }
  std::size_t sbs_count() const noexcept { return sbs_count_; }
  std::size_t serving(std::size_t user) const { return serving_.at(user); }
  const std::vector<std::size_t>& serving() const noexcept { return serving_; }

  int x(std::size_t user, std::size_t sbs) const { return serving_.at(user) == sbs ? 1 : 0; }

  /// Every row sums to exactly one.
  bool complete() const {
    for (std::size_t j : serving_)
      if (j == kUnassigned) return false;
    return true;
  }

  void assign(std::size_t user, std::size_t sbs) {
    if (sbs != kUnassigned && sbs >= sbs_count_) throw UsageError("association index out of range");
    serving_.at(user) = sbs;
  }

  Matrix<double> as_matrix() const {
    Matrix<double> m(serving_.size(), sbs_count_, 0.0);
    for (std::size_t i = 0; i < serving_.size(); ++i)
      if (serving_[i] != kUnassigned) m(i, serving_[i]) = 1.0;
    return m;
  }

  friend bool operator==(const Association&, const Association&) = default;
  friend auto operator<=>(const Association& a, const Association& b) {
    return a.serving_ <=> b.serving_;
  }

 private:
  std::vector<std::size_t> serving_;
  std::size_t sbs_count_ = 0;
};

/// Capacity test with a relative slack for summation order.
inline bool fits_capacity(double used, double capacity) {
  return used <= capacity + 1e-12 * std::abs(capacity);
}

/// y: binary SBS x file cache indicator.
class CachePlacement {
 public:
  CachePlacement() = default;
  CachePlacement(std::size_t sbs_count, std::size_t file_count)
      : cached_(sbs_count, file_count, 0) {}

  std::size_t sbs_count() const noexcept { return cached_.rows(); }
  std::size_t file_count() const noexcept { return cached_.cols(); }

  bool cached(std::size_t sbs, std::size_t file) const { return cached_.at(sbs, file) != 0; }
  void set(std::size_t sbs, std::size_t file, bool value = true) {
    cached_.at(sbs, file) = value ? 1 : 0;
  }

  double bytes_used(const Scenario& s, std::size_t sbs) const {
    double total = 0.0;
    for (std::size_t k = 0; k < file_count(); ++k)
      if (cached(sbs, k)) total += s.file_size_bytes[k];
    return total;
  }

  bool within_capacity(const Scenario& s) const {
    for (std::size_t j = 0; j < sbs_count(); ++j)
      if (!fits_capacity(bytes_used(s, j), s.cache_capacity_bytes[j])) return false;
    return true;
  }

  friend bool operator==(const CachePlacement&, const CachePlacement&) = default;

 private:
  Matrix<std::uint8_t> cached_;
};

enum class DelayMode { Exact, Relaxed };

inline void check_indices(const Scenario& s, std::size_t user, std::size_t sbs) {
  if (user >= s.user_count()) throw UsageError("user index out of range");
  if (sbs >= s.sbs_count()) throw UsageError("SBS index out of range");
}

/// gamma_ij = p_j g_ij / (sum_{l != j} p_l g_il + sigma^2).
inline double sinr(const Scenario& s, const PowerVector& p, std::size_t user, std::size_t sbs) {
  check_indices(s, user, sbs);
  if (p.size() != s.sbs_count()) throw UsageError("power vector has wrong length");
  double interference = 0.0;
  for (std::size_t l = 0; l < s.sbs_count(); ++l)
    if (l != sbs) interference += p[l] * s.gains(user, l);
  return p[sbs] * s.gains(user, sbs) / (interference + s.noise_power_w);
}

/// r_ij = W log2(1 + gamma_ij), bits/s.
inline double rate(const Scenario& s, const PowerVector& p, std::size_t user, std::size_t sbs) {
  return s.bandwidth_hz * std::log2(1.0 + sinr(s, p, user, sbs));
}

/// d_ij^k with the deterministic backhaul mean D_j on a cache miss. Exact
/// mode needs the power vector to evaluate r_ij; relaxed mode uses R_k.
inline double delivery_delay(const Scenario& s, const CachePlacement& y, std::size_t user,
                             std::size_t sbs, std::size_t file, DelayMode mode,
                             const PowerVector* p = nullptr) {
  check_indices(s, user, sbs);
  if (file >= s.file_count()) throw UsageError("file index out of range");
  double tau = 0.0;
  if (mode == DelayMode::Relaxed) {
    tau = s.relaxed_transmission_time(file);
  } else {
    if (p == nullptr) throw UsageError("exact delivery delay needs a power vector");
    const double r = rate(s, *p, user, sbs);
    if (!(r > 0.0)) throw UsageError("zero rate, delay undefined");
    tau = kBitsPerByte * s.file_size_bytes[file] / r;
  }
  return tau + (y.cached(sbs, file) ? 0.0 : s.backhaul_mean_s[sbs]);
}

/// Association-independent total transmission time D = sum_i s_{f_i} / R_{f_i}.
inline double total_relaxed_transmission_time(const Scenario& s, const DemandMatrix& d) {
  double total = 0.0;
  for (std::size_t i = 0; i < d.user_count(); ++i) total += s.relaxed_transmission_time(d.file_of(i));
  return total;
}

/// T_j: exact mode sums per-user wireless time over users served by j;
/// relaxed mode is beta_j * D.
inline std::vector<double> serving_time(const Scenario& s, const DemandMatrix& d,
                                        const Association& x, DelayMode mode,
                                        const PowerVector* p = nullptr) {
  std::vector<double> t(s.sbs_count(), 0.0);
  if (mode == DelayMode::Relaxed) {
    const double total = total_relaxed_transmission_time(s, d);
    for (std::size_t j = 0; j < s.sbs_count(); ++j) t[j] = s.load_coefficients[j] * total;
    return t;
  }
  if (p == nullptr) throw UsageError("exact serving time needs a power vector");
  for (std::size_t i = 0; i < x.user_count(); ++i) {
    const std::size_t j = x.serving(i);
    if (j == Association::kUnassigned) continue;
    const double r = rate(s, *p, i, j);
    if (!(r > 0.0)) throw UsageError("zero rate, delay undefined");
    t[j] += kBitsPerByte * s.file_size_bytes[d.file_of(i)] / r;
  }
  return t;
}

/// Relaxed delivery delay of every (user, SBS) pair for the user's own file.
inline Matrix<double> delay_cost_matrix(const Scenario& s, const DemandMatrix& d,
                                        const CachePlacement& y) {
  Matrix<double> c(s.user_count(), s.sbs_count());
  for (std::size_t i = 0; i < s.user_count(); ++i)
    for (std::size_t j = 0; j < s.sbs_count(); ++j)
      c(i, j) = delivery_delay(s, y, i, j, d.file_of(i), DelayMode::Relaxed);
  return c;
}

struct ObjectiveValue {
  double energy = 0.0;    // joules
  double delay = 0.0;     // seconds, summed over users
  double weighted = 0.0;  // alpha * energy + (1 - alpha) * delay
};

/// Total delivery delay sum_i d_i for a complete association.
inline double total_delay(const Scenario& s, const DemandMatrix& d, const CachePlacement& y,
                          const Association& x, DelayMode mode, const PowerVector* p = nullptr) {
  double total = 0.0;
  for (std::size_t i = 0; i < x.user_count(); ++i) {
    const std::size_t j = x.serving(i);
    if (j == Association::kUnassigned) continue;
    total += delivery_delay(s, y, i, j, d.file_of(i), mode, p);
  }
  return total;
}

inline ObjectiveValue objective(const Scenario& s, const DemandMatrix& d, const CachePlacement& y,
                                const Association& x, const PowerVector& p, double alpha,
                                DelayMode mode) {
  if (p.size() != s.sbs_count()) throw UsageError("power vector has wrong length");
  const auto t = serving_time(s, d, x, mode, &p);
  ObjectiveValue v;
  for (std::size_t j = 0; j < s.sbs_count(); ++j) v.energy += p[j] * t[j];
  v.delay = total_delay(s, d, y, x, mode, &p);
  v.weighted = alpha * v.energy + (1.0 - alpha) * v.delay;
  return v;
}

struct Violation {
  enum class Kind { PowerBound, Sinr, Association };
  Kind kind;
  std::size_t user = 0;  // meaningful for Sinr / Association
  std::size_t sbs = 0;   // meaningful for PowerBound / Sinr
  double value = 0.0;
  double bound = 0.0;

  std::string describe() const {
    std::ostringstream os;
    switch (kind) {
      case Kind::PowerBound:
        os << "power of SBS " << sbs << " is " << value << " W, outside [0, " << bound << "]";
        break;
      case Kind::Sinr:
        os << "SINR of user " << user << " at SBS " << sbs << " is " << value
           << ", below threshold " << bound;
        break;
      case Kind::Association:
        os << "user " << user << " is not associated with exactly one SBS";
        break;
    }
    return os.str();
  }
};

/// First violated constraint among power bounds, association rows and the
/// SINR requirement of each user at its serving SBS; nullopt when feasible.
/// `rel_tol` is applied relative to each bound.
inline std::optional<Violation> check_feasible(const Scenario& s, const DemandMatrix& d,
                                               const Association& x, const PowerVector& p,
                                               double rel_tol = 1e-7) {
  if (p.size() != s.sbs_count()) throw UsageError("power vector has wrong length");
  if (x.user_count() != s.user_count() || x.sbs_count() != s.sbs_count())
    throw UsageError("association shape does not match scenario");
  for (std::size_t j = 0; j < s.sbs_count(); ++j) {
    const double pmax = s.max_power_w[j];
    if (!(p[j] >= 0.0) || p[j] > pmax * (1.0 + rel_tol))
      return Violation{Violation::Kind::PowerBound, 0, j, p[j], pmax};
  }
  for (std::size_t i = 0; i < x.user_count(); ++i)
    if (x.serving(i) == Association::kUnassigned)
      return Violation{Violation::Kind::Association, i, 0, 0.0, 1.0};
  for (std::size_t i = 0; i < x.user_count(); ++i) {
    const std::size_t j = x.serving(i);
    const double need = requested_sinr(s, d, i);
    const double got = sinr(s, p, i, j);
    if (got < need * (1.0 - rel_tol)) return Violation{Violation::Kind::Sinr, i, j, got, need};
  }
  return std::nullopt;
}

}  // namespace cachenet

#endif  // CACHENET_MODEL_HPP
