#ifndef CACHENET_EXPERIMENTS_HPP
#define CACHENET_EXPERIMENTS_HPP

// Experiment drivers behind the CLI: single solves, alpha sweeps, caching
// policy and algorithm comparisons. Every driver returns plain rows; callers
// write them with CsvWriter.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cachenet/baselines.hpp"
#include "cachenet/benders.hpp"
#include "cachenet/oracle.hpp"
#include "cachenet/placement.hpp"
#include "cachenet/popularity.hpp"
#include "cachenet/scenario.hpp"

namespace cachenet {

/// RFC-4180 CSV with numbers printed to 9 significant digits.
class CsvWriter {
 public:
  CsvWriter(std::ostream& os, const std::vector<std::string>& header) : os_(os), width_(header.size()) {
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (c) os_ << ',';
      os_ << quote(header[c]);
    }
    os_ << '\n';
  }

  struct Cell {
    std::string text;
    Cell(const std::string& s) : text(quote(s)) {}
    Cell(const char* s) : text(quote(s)) {}
    Cell(double v) : text(number(v)) {}
    Cell(std::size_t v) : text(std::to_string(v)) {}
    Cell(int v) : text(std::to_string(v)) {}
    Cell(bool v) : text(v ? "true" : "false") {}
  };

  void row(const std::vector<Cell>& cells) {
    if (cells.size() != width_) throw std::logic_error("CSV row width does not match header");
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c) os_ << ',';
      os_ << cells[c].text;
    }
    os_ << '\n';
  }

  static std::string number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
  }

  static std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
      if (ch == '"') out += '"';
      out += ch;
    }
    return out + '"';
  }

 private:
  std::ostream& os_;
  std::size_t width_;
};

/// Runs fn(0..count-1) on up to `threads` workers (0: hardware concurrency).
/// The first exception thrown by a task is rethrown after all workers stop.
inline void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t n = 0; n < count; ++n) fn(n);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t n = next++; n < count; n = next++) {
        try {
          fn(n);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!error) error = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

enum class Algorithm { Ucwt, Doa, Ema, Oracle };
enum class CachePolicy { Lpf, Gpc, Rc };

inline std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Ucwt: return "ucwt";
    case Algorithm::Doa: return "doa";
    case Algorithm::Ema: return "ema";
    case Algorithm::Oracle: return "oracle";
  }
  return "?";
}

inline std::string to_string(CachePolicy p) {
  switch (p) {
    case CachePolicy::Lpf: return "lpf";
    case CachePolicy::Gpc: return "gpc";
    case CachePolicy::Rc: return "rc";
  }
  return "?";
}

inline Algorithm parse_algorithm(const std::string& name) {
  for (auto a : {Algorithm::Ucwt, Algorithm::Doa, Algorithm::Ema, Algorithm::Oracle})
    if (to_string(a) == name) return a;
  throw UsageError("unknown algorithm '" + name + "' (expected ucwt, doa, ema or oracle)");
}

inline CachePolicy parse_policy(const std::string& name) {
  for (auto p : {CachePolicy::Lpf, CachePolicy::Gpc, CachePolicy::Rc})
    if (to_string(p) == name) return p;
  throw UsageError("unknown caching policy '" + name + "' (expected lpf, gpc or rc)");
}

inline CachePlacement place(const Instance& inst, CachePolicy policy, std::uint64_t seed) {
  const auto& s = inst.scenario;
  switch (policy) {
    case CachePolicy::Lpf: return lpf_greedy(s, local_popularity(s, inst.preferences)).placement;
    case CachePolicy::Gpc: return gpc_placement(s);
    case CachePolicy::Rc: return rc_placement(s, seed);
  }
  throw UsageError("unknown caching policy");
}

struct RunResult {
  Algorithm algorithm = Algorithm::Ucwt;
  double alpha = 0.0;
  Association x;
  PowerVector p;
  ObjectiveValue relaxed;
  ObjectiveValue exact;
  bool converged = true;
  std::size_t iterations = 0;  // UCWT only
  std::vector<TraceRow> trace;
};

/// Solves one instance. Throws InfeasibleError when no feasible association
/// exists and ConvergenceError when UCWT finds no incumbent.
inline RunResult run_algorithm(const Instance& inst, const CachePlacement& y, Algorithm alg, double alpha,
                               const UcwtOptions& opt = {}) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw UsageError("alpha must lie in [0, 1]");
  const auto& s = inst.scenario;
  const auto& d = inst.demands;
  RunResult r;
  r.algorithm = alg;
  r.alpha = alpha;
  auto finish = [&](const Solution& sol) {
    r.x = sol.x;
    r.p = sol.p;
    r.relaxed = objective(s, d, y, r.x, r.p, alpha, DelayMode::Relaxed);
    r.exact = objective(s, d, y, r.x, r.p, alpha, DelayMode::Exact);
  };
  switch (alg) {
    case Algorithm::Ucwt: {
      auto u = ucwt(s, d, y, alpha, opt);
      r.x = u.x;
      r.p = u.p;
      r.relaxed = u.relaxed;
      r.exact = u.exact;
      r.converged = u.converged;
      r.iterations = u.trace.size();
      r.trace = std::move(u.trace);
      break;
    }
    case Algorithm::Doa: finish(doa(s, d, y, opt.lp)); break;
    case Algorithm::Ema: finish(ema(s, d, opt.lp)); break;
    case Algorithm::Oracle: {
      OracleOptions o;
      o.lp = opt.lp;
      const auto res = brute_force(s, d, y, alpha, o);
      if (!res) throw InfeasibleError("no feasible association exists");
      finish({res->x, res->p});
      break;
    }
  }
  return r;
}

inline std::string join_serving(const Association& x) {
  std::string out;
  for (std::size_t i = 0; i < x.user_count(); ++i) out += (i ? " " : "") + std::to_string(x.serving(i));
  return out;
}

inline std::string join_numbers(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + CsvWriter::number(v[i]);
  return out;
}

inline const std::vector<std::string>& solve_header() {
  static const std::vector<std::string> h = {
      "algorithm",     "alpha",         "converged",    "iterations",         "energy_joules",
      "delay_seconds", "weighted",      "exact_energy_joules", "exact_delay_seconds", "exact_weighted",
      "serving_sbs",   "power_w"};
  return h;
}

inline void write_solve_row(CsvWriter& w, const RunResult& r) {
  w.row({to_string(r.algorithm), r.alpha, r.converged, r.iterations, r.relaxed.energy, r.relaxed.delay,
         r.relaxed.weighted, r.exact.energy, r.exact.delay, r.exact.weighted, join_serving(r.x),
         join_numbers(r.p)});
}

/// Mean delay over `samples` draws of exponential backhaul delays with the
/// instance's means; wireless times follow `mode`.
inline double sampled_delay(const Scenario& s, const DemandMatrix& d, const CachePlacement& y,
                            const Association& x, const PowerVector& p, std::size_t samples,
                            std::uint64_t seed, DelayMode mode = DelayMode::Relaxed) {
  if (samples == 0) throw UsageError("need at least one backhaul sample");
  Rng rng(seed);
  double wireless = 0.0;
  std::vector<std::size_t> misses;
  for (std::size_t i = 0; i < x.user_count(); ++i) {
    const std::size_t j = x.serving(i), f = d.file_of(i);
    wireless += delivery_delay(s, y, i, j, f, mode, &p) - (y.cached(j, f) ? 0.0 : s.backhaul_mean_s[j]);
    if (!y.cached(j, f)) misses.push_back(j);
  }
  double backhaul = 0.0;
  for (std::size_t n = 0; n < samples; ++n)
    for (std::size_t j : misses) {
      if (s.backhaul_mean_s[j] <= 0.0) continue;
      std::exponential_distribution<double> e(1.0 / s.backhaul_mean_s[j]);
      backhaul += e(rng);
    }
  return wireless + backhaul / static_cast<double>(samples);
}

struct SweepRow {
  double alpha = 0.0;
  std::size_t replication = 0;
  std::uint64_t seed = 0;
  bool converged = true;
  std::string status;  // ok, infeasible, no_incumbent
  ObjectiveValue value;
};

struct SweepOptions {
  std::vector<double> alphas{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  std::size_t replications = 1;
  std::uint64_t seed = 1;
  std::size_t threads = 0;
  UcwtOptions ucwt;
};

inline void check_alphas(const std::vector<double>& alphas) {
  if (alphas.empty()) throw UsageError("alpha grid is empty");
  for (double a : alphas)
    if (!(a >= 0.0 && a <= 1.0)) throw UsageError("alpha grid must lie in [0, 1]");
}

/// One row per (alpha, replication). Replication r solves the instance
/// generated from derive_seed(seed, r), or `fixed` when given.
inline std::vector<SweepRow> sweep_alpha(const Config& cfg, Algorithm alg, const SweepOptions& opt,
                                         const std::optional<Instance>& fixed = std::nullopt) {
  check_alphas(opt.alphas);
  if (opt.replications == 0) throw UsageError("replications must be positive");
  if (!fixed) cfg.validate();
  const std::size_t na = opt.alphas.size();
  std::vector<SweepRow> rows(na * opt.replications);
  parallel_for(opt.replications, opt.threads, [&](std::size_t r) {
    const std::uint64_t seed = derive_seed(opt.seed, r);
    const Instance inst = fixed ? *fixed : generate(cfg, seed);
    const auto y = place(inst, CachePolicy::Lpf, seed);
    for (std::size_t a = 0; a < na; ++a) {
      auto& row = rows[r * na + a];
      row.alpha = opt.alphas[a];
      row.replication = r;
      row.seed = seed;
      try {
        const auto res = run_algorithm(inst, y, alg, opt.alphas[a], opt.ucwt);
        row.value = res.relaxed;
        row.converged = res.converged;
        row.status = "ok";
      } catch (const InfeasibleError&) {
        row.status = "infeasible";
        row.converged = false;
      } catch (const ConvergenceError&) {
        row.status = "no_incumbent";
        row.converged = false;
      }
    }
  });
  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return a.alpha != b.alpha ? a.alpha < b.alpha : a.replication < b.replication;
  });
  return rows;
}

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  CsvWriter w(os, {"alpha", "replication", "seed", "status", "converged", "energy_joules", "delay_seconds",
                   "weighted"});
  for (const auto& r : rows)
    w.row({r.alpha, r.replication, std::to_string(r.seed), r.status, r.converged, r.value.energy, r.value.delay,
           r.value.weighted});
}

struct CachingRow {
  CachePolicy policy = CachePolicy::Lpf;
  double capacity_fraction = 0.0;
  std::size_t replication = 0;
  std::uint64_t seed = 0;
  double hit_ratio = 0.0;
  std::string status;
  ObjectiveValue value;
};

struct CachingOptions {
  std::vector<CachePolicy> policies{CachePolicy::Lpf, CachePolicy::Gpc, CachePolicy::Rc};
  std::vector<double> capacity_fractions{0.1, 0.25, 0.5, 1.0};
  std::size_t replications = 1;
  std::uint64_t seed = 1;
  double alpha = 0.5;
  bool solve = true;  // false: hit ratios only
  std::size_t threads = 0;
  UcwtOptions ucwt;
};

/// Sets every SBS's capacity to `fraction` of the whole catalogue.
inline void set_capacity_fraction(Scenario& s, double fraction) {
  if (!(fraction >= 0.0)) throw UsageError("capacity fraction must be >= 0");
  double catalogue = 0.0;
  for (double v : s.file_size_bytes) catalogue += v;
  s.cache_capacity_bytes.assign(s.sbs_count(), fraction * catalogue);
}

inline std::vector<CachingRow> compare_caching(const Config& cfg, const CachingOptions& opt) {
  cfg.validate();
  if (opt.replications == 0) throw UsageError("replications must be positive");
  if (opt.policies.empty() || opt.capacity_fractions.empty()) throw UsageError("empty policy or capacity grid");
  const std::size_t nc = opt.capacity_fractions.size(), np = opt.policies.size();
  std::vector<CachingRow> rows(opt.replications * nc * np);
  parallel_for(opt.replications * nc, opt.threads, [&](std::size_t task) {
    const std::size_t r = task / nc, c = task % nc;
    const std::uint64_t seed = derive_seed(opt.seed, r);
    Instance inst = generate(cfg, seed);
    set_capacity_fraction(inst.scenario, opt.capacity_fractions[c]);
    const auto pop = local_popularity(inst.scenario, inst.preferences);
    for (std::size_t k = 0; k < np; ++k) {
      auto& row = rows[(r * nc + c) * np + k];
      row.policy = opt.policies[k];
      row.capacity_fraction = opt.capacity_fractions[c];
      row.replication = r;
      row.seed = seed;
      const auto y = place(inst, row.policy, derive_seed(seed, 7));
      row.hit_ratio = hit_ratio(y, pop).mean;
      row.status = "ok";
      if (!opt.solve) continue;
      try {
        row.value = run_algorithm(inst, y, Algorithm::Ucwt, opt.alpha, opt.ucwt).relaxed;
      } catch (const InfeasibleError&) {
        row.status = "infeasible";
      } catch (const ConvergenceError&) {
        row.status = "no_incumbent";
      }
    }
  });
  std::stable_sort(rows.begin(), rows.end(), [](const CachingRow& a, const CachingRow& b) {
    if (a.capacity_fraction != b.capacity_fraction) return a.capacity_fraction < b.capacity_fraction;
    if (a.policy != b.policy) return a.policy < b.policy;
    return a.replication < b.replication;
  });
  return rows;
}

inline void write_caching_csv(std::ostream& os, const std::vector<CachingRow>& rows) {
  CsvWriter w(os, {"policy", "capacity_fraction", "replication", "seed", "status", "hit_ratio", "energy_joules",
                   "delay_seconds", "weighted"});
  for (const auto& r : rows)
    w.row({to_string(r.policy), r.capacity_fraction, r.replication, std::to_string(r.seed), r.status, r.hit_ratio,
           r.value.energy, r.value.delay, r.value.weighted});
}

enum class SweepVariable { Users, Capacity };

inline SweepVariable parse_sweep_variable(const std::string& name) {
  if (name == "users") return SweepVariable::Users;
  if (name == "capacity") return SweepVariable::Capacity;
  throw UsageError("unknown sweep variable '" + name + "' (expected users or capacity)");
}

struct AlgorithmRow {
  SweepVariable variable = SweepVariable::Users;
  double value = 0.0;
  std::size_t replication = 0;
  std::uint64_t seed = 0;
  Algorithm algorithm = Algorithm::Ucwt;
  std::string status;
  ObjectiveValue relaxed;
  double exact_delay = 0.0;
  double sampled_delay = 0.0;  // NaN unless backhaul sampling is on
};

struct AlgorithmOptions {
  std::vector<Algorithm> algorithms{Algorithm::Ucwt, Algorithm::Doa, Algorithm::Ema};
  SweepVariable variable = SweepVariable::Users;
  std::vector<double> values{4, 5, 6};
  std::size_t replications = 1;
  std::uint64_t seed = 1;
  double alpha = 0.5;
  bool sample_backhaul = false;
  std::size_t backhaul_samples = 1000;
  std::size_t threads = 0;
  UcwtOptions ucwt;
};

/// Users: `values` are user counts. Capacity: mean cache size in files.
inline std::vector<AlgorithmRow> compare_algorithms(const Config& cfg, const AlgorithmOptions& opt) {
  if (opt.replications == 0) throw UsageError("replications must be positive");
  if (opt.values.empty() || opt.algorithms.empty()) throw UsageError("empty sweep or algorithm list");
  if (!(opt.alpha >= 0.0 && opt.alpha <= 1.0)) throw UsageError("alpha must lie in [0, 1]");
  std::vector<Config> configs;
  for (double v : opt.values) {
    Config c = cfg;
    if (opt.variable == SweepVariable::Users) {
      if (!(v >= 1.0) || v != std::floor(v)) throw UsageError("user counts must be positive integers");
      c.user_count = static_cast<std::size_t>(v);
    } else {
      c.cache_mean_files = v;
    }
    c.validate();
    configs.push_back(c);
  }
  const std::size_t nv = opt.values.size(), na = opt.algorithms.size();
  std::vector<AlgorithmRow> rows(opt.replications * nv * na);
  parallel_for(opt.replications * nv, opt.threads, [&](std::size_t task) {
    const std::size_t r = task / nv, v = task % nv;
    const std::uint64_t seed = derive_seed(opt.seed, r);
    const Instance inst = generate(configs[v], seed);
    const auto y = place(inst, CachePolicy::Lpf, seed);
    for (std::size_t k = 0; k < na; ++k) {
      auto& row = rows[(r * nv + v) * na + k];
      row.variable = opt.variable;
      row.value = opt.values[v];
      row.replication = r;
      row.seed = seed;
      row.algorithm = opt.algorithms[k];
      row.sampled_delay = std::numeric_limits<double>::quiet_NaN();
      try {
        const auto res = run_algorithm(inst, y, row.algorithm, opt.alpha, opt.ucwt);
        row.relaxed = res.relaxed;
        row.exact_delay = res.exact.delay;
        row.status = res.converged ? "ok" : "not_converged";
        if (opt.sample_backhaul)
          row.sampled_delay = sampled_delay(inst.scenario, inst.demands, y, res.x, res.p, opt.backhaul_samples,
                                            derive_seed(seed, 11), DelayMode::Exact);
      } catch (const InfeasibleError&) {
        row.status = "infeasible";
      } catch (const ConvergenceError&) {
        row.status = "no_incumbent";
      }
    }
  });
  std::stable_sort(rows.begin(), rows.end(), [](const AlgorithmRow& a, const AlgorithmRow& b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.algorithm != b.algorithm) return a.algorithm < b.algorithm;
    return a.replication < b.replication;
  });
  return rows;
}

inline void write_algorithms_csv(std::ostream& os, const std::vector<AlgorithmRow>& rows) {
  CsvWriter w(os, {"variable", "value", "replication", "seed", "algorithm", "status", "energy_joules",
                   "delay_seconds", "weighted", "exact_delay_seconds", "sampled_delay_seconds"});
  for (const auto& r : rows)
    w.row({r.variable == SweepVariable::Users ? "users" : "capacity", r.value, r.replication,
           std::to_string(r.seed), to_string(r.algorithm), r.status, r.relaxed.energy, r.relaxed.delay,
           r.relaxed.weighted, r.exact_delay, r.sampled_delay});
}

}  // namespace cachenet

#endif  // CACHENET_EXPERIMENTS_HPP
