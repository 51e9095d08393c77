#ifndef CACHENET_SCENARIO_HPP
#define CACHENET_SCENARIO_HPP

// Instance generation, configuration, and the sectioned text format used to
// save and load instances.
//
// Instance file layout (fixed order, one `key = value` per line, vectors as
// `key[n] = v0 v1 ...`, matrices as `key[r x c] =` followed by r rows):
//
//   [dimensions]  sbs_count, user_count, file_count
//   [physics]     bandwidth_hz, noise_power_w, pathloss_exponent, alpha,
//                 central_zone_radius_m, penalty_lambda
//   [sbs]         x_m[B], y_m[B], max_power_w[B], cache_capacity_bytes[B],
//                 backhaul_mean_s[B], load_coefficient[B]
//   [files]       size_bytes[F], sinr_threshold[F]
//   [users]       x_m[U], y_m[U], request_prob[U]
//   [gains]       gain[U x B]
//   [preferences] rho[U x F]
//   [demands]     requested_file[U]
//
// Lines starting with '#' and blank lines are ignored.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cachenet/matrix.hpp"
#include "cachenet/model.hpp"
#include "cachenet/popularity.hpp"
#include "cachenet/random.hpp"

namespace cachenet {

/// Malformed instance or configuration text.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Config {
  std::size_t sbs_count = 25;
  std::size_t user_count = 150;
  std::size_t file_count = 600;
  double region_m = 250.0;
  double cell_radius_m = 40.0;  // informational; SBS cells follow from the grid
  double central_zone_radius_m = 25.0;
  double max_power_dbm = 23.0;
  std::size_t subchannel_count = 16;  // informational; each user gets one subchannel
  double subchannel_bandwidth_hz = 200e3;
  double noise_density_dbm_per_hz = -174.0;
  double file_size_min_mb = 0.5;
  double file_size_max_mb = 50.0;
  double sinr_min = 1.5;
  double sinr_max = 5.0;
  double pathloss_exponent = 3.0;
  double cache_mean_files = 15.0;
  double cache_std_files = 0.0;
  double backhaul_mean_s = 5.0;
  double preference_variance_min = 25.0;
  double preference_variance_max = 2500.0;
  double alpha = 0.5;
  double min_distance_m = 1.0;
  double penalty_lambda = 0.0;  // 0: derive from the instance

  std::vector<std::string> violations() const {
    std::vector<std::string> out;
    if (sbs_count == 0) out.emplace_back("sbs_count must be positive");
    if (user_count == 0) out.emplace_back("user_count must be positive");
    if (file_count == 0) out.emplace_back("file_count must be positive");
    if (!(region_m > 0.0)) out.emplace_back("region_m must be positive");
    if (!(cell_radius_m > 0.0)) out.emplace_back("cell_radius_m must be positive");
    if (!(central_zone_radius_m >= 0.0)) out.emplace_back("central_zone_radius_m must be >= 0");
    if (!std::isfinite(max_power_dbm)) out.emplace_back("max_power_dbm must be finite");
    if (subchannel_count == 0) out.emplace_back("subchannel_count must be positive");
    if (!(subchannel_bandwidth_hz > 0.0)) out.emplace_back("subchannel_bandwidth_hz must be positive");
    if (!std::isfinite(noise_density_dbm_per_hz)) out.emplace_back("noise_density_dbm_per_hz must be finite");
    if (!(file_size_min_mb > 0.0)) out.emplace_back("file_size_min_mb must be positive");
    if (!(file_size_max_mb >= file_size_min_mb)) out.emplace_back("file_size_max_mb must be >= file_size_min_mb");
    if (!(sinr_min > 0.0)) out.emplace_back("sinr_min must be positive");
    if (!(sinr_max >= sinr_min)) out.emplace_back("sinr_max must be >= sinr_min");
    if (!(pathloss_exponent >= 2.0 && pathloss_exponent <= 5.0))
      out.emplace_back("pathloss_exponent must lie in [2, 5]");
    if (!(cache_mean_files >= 0.0)) out.emplace_back("cache_mean_files must be >= 0");
    if (!(cache_std_files >= 0.0)) out.emplace_back("cache_std_files must be >= 0");
    if (!(backhaul_mean_s >= 0.0)) out.emplace_back("backhaul_mean_s must be >= 0");
    if (!(preference_variance_min > 0.0)) out.emplace_back("preference_variance_min must be positive");
    if (!(preference_variance_max >= preference_variance_min))
      out.emplace_back("preference_variance_max must be >= preference_variance_min");
    if (!(alpha >= 0.0 && alpha <= 1.0)) out.emplace_back("alpha must lie in [0, 1]");
    if (!(min_distance_m > 0.0)) out.emplace_back("min_distance_m must be positive");
    if (!(penalty_lambda >= 0.0)) out.emplace_back("penalty_lambda must be >= 0");
    return out;
  }

  void validate() const {
    const auto v = violations();
    if (v.empty()) return;
    std::string msg = "invalid configuration:";
    for (const auto& s : v) msg += "\n  - " + s;
    throw UsageError(msg);
  }
};

/// Full-size defaults: 25 cells over 250 m x 250 m, 600 files, 150 users.
inline Config full_scale_config() { return Config{}; }

/// Small enough for exhaustive enumeration: 3^6 = 729 associations.
inline Config desk_config() {
  Config c;
  c.sbs_count = 3;
  c.user_count = 6;
  c.file_count = 8;
  c.region_m = 100.0;
  c.cache_mean_files = 2.5;
  c.cache_std_files = 0.5;
  c.preference_variance_min = 0.25;
  c.preference_variance_max = 4.0;
  return c;
}

struct Instance {
  Scenario scenario;
  PreferenceMatrix preferences;
  DemandMatrix demands;
  double penalty_lambda = 0.0;

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// lambda = 10 P^max + sum_i tau_{f_i} + sum_j D_j.
inline double default_penalty(const Scenario& s, const DemandMatrix& d) {
  double pmax = 0.0;
  for (double p : s.max_power_w) pmax = std::max(pmax, p);
  double backhaul = 0.0;
  for (double v : s.backhaul_mean_s) backhaul += v;
  return 10.0 * pmax + total_relaxed_transmission_time(s, d) + backhaul;
}

/// SBS positions at the centres of a ceil(sqrt(B))-column grid over the region.
inline std::vector<Point> grid_positions(std::size_t count, double region) {
  const auto cols = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(count))));
  const std::size_t rows = (count + cols - 1) / cols;
  const double w = region / static_cast<double>(cols), h = region / static_cast<double>(rows);
  std::vector<Point> out;
  for (std::size_t k = 0; k < count; ++k)
    out.push_back({(static_cast<double>(k % cols) + 0.5) * w, (static_cast<double>(k / cols) + 0.5) * h});
  return out;
}

namespace seed_stream {
inline constexpr std::uint64_t kUsers = 0, kFiles = 1, kCapacity = 2, kPreferences = 3, kDemands = 4;
}

inline Instance generate(const Config& cfg, std::uint64_t seed) {
  cfg.validate();
  Scenario s;
  s.sbs_positions = grid_positions(cfg.sbs_count, cfg.region_m);
  {
    auto rng = make_rng(seed, seed_stream::kUsers);
    std::uniform_real_distribution<double> pos(0.0, cfg.region_m);
    for (std::size_t i = 0; i < cfg.user_count; ++i) {
      const double x = pos(rng);
      s.user_positions.push_back({x, pos(rng)});
    }
  }
  {
    auto rng = make_rng(seed, seed_stream::kFiles);
    std::uniform_real_distribution<double> size(cfg.file_size_min_mb, cfg.file_size_max_mb);
    std::uniform_real_distribution<double> sinr(cfg.sinr_min, cfg.sinr_max);
    for (std::size_t k = 0; k < cfg.file_count; ++k) {
      s.file_size_bytes.push_back(size(rng) * 1e6);
      s.sinr_threshold.push_back(sinr(rng));
    }
  }
  double mean_size = 0.0;
  for (double v : s.file_size_bytes) mean_size += v;
  mean_size /= static_cast<double>(cfg.file_count);
  {
    auto rng = make_rng(seed, seed_stream::kCapacity);
    std::normal_distribution<double> files(cfg.cache_mean_files, cfg.cache_std_files);
    for (std::size_t j = 0; j < cfg.sbs_count; ++j) {
      const double n = cfg.cache_std_files > 0.0 ? files(rng) : cfg.cache_mean_files;
      s.cache_capacity_bytes.push_back(std::max(0.0, n) * mean_size);
    }
  }
  s.max_power_w.assign(cfg.sbs_count, dbm_to_watts(cfg.max_power_dbm));
  s.backhaul_mean_s.assign(cfg.sbs_count, cfg.backhaul_mean_s);
  s.load_coefficients.assign(cfg.sbs_count, 1.0 / static_cast<double>(cfg.sbs_count));
  s.bandwidth_hz = cfg.subchannel_bandwidth_hz;
  s.noise_power_w = dbm_to_watts(cfg.noise_density_dbm_per_hz) * cfg.subchannel_bandwidth_hz;
  s.pathloss_exponent = cfg.pathloss_exponent;
  s.alpha = cfg.alpha;
  s.central_zone_radius_m = cfg.central_zone_radius_m;
  compute_gains(s, cfg.min_distance_m);
  s.validate();

  Instance inst;
  PreferenceOptions popt;
  popt.variance_min = cfg.preference_variance_min;
  popt.variance_max = cfg.preference_variance_max;
  inst.preferences = sample_preferences(s, derive_seed(seed, seed_stream::kPreferences), popt);
  const auto pop = local_popularity(s, inst.preferences);
  inst.demands = sample_demands(s, pop, inst.preferences, derive_seed(seed, seed_stream::kDemands));
  inst.penalty_lambda = cfg.penalty_lambda > 0.0 ? cfg.penalty_lambda : default_penalty(s, inst.demands);
  inst.scenario = std::move(s);
  return inst;
}

namespace detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void put_vector(std::ostream& os, const std::string& key, const std::vector<double>& v) {
  os << key << '[' << v.size() << "] =";
  for (double x : v) os << ' ' << fmt(x);
  os << '\n';
}

inline void put_matrix(std::ostream& os, const std::string& key, const Matrix<double>& m) {
  os << key << '[' << m.rows() << " x " << m.cols() << "] =\n";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? " " : "") << fmt(m(r, c));
    os << '\n';
  }
}

struct Entry {
  std::vector<double> values;
  std::size_t rows = 0, cols = 0;  // rows = 0: scalar; cols = 0: vector
  std::size_t line = 0;
  bool used = false;
};

struct Document {
  std::map<std::string, std::map<std::string, Entry>> sections;
  std::map<std::string, std::size_t> section_line;

  Entry& get(const std::string& section, const std::string& key) {
    auto s = sections.find(section);
    if (s == sections.end()) throw ParseError("missing section [" + section + "]");
    auto k = s->second.find(key);
    if (k == s->second.end()) throw ParseError("section [" + section + "] is missing key '" + key + "'");
    k->second.used = true;
    return k->second;
  }

  double scalar(const std::string& section, const std::string& key) {
    auto& e = get(section, key);
    if (e.rows != 0 || e.values.size() != 1)
      throw ParseError("line " + std::to_string(e.line) + ": '" + key + "' must be a scalar");
    return e.values[0];
  }

  std::size_t count(const std::string& section, const std::string& key) {
    const double v = scalar(section, key);
    if (!(v >= 0.0) || v != std::floor(v) || v > 1e9)
      throw ParseError("[" + section + "] " + key + " must be a nonnegative integer");
    return static_cast<std::size_t>(v);
  }

  std::vector<double> vec(const std::string& section, const std::string& key, std::size_t n) {
    auto& e = get(section, key);
    if (e.rows == 0 || e.cols != 0 || e.values.size() != n)
      throw ParseError("line " + std::to_string(e.line) + ": '" + key + "' must be a vector of length " +
                       std::to_string(n));
    return e.values;
  }

  Matrix<double> mat(const std::string& section, const std::string& key, std::size_t r, std::size_t c) {
    auto& e = get(section, key);
    if (e.cols == 0 || e.rows != r || e.cols != c)
      throw ParseError("line " + std::to_string(e.line) + ": '" + key + "' must be a " + std::to_string(r) +
                       " x " + std::to_string(c) + " matrix");
    Matrix<double> m(r, c);
    m.data() = e.values;
    return m;
  }

  void reject_unused() const {
    for (const auto& [name, keys] : sections)
      for (const auto& [key, e] : keys)
        if (!e.used)
          throw ParseError("line " + std::to_string(e.line) + ": unknown key '" + key + "' in [" + name + "]");
  }
};

inline double parse_number(const std::string& tok, std::size_t line) {
  if (tok == "inf") return kInf;
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (tok.empty() || end != tok.c_str() + tok.size())
    throw ParseError("line " + std::to_string(line) + ": '" + tok + "' is not a number");
  return v;
}

inline Document parse_document(std::istream& in, const std::vector<std::string>& allowed_sections) {
  Document doc;
  std::string text, section;
  std::size_t lineno = 0;
  while (std::getline(in, text)) {
    ++lineno;
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string::npos || text[first] == '#') continue;
    text = text.substr(first);
    while (!text.empty() && (text.back() == '\r' || text.back() == ' ' || text.back() == '\t')) text.pop_back();
    if (text.front() == '[') {
      if (text.back() != ']') throw ParseError("line " + std::to_string(lineno) + ": malformed section header");
      section = text.substr(1, text.size() - 2);
      if (std::find(allowed_sections.begin(), allowed_sections.end(), section) == allowed_sections.end())
        throw ParseError("line " + std::to_string(lineno) + ": unknown section [" + section + "]");
      if (doc.sections.count(section))
        throw ParseError("line " + std::to_string(lineno) + ": duplicate section [" + section + "]");
      doc.sections[section];
      doc.section_line[section] = lineno;
      continue;
    }
    if (section.empty()) throw ParseError("line " + std::to_string(lineno) + ": key outside any section");
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ParseError("line " + std::to_string(lineno) + ": expected 'key = value'");
    std::string lhs = text.substr(0, eq);
    while (!lhs.empty() && (lhs.back() == ' ' || lhs.back() == '\t')) lhs.pop_back();
    Entry e;
    e.line = lineno;
    std::string key = lhs;
    const auto br = lhs.find('[');
    if (br != std::string::npos) {
      if (lhs.back() != ']') throw ParseError("line " + std::to_string(lineno) + ": malformed dimension");
      key = lhs.substr(0, br);
      const std::string dims = lhs.substr(br + 1, lhs.size() - br - 2);
      std::size_t r = 0, c = 0;
      char x = 0;
      std::istringstream ds(dims);
      if (!(ds >> r)) throw ParseError("line " + std::to_string(lineno) + ": malformed dimension");
      if (ds >> x) {
        if (x != 'x' || !(ds >> c)) throw ParseError("line " + std::to_string(lineno) + ": malformed dimension");
      }
      e.rows = r;
      e.cols = c;
    }
    std::istringstream vs(text.substr(eq + 1));
    std::string tok;
    while (vs >> tok) e.values.push_back(parse_number(tok, lineno));
    if (e.cols != 0) {
      if (!e.values.empty())
        throw ParseError("line " + std::to_string(lineno) + ": matrix rows must start on the next line");
      for (std::size_t r = 0; r < e.rows; ++r) {
        if (!std::getline(in, text))
          throw ParseError("line " + std::to_string(lineno + 1) + ": '" + key + "' is truncated");
        ++lineno;
        std::istringstream rs(text);
        std::size_t got = 0;
        while (rs >> tok) {
          e.values.push_back(parse_number(tok, lineno));
          ++got;
        }
        if (got != e.cols)
          throw ParseError("line " + std::to_string(lineno) + ": expected " + std::to_string(e.cols) + " values");
      }
    } else if (e.rows == 0 && e.values.size() != 1) {
      throw ParseError("line " + std::to_string(lineno) + ": '" + key + "' needs exactly one value");
    } else if (e.rows != 0 && e.values.size() != e.rows) {
      throw ParseError("line " + std::to_string(lineno) + ": '" + key + "' declares " + std::to_string(e.rows) +
                       " values but has " + std::to_string(e.values.size()));
    }
    auto& keys = doc.sections[section];
    if (keys.count(key)) throw ParseError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    keys[key] = std::move(e);
  }
  return doc;
}

inline const std::vector<std::string>& instance_sections() {
  static const std::vector<std::string> names = {"dimensions", "physics", "sbs",         "files",
                                                 "users",      "gains",   "preferences", "demands"};
  return names;
}

}  // namespace detail

inline void save(std::ostream& os, const Instance& inst) {
  using detail::fmt;
  const auto& s = inst.scenario;
  const std::size_t b = s.sbs_count(), u = s.user_count(), f = s.file_count();
  std::vector<double> xs, ys;
  os << "# cachenet instance\n";
  os << "[dimensions]\n"
     << "sbs_count = " << b << "\nuser_count = " << u << "\nfile_count = " << f << '\n';
  os << "[physics]\n"
     << "bandwidth_hz = " << fmt(s.bandwidth_hz) << "\nnoise_power_w = " << fmt(s.noise_power_w)
     << "\npathloss_exponent = " << fmt(s.pathloss_exponent) << "\nalpha = " << fmt(s.alpha)
     << "\ncentral_zone_radius_m = " << fmt(s.central_zone_radius_m)
     << "\npenalty_lambda = " << fmt(inst.penalty_lambda) << '\n';
  os << "[sbs]\n";
  for (const auto& p : s.sbs_positions) {
    xs.push_back(p.x);
    ys.push_back(p.y);
  }
  detail::put_vector(os, "x_m", xs);
  detail::put_vector(os, "y_m", ys);
  detail::put_vector(os, "max_power_w", s.max_power_w);
  detail::put_vector(os, "cache_capacity_bytes", s.cache_capacity_bytes);
  detail::put_vector(os, "backhaul_mean_s", s.backhaul_mean_s);
  detail::put_vector(os, "load_coefficient", s.load_coefficients);
  os << "[files]\n";
  detail::put_vector(os, "size_bytes", s.file_size_bytes);
  detail::put_vector(os, "sinr_threshold", s.sinr_threshold);
  os << "[users]\n";
  xs.clear();
  ys.clear();
  for (const auto& p : s.user_positions) {
    xs.push_back(p.x);
    ys.push_back(p.y);
  }
  detail::put_vector(os, "x_m", xs);
  detail::put_vector(os, "y_m", ys);
  detail::put_vector(os, "request_prob", inst.preferences.request_prob);
  os << "[gains]\n";
  detail::put_matrix(os, "gain", s.gains);
  os << "[preferences]\n";
  detail::put_matrix(os, "rho", inst.preferences.rho);
  os << "[demands]\n";
  std::vector<double> req(inst.demands.requested.begin(), inst.demands.requested.end());
  detail::put_vector(os, "requested_file", req);
}

inline Instance load(std::istream& in) {
  auto doc = detail::parse_document(in, detail::instance_sections());
  for (const auto& name : detail::instance_sections())
    if (!doc.sections.count(name)) throw ParseError("missing section [" + name + "]");
  Instance inst;
  auto& s = inst.scenario;
  const std::size_t b = doc.count("dimensions", "sbs_count");
  const std::size_t u = doc.count("dimensions", "user_count");
  const std::size_t f = doc.count("dimensions", "file_count");
  s.bandwidth_hz = doc.scalar("physics", "bandwidth_hz");
  s.noise_power_w = doc.scalar("physics", "noise_power_w");
  s.pathloss_exponent = doc.scalar("physics", "pathloss_exponent");
  s.alpha = doc.scalar("physics", "alpha");
  s.central_zone_radius_m = doc.scalar("physics", "central_zone_radius_m");
  inst.penalty_lambda = doc.scalar("physics", "penalty_lambda");
  auto bx = doc.vec("sbs", "x_m", b), by = doc.vec("sbs", "y_m", b);
  for (std::size_t j = 0; j < b; ++j) s.sbs_positions.push_back({bx[j], by[j]});
  s.max_power_w = doc.vec("sbs", "max_power_w", b);
  s.cache_capacity_bytes = doc.vec("sbs", "cache_capacity_bytes", b);
  s.backhaul_mean_s = doc.vec("sbs", "backhaul_mean_s", b);
  s.load_coefficients = doc.vec("sbs", "load_coefficient", b);
  s.file_size_bytes = doc.vec("files", "size_bytes", f);
  s.sinr_threshold = doc.vec("files", "sinr_threshold", f);
  auto ux = doc.vec("users", "x_m", u), uy = doc.vec("users", "y_m", u);
  for (std::size_t i = 0; i < u; ++i) s.user_positions.push_back({ux[i], uy[i]});
  inst.preferences.request_prob = doc.vec("users", "request_prob", u);
  s.gains = doc.mat("gains", "gain", u, b);
  inst.preferences.rho = doc.mat("preferences", "rho", u, f);
  const auto req = doc.vec("demands", "requested_file", u);
  for (double v : req) {
    if (!(v >= 0.0) || v != std::floor(v) || v >= static_cast<double>(f))
      throw ParseError("[demands] requested_file entries must be file indices below " + std::to_string(f));
    inst.demands.requested.push_back(static_cast<std::size_t>(v));
  }
  doc.reject_unused();
  try {
    s.validate();
  } catch (const UsageError& e) {
    throw ParseError(e.what());
  }
  return inst;
}

inline void save_file(const std::string& path, const Instance& inst) {
  std::ofstream os(path);
  if (!os) throw UsageError("cannot write '" + path + "'");
  save(os, inst);
  if (!os) throw UsageError("failed writing '" + path + "'");
}

inline Instance load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  return load(in);
}

namespace detail {

template <typename F>
void for_each_config_field(Config& c, F&& f) {
  f("sbs_count", c.sbs_count);
  f("user_count", c.user_count);
  f("file_count", c.file_count);
  f("region_m", c.region_m);
  f("cell_radius_m", c.cell_radius_m);
  f("central_zone_radius_m", c.central_zone_radius_m);
  f("max_power_dbm", c.max_power_dbm);
  f("subchannel_count", c.subchannel_count);
  f("subchannel_bandwidth_hz", c.subchannel_bandwidth_hz);
  f("noise_density_dbm_per_hz", c.noise_density_dbm_per_hz);
  f("file_size_min_mb", c.file_size_min_mb);
  f("file_size_max_mb", c.file_size_max_mb);
  f("sinr_min", c.sinr_min);
  f("sinr_max", c.sinr_max);
  f("pathloss_exponent", c.pathloss_exponent);
  f("cache_mean_files", c.cache_mean_files);
  f("cache_std_files", c.cache_std_files);
  f("backhaul_mean_s", c.backhaul_mean_s);
  f("preference_variance_min", c.preference_variance_min);
  f("preference_variance_max", c.preference_variance_max);
  f("alpha", c.alpha);
  f("min_distance_m", c.min_distance_m);
  f("penalty_lambda", c.penalty_lambda);
}

}  // namespace detail

inline void save_config(std::ostream& os, Config c) {
  os << "[config]\n";
  detail::for_each_config_field(c, [&](const char* name, auto& v) {
    if constexpr (std::is_same_v<std::decay_t<decltype(v)>, std::size_t>)
      os << name << " = " << v << '\n';
    else
      os << name << " = " << detail::fmt(v) << '\n';
  });
}

/// Reads a `[config]` section; keys not present keep the values of `base`.
inline Config load_config(std::istream& in, Config base = full_scale_config()) {
  auto doc = detail::parse_document(in, {"config"});
  if (!doc.sections.count("config")) throw ParseError("missing section [config]");
  detail::for_each_config_field(base, [&](const char* name, auto& v) {
    if (!doc.sections["config"].count(name)) return;
    const double x = doc.scalar("config", name);
    if constexpr (std::is_same_v<std::decay_t<decltype(v)>, std::size_t>) {
      if (!(x >= 0.0) || x != std::floor(x)) throw ParseError(std::string(name) + " must be a nonnegative integer");
      v = static_cast<std::size_t>(x);
    } else {
      v = x;
    }
  });
  doc.reject_unused();
  return base;
}

/// Applies one `key=value` override.
inline void set_config_value(Config& c, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw UsageError("expected key=value, got '" + assignment + "'");
  std::istringstream in("[config]\n" + assignment.substr(0, eq) + " = " + assignment.substr(eq + 1) + "\n");
  try {
    c = load_config(in, c);
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  }
}

}  // namespace cachenet

#endif  // CACHENET_SCENARIO_HPP
