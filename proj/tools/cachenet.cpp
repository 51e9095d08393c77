// cachenet command-line front end.
//
// Exit codes: 0 success, 1 solver did not converge, 2 usage or input error,
// 3 infeasible instance.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "cachenet/cachenet.hpp"

namespace {

using namespace cachenet;

constexpr int kOk = 0, kNotConverged = 1, kUsage = 2, kInfeasible = 3;

struct Common {
  std::string config_path;
  std::vector<std::string> sets;
  bool paper_scale = false;
  std::uint64_t seed = 1;
  std::string out = "-";
  std::size_t threads = 0;
  double epsilon = 0.0;
  double rel_epsilon = 1e-6;
  std::size_t max_iters = 500;

  void add_to(CLI::App* cmd, bool generation = true) {
    if (generation) {
      cmd->add_option("--config", config_path, "configuration file with a [config] section");
      cmd->add_option("--set", sets, "override one configuration key, key=value (repeatable)");
      cmd->add_flag("--paper-scale", paper_scale, "start from the full-size defaults (B=25, U=150, F=600)");
    }
    cmd->add_option("--seed", seed, "base seed")->capture_default_str();
    cmd->add_option("--out", out, "output CSV path, - for stdout")->capture_default_str();
  }

  void add_solver(CLI::App* cmd) {
    cmd->add_option("--epsilon", epsilon, "absolute Benders gap tolerance")->capture_default_str();
    cmd->add_option("--rel-epsilon", rel_epsilon, "Benders gap tolerance relative to the upper bound")
        ->capture_default_str();
    cmd->add_option("--max-iters", max_iters, "Benders iteration cap")->capture_default_str();
  }

  Config config() const {
    Config c = paper_scale ? full_scale_config() : desk_config();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw UsageError("cannot read '" + config_path + "'");
      c = load_config(in, c);
    }
    for (const auto& s : sets) set_config_value(c, s);
    c.validate();
    if (paper_scale)
      std::cerr << "warning: full-scale instances can take a long time; the Benders master is exponential "
                   "in the worst case\n";
    return c;
  }

  UcwtOptions ucwt() const {
    UcwtOptions o;
    o.epsilon = epsilon;
    o.relative_epsilon = rel_epsilon;
    o.max_iters = max_iters;
    return o;
  }
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path == "-" || path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw UsageError("cannot write '" + path + "'");
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::string trace_path_for(const std::string& out) {
  if (out == "-" || out.empty()) return {};
  const auto dot = out.rfind(".csv");
  return (dot == std::string::npos ? out : out.substr(0, dot)) + "_trace.csv";
}

int run(int argc, char** argv) {
  CLI::App app{"Cache-enabled small-cell association and power control"};
  app.require_subcommand(1);

  Common gen_opts;
  auto* gen = app.add_subcommand("generate", "generate an instance file");
  gen_opts.add_to(gen);

  Common solve_opts;
  std::string instance_path, algorithm = "ucwt", trace_path, policy = "lpf";
  double alpha = -1.0;
  auto* solve = app.add_subcommand("solve", "solve one instance");
  solve_opts.add_to(solve, false);
  solve_opts.add_solver(solve);
  solve->add_option("--instance", instance_path, "instance file")->required();
  solve->add_option("--algorithm", algorithm, "ucwt, doa, ema or oracle")->capture_default_str();
  solve->add_option("--alpha", alpha, "energy weight in [0, 1]; defaults to the instance's value");
  solve->add_option("--trace", trace_path, "Benders trace CSV (ucwt only)");
  solve->add_option("--placement", policy, "cache placement: lpf, gpc or rc")->capture_default_str();

  Common sweep_opts;
  SweepOptions sweep_cfg;
  std::string sweep_instance, sweep_alg = "ucwt";
  auto* sweep = app.add_subcommand("sweep-alpha", "energy and delay across an alpha grid");
  sweep_opts.add_to(sweep);
  sweep_opts.add_solver(sweep);
  sweep->add_option("--instance", sweep_instance, "solve this instance instead of generated ones");
  sweep->add_option("--algorithm", sweep_alg, "ucwt, doa, ema or oracle")->capture_default_str();
  sweep->add_option("--alphas", sweep_cfg.alphas, "comma-separated alpha grid")->delimiter(',');
  sweep->add_option("--replications", sweep_cfg.replications, "instances per alpha")->capture_default_str();
  sweep->add_option("--threads", sweep_opts.threads, "worker threads, 0 for all cores");

  Common caching_opts;
  CachingOptions caching_cfg;
  std::vector<std::string> policies{"lpf", "gpc", "rc"};
  auto* caching = app.add_subcommand("compare-caching", "caching policies across cache capacities");
  caching_opts.add_to(caching);
  caching_opts.add_solver(caching);
  caching->add_option("--policies", policies, "comma-separated policies")->delimiter(',');
  caching->add_option("--capacities", caching_cfg.capacity_fractions,
                      "comma-separated capacities as fractions of the catalogue")
      ->delimiter(',');
  caching->add_option("--replications", caching_cfg.replications, "instances per grid point")
      ->capture_default_str();
  caching->add_option("--alpha", caching_cfg.alpha, "energy weight for the UCWT solve")->capture_default_str();
  caching->add_flag("--hit-only", "report hit ratios without solving");
  caching->add_option("--threads", caching_opts.threads, "worker threads, 0 for all cores");

  Common algo_opts;
  AlgorithmOptions algo_cfg;
  std::string variable = "users";
  std::vector<std::string> algorithms{"ucwt", "doa", "ema"};
  auto* algos = app.add_subcommand("compare-algorithms", "UCWT against DOA and EMA");
  algo_opts.add_to(algos);
  algo_opts.add_solver(algos);
  algos->add_option("--sweep", variable, "users or capacity")->capture_default_str();
  algos->add_option("--values", algo_cfg.values, "comma-separated sweep values")->delimiter(',');
  algos->add_option("--algorithms", algorithms, "comma-separated algorithms")->delimiter(',');
  algos->add_option("--replications", algo_cfg.replications, "instances per sweep value")->capture_default_str();
  algos->add_option("--alpha", algo_cfg.alpha, "energy weight")->capture_default_str();
  algos->add_flag("--sample-backhaul", algo_cfg.sample_backhaul, "also report exponential backhaul samples");
  algos->add_option("--backhaul-samples", algo_cfg.backhaul_samples, "Monte Carlo draws")->capture_default_str();
  algos->add_option("--threads", algo_opts.threads, "worker threads, 0 for all cores");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (*gen) {
    const auto inst = generate(gen_opts.config(), gen_opts.seed);
    Output out(gen_opts.out);
    save(out.stream(), inst);
    return kOk;
  }

  if (*solve) {
    const auto alg = parse_algorithm(algorithm);
    const auto pol = parse_policy(policy);
    const auto inst = load_file(instance_path);
    const double a = alpha < 0.0 && solve->count("--alpha") == 0 ? inst.scenario.alpha : alpha;
    if (!(a >= 0.0 && a <= 1.0)) throw UsageError("alpha must lie in [0, 1]");
    const auto y = place(inst, pol, solve_opts.seed);
    const auto r = run_algorithm(inst, y, alg, a, solve_opts.ucwt());
    {
      Output out(solve_opts.out);
      CsvWriter w(out.stream(), solve_header());
      write_solve_row(w, r);
    }
    if (alg == Algorithm::Ucwt) {
      const std::string path = trace_path.empty() ? trace_path_for(solve_opts.out) : trace_path;
      if (!path.empty()) {
        Output tr(path);
        write_trace_csv(tr.stream(), r.trace);
      }
    }
    return r.converged ? kOk : kNotConverged;
  }

  if (*sweep) {
    sweep_cfg.seed = sweep_opts.seed;
    sweep_cfg.threads = sweep_opts.threads;
    sweep_cfg.ucwt = sweep_opts.ucwt();
    const auto alg = parse_algorithm(sweep_alg);
    std::optional<Instance> fixed;
    Config cfg = desk_config();
    if (!sweep_instance.empty())
      fixed = load_file(sweep_instance);
    else
      cfg = sweep_opts.config();
    const auto rows = sweep_alpha(cfg, alg, sweep_cfg, fixed);
    Output out(sweep_opts.out);
    write_sweep_csv(out.stream(), rows);
    for (const auto& r : rows)
      if (!r.converged) return kNotConverged;
    return kOk;
  }

  if (*caching) {
    caching_cfg.policies.clear();
    for (const auto& p : policies) caching_cfg.policies.push_back(parse_policy(p));
    caching_cfg.seed = caching_opts.seed;
    caching_cfg.threads = caching_opts.threads;
    caching_cfg.solve = caching->count("--hit-only") == 0;
    caching_cfg.ucwt = caching_opts.ucwt();
    if (!(caching_cfg.alpha >= 0.0 && caching_cfg.alpha <= 1.0)) throw UsageError("alpha must lie in [0, 1]");
    const auto rows = compare_caching(caching_opts.config(), caching_cfg);
    Output out(caching_opts.out);
    write_caching_csv(out.stream(), rows);
    return kOk;
  }

  if (*algos) {
    algo_cfg.algorithms.clear();
    for (const auto& a : algorithms) algo_cfg.algorithms.push_back(parse_algorithm(a));
    algo_cfg.variable = parse_sweep_variable(variable);
    algo_cfg.seed = algo_opts.seed;
    algo_cfg.threads = algo_opts.threads;
    algo_cfg.ucwt = algo_opts.ucwt();
    const auto rows = compare_algorithms(algo_opts.config(), algo_cfg);
    Output out(algo_opts.out);
    write_algorithms_csv(out.stream(), rows);
    return kOk;
  }
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const cachenet::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const cachenet::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const cachenet::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const cachenet::ConvergenceError& e) {
    std::cerr << "not converged: " << e.what() << '\n';
    return kNotConverged;
  }
}
