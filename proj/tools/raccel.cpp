// raccel: run accelerated Riemannian optimization experiments, plot their
// convergence curves and run the property suites.
//
// Exit codes: 0 success, 1 divergence or failed verification, 2 usage or
// configuration error, 3 I/O error.
#include "riemann_accel/experiment.hpp"
#include "riemann_accel/plot.hpp"
#include "riemann_accel/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <map>
#include <sstream>

using namespace riemann_accel;

namespace {

constexpr int kExitDiverged = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

// Flags that map one-to-one onto ExperimentConfig keys.
const std::vector<std::pair<std::string, std::string>> kRunFlags = {
    {"problem", "rayleigh | hyperbolic | quadratic"},
    {"algo", "bregman-I | bregman-II | rgd | reference"},
    {"version", "1 | 2 (shorthand for --algo bregman-I/II)"},
    {"p", "order of the Bregman dynamics"},
    {"C", "scaling constant C"},
    {"h", "timestep (default 1e-3; 1e-4 for rayleigh with p > 4)"},
    {"class", "override convexity class: convex | wqc | sc"},
    {"alpha", "weak quasi-convexity constant in (0, 1]"},
    {"mu", "strong convexity constant"},
    {"diameter", "domain diameter D for zeta"},
    {"iters", "maximum iterations"},
    {"seed", "problem/initialization seed (env RIEMANN_ACCEL_SEED when absent)"},
    {"out", "CSV output path"},
    {"n", "problem dimension"},
    {"eig-lo", "smallest Rayleigh eigenvalue"},
    {"eig-hi", "largest Rayleigh eigenvalue"},
    {"condition", "quadratic condition number"},
    {"q", "hyperbolic target, spatial coordinates 'a,b'"},
    {"init-distance", "hyperbolic start distance from q"},
    {"tol", "stopping tolerance (0 disables)"},
    {"stop", "grad | gap"},
    {"record-every", "CSV row every this many iterations"},
    {"t-end", "end time for --algo reference"},
    {"name", "experiment name"},
};

int cmd_run(const std::string &config_path, const std::map<std::string, std::string> &flags) {
  std::vector<ExperimentConfig> cfgs;
  if (!config_path.empty())
    cfgs = experiments_from_config(load_config(config_path));
  else
    cfgs.emplace_back();

  const char *env_seed = std::getenv("RIEMANN_ACCEL_SEED");
  if (flags.count("out") && cfgs.size() > 1)
    throw ConfigError("out: --out cannot be combined with a multi-experiment config");
  for (auto &cfg : cfgs) {
    if (env_seed && !flags.count("seed")) cfg.set("seed", env_seed);
    for (const auto &[k, v] : flags) cfg.set(k, v);
    cfg.validate();
  }

  const std::vector<RunSummary> runs = cfgs.size() == 1 ? std::vector<RunSummary>{run_experiment(cfgs[0])}
                                                        : run_experiments(cfgs);
  int code = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (i) std::cout << '\n';
    print_summary(std::cout, runs[i]);
    code = std::max(code, runs[i].exit_code());
  }
  return code;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Accelerated optimization on Riemannian manifolds via Bregman dynamics"};
  app.require_subcommand(1);

  auto *run = app.add_subcommand("run", "run one experiment (or every section of --config) and write CSV");
  run->set_help_flag("--help", "print this help and exit");  // -h is the timestep
  std::string config_path;
  run->add_option("--config", config_path, "key = value config file; flags override its values");
  std::map<std::string, std::string> raw;
  for (const auto &[flag, help] : kRunFlags) run->add_option("--" + flag, raw[flag], help);

  auto *plot = app.add_subcommand("plot", "log-log SVG of f_gap vs t from result CSVs");
  std::vector<std::string> inputs;
  std::string plot_out = "plot.svg", title = "optimality gap";
  std::vector<double> guides = {2.0, 6.0};
  plot->add_option("csv", inputs, "result CSV files");
  plot->add_option("-o,--out", plot_out, "SVG output path")->capture_default_str();
  plot->add_option("--guides", guides, "exponents p of the t^-p guide lines")->delimiter(',')->capture_default_str();
  plot->add_option("--title", title, "plot title");

  auto *verify_cmd = app.add_subcommand("verify", "run a property suite");
  std::string suite;
  verify_cmd->add_option("suite", suite, "geometry | dynamics | convergence | rescaling | all")->required();

  auto *list = app.add_subcommand("list-problems", "describe the bundled problems");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*run) {
      std::map<std::string, std::string> given;
      for (const auto &[flag, help] : kRunFlags)
        if (run->count("--" + flag)) given[flag] = raw[flag];
      return cmd_run(config_path, given);
    }
    if (*plot) {
      if (inputs.empty()) throw ConfigError("plot: at least one CSV file is required");
      std::vector<std::filesystem::path> paths(inputs.begin(), inputs.end());
      emit_plot(paths, plot_out, {.title = title, .guides = guides});
      std::cout << "wrote " << plot_out << '\n';
      return 0;
    }
    if (*verify_cmd) {
      const verify::SuiteReport r = verify::run_suite(suite);
      verify::print_report(std::cout, r);
      return r.passed() ? 0 : 1;
    }
    if (*list) {
      for (const auto &[name, desc] : problem_catalog()) std::cout << name << "\n    " << desc << '\n';
      return 0;
    }
  } catch (const ConfigError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DivergenceError &e) {
    std::cerr << "diverged: " << e.what() << '\n';
    return kExitDiverged;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return 0;
}
