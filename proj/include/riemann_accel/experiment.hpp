#pragma once

#include "riemann_accel/integrate.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace riemann_accel {

/// One benchmark run: problem, algorithm and output location.
///
/// Defaults (chosen for the bundled problems, not tuned per run):
///   rayleigh   n = 10, eigenvalues log-spaced over [1, 100], WQC alpha = 1,
///              h = 1e-3 for p <= 4 and 1e-4 above
///   hyperbolic H^2, q at spatial offset (0.3, -0.2), x0 at distance 1 from q,
///              diameter 1, mu = 1, h = 1e-3
///   quadratic  n = 10, condition number 100, mu = 1, h = 1e-3
struct ExperimentConfig {
  std::string name = "experiment";
  std::string problem = "rayleigh";
  int n = 10;
  double eig_lo = 1.0;
  double eig_hi = 100.0;
  double condition = 100.0;
  std::vector<double> q = {0.3, -0.2};
  double init_distance = 1.0;
  std::uint64_t seed = 42;

  std::string algo = "bregman-I";
  double p = 2.0;
  double C = 0.25;
  std::optional<double> h;
  std::optional<std::string> convexity;  // convex | wqc | sc, else the problem's own
  double alpha = 1.0;
  double mu = 1.0;
  double diameter = 1.0;
  long iters = 200000;
  double tol = 1e-8;
  std::string stop = "grad";  // grad | gap
  long record_every = 10;
  double t_end = 10.0;  // reference algorithm only

  std::filesystem::path out = "run.csv";

  double step() const;
  /// Throws ConfigError naming the offending field.
  void validate() const;
  /// Assign one `key = value` setting (config-file keys and CLI flags share names).
  void set(const std::string &key, const std::string &value);
};

/// Ordered `[section]` blocks of a `key = value` file. Keys before the first
/// header go into a section named "" and act as defaults for the others.
using ConfigSections = std::vector<std::pair<std::string, std::map<std::string, std::string>>>;
ConfigSections parse_config(std::istream &in);
ConfigSections load_config(const std::filesystem::path &path);
/// Experiments described by a parsed file, one per named section (or a single
/// experiment when the file has no sections).
std::vector<ExperimentConfig> experiments_from_config(const ConfigSections &sections,
                                                      const ExperimentConfig &base = {});

struct ProblemInstance {
  Objective objective;
  Point x0;
  double zeta = 1.0;
};

ProblemInstance make_problem(const ExperimentConfig &cfg);
IntegratorConfig integrator_config(const ExperimentConfig &cfg, const ProblemInstance &problem);

struct ResultRow {
  long k = 0;
  double t = 0.0;
  std::optional<double> f_gap;
  std::optional<double> grad_norm;
  std::optional<double> lyapunov;
  std::optional<double> bound;
};

inline constexpr const char *kCsvHeader = "k,t,f_gap,grad_norm,lyapunov,bound";

std::vector<ResultRow> rows_from_record(const TrajectoryRecord &record);
void write_csv(std::ostream &out, const std::vector<ResultRow> &rows);
void write_csv(const std::filesystem::path &path, const std::vector<ResultRow> &rows);
std::vector<ResultRow> read_csv(std::istream &in);
std::vector<ResultRow> read_csv(const std::filesystem::path &path);

struct RunSummary {
  std::string name;
  std::string algorithm;
  std::filesystem::path csv;
  bool diverged = false;
  std::string message;
  long iterations = 0;
  long last_finite_iteration = 0;
  bool converged = false;
  std::optional<double> final_gap;
  std::optional<double> final_grad_norm;
  std::optional<RateEstimate> rate;
  std::string rate_error;
  std::optional<bool> bound_holds;
  long bound_violations = 0;

  int exit_code() const { return diverged ? 1 : 0; }
};

/// Runs one experiment, writes its CSV and fits the rate from the written file.
RunSummary run_experiment(const ExperimentConfig &cfg);
/// Independent runs in parallel; summaries come back in input order.
std::vector<RunSummary> run_experiments(const std::vector<ExperimentConfig> &cfgs);
void print_summary(std::ostream &out, const RunSummary &s);

/// Descriptions of the bundled problems for `list-problems`.
std::vector<std::pair<std::string, std::string>> problem_catalog();

}  // namespace riemann_accel
