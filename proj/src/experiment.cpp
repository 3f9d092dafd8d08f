#include "riemann_accel/experiment.hpp"

#include "riemann_accel/problems.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

namespace riemann_accel {

namespace {

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

double parse_double(const std::string &key, const std::string &value) {
  char *end = nullptr;
  errno = 0;
  const double d = std::strtod(value.c_str(), &end);
  if (value.empty() || end != value.c_str() + value.size() || errno == ERANGE)
    throw ConfigError("invalid value for '" + key + "': expected a number, got '" + value + "'");
  return d;
}

long parse_long(const std::string &key, const std::string &value) {
  long out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size())
    throw ConfigError("invalid value for '" + key + "': expected an integer, got '" + value + "'");
  return out;
}

std::vector<double> parse_list(const std::string &key, const std::string &value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(key, trim(item)));
  return out;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::optional<double> parse_optional(const std::string &field, const std::string &path_hint, long line) {
  if (field.empty()) return std::nullopt;
  char *end = nullptr;
  const double d = std::strtod(field.c_str(), &end);
  if (end != field.c_str() + field.size())
    throw Error(path_hint + ":" + std::to_string(line) + ": malformed number '" + field + "'");
  return d;
}

}  // namespace

double ExperimentConfig::step() const {
  if (h) return *h;
  if (problem == "rayleigh") return p <= 4.0 ? 1e-3 : 1e-4;
  return 1e-3;
}

void ExperimentConfig::validate() const {
  if (problem != "rayleigh" && problem != "hyperbolic" && problem != "quadratic")
    throw ConfigError("problem: unknown problem '" + problem + "' (rayleigh, hyperbolic, quadratic)");
  if (algo != "bregman-I" && algo != "bregman-II" && algo != "rgd" && algo != "reference")
    throw ConfigError("algo: unknown algorithm '" + algo + "' (bregman-I, bregman-II, rgd, reference)");
  if (problem == "rayleigh" && n < 2) throw ConfigError("n: rayleigh needs n >= 2");
  if (n < 1) throw ConfigError("n: must be >= 1");
  if (!(eig_lo > 0.0) || !(eig_hi >= eig_lo)) throw ConfigError("eig_lo/eig_hi: need 0 < eig_lo <= eig_hi");
  if (!(condition >= 1.0)) throw ConfigError("condition: must be >= 1");
  if (problem == "hyperbolic" && q.size() != 2) throw ConfigError("q: hyperbolic target needs 2 spatial coordinates");
  if (!(init_distance > 0.0)) throw ConfigError("init_distance: must be > 0");
  if (!(p > 0.0)) throw ConfigError("p: must be > 0");
  if (!(C > 0.0)) throw ConfigError("C: must be > 0");
  if (!(step() > 0.0)) throw ConfigError("h: must be > 0");
  if (convexity && *convexity != "convex" && *convexity != "wqc" && *convexity != "sc")
    throw ConfigError("class: unknown convexity class '" + *convexity + "' (convex, wqc, sc)");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("alpha: must lie in (0, 1]");
  if (!(mu > 0.0)) throw ConfigError("mu: must be > 0");
  if (!(diameter > 0.0)) throw ConfigError("diameter: must be > 0");
  if (iters < 1) throw ConfigError("iters: must be >= 1");
  if (!(tol >= 0.0)) throw ConfigError("tol: must be >= 0");
  if (stop != "grad" && stop != "gap") throw ConfigError("stop: must be 'grad' or 'gap'");
  if (record_every < 1) throw ConfigError("record_every: must be >= 1");
  if (!(t_end > 0.0)) throw ConfigError("t_end: must be > 0");
  if (out.empty()) throw ConfigError("out: output path is empty");
}

void ExperimentConfig::set(const std::string &raw_key, const std::string &raw_value) {
  std::string key = trim(raw_key);
  std::replace(key.begin(), key.end(), '-', '_');
  const std::string value = trim(raw_value);
  if (key == "name") name = value;
  else if (key == "problem") problem = value;
  else if (key == "n") n = static_cast<int>(parse_long(key, value));
  else if (key == "eig_lo") eig_lo = parse_double(key, value);
  else if (key == "eig_hi") eig_hi = parse_double(key, value);
  else if (key == "condition") condition = parse_double(key, value);
  else if (key == "q") q = parse_list(key, value);
  else if (key == "init_distance") init_distance = parse_double(key, value);
  else if (key == "seed") seed = static_cast<std::uint64_t>(parse_long(key, value));
  else if (key == "algo") algo = value;
  else if (key == "version") {
    if (value != "1" && value != "2") throw ConfigError("version: must be 1 or 2");
    algo = value == "1" ? "bregman-I" : "bregman-II";
  } else if (key == "p") p = parse_double(key, value);
  else if (key == "C" || key == "c") C = parse_double(key, value);
  else if (key == "h") h = parse_double(key, value);
  else if (key == "class") convexity = value;
  else if (key == "alpha") alpha = parse_double(key, value);
  else if (key == "mu") mu = parse_double(key, value);
  else if (key == "diameter") diameter = parse_double(key, value);
  else if (key == "iters") iters = parse_long(key, value);
  else if (key == "tol") tol = parse_double(key, value);
  else if (key == "stop") stop = value;
  else if (key == "record_every") record_every = parse_long(key, value);
  else if (key == "t_end") t_end = parse_double(key, value);
  else if (key == "out") out = value;
  else throw ConfigError("unknown setting '" + raw_key + "'");
}

ConfigSections parse_config(std::istream &in) {
  ConfigSections sections;
  sections.emplace_back("", std::map<std::string, std::string>{});
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(lineno) + ": unterminated section header");
      sections.emplace_back(trim(line.substr(1, line.size() - 2)), std::map<std::string, std::string>{});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    sections.back().second[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return sections;
}

ConfigSections load_config(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  try {
    return parse_config(in);
  } catch (const ConfigError &e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::vector<ExperimentConfig> experiments_from_config(const ConfigSections &sections,
                                                      const ExperimentConfig &base) {
  ExperimentConfig defaults = base;
  std::vector<ExperimentConfig> out;
  for (const auto &[name, kv] : sections) {
    if (name.empty()) {
      for (const auto &[k, v] : kv) defaults.set(k, v);
      continue;
    }
    ExperimentConfig cfg = defaults;
    cfg.name = name;
    cfg.out = name + ".csv";
    for (const auto &[k, v] : kv) cfg.set(k, v);
    out.push_back(cfg);
  }
  if (out.empty()) out.push_back(defaults);
  return out;
}

ProblemInstance make_problem(const ExperimentConfig &cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  ProblemInstance inst{.objective = {.manifold = Manifold::euclidean(1)}};
  if (cfg.problem == "rayleigh") {
    inst.objective = rayleigh_objective(SymmetricMatrixSpec::log_spaced(cfg.n, cfg.eig_lo, cfg.eig_hi, cfg.seed), cfg.alpha);
    inst.x0 = inst.objective.manifold.random_point(rng);
  } else if (cfg.problem == "hyperbolic") {
    const Manifold hyp = Manifold::hyperbolic(2);
    const Point q = hyp.retract(Point{Eigen::Vector3d(0.0, cfg.q[0], cfg.q[1])});
    inst.objective = hyperbolic_distance_objective(q, cfg.mu);
    inst.x0 = hyp.exp(q, hyp.random_tangent(q, rng, cfg.init_distance));
    inst.zeta = zeta(hyp.bounds(cfg.diameter));
  } else {
    inst.objective = euclidean_quadratic(cfg.n, cfg.condition, cfg.seed);
    inst.x0 = inst.objective.manifold.random_point(rng);
  }
  if (cfg.convexity) {
    if (*cfg.convexity == "convex") inst.objective.convexity = ConvexityClass::convex();
    else if (*cfg.convexity == "wqc") inst.objective.convexity = ConvexityClass::weakly_quasi_convex(cfg.alpha);
    else inst.objective.convexity = ConvexityClass::strongly_convex(cfg.mu);
  }
  return inst;
}

IntegratorConfig integrator_config(const ExperimentConfig &cfg, const ProblemInstance &problem) {
  IntegratorConfig c;
  c.h = cfg.step();
  c.p = cfg.p;
  c.C = cfg.C;
  c.version = cfg.algo == "bregman-II" ? AlgorithmVersion::II : AlgorithmVersion::I;
  c.convexity = problem.objective.convexity;
  c.zeta = problem.zeta;
  c.max_iters = cfg.iters;
  c.stop_tolerance = cfg.tol;
  c.stop_on = cfg.stop == "gap" ? StopCriterion::FunctionGap : StopCriterion::GradientNorm;
  c.record_every = cfg.record_every;
  c.seed = cfg.seed;
  return c;
}

std::vector<ResultRow> rows_from_record(const TrajectoryRecord &record) {
  std::vector<ResultRow> rows;
  rows.reserve(record.samples.size());
  for (const auto &s : record.samples)
    rows.push_back({s.k, s.t, s.f_gap, s.grad_norm, s.lyapunov, s.bound});
  return rows;
}

void write_csv(std::ostream &out, const std::vector<ResultRow> &rows) {
  const auto opt = [](const std::optional<double> &v) { return v ? format_double(*v) : std::string(); };
  out << kCsvHeader << '\n';
  for (const auto &r : rows)
    out << r.k << ',' << format_double(r.t) << ',' << opt(r.f_gap) << ',' << opt(r.grad_norm) << ','
        << opt(r.lyapunov) << ',' << opt(r.bound) << '\n';
}

void write_csv(const std::filesystem::path &path, const std::vector<ResultRow> &rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  write_csv(out, rows);
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

std::vector<ResultRow> read_csv(std::istream &in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != kCsvHeader)
    throw Error("<csv>:1: expected header '" + std::string(kCsvHeader) + "'");
  std::vector<ResultRow> rows;
  long lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(trim(f));
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    if (fields.size() != 6)
      throw Error("<csv>:" + std::to_string(lineno) + ": expected 6 fields, got " + std::to_string(fields.size()));
    ResultRow r;
    r.k = parse_long("k", fields[0]);
    r.t = parse_double("t", fields[1]);
    r.f_gap = parse_optional(fields[2], "<csv>", lineno);
    r.grad_norm = parse_optional(fields[3], "<csv>", lineno);
    r.lyapunov = parse_optional(fields[4], "<csv>", lineno);
    r.bound = parse_optional(fields[5], "<csv>", lineno);
    rows.push_back(r);
  }
  return rows;
}

std::vector<ResultRow> read_csv(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read '" + path.string() + "'");
  try {
    return read_csv(in);
  } catch (const Error &e) {
    throw Error(path.string() + ": " + e.what());
  }
}

RunSummary run_experiment(const ExperimentConfig &cfg) {
  const ProblemInstance prob = make_problem(cfg);
  const IntegratorConfig ic = integrator_config(cfg, prob);
  RunSummary s{.name = cfg.name, .algorithm = cfg.algo, .csv = cfg.out};

  TrajectoryRecord rec;
  try {
    if (cfg.algo == "rgd") {
      rec = run_gradient_descent(ic, prob.objective, prob.x0);
    } else if (cfg.algo == "reference") {
      const BregmanParameters q = ic.params();
      const double t0 = q.convexity.polynomial() ? ic.h : 0.0;
      rec = reference_trajectory(q, prob.objective, {prob.x0, prob.objective.manifold.zero(prob.x0), t0},
                                 cfg.t_end, ic.h, cfg.record_every);
      rec.converged = true;
    } else {
      rec = run(ic, prob.objective, prob.x0);
    }
  } catch (const DivergenceError &e) {
    s.diverged = true;
    s.message = e.what();
    rec = e.partial();
    s.last_finite_iteration = rec.samples.empty() ? 0 : rec.samples.back().k;
  }

  write_csv(cfg.out, rows_from_record(rec));
  s.iterations = rec.iterations;
  s.converged = rec.converged && !s.diverged;
  if (!s.diverged && !rec.samples.empty()) s.last_finite_iteration = rec.samples.back().k;

  const std::vector<ResultRow> rows = read_csv(cfg.out);
  std::vector<double> t, gap;
  for (const auto &r : rows) {
    if (r.bound && r.f_gap) {
      if (*r.f_gap > *r.bound) ++s.bound_violations;
      s.bound_holds = s.bound_violations == 0;
    }
    if (r.f_gap && *r.f_gap > 0.0) {
      t.push_back(r.t);
      gap.push_back(*r.f_gap);
    }
  }
  if (!rows.empty()) {
    s.final_gap = rows.back().f_gap;
    s.final_grad_norm = rows.back().grad_norm;
  }
  try {
    s.rate = estimate_rate_tail(t, gap, 0.6);
  } catch (const EstimationError &e) {
    s.rate_error = e.what();
  }
  return s;
}

std::vector<RunSummary> run_experiments(const std::vector<ExperimentConfig> &cfgs) {
  for (const auto &c : cfgs) c.validate();
  std::vector<RunSummary> out(cfgs.size());
  const long n = static_cast<long>(cfgs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = run_experiment(cfgs[i]);
    } catch (const std::exception &e) {
      out[i].name = cfgs[i].name;
      out[i].csv = cfgs[i].out;
      out[i].diverged = true;
      out[i].message = e.what();
    }
  }
  return out;
}

void print_summary(std::ostream &out, const RunSummary &s) {
  const auto num = [](const std::optional<double> &v) { return v ? format_double(*v) : std::string("n/a"); };
  out << "experiment: " << s.name << '\n'
      << "algorithm: " << s.algorithm << '\n'
      << "csv: " << s.csv.string() << '\n'
      << "status: " << (s.diverged ? "diverged" : s.converged ? "converged" : "max-iters") << '\n';
  if (s.diverged) out << "message: " << s.message << '\n' << "last_finite_iteration: " << s.last_finite_iteration << '\n';
  out << "iterations: " << s.iterations << '\n'
      << "final_gap: " << num(s.final_gap) << '\n'
      << "final_grad_norm: " << num(s.final_grad_norm) << '\n';
  if (s.rate)
    out << "rate_slope: " << format_double(s.rate->slope) << '\n'
        << "rate_window: [" << format_double(s.rate->t_lo) << ", " << format_double(s.rate->t_hi) << "]\n"
        << "rate_r2: " << format_double(s.rate->r_squared) << '\n';
  else
    out << "rate_slope: n/a (" << s.rate_error << ")\n";
  if (s.bound_holds)
    out << "bound_check: " << (*s.bound_holds ? "pass" : "fail") << " (" << s.bound_violations << " violations)\n";
  else
    out << "bound_check: n/a\n";
}

std::vector<std::pair<std::string, std::string>> problem_catalog() {
  return {
      {"rayleigh", "f(v) = -v^T A v on S^{n-1}; A = Q diag(eigs) Q^T, eigs log-spaced over [eig_lo, eig_hi] "
                   "(default n=10, [1,100]); class wqc(alpha=1)"},
      {"hyperbolic", "f(x) = d(x,q)^2/2 on the hyperbolic plane (hyperboloid model); x0 at init_distance "
                     "from q (default 1); class sc(mu=1), zeta from diameter (default 1)"},
      {"quadratic", "f(x) = x^T Q x/2 on R^n, spectrum log-spaced over [1, condition] (default n=10, 100); "
                    "class sc(mu=1)"},
  };
}

}  // namespace riemann_accel
