#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace riemann_accel::verify {

/// Outcome of one property check. `worst` is the largest observed residual
/// (or ratio) and `tolerance` the limit it is held to; `time_limit` of 0
/// means the check is not timed.
struct Check {
  std::string name;
  bool passed = false;
  double worst = 0.0;
  double tolerance = 0.0;
  std::string detail;
  double seconds = 0.0;
  double time_limit = 0.0;
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;
  double seconds = 0.0;
  bool passed() const;
};

// geometry
Check exp_log_roundtrip();
Check transport_isometry();
Check gradient_finite_difference();
Check christoffel_projection();
Check geodesic_constant_speed();
Check zeta_at_least_one();

// dynamics
Check legendre_duality();
Check el_coordinate_residual();
Check log_derivative_bound();
/// Transformed-Hamiltonian flow stays on its zero level set and tracks the
/// direct dynamics.
Check poincare_consistency();

// convergence
/// Reference EL flow on the convex Rayleigh problem, p in {2, 4}: gap below
/// 1.5x the polynomial bound, Lyapunov energy non-increasing up to K h^2.
Check continuous_rate();
/// Strongly convex hyperbolic problem: gap below 1.5x the exponential bound.
Check strongly_convex_bound();
/// Semi-implicit scheme on the default Rayleigh problem: slope of the p = 6
/// run, p = 6 vs p = 2 and version II vs version I iteration counts.
std::vector<Check> discrete_findings();
Check rate_fit_exactness();

// rescaling
Check time_rescaling();

const std::vector<std::string> &suite_names();
/// Throws ConfigError for names outside suite_names() and "all".
SuiteReport run_suite(const std::string &name);
void print_check(std::ostream &out, const Check &c);
void print_report(std::ostream &out, const SuiteReport &r);

}  // namespace riemann_accel::verify
