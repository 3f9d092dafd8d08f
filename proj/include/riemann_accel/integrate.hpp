#pragma once

#include "riemann_accel/dynamics.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace riemann_accel {

enum class AlgorithmVersion { I, II };
enum class StopCriterion { GradientNorm, FunctionGap };

struct IntegratorConfig {
  double h = 1e-3;
  double p = 2.0;
  double C = 0.25;
  AlgorithmVersion version = AlgorithmVersion::I;
  ConvexityClass convexity = ConvexityClass::convex();
  double zeta = 1.0;
  long max_iters = 1000;
  double stop_tolerance = 0.0;
  StopCriterion stop_on = StopCriterion::GradientNorm;
  long record_every = 1;
  std::uint64_t seed = 0;

  void validate() const;
  BregmanParameters params() const { return BregmanParameters::make(p, C, zeta, convexity); }
};

struct Sample {
  long k = 0;
  double t = 0.0;
  Point x;
  Tangent v;
  std::optional<double> f_gap;
  std::optional<double> grad_norm;
  std::optional<double> lyapunov;
  std::optional<double> bound;
};

struct TrajectoryRecord {
  std::vector<Sample> samples;
  IntegratorConfig config;
  std::string algorithm;
  std::string objective;
  long iterations = 0;
  bool converged = false;
};

/// Non-finite state or blow-up of the optimality gap. Carries the trajectory
/// up to the last finite iterate.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string &what, long iteration, TrajectoryRecord partial = {})
      : Error(what), iteration_(iteration), partial_(std::move(partial)) {}
  long iteration() const { return iteration_; }
  const TrajectoryRecord &partial() const { return partial_; }

 private:
  long iteration_;
  TrajectoryRecord partial_;
};

struct StepCoefficients {
  double b = 0.0;
  double c = 0.0;
};

/// Velocity damping b_k and gradient weight c_k of the semi-implicit scheme.
/// Polynomial classes use b_k = 1 - (lambda p + 1)/k and c_k = C p^2 (kh)^(p-2);
/// the strongly convex class uses b_k = 1 - h eta and c_k = 1.
StepCoefficients step_coefficients(long k, const IntegratorConfig &config);

struct StepResult {
  Point x;
  Tangent v;
};

/// One iteration of the semi-implicit Euler scheme:
///
///   a_k     = b_k v_k - h c_k g_k
///   x_{k+1} = Exp_{x_k}(h a_k)
///   v_{k+1} = transport of a_k from x_k to x_{k+1}
///
/// where g_k = grad f(x_k) (version I) or the gradient at Exp_{x_k}(h b_k v_k)
/// transported back to x_k (version II).
StepResult semi_implicit_step(const Point &x, const Tangent &v, long k, const IntegratorConfig &config,
                              const Objective &f);

/// Iterates from k = 1 (t = h) until the stop criterion or max_iters.
TrajectoryRecord run(const IntegratorConfig &config, const Objective &f, const Point &x0,
                     std::optional<Tangent> v0 = std::nullopt);

/// x_{k+1} = Exp_{x_k}(-h grad f(x_k)).
Point gradient_descent_step(const Point &x, const IntegratorConfig &config, const Objective &f);
TrajectoryRecord run_gradient_descent(const IntegratorConfig &config, const Objective &f,
                                      const Point &x0);

/// First-order system on the tangent bundle, in ambient coordinates. The state
/// is [x; w; scalars...] where x is a point of `manifold` and w a tangent
/// vector at x.
struct OdeSystem {
  Manifold manifold;
  int scalars = 0;
  std::function<Vector(double t, const Vector &y)> rhs;

  Eigen::Index size() const { return 2 * manifold.ambient_dim() + scalars; }
  /// Retract x and tangent-project w.
  void project(Vector &y) const;
};

struct ReferenceSample {
  double t = 0.0;
  Vector y;
};

Vector pack_state(const Point &x, const Tangent &w, std::initializer_list<double> scalars = {});
Point state_point(const OdeSystem &sys, const Vector &y);
Tangent state_tangent(const OdeSystem &sys, const Vector &y);

/// Projected classical RK4. Integrates from t0 through each of the sorted
/// `output_times`, splitting every interval into equal substeps no longer
/// than h_ref. Returns one sample per output time.
std::vector<ReferenceSample> reference_integrate(const OdeSystem &sys, const Vector &y0, double t0,
                                                 std::span<const double> output_times, double h_ref);

/// Uniform grid version: samples every `record_every` steps plus the endpoint.
/// The initial state is included as the first sample.
std::vector<ReferenceSample> reference_integrate(const OdeSystem &sys, const Vector &y0, double t0,
                                                 double t1, double h_ref, long record_every = 1);

OdeSystem geodesic_system(const Manifold &m);
/// x' = v, nabla_v v = el_acceleration.
OdeSystem el_system(const BregmanParameters &params, const Objective &f);
/// Extended state [x; r; xt; rt] evolving in fictive time.
OdeSystem poincare_system(const BregmanParameters &params, double p_ring, const Objective &f);

/// Reference trajectory of the Euler-Lagrange flow as a TrajectoryRecord with
/// gap, gradient norm, Lyapunov energy and theorem bound filled in where known.
TrajectoryRecord reference_trajectory(const BregmanParameters &params, const Objective &f,
                                      const DynamicsState &s0, double t1, double h_ref,
                                      long record_every = 1);

struct RateEstimate {
  double slope = 0.0;
  double intercept = 0.0;
  double t_lo = 0.0;
  double t_hi = 0.0;
  double r_squared = 0.0;
  std::size_t count = 0;
};

/// Least-squares fit of log(gap) against log(t) over samples with t in [t_lo, t_hi].
RateEstimate estimate_rate(std::span<const double> t, std::span<const double> gap, double t_lo,
                           double t_hi);
RateEstimate estimate_rate(const TrajectoryRecord &record, double t_lo, double t_hi);
/// Fit over the trailing `fraction` of the recorded samples.
RateEstimate estimate_rate_tail(std::span<const double> t, std::span<const double> gap,
                                double fraction = 0.6);

}  // namespace riemann_accel
