#pragma once

#include "riemann_accel/objective.hpp"

namespace riemann_accel {

/// Parameters of the p-Bregman family. `lambda` multiplies p in the damping
/// coefficient: zeta for convex objectives, zeta/alpha for alpha-WQC ones.
/// `eta` is the strongly convex friction (1/sqrt(zeta) + sqrt(zeta)) sqrt(mu).
struct BregmanParameters {
  double p = 2.0;
  double C = 0.25;
  double zeta = 1.0;
  ConvexityClass convexity = ConvexityClass::convex();
  double lambda = 1.0;
  double eta = 0.0;

  static BregmanParameters make(double p, double C, double zeta, ConvexityClass convexity);
};

struct DynamicsState {
  Point x;
  Tangent v;
  double t = 1.0;
};

/// Point of the Poincare-extended phase space. `r` is the momentum covector
/// at x, stored as its metric-dual tangent vector.
struct ExtendedState {
  Point x;
  double xt = 1.0;
  Tangent r;
  double rt = 0.0;
};

/// d/dtau of an ExtendedState. `dr` is the covariant derivative of r along
/// the flow; add Manifold::normal_term to obtain the ambient derivative.
struct ExtendedDerivative {
  Tangent dx;
  double dxt = 0.0;
  Tangent dr;
  double drt = 0.0;
};

double lagrangian(const DynamicsState &s, const BregmanParameters &params, const Objective &f);

/// Bregman Hamiltonian with momentum r given through the musical isomorphism.
double hamiltonian(const Point &x, const Tangent &r, double t, const BregmanParameters &params,
                   const Objective &f);

/// Legendre transform of the velocity: r = dL/dV (as a tangent vector).
Tangent momentum_from_velocity(const DynamicsState &s, const BregmanParameters &params);
Tangent velocity_from_momentum(const Tangent &r, double t, const BregmanParameters &params);

/// Covariant acceleration nabla_V V prescribed by the Euler-Lagrange equation.
Tangent el_acceleration(const DynamicsState &s, const BregmanParameters &params, const Objective &f);

/// Lyapunov energy certifying the O(1/t^p) rate (convex and WQC classes):
///
///   E = C a^2 t^p (f(X) - f*) + (zeta-1)/2 |Log_X x*|^2 + 1/2 |(a t/p) V - Log_X x*|^2
///
/// with a = alpha for WQC objectives and a = 1 for convex ones.
double lyapunov_energy(const DynamicsState &s, const Point &x_star, const BregmanParameters &params,
                       const Objective &f);

/// Right-hand side of the convergence theorem for the parameters' class.
/// log_dist0 = |Log_{x0} x*|, f_gap0 = f(x0) - f* (used by the SC bound only).
double convergence_bound(double t, const BregmanParameters &params, double log_dist0,
                         double f_gap0);

/// t^(p_ring/p): maps a p_ring-dynamics clock onto the p-dynamics trajectory.
double rescale_time(double t, double p, double p_ring);

/// dt/dtau = (p/p_ring) t^(1 - p_ring/p).
double monitor_function(double t, double p, double p_ring);

/// monitor(xt) * (H_p(x, r, xt) + rt).
double poincare_hamiltonian(const ExtendedState &es, const BregmanParameters &params, double p_ring,
                            const Objective &f);

/// Canonical equations of the Poincare-transformed Hamiltonian.
ExtendedDerivative poincare_vector_field(const ExtendedState &es, const BregmanParameters &params,
                                         double p_ring, const Objective &f);

/// Extended state at physical time t0 with velocity v0 on the zero level set.
ExtendedState poincare_initial_state(const DynamicsState &s0, const BregmanParameters &params,
                                     const Objective &f);

}  // namespace riemann_accel
