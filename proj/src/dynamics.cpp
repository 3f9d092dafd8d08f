#include "riemann_accel/dynamics.hpp"

#include <cmath>

namespace riemann_accel {

namespace {

void require_positive_time(double t, const char *what) {
  if (!(t > 0.0)) throw DomainError(std::string(what) + ": time must be positive");
}

void require_polynomial(const BregmanParameters &params, const char *what) {
  if (!params.convexity.polynomial())
    throw DomainError(std::string(what) + ": only defined for convex and WQC classes");
}

// H = kinetic(t)/2 <<R,R>> + potential(t) f for the polynomial classes.
double kinetic_coefficient(double t, const BregmanParameters &q) {
  return q.p / std::pow(t, q.lambda * q.p + 1.0);
}

double potential_coefficient(double t, const BregmanParameters &q) {
  return q.C * q.p * std::pow(t, (q.lambda + 1.0) * q.p - 1.0);
}

}  // namespace

BregmanParameters BregmanParameters::make(double p, double C, double zeta, ConvexityClass convexity) {
  if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("Bregman parameters: p must be > 0");
  if (!(C > 0.0) || !std::isfinite(C)) throw DomainError("Bregman parameters: C must be > 0");
  if (!(zeta >= 1.0) || !std::isfinite(zeta)) throw DomainError("Bregman parameters: zeta must be >= 1");
  BregmanParameters out;
  out.p = p;
  out.C = C;
  out.zeta = zeta;
  out.convexity = convexity;
  switch (convexity.kind()) {
    case ConvexityClass::Kind::Convex:
      out.lambda = zeta;
      break;
    case ConvexityClass::Kind::WeaklyQuasiConvex:
      out.lambda = zeta / convexity.alpha();
      break;
    case ConvexityClass::Kind::StronglyConvex:
      out.lambda = zeta;
      out.eta = (1.0 / std::sqrt(zeta) + std::sqrt(zeta)) * std::sqrt(convexity.mu());
      break;
  }
  return out;
}

double lagrangian(const DynamicsState &s, const BregmanParameters &q, const Objective &f) {
  const double vv = f.manifold.metric(s.v, s.v);
  if (!q.convexity.polynomial()) {
    const double e = std::exp(q.eta * s.t);
    return 0.5 * e * vv - e * f.value(s.x);
  }
  require_positive_time(s.t, "lagrangian");
  return std::pow(s.t, q.lambda * q.p + 1.0) / (2.0 * q.p) * vv -
         potential_coefficient(s.t, q) * f.value(s.x);
}

double hamiltonian(const Point &x, const Tangent &r, double t, const BregmanParameters &q,
                   const Objective &f) {
  f.manifold.require_base(r, x);
  const double rr = f.manifold.metric(r, r);
  if (!q.convexity.polynomial())
    return 0.5 * std::exp(-q.eta * t) * rr + std::exp(q.eta * t) * f.value(x);
  require_positive_time(t, "hamiltonian");
  return 0.5 * kinetic_coefficient(t, q) * rr + potential_coefficient(t, q) * f.value(x);
}

Tangent momentum_from_velocity(const DynamicsState &s, const BregmanParameters &q) {
  if (!q.convexity.polynomial()) return s.v * std::exp(q.eta * s.t);
  require_positive_time(s.t, "momentum");
  return s.v * (std::pow(s.t, q.lambda * q.p + 1.0) / q.p);
}

Tangent velocity_from_momentum(const Tangent &r, double t, const BregmanParameters &q) {
  if (!q.convexity.polynomial()) return r * std::exp(-q.eta * t);
  require_positive_time(t, "velocity");
  return r * kinetic_coefficient(t, q);
}

Tangent el_acceleration(const DynamicsState &s, const BregmanParameters &q, const Objective &f) {
  f.manifold.require_base(s.v, s.x);
  const Tangent g = riemann_accel::riemannian_gradient(f, s.x);
  if (!q.convexity.polynomial()) return s.v * (-q.eta) - g;
  require_positive_time(s.t, "el_acceleration");
  const double damping = (q.lambda * q.p + 1.0) / s.t;
  const double force = q.C * q.p * q.p * std::pow(s.t, q.p - 2.0);
  return {s.x, Vector(-damping * s.v.vec - force * g.vec)};
}

double lyapunov_energy(const DynamicsState &s, const Point &x_star, const BregmanParameters &q,
                       const Objective &f) {
  require_polynomial(q, "lyapunov_energy");
  const Manifold &m = f.manifold;
  m.require_base(s.v, s.x);
  const double a = q.convexity.kind() == ConvexityClass::Kind::WeaklyQuasiConvex ? q.convexity.alpha() : 1.0;
  const Tangent to_star = m.log(s.x, x_star);
  const double f_star = f.optimal_value.value_or(f.value(x_star));
  const double gap = f.value(s.x) - f_star;
  const Tangent mix = s.v * (a * s.t / q.p) - to_star;
  return q.C * a * a * std::pow(s.t, q.p) * gap +
         0.5 * (q.zeta - 1.0) * m.metric(to_star, to_star) + 0.5 * m.metric(mix, mix);
}

double convergence_bound(double t, const BregmanParameters &q, double log_dist0, double f_gap0) {
  const double d2 = log_dist0 * log_dist0;
  switch (q.convexity.kind()) {
    case ConvexityClass::Kind::Convex:
      require_positive_time(t, "convergence_bound");
      return q.zeta * d2 / (2.0 * q.C * std::pow(t, q.p));
    case ConvexityClass::Kind::WeaklyQuasiConvex: {
      require_positive_time(t, "convergence_bound");
      const double a = q.convexity.alpha();
      return q.zeta * d2 / (2.0 * q.C * a * a * std::pow(t, q.p));
    }
    case ConvexityClass::Kind::StronglyConvex: {
      if (!(t >= 0.0)) throw DomainError("convergence_bound: time must be non-negative");
      const double mu = q.convexity.mu();
      return (mu * d2 + 2.0 * f_gap0) / (2.0 * std::exp(std::sqrt(mu / q.zeta) * t));
    }
  }
  return 0.0;
}

double rescale_time(double t, double p, double p_ring) {
  if (!(t >= 0.0) || !(p > 0.0) || !(p_ring > 0.0))
    throw DomainError("rescale_time: need t >= 0 and p, p_ring > 0");
  return std::pow(t, p_ring / p);
}

double monitor_function(double t, double p, double p_ring) {
  require_positive_time(t, "monitor_function");
  if (!(p > 0.0) || !(p_ring > 0.0)) throw DomainError("monitor_function: p, p_ring must be > 0");
  return p / p_ring * std::pow(t, 1.0 - p_ring / p);
}

double poincare_hamiltonian(const ExtendedState &es, const BregmanParameters &q, double p_ring,
                            const Objective &f) {
  require_polynomial(q, "poincare_hamiltonian");
  require_positive_time(es.xt, "poincare_hamiltonian");
  return monitor_function(es.xt, q.p, p_ring) * (hamiltonian(es.x, es.r, es.xt, q, f) + es.rt);
}

ExtendedDerivative poincare_vector_field(const ExtendedState &es, const BregmanParameters &q,
                                         double p_ring, const Objective &f) {
  require_polynomial(q, "poincare_vector_field");
  require_positive_time(es.xt, "poincare_vector_field");
  const Manifold &m = f.manifold;
  m.require_base(es.r, es.x);

  const double t = es.xt;
  const double g = monitor_function(t, q.p, p_ring);
  const double dg = q.p / p_ring * (1.0 - p_ring / q.p) * std::pow(t, -p_ring / q.p);
  const double a = kinetic_coefficient(t, q);
  const double da = -(q.lambda * q.p + 1.0) * a / t;
  const double b = potential_coefficient(t, q);
  const double db = ((q.lambda + 1.0) * q.p - 1.0) * b / t;

  const double rr = m.metric(es.r, es.r);
  const double fx = f.value(es.x);
  const Tangent grad = riemann_accel::riemannian_gradient(f, es.x);

  ExtendedDerivative d;
  d.dx = es.r * (g * a);
  d.dxt = g;
  d.dr = grad * (-g * b);
  d.drt = -(dg * (0.5 * a * rr + b * fx + es.rt) + g * (0.5 * da * rr + db * fx));
  return d;
}

ExtendedState poincare_initial_state(const DynamicsState &s0, const BregmanParameters &q,
                                     const Objective &f) {
  require_polynomial(q, "poincare_initial_state");
  ExtendedState es;
  es.x = s0.x;
  es.xt = s0.t;
  es.r = momentum_from_velocity(s0, q);
  es.rt = -hamiltonian(es.x, es.r, es.xt, q, f);
  return es;
}

}  // namespace riemann_accel
