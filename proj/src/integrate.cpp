#include "riemann_accel/integrate.hpp"

#include <algorithm>
#include <cmath>

namespace riemann_accel {

namespace {

constexpr double kBlowUpFactor = 1e6;

bool finite(const Vector &v) { return v.allFinite(); }

struct Monitor {
  const Objective &f;
  std::optional<BregmanParameters> params;
  std::optional<double> gap0;
  double log_dist0 = 0.0;

  Monitor(const Objective &obj, std::optional<BregmanParameters> q, const Point &x0)
      : f(obj), params(q) {
    if (f.optimal_value) gap0 = f.value(x0) - *f.optimal_value;
    if (f.minimizer) log_dist0 = f.manifold.distance(x0, *f.minimizer);
  }

  Sample sample(long k, double t, const Point &x, const Tangent &v) const {
    Sample s{.k = k, .t = t, .x = x, .v = v};
    if (f.optimal_value) s.f_gap = f.value(x) - *f.optimal_value;
    s.grad_norm = f.manifold.norm(riemannian_gradient(f, x));
    if (params && f.minimizer) {
      if (params->convexity.polynomial() && t > 0.0) {
        try {
          s.lyapunov = lyapunov_energy({x, v, t}, *f.minimizer, *params, f);
        } catch (const CutLocusError &) {
        }
      }
      if (t > 0.0 || !params->convexity.polynomial())
        s.bound = convergence_bound(t, *params, log_dist0, gap0.value_or(0.0));
    }
    return s;
  }

  double stop_value(const IntegratorConfig &c, const Sample &s) const {
    return c.stop_on == StopCriterion::GradientNorm ? *s.grad_norm : *s.f_gap;
  }

  bool blown_up(const Sample &s) const {
    return gap0 && s.f_gap && *gap0 > 0.0 && *s.f_gap > kBlowUpFactor * *gap0;
  }
};

std::string algorithm_name(const IntegratorConfig &c) {
  return c.version == AlgorithmVersion::I ? "bregman-I" : "bregman-II";
}

Vector rk4_step(const OdeSystem &sys, double t, const Vector &y, double h) {
  const Vector k1 = sys.rhs(t, y);
  const Vector k2 = sys.rhs(t + 0.5 * h, y + 0.5 * h * k1);
  const Vector k3 = sys.rhs(t + 0.5 * h, y + 0.5 * h * k2);
  const Vector k4 = sys.rhs(t + h, y + h * k3);
  Vector out = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  sys.project(out);
  return out;
}

}  // namespace

void IntegratorConfig::validate() const {
  if (!(h > 0.0) || !std::isfinite(h)) throw ConfigError("h must be > 0");
  if (!(p > 0.0) || !std::isfinite(p)) throw ConfigError("p must be > 0");
  if (!(C > 0.0) || !std::isfinite(C)) throw ConfigError("C must be > 0");
  if (!(zeta >= 1.0)) throw ConfigError("zeta must be >= 1");
  if (max_iters < 1) throw ConfigError("max_iters must be >= 1");
  if (!(stop_tolerance >= 0.0)) throw ConfigError("stop_tolerance must be >= 0");
  if (record_every < 1) throw ConfigError("record_every must be >= 1");
}

StepCoefficients step_coefficients(long k, const IntegratorConfig &c) {
  const BregmanParameters q = c.params();
  if (!q.convexity.polynomial()) return {1.0 - c.h * q.eta, 1.0};
  if (k < 1) throw DomainError("step_coefficients: k must be >= 1 for polynomial classes");
  const double kd = static_cast<double>(k);
  return {1.0 - (q.lambda * q.p + 1.0) / kd, q.C * q.p * q.p * std::pow(kd * c.h, q.p - 2.0)};
}

StepResult semi_implicit_step(const Point &x, const Tangent &v, long k, const IntegratorConfig &c,
                              const Objective &f) {
  const Manifold &m = f.manifold;
  m.require_base(v, x);
  const auto [b, coef] = step_coefficients(k, c);

  Tangent g;
  if (c.version == AlgorithmVersion::I) {
    g = riemannian_gradient(f, x);
  } else {
    const Point look_ahead = m.exp(x, v * (c.h * b));
    g = m.transport(look_ahead, x, riemannian_gradient(f, look_ahead));
  }
  const Tangent a{x, Vector(b * v.vec - c.h * coef * g.vec)};
  if (!finite(a.vec)) throw DivergenceError("non-finite update at iteration " + std::to_string(k), k);

  StepResult out;
  out.x = m.exp(x, a * c.h);
  out.v = m.transport(x, out.x, a);
  if (!finite(out.x.coords) || !finite(out.v.vec))
    throw DivergenceError("non-finite iterate at iteration " + std::to_string(k), k);
  return out;
}

TrajectoryRecord run(const IntegratorConfig &c, const Objective &f, const Point &x0,
                     std::optional<Tangent> v0) {
  c.validate();
  if (c.stop_on == StopCriterion::FunctionGap && !f.optimal_value)
    throw ConfigError("gap-based stopping needs a known optimal value");
  const Manifold &m = f.manifold;
  Point x = m.retract(x0);
  Tangent v = v0 ? m.project(x, v0->vec) : m.zero(x);

  const Monitor mon(f, c.params(), x);
  TrajectoryRecord rec{.config = c, .algorithm = algorithm_name(c), .objective = f.name};

  long k = 1;
  Sample current = mon.sample(k, k * c.h, x, v);
  rec.samples.push_back(current);
  bool recorded = true;

  for (long step = 0; step < c.max_iters; ++step) {
    if (mon.stop_value(c, current) <= c.stop_tolerance) {
      rec.converged = true;
      break;
    }
    StepResult next;
    try {
      next = semi_implicit_step(x, v, k, c, f);
    } catch (const DivergenceError &e) {
      if (!recorded) rec.samples.push_back(current);
      rec.iterations = step;
      throw DivergenceError(e.what(), k, std::move(rec));
    } catch (const CutLocusError &e) {
      // A step long enough to reach the cut locus: the iteration has blown up.
      if (!recorded) rec.samples.push_back(current);
      rec.iterations = step;
      throw DivergenceError(std::string(e.what()) + " at iteration " + std::to_string(k), k,
                            std::move(rec));
    }
    x = std::move(next.x);
    v = std::move(next.v);
    ++k;
    rec.iterations = step + 1;
    current = mon.sample(k, k * c.h, x, v);
    recorded = false;
    if (mon.blown_up(current)) {
      rec.samples.push_back(current);
      throw DivergenceError("optimality gap exceeded 1e6 x its initial value at iteration " +
                                std::to_string(k),
                            k, std::move(rec));
    }
    if ((k - 1) % c.record_every == 0) {
      rec.samples.push_back(current);
      recorded = true;
    }
  }
  if (!rec.converged && mon.stop_value(c, current) <= c.stop_tolerance) rec.converged = true;
  if (!recorded) rec.samples.push_back(current);
  return rec;
}

Point gradient_descent_step(const Point &x, const IntegratorConfig &c, const Objective &f) {
  if (!(c.h > 0.0)) throw ConfigError("h must be > 0");
  return f.manifold.exp(x, riemannian_gradient(f, x) * (-c.h));
}

TrajectoryRecord run_gradient_descent(const IntegratorConfig &c, const Objective &f, const Point &x0) {
  c.validate();
  if (c.stop_on == StopCriterion::FunctionGap && !f.optimal_value)
    throw ConfigError("gap-based stopping needs a known optimal value");
  const Manifold &m = f.manifold;
  Point x = m.retract(x0);
  const Monitor mon(f, std::nullopt, x);
  TrajectoryRecord rec{.config = c, .algorithm = "rgd", .objective = f.name};

  long k = 1;
  Sample current = mon.sample(k, k * c.h, x, m.zero(x));
  rec.samples.push_back(current);
  bool recorded = true;
  for (long step = 0; step < c.max_iters; ++step) {
    if (mon.stop_value(c, current) <= c.stop_tolerance) {
      rec.converged = true;
      break;
    }
    x = gradient_descent_step(x, c, f);
    ++k;
    rec.iterations = step + 1;
    current = mon.sample(k, k * c.h, x, m.zero(x));
    recorded = false;
    if (!finite(x.coords) || mon.blown_up(current)) {
      rec.samples.push_back(current);
      throw DivergenceError("gradient descent diverged at iteration " + std::to_string(k), k,
                            std::move(rec));
    }
    if ((k - 1) % c.record_every == 0) {
      rec.samples.push_back(current);
      recorded = true;
    }
  }
  if (!rec.converged && mon.stop_value(c, current) <= c.stop_tolerance) rec.converged = true;
  if (!recorded) rec.samples.push_back(current);
  return rec;
}

// ---------------------------------------------------------------------------
// Reference integration

void OdeSystem::project(Vector &y) const {
  const Eigen::Index n = manifold.ambient_dim();
  const Point x = manifold.retract(Point{y.head(n)});
  y.head(n) = x.coords;
  y.segment(n, n) = manifold.project(x, y.segment(n, n)).vec;
}

Vector pack_state(const Point &x, const Tangent &w, std::initializer_list<double> scalars) {
  const Eigen::Index n = x.dim();
  Vector y(2 * n + static_cast<Eigen::Index>(scalars.size()));
  y.head(n) = x.coords;
  y.segment(n, n) = w.vec;
  Eigen::Index i = 2 * n;
  for (double s : scalars) y(i++) = s;
  return y;
}

Point state_point(const OdeSystem &sys, const Vector &y) {
  return Point{y.head(sys.manifold.ambient_dim())};
}

Tangent state_tangent(const OdeSystem &sys, const Vector &y) {
  const Eigen::Index n = sys.manifold.ambient_dim();
  return {Point{y.head(n)}, Vector(y.segment(n, n))};
}

std::vector<ReferenceSample> reference_integrate(const OdeSystem &sys, const Vector &y0, double t0,
                                                 std::span<const double> output_times, double h_ref) {
  if (!(h_ref > 0.0)) throw DomainError("reference_integrate: h_ref must be > 0");
  if (y0.size() != sys.size()) throw DomainError("reference_integrate: state has wrong size");
  std::vector<ReferenceSample> out;
  out.reserve(output_times.size());
  Vector y = y0;
  sys.project(y);
  double t = t0;
  long step = 0;
  for (double target : output_times) {
    if (target < t) throw DomainError("reference_integrate: output times must be sorted and >= t0");
    const double span = target - t;
    const long n = span == 0.0 ? 0 : std::max<long>(1, static_cast<long>(std::ceil(span / h_ref - 1e-9)));
    const double h = n == 0 ? 0.0 : span / static_cast<double>(n);
    for (long i = 0; i < n; ++i) {
      y = rk4_step(sys, t, y, h);
      t = i + 1 == n ? target : t + h;
      ++step;
      if (!finite(y)) throw DivergenceError("reference integration produced a non-finite state", step);
    }
    out.push_back({target, y});
  }
  return out;
}

std::vector<ReferenceSample> reference_integrate(const OdeSystem &sys, const Vector &y0, double t0,
                                                 double t1, double h_ref, long record_every) {
  if (!(h_ref > 0.0)) throw DomainError("reference_integrate: h_ref must be > 0");
  if (!(t1 >= t0)) throw DomainError("reference_integrate: need t1 >= t0");
  if (record_every < 1) throw DomainError("reference_integrate: record_every must be >= 1");
  const long n = std::max<long>(1, static_cast<long>(std::ceil((t1 - t0) / h_ref - 1e-9)));
  const double h = (t1 - t0) / static_cast<double>(n);
  std::vector<double> times;
  times.push_back(t0);
  for (long i = record_every; i < n; i += record_every) times.push_back(t0 + h * static_cast<double>(i));
  times.push_back(t1);
  return reference_integrate(sys, y0, t0, times, h);
}

OdeSystem geodesic_system(const Manifold &m) {
  OdeSystem sys{.manifold = m};
  sys.rhs = [m](double, const Vector &y) {
    const Eigen::Index n = m.ambient_dim();
    const Point x = m.retract(Point{y.head(n)});
    const Tangent v = m.project(x, y.segment(n, n));
    Vector dy(2 * n);
    dy.head(n) = v.vec;
    dy.segment(n, n) = m.normal_term(x, v.vec, v.vec);
    return dy;
  };
  return sys;
}

OdeSystem el_system(const BregmanParameters &params, const Objective &f) {
  OdeSystem sys{.manifold = f.manifold};
  sys.rhs = [params, f](double t, const Vector &y) {
    const Manifold &m = f.manifold;
    const Eigen::Index n = m.ambient_dim();
    const Point x = m.retract(Point{y.head(n)});
    const Tangent v = m.project(x, y.segment(n, n));
    const Tangent acc = el_acceleration({x, v, t}, params, f);
    Vector dy(2 * n);
    dy.head(n) = v.vec;
    dy.segment(n, n) = acc.vec + m.normal_term(x, v.vec, v.vec);
    return dy;
  };
  return sys;
}

OdeSystem poincare_system(const BregmanParameters &params, double p_ring, const Objective &f) {
  OdeSystem sys{.manifold = f.manifold, .scalars = 2};
  sys.rhs = [params, p_ring, f](double, const Vector &y) {
    const Manifold &m = f.manifold;
    const Eigen::Index n = m.ambient_dim();
    ExtendedState es;
    es.x = m.retract(Point{y.head(n)});
    es.r = m.project(es.x, y.segment(n, n));
    es.xt = y(2 * n);
    es.rt = y(2 * n + 1);
    const ExtendedDerivative d = poincare_vector_field(es, params, p_ring, f);
    Vector dy(2 * n + 2);
    dy.head(n) = d.dx.vec;
    dy.segment(n, n) = d.dr.vec + m.normal_term(es.x, d.dx.vec, es.r.vec);
    dy(2 * n) = d.dxt;
    dy(2 * n + 1) = d.drt;
    return dy;
  };
  return sys;
}

TrajectoryRecord reference_trajectory(const BregmanParameters &params, const Objective &f,
                                      const DynamicsState &s0, double t1, double h_ref,
                                      long record_every) {
  const OdeSystem sys = el_system(params, f);
  const auto samples =
      reference_integrate(sys, pack_state(s0.x, s0.v), s0.t, t1, h_ref, record_every);
  const Monitor mon(f, params, f.manifold.retract(s0.x));
  TrajectoryRecord rec{.algorithm = "reference", .objective = f.name};
  rec.config.h = h_ref;
  rec.config.p = params.p;
  rec.config.C = params.C;
  rec.config.zeta = params.zeta;
  rec.config.convexity = params.convexity;
  rec.config.record_every = record_every;
  long k = 0;
  for (const auto &s : samples) {
    const Point x = state_point(sys, s.y);
    rec.samples.push_back(mon.sample(k, s.t, x, state_tangent(sys, s.y)));
    k += record_every;
  }
  rec.iterations = static_cast<long>(std::ceil((t1 - s0.t) / h_ref - 1e-9));
  rec.samples.back().k = rec.iterations;
  return rec;
}

// ---------------------------------------------------------------------------
// Rate estimation

RateEstimate estimate_rate(std::span<const double> t, std::span<const double> gap, double t_lo,
                           double t_hi) {
  if (t.size() != gap.size()) throw EstimationError("estimate_rate: t and gap sizes differ");
  if (!(t_lo < t_hi)) throw EstimationError("estimate_rate: need t_lo < t_hi");
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_lo || t[i] > t_hi) continue;
    if (!(t[i] > 0.0) || !(gap[i] > 0.0))
      throw EstimationError("estimate_rate: non-positive time or gap inside the window");
    const double lx = std::log(t[i]);
    const double ly = std::log(gap[i]);
    sx += lx;
    sy += ly;
    ++n;
  }
  if (n < 10) throw EstimationError("estimate_rate: fewer than 10 samples in the window");
  const double mx = sx / static_cast<double>(n);
  const double my = sy / static_cast<double>(n);
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_lo || t[i] > t_hi) continue;
    const double dx = std::log(t[i]) - mx;
    const double dy = std::log(gap[i]) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) throw EstimationError("estimate_rate: window has no spread in t");
  RateEstimate r;
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  r.t_lo = t_lo;
  r.t_hi = t_hi;
  r.count = n;
  r.r_squared = syy > 0.0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
  return r;
}

RateEstimate estimate_rate(const TrajectoryRecord &record, double t_lo, double t_hi) {
  std::vector<double> t, gap;
  for (const auto &s : record.samples) {
    if (!s.f_gap) continue;
    t.push_back(s.t);
    gap.push_back(*s.f_gap);
  }
  return estimate_rate(t, gap, t_lo, t_hi);
}

RateEstimate estimate_rate_tail(std::span<const double> t, std::span<const double> gap,
                                double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw EstimationError("estimate_rate: bad window fraction");
  if (t.empty()) throw EstimationError("estimate_rate: no samples");
  const auto skip = static_cast<std::size_t>(std::floor((1.0 - fraction) * static_cast<double>(t.size())));
  return estimate_rate(t, gap, t[std::min(skip, t.size() - 1)], t.back());
}

}  // namespace riemann_accel
