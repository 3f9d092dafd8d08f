#include "riemann_accel/verify.hpp"

#include "riemann_accel/experiment.hpp"
#include "riemann_accel/integrate.hpp"
#include "riemann_accel/oracles.hpp"
#include "riemann_accel/problems.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>

#include <unistd.h>

namespace riemann_accel::verify {

namespace {

using Clock = std::chrono::steady_clock;

// Times `body`, which fills worst/tolerance/detail and may set passed; the
// check passes only if it also met its time limit.
Check timed(std::string name, double time_limit, const std::function<void(Check &)> &body) {
  Check c{.name = std::move(name), .time_limit = time_limit};
  const auto start = Clock::now();
  try {
    body(c);
  } catch (const std::exception &e) {
    c.passed = false;
    c.detail = std::string("exception: ") + e.what();
  }
  c.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (time_limit > 0.0 && c.seconds > time_limit) {
    c.passed = false;
    c.detail += (c.detail.empty() ? "" : "; ") + std::string("over time limit");
  }
  return c;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::vector<Manifold> test_manifolds() {
  return {Manifold::sphere(3), Manifold::sphere(10), Manifold::hyperbolic(2), Manifold::hyperbolic(4),
          Manifold::euclidean(3)};
}

// Largest step length used for sampling: stays clear of the sphere's cut locus
// and of hyperbolic magnitudes where cosh/sinh lose digits.
double max_length(const Manifold &m) { return m.kind() == ManifoldKind::Sphere ? 3.0 : 2.0; }

double ambient_norm(const Vector &v) { return v.norm(); }

std::vector<Objective> bundled_objectives() {
  const Manifold h = Manifold::hyperbolic(2);
  const Point q = h.retract(Point{Eigen::Vector3d(0.0, 0.3, -0.2)});
  return {rayleigh_objective(SymmetricMatrixSpec::log_spaced(10, 1.0, 100.0, 42)),
          hyperbolic_distance_objective(q, 1.0), euclidean_quadratic(10, 100.0, 42)};
}

// The n = 10 Rayleigh problem declared convex, and a start 0.5 from its
// minimizer (well inside the region where the quotient is geodesically convex
// along rays to x*).
struct RayleighSetup {
  Objective f;
  Point x0;
};

RayleighSetup convex_rayleigh() {
  Objective f = rayleigh_objective(SymmetricMatrixSpec::log_spaced(10, 1.0, 100.0, 42));
  f.convexity = ConvexityClass::convex();
  std::mt19937_64 rng(3);
  const Point &xs = *f.minimizer;
  const Point x0 = f.manifold.exp(xs, f.manifold.random_tangent(xs, rng, 0.5));
  return {std::move(f), x0};
}

double max_gap_ratio_polynomial(const TrajectoryRecord &rec, const Objective &f, const BregmanParameters &q,
                                const Point &x0) {
  const double d0 = f.manifold.distance(x0, *f.minimizer);
  double worst = 0.0;
  for (const auto &s : rec.samples) {
    const double bound = q.zeta * d0 * d0 / (2.0 * q.C * std::pow(s.t, q.p));
    worst = std::max(worst, f.gap(s.x) / bound);
  }
  return worst;
}

double max_lyapunov_increase(const TrajectoryRecord &rec) {
  double worst = 0.0;
  for (std::size_t i = 1; i < rec.samples.size(); ++i)
    worst = std::max(worst, *rec.samples[i].lyapunov - *rec.samples[i - 1].lyapunov);
  return worst;
}

}  // namespace

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check &c) { return c.passed; });
}

Check exp_log_roundtrip() {
  return timed("exp-log roundtrip", 0.0, [](Check &c) {
    c.tolerance = 1e-9;
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> len(0.0, 1.0);
    for (const Manifold &m : test_manifolds()) {
      for (int i = 0; i < 100; ++i) {
        const Point x = m.random_point(rng);
        const Tangent v = m.random_tangent(x, rng, max_length(m) * len(rng));
        const Point y = m.exp(x, v);
        c.worst = std::max(c.worst, ambient_norm(m.log(x, y).vec - v.vec));
        const Point z = m.random_point(rng);
        if (m.kind() == ManifoldKind::Sphere && m.distance(x, z) > 3.0) continue;
        c.worst = std::max(c.worst, ambient_norm(m.exp(x, m.log(x, z)).coords - z.coords));
      }
    }
    c.passed = c.worst <= c.tolerance;
    c.detail = "max |Log(Exp v) - v|, |Exp(Log y) - y| over 100 samples on 5 manifolds";
  });
}

Check transport_isometry() {
  return timed("transport isometry", 0.0, [](Check &c) {
    c.tolerance = 1e-10;
    std::mt19937_64 rng(202);
    std::uniform_real_distribution<double> len(0.1, 1.0);
    for (const Manifold &m : test_manifolds()) {
      for (int i = 0; i < 100; ++i) {
        const Point x = m.random_point(rng);
        const Point y = m.exp(x, m.random_tangent(x, rng, max_length(m) * len(rng)));
        const Tangent u = m.random_tangent(x, rng, 2.0 * len(rng));
        const Tangent w = m.random_tangent(x, rng, 2.0 * len(rng));
        const Tangent tu = m.transport(x, y, u), tw = m.transport(x, y, w);
        c.worst = std::max(c.worst, std::abs(m.metric(tu, tw) - m.metric(u, w)));
        c.worst = std::max(c.worst, std::abs(m.norm(tu) - m.norm(u)));
        c.worst = std::max(c.worst, m.tangency_residual(tu));
      }
    }
    c.passed = c.worst <= c.tolerance;
    c.detail = "max |<Pu,Pw> - <u,w>| and tangency residual of the transported vectors";
  });
}

Check gradient_finite_difference() {
  return timed("gradient vs finite differences", 0.0, [](Check &c) {
    c.tolerance = 1e-6;
    constexpr double eps = 1e-5;
    std::mt19937_64 rng(303);
    for (const Objective &f : bundled_objectives()) {
      const Manifold &m = f.manifold;
      for (int i = 0; i < 50; ++i) {
        const Point x = f.minimizer ? m.exp(*f.minimizer, m.random_tangent(*f.minimizer, rng, 1.0))
                                    : m.random_point(rng);
        const Tangent v = m.random_tangent(x, rng, 1.0);
        const double fd = (f.value(m.exp(x, eps * v)) - f.value(m.exp(x, -eps * v))) / (2.0 * eps);
        c.worst = std::max(c.worst, std::abs(fd - m.metric(f.gradient(x), v)));
      }
    }
    c.passed = c.worst <= c.tolerance;
    c.detail = "central differences along geodesics, step 1e-5, all bundled objectives";
  });
}

Check christoffel_projection() {
  return timed("covariant derivative: projection vs Christoffel", 0.0, [](Check &c) {
    c.tolerance = 1e-6;
    const Manifold s2 = Manifold::sphere(3);
    std::mt19937_64 rng(404);
    std::uniform_real_distribution<double> theta(0.4, M_PI - 0.4), phi(-M_PI, M_PI), comp(-1.0, 1.0);
    constexpr double s = 1e-4;
    for (int i = 0; i < 100; ++i) {
      const oracle::Coord2 q{theta(rng), phi(rng)};
      const oracle::Coord2 qd{comp(rng), comp(rng)}, qdd{comp(rng), comp(rng)};
      // chart side: J (qdd + Gamma(qd, qd))
      const auto gamma = oracle::christoffel(oracle::sphere_metric, q);
      const Eigen::Vector3d chart = oracle::sphere_jacobian(q) * oracle::covariant_acceleration(gamma, qd, qdd);
      // embedded side: tangential part of the ambient second derivative
      const auto curve = [&](double t) { return oracle::sphere_embedding(q + t * qd + 0.5 * t * t * qdd); };
      const Vector xdd = (curve(s) - 2.0 * curve(0.0) + curve(-s)) / (s * s);
      const Point x{Vector(curve(0.0))};
      const Vector proj = s2.project(x, xdd).vec;
      c.worst = std::max(c.worst, (proj - Vector(chart)).norm());
    }
    c.passed = c.worst <= c.tolerance;
    c.detail = "S^2, 100 random chart points and curves";
  });
}

Check geodesic_constant_speed() {
  return timed("geodesics: constant speed and Exp endpoint", 0.0, [](Check &c) {
    c.tolerance = 1e-8;
    std::mt19937_64 rng(505);
    for (const Manifold &m : {Manifold::sphere(3), Manifold::hyperbolic(2)}) {
      const OdeSystem sys = geodesic_system(m);
      for (int i = 0; i < 5; ++i) {
        const Point x = m.random_point(rng);
        const Tangent v = m.random_tangent(x, rng, 1.2);
        const auto traj = reference_integrate(sys, pack_state(x, v), 0.0, 1.0, 1e-3, 50);
        for (const auto &smp : traj)
          c.worst = std::max(c.worst, std::abs(m.norm(m.project(state_point(sys, smp.y), state_tangent(sys, smp.y).vec)) - 1.2));
        c.worst = std::max(c.worst, m.distance(state_point(sys, traj.back().y), m.exp(x, v)));
      }
    }
    c.passed = c.worst <= c.tolerance;
    c.detail = "RK4 geodesic equation, h = 1e-3, t in [0, 1]";
  });
}

Check zeta_at_least_one() {
  return timed("zeta >= 1", 0.0, [](Check &c) {
    c.tolerance = 0.0;
    double smallest = INFINITY;
    for (double k : {-4.0, -1.0, -0.25, 0.0, 1.0})
      for (double d : {1e-3, 0.1, 1.0, 3.0}) smallest = std::min(smallest, zeta({k, d}));
    c.worst = 1.0 - smallest;
    c.passed = smallest >= 1.0;
    c.detail = "min zeta over k in [-4, 1], D in [1e-3, 3] = " + sci(smallest);
  });
}

Check legendre_duality() {
  return timed("Legendre duality H + L = <R, V>", 0.0, [](Check &c) {
    c.tolerance = 1e-10;
    Objective f = rayleigh_objective(SymmetricMatrixSpec::log_spaced(10, 1.0, 100.0, 42));
    const Manifold &m = f.manifold;
    std::mt19937_64 rng(606);
    std::uniform_real_distribution<double> time(0.1, 2.0), len(0.0, 2.0);
    for (const ConvexityClass &cls :
         {ConvexityClass::convex(), ConvexityClass::weakly_quasi_convex(0.5), ConvexityClass::strongly_convex(1.0)}) {
      f.convexity = cls;
      for (double p : {2.0, 4.0}) {
        const BregmanParameters q = BregmanParameters::make(p, 0.25, 1.3, cls);
        for (int i = 0; i < 100; ++i) {
          const Point x = m.random_point(rng);
          const DynamicsState s{x, m.random_tangent(x, rng, len(rng)), time(rng)};
          const Tangent r = momentum_from_velocity(s, q);
          const double h = hamiltonian(x, r, s.t, q, f), l = lagrangian(s, q, f), rv = m.metric(r, s.v);
          const double scale = std::max({1.0, std::abs(h), std::abs(l), std::abs(rv)});
          c.worst = std::max(c.worst, std::abs(h + l - rv) / scale);
          c.worst = std::max(c.worst, ambient_norm(velocity_from_momentum(r, s.t, q).vec - s.v.vec) /
                                          std::max(1.0, m.norm(s.v)));
        }
      }
    }
    c.passed = c.worst <= c.tolerance;
    c.detail = "relative residual, 100 samples per class and p, plus V -> R -> V roundtrip";
  });
}

Check el_coordinate_residual() {
  return timed("Euler-Lagrange: embedded vs coordinate form", 0.0, [](Check &c) {
    c.tolerance = 1e-6;
    Eigen::Matrix3d a;
    a << 3.0, 0.5, -0.2, 0.5, 2.0, 0.3, -0.2, 0.3, 1.0;
    Objective f = rayleigh_objective(Matrix(a));
    const auto value = [&f](const Eigen::Vector3d &y) { return f.value(Point{Vector(y)}); };
    std::mt19937_64 rng(707);
    std::uniform_real_distribution<double> theta(0.5, M_PI - 0.5), phi(-M_PI, M_PI), comp(-1.0, 1.0),
        time(0.5, 2.0);
    constexpr double s = 1e-4;
    for (const ConvexityClass &cls : {ConvexityClass::convex(), ConvexityClass::strongly_convex(1.0)}) {
      f.convexity = cls;
      for (double p : {2.0, 3.0}) {
        const BregmanParameters q = BregmanParameters::make(p, 0.25, 1.0, cls);
        const OdeSystem sys = el_system(q, f);
        for (int i = 0; i < 20; ++i) {
          const oracle::Coord2 qc{theta(rng), phi(rng)}, qd{comp(rng), comp(rng)};
          const double t = time(rng);
          const double damping = cls.polynomial() ? (q.lambda * p + 1.0) / t : q.eta;
          const double force = cls.polynomial() ? q.C * p * p * std::pow(t, p - 2.0) : 1.0;
          const oracle::Coord2 qdd = oracle::coordinate_el_acceleration(value, qc, qd, damping, force);
          const auto curve = [&](double h) { return oracle::sphere_embedding(qc + h * qd + 0.5 * h * h * qdd); };
          const Vector xdd = (curve(s) - 2.0 * curve(0.0) + curve(-s)) / (s * s);
          const Point x{Vector(curve(0.0))};
          const Vector v = oracle::sphere_jacobian(qc) * qd;
          const Vector rhs = sys.rhs(t, pack_state(x, Tangent(x, v)));
          c.worst = std::max(c.worst, (rhs.tail(3) - xdd).norm());
        }
      }
    }
    c.passed = c.worst <= c.tolerance;
    c.detail = "S^2 Rayleigh quotient; chart EL from Christoffel symbols vs ambient right-hand side";
  });
}

Check log_derivative_bound() {
  return timed("<nabla_V Log x*, -V> <= zeta |V|^2", 0.0, [](Check &c) {
    c.tolerance = 1e-8;
    constexpr double eps = 1e-5;
    std::mt19937_64 rng(808);
    std::uniform_real_distribution<double> unit(0.05, 1.0);
    const auto probe = [&](const Manifold &m, double diameter, double max_dist) {
      const double z = zeta(m.bounds(diameter));
      for (int i = 0; i < 100; ++i) {
        const Point xs = m.random_point(rng);
        const Point x = m.exp(xs, m.random_tangent(xs, rng, max_dist * unit(rng)));
        const Tangent v = m.random_tangent(x, rng, unit(rng));
        const auto field = [&](double h) {
          const Point y = m.exp(x, h * v);
          return m.transport(y, x, m.log(y, xs));
        };
        const Tangent d = (1.0 / (2.0 * eps)) * (field(eps) - field(-eps));
        c.worst = std::max(c.worst, m.metric(d, -v) - z * m.metric(v, v));
      }
    };
    probe(Manifold::sphere(3), M_PI / 2.0, M_PI / 2.0 - 0.05);
    probe(Manifold::hyperbolic(2), 2.0, 0.9 * 2.0);
    probe(Manifold::euclidean(3), 1.0, 1.0);
    c.passed = c.worst <= c.tolerance;
    c.detail = "max of <nabla Log, -V> - zeta |V|^2; covariant derivative by transported central differences";
  });
}

Check poincare_consistency() {
  return timed("Poincare-transformed flow", 10.0, [](Check &c) {
    c.tolerance = 1e-6;
    const auto [f, x0] = convex_rayleigh();
    const Manifold &m = f.manifold;
    const double p = 4.0, p_ring = 2.0, t0 = 0.1;
    const BregmanParameters q = BregmanParameters::make(p, 0.25, 1.0, f.convexity);
    const ExtendedState es0 = poincare_initial_state({x0, m.zero(x0), t0}, q, f);
    const OdeSystem sys = poincare_system(q, p_ring, f);
    const Eigen::Index n = m.ambient_dim();
    const auto traj = reference_integrate(sys, pack_state(es0.x, es0.r, {es0.xt, es0.rt}), 0.0, 1.0, 1e-3, 10);

    double max_h = 0.0;
    std::vector<double> physical;
    for (const auto &smp : traj) {
      const ExtendedState es{state_point(sys, smp.y), smp.y(2 * n), state_tangent(sys, smp.y), smp.y(2 * n + 1)};
      max_h = std::max(max_h, std::abs(poincare_hamiltonian(es, q, p_ring, f)));
    }
    for (std::size_t j = 1; j < traj.size(); ++j) physical.push_back(traj[j].y(2 * n));

    const OdeSystem direct = el_system(q, f);
    const auto d = reference_integrate(direct, pack_state(x0, m.zero(x0)), t0, physical, 1e-4);
    double max_x = 0.0;
    for (std::size_t j = 0; j < d.size(); ++j)
      max_x = std::max(max_x, m.distance(state_point(direct, d[j].y), state_point(sys, traj[j + 1].y)));

    c.worst = max_h;
    c.passed = max_h <= 1e-6 && max_x <= 1e-4;
    c.detail = "p = 4 -> p_ring = 2 on convex Rayleigh (n = 10), t0 = 0.1, tau in [0, 1], RK4 1e-3; max |Hbar| = " +
               sci(max_h) + " (<= 1e-6), X error vs direct flow at X^t(tau) = " + sci(max_x) +
               " (<= 1e-4), final t = " + sci(traj.back().y(2 * n));
  });
}

Check continuous_rate() {
  return timed("continuous rate and Lyapunov decay (convex Rayleigh)", 30.0, [](Check &c) {
    c.tolerance = 1.5;
    constexpr double K = 1.0;
    const auto [f, x0] = convex_rayleigh();
    std::ostringstream detail;
    bool ok = true;
    for (const double p : {2.0, 4.0}) {
      const double t_end = p == 2.0 ? 10.0 : 4.0;
      const BregmanParameters q = BregmanParameters::make(p, 0.25, 1.0, f.convexity);
      double viol[2];
      const double hs[2] = {1e-3, 5e-4};
      for (int i = 0; i < 2; ++i) {
        const TrajectoryRecord rec = reference_trajectory(q, f, {x0, f.manifold.zero(x0), 0.01}, t_end, hs[i], 1);
        const double ratio = max_gap_ratio_polynomial(rec, f, q, x0);
        c.worst = std::max(c.worst, ratio);
        viol[i] = std::max(0.0, max_lyapunov_increase(rec));
        ok = ok && ratio <= c.tolerance && viol[i] <= K * hs[i] * hs[i];
        detail << "p=" << p << " h=" << hs[i] << ": gap/bound " << sci(ratio) << ", Lyapunov increase "
               << sci(viol[i]) << "; ";
      }
      ok = ok && viol[1] <= 0.5 * viol[0];
    }
    detail << "K = " << K;
    c.passed = ok;
    c.detail = detail.str();
  });
}

Check strongly_convex_bound() {
  return timed("strongly convex bound (hyperbolic distance)", 10.0, [](Check &c) {
    c.tolerance = 1.5;
    const Manifold hyp = Manifold::hyperbolic(2);
    std::mt19937_64 rng(11);
    const Point qp = hyp.exp(hyp.origin(), hyp.random_tangent(hyp.origin(), rng, 0.3));
    const double mu = 1.0, z = zeta(hyp.bounds(1.0));
    const Objective f = hyperbolic_distance_objective(qp, mu);
    const Point x0 = hyp.exp(qp, hyp.random_tangent(qp, rng, 1.0));
    const BregmanParameters q = BregmanParameters::make(2.0, 0.25, z, f.convexity);
    const TrajectoryRecord rec = reference_trajectory(q, f, {x0, hyp.zero(x0), 0.0}, 5.0, 1e-3, 1);
    const double d0 = hyp.distance(x0, qp), gap0 = f.gap(x0);
    for (const auto &s : rec.samples) {
      const double bound = (mu * d0 * d0 + 2.0 * gap0) / (2.0 * std::exp(std::sqrt(mu / z) * s.t));
      c.worst = std::max(c.worst, f.gap(s.x) / bound);
    }
    c.passed = c.worst <= c.tolerance;
    c.detail = "D = 1, mu = 1, zeta = " + sci(z) + ", t in [0, 5]; max gap/bound = " + sci(c.worst);
  });
}

Check time_rescaling() {
  return timed("time rescaling p = 2 -> p_ring = 4", 30.0, [](Check &c) {
    c.tolerance = 0.6;
    const auto [f, x0] = convex_rayleigh();
    const BregmanParameters q2 = BregmanParameters::make(2.0, 0.25, 1.0, f.convexity);
    const BregmanParameters q4 = BregmanParameters::make(4.0, 0.25, 1.0, f.convexity);
    const OdeSystem sys2 = el_system(q2, f), sys4 = el_system(q4, f);
    std::vector<double> s_times, t_times;
    for (int j = 1; j <= 40; ++j) {
      const double s = 0.1 + 1.9 * j / 40.0;
      s_times.push_back(s);
      t_times.push_back(rescale_time(s, 2.0, 4.0));
    }
    const Vector y0 = pack_state(x0, f.manifold.zero(x0));
    const auto eps = [&](double h) {
      // both clocks start at h with the same (x0, V0 = 0)
      const auto a = reference_integrate(sys4, y0, h, s_times, h);
      const auto b = reference_integrate(sys2, y0, h, t_times, h);
      double e = 0.0;
      for (std::size_t j = 0; j < a.size(); ++j)
        e = std::max(e, f.manifold.distance(state_point(sys4, a[j].y), state_point(sys2, b[j].y)));
      return e;
    };
    const double e1 = eps(2e-3), e2 = eps(1e-3);
    c.worst = e2 / e1;
    c.passed = e2 <= 0.6 * e1;
    c.detail = "eps(2e-3) = " + sci(e1) + ", eps(1e-3) = " + sci(e2) + ", ratio " + sci(c.worst) +
               " (<= 0.6); 40 checkpoints s in (0.1, 2]";
  });
}

std::vector<Check> discrete_findings() {
  std::vector<ExperimentConfig> cfgs(4);
  const auto dir = std::filesystem::temp_directory_path() / ("raccel-verify-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const char *names[4] = {"p6-I-h1e-4", "p6-II-h1e-4", "p6-I-h1e-3", "p2-I-h1e-3"};
  for (int i = 0; i < 4; ++i) {
    ExperimentConfig &e = cfgs[i];
    e.name = names[i];
    e.problem = "rayleigh";
    e.p = i == 3 ? 2.0 : 6.0;
    e.algo = i == 1 ? "bregman-II" : "bregman-I";
    if (i >= 2) e.h = 1e-3;
    e.stop = "gap";
    e.tol = 1e-8;
    e.iters = 1000000;
    e.record_every = 10;
    e.out = dir / (std::string(names[i]) + ".csv");
  }

  const auto start = Clock::now();
  std::vector<RunSummary> runs;
  std::string error;
  try {
    runs = run_experiments(cfgs);
  } catch (const std::exception &e) {
    error = e.what();
  }
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  std::filesystem::remove_all(dir);

  const auto reached = [](const RunSummary &s) { return s.converged && !s.diverged; };
  const auto describe = [&](int i) {
    const RunSummary &s = runs[i];
    return std::string(names[i]) + (s.diverged ? " diverged (" + s.message + ")"
                                   : reached(s) ? " reached 1e-8 in " + std::to_string(s.iterations) + " iterations"
                                                : " did not reach 1e-8 in " + std::to_string(s.iterations));
  };

  std::vector<Check> out(3);
  out[0] = {.name = "p = 6 version I fitted slope", .tolerance = -6.0};
  out[1] = {.name = "p = 6 beats p = 2 at matched h", .tolerance = 1.0};
  out[2] = {.name = "version II beats version I at matched (p, h)", .tolerance = 1.0};
  for (auto &c : out) {
    c.seconds = seconds;
    c.time_limit = 60.0;
  }
  if (!error.empty() || runs.size() != 4) {
    for (auto &c : out) c.detail = "exception: " + error;
    return out;
  }

  if (runs[0].rate) {
    out[0].worst = runs[0].rate->slope;
    out[0].passed = runs[0].rate->slope <= -6.0;
    out[0].detail = describe(0) + "; slope " + sci(runs[0].rate->slope) + " (<= -6), r^2 " +
                    sci(runs[0].rate->r_squared);
  } else {
    out[0].detail = describe(0) + "; no rate: " + runs[0].rate_error;
  }
  out[1].passed = reached(runs[2]) && reached(runs[3]) && runs[2].iterations < runs[3].iterations;
  out[1].worst = runs[3].iterations ? double(runs[2].iterations) / double(runs[3].iterations) : INFINITY;
  out[1].detail = describe(2) + "; " + describe(3);
  out[2].passed = reached(runs[0]) && reached(runs[1]) && runs[1].iterations < runs[0].iterations;
  out[2].worst = runs[0].iterations ? double(runs[1].iterations) / double(runs[0].iterations) : INFINITY;
  out[2].detail = describe(1) + "; " + describe(0);
  for (auto &c : out)
    if (seconds > c.time_limit) {
      c.passed = false;
      c.detail += "; over time limit";
    }
  return out;
}

Check rate_fit_exactness() {
  return timed("rate fit on exact t^-2 data", 1.0, [](Check &c) {
    c.tolerance = 1e-9;
    std::vector<double> t, gap;
    for (int i = 0; i <= 200; ++i) {
      t.push_back(std::pow(10.0, 2.0 * i / 200.0));
      gap.push_back(3.0 * std::pow(t.back(), -2.0));
    }
    const RateEstimate e = estimate_rate(t, gap, 1.0, 100.0);
    c.worst = std::abs(e.slope + 2.0);
    c.passed = c.worst <= 1e-9 && std::abs(e.r_squared - 1.0) <= 1e-12;
    c.detail = "slope " + std::to_string(e.slope) + ", r^2 " + std::to_string(e.r_squared);
  });
}

const std::vector<std::string> &suite_names() {
  static const std::vector<std::string> names = {"geometry", "dynamics", "convergence", "rescaling"};
  return names;
}

SuiteReport run_suite(const std::string &name) {
  SuiteReport r{.suite = name};
  const auto start = Clock::now();
  const bool all = name == "all";
  if (!all && std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end())
    throw ConfigError("unknown suite '" + name + "' (geometry, dynamics, convergence, rescaling, all)");
  if (all || name == "geometry") {
    r.checks.push_back(exp_log_roundtrip());
    r.checks.push_back(transport_isometry());
    r.checks.push_back(gradient_finite_difference());
    r.checks.push_back(christoffel_projection());
    r.checks.push_back(geodesic_constant_speed());
    r.checks.push_back(zeta_at_least_one());
  }
  if (all || name == "dynamics") {
    r.checks.push_back(legendre_duality());
    r.checks.push_back(el_coordinate_residual());
    r.checks.push_back(log_derivative_bound());
    r.checks.push_back(poincare_consistency());
  }
  if (all || name == "convergence") {
    r.checks.push_back(continuous_rate());
    r.checks.push_back(strongly_convex_bound());
    for (auto &c : discrete_findings()) r.checks.push_back(std::move(c));
    r.checks.push_back(rate_fit_exactness());
  }
  if (all || name == "rescaling") r.checks.push_back(time_rescaling());
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

void print_check(std::ostream &out, const Check &c) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2fs", c.seconds);
  out << (c.passed ? "PASS " : "FAIL ") << c.name << "  worst=" << sci(c.worst) << " tol=" << sci(c.tolerance)
      << " time=" << buf;
  if (c.time_limit > 0.0) out << "/" << c.time_limit << "s";
  out << "\n     " << c.detail << '\n';
}

void print_report(std::ostream &out, const SuiteReport &r) {
  out << "suite " << r.suite << '\n';
  for (const auto &c : r.checks) print_check(out, c);
  const auto failed = std::count_if(r.checks.begin(), r.checks.end(), [](const Check &c) { return !c.passed; });
  out << (failed ? "FAILED" : "OK") << ": " << r.checks.size() - failed << "/" << r.checks.size()
      << " checks passed\n";
}

}  // namespace riemann_accel::verify
