#include "riemann_accel/integrate.hpp"
#include "riemann_accel/problems.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace riemann_accel;

namespace {

Objective rayleigh10() { return rayleigh_objective(SymmetricMatrixSpec::log_spaced(10, 1, 100, 42)); }

Point random_start(const Objective &f, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return f.manifold.random_point(rng);
}

}  // namespace

TEST(Coefficients, Examples) {
  IntegratorConfig sc{.h = 0.01, .convexity = ConvexityClass::strongly_convex(1.0), .zeta = 1.0};
  const auto a = step_coefficients(7, sc);
  EXPECT_NEAR(a.b, 0.98, 1e-15);
  EXPECT_EQ(a.c, 1.0);
  IntegratorConfig cv{.h = 0.37, .p = 2, .C = 0.25, .convexity = ConvexityClass::convex()};
  const auto b = step_coefficients(3, cv);
  EXPECT_EQ(b.b, 0.0);
  EXPECT_EQ(b.c, 1.0);
  // c_k = C p^2 (kh)^{p-2}
  cv.p = 4;
  EXPECT_NEAR(step_coefficients(2, cv).c, 0.25 * 16 * std::pow(0.74, 2), 1e-14);
  EXPECT_THROW(step_coefficients(0, cv), DomainError);
}

TEST(Step, FixedPointAtCriticalPointWithZeroVelocity) {
  const Objective f = rayleigh10();
  const Point xs = *f.minimizer;
  for (auto ver : {AlgorithmVersion::I, AlgorithmVersion::II}) {
    IntegratorConfig c{.h = 1e-2, .version = ver, .convexity = f.convexity};
    const StepResult r = semi_implicit_step(xs, f.manifold.zero(xs), 5, c, f);
    EXPECT_LE((r.x.coords - xs.coords).norm(), 1e-12);
    EXPECT_LE(r.v.vec.norm(), 1e-10);
  }
}

TEST(Step, EuclideanReductionMatchesScalarHeavyBall) {
  Eigen::Matrix2d q;
  q << 2.0, 0.0, 0.0, 5.0;
  Objective f = quadratic_objective(q);
  f.convexity = ConvexityClass::strongly_convex(2.0);
  IntegratorConfig c{.h = 0.05, .convexity = f.convexity, .zeta = 1.0};
  Point x{Eigen::Vector2d(1.0, -0.5)};
  Tangent v{x, Eigen::Vector2d(0.3, 0.1)};
  // scalar recursion per coordinate
  const double eta = 2.0 * std::sqrt(2.0), b = 1.0 - c.h * eta;
  double xs[2] = {1.0, -0.5}, vs[2] = {0.3, 0.1};
  const double diag[2] = {2.0, 5.0};
  for (long k = 1; k <= 200; ++k) {
    const StepResult r = semi_implicit_step(x, v, k, c, f);
    x = r.x;
    v = r.v;
    for (int i = 0; i < 2; ++i) {
      const double a = b * vs[i] - c.h * diag[i] * xs[i];
      xs[i] += c.h * a;
      vs[i] = a;
    }
    for (int i = 0; i < 2; ++i) {
      ASSERT_NEAR(x.coords(i), xs[i], 1e-12);
      ASSERT_NEAR(v.vec(i), vs[i], 1e-12);
    }
  }
}

TEST(Step, VersionsAgreeToSecondOrder) {
  Objective f = rayleigh10();
  f.convexity = ConvexityClass::strongly_convex(1.0);
  const Manifold &m = f.manifold;
  std::mt19937_64 rng(5);
  const Point x = m.random_point(rng);
  const Tangent v = m.random_tangent(x, rng, 1.0);
  const double L = *f.smoothness;
  double prev = 0.0;
  for (double h : {1e-3, 5e-4, 2.5e-4}) {
    IntegratorConfig c1{.h = h, .version = AlgorithmVersion::I, .convexity = f.convexity};
    IntegratorConfig c2 = c1;
    c2.version = AlgorithmVersion::II;
    // a_k = Log_x(x_{k+1}) / h
    const Tangent a1 = m.log(x, semi_implicit_step(x, v, 1, c1, f).x) * (1.0 / h);
    const Tangent a2 = m.log(x, semi_implicit_step(x, v, 1, c2, f).x) * (1.0 / h);
    const double diff = (a1.vec - a2.vec).norm();
    EXPECT_LE(diff, 2.0 * h * h * L * m.norm(v));
    if (prev > 0.0) {
      EXPECT_NEAR(diff / prev, 0.25, 0.05);
    }
    prev = diff;
  }
}

TEST(Run, StopsAtOnceWithOnlyInitialSample) {
  const Objective f = rayleigh10();
  IntegratorConfig c{.convexity = f.convexity, .max_iters = 100, .stop_tolerance = 1e9};
  const TrajectoryRecord r = run(c, f, random_start(f, 1));
  ASSERT_EQ(r.samples.size(), 1u);
  EXPECT_EQ(r.samples[0].k, 1);
  EXPECT_EQ(r.iterations, 0);
  EXPECT_TRUE(r.converged);
}

TEST(Run, RayleighReducesGapByThreeOrders) {
  const Objective f = rayleigh10();
  IntegratorConfig c{.h = 1e-3, .p = 2, .C = 0.25, .convexity = f.convexity, .max_iters = 30000,
                     .record_every = 100};
  const TrajectoryRecord r = run(c, f, random_start(f, 7));
  const double g0 = *r.samples.front().f_gap, g1 = *r.samples.back().f_gap;
  EXPECT_LT(g1, g0 / 1e3);
  // momentum makes the gap oscillate; after the transient its envelope (maximum
  // over consecutive blocks) keeps shrinking
  const std::size_t n = r.samples.size(), block = n / 6;
  double prev = INFINITY;
  for (std::size_t b = 1; b < 6; ++b) {
    double hi = 0.0;
    for (std::size_t i = b * block; i < (b + 1) * block; ++i) hi = std::max(hi, *r.samples[i].f_gap);
    EXPECT_LT(hi, prev) << "block " << b;
    prev = hi;
  }
  for (const auto &s : r.samples) EXPECT_LE(f.manifold.constraint_residual(s.x), 1e-10);
}

TEST(Run, TimesAreMultiplesOfStep) {
  const Objective f = rayleigh10();
  IntegratorConfig c{.h = 1e-3, .convexity = f.convexity, .max_iters = 95, .record_every = 10};
  const TrajectoryRecord r = run(c, f, random_start(f, 2));
  ASSERT_EQ(r.samples.size(), 11u);  // k = 1, 11, ..., 91 and the final k = 96
  for (std::size_t i = 0; i + 1 < r.samples.size(); ++i) {
    EXPECT_EQ(r.samples[i].k, 1 + 10 * static_cast<long>(i));
    EXPECT_LT(r.samples[i].t, r.samples[i + 1].t);
  }
  EXPECT_EQ(r.samples.back().k, 96);
  for (const auto &s : r.samples) EXPECT_DOUBLE_EQ(s.t, s.k * c.h);
}

TEST(Run, Deterministic) {
  const Objective f = rayleigh10();
  IntegratorConfig c{.h = 1e-3, .p = 6, .version = AlgorithmVersion::II, .convexity = f.convexity,
                     .max_iters = 2000, .record_every = 7};
  const Point x0 = random_start(f, 3);
  const TrajectoryRecord a = run(c, f, x0), b = run(c, f, x0);
  ASSERT_EQ(a.samples.size(), b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    EXPECT_EQ(a.samples[i].x.coords, b.samples[i].x.coords);
    EXPECT_EQ(a.samples[i].v.vec, b.samples[i].v.vec);
    EXPECT_EQ(*a.samples[i].f_gap, *b.samples[i].f_gap);
  }
}

TEST(Run, DivergenceCarriesPartialRecord) {
  const Objective f = euclidean_quadratic(3, 100.0, 1);
  IntegratorConfig c{.h = 0.5, .convexity = f.convexity, .max_iters = 1000};
  try {
    run(c, f, Point{Eigen::Vector3d(1, 1, 1)});
    FAIL() << "expected divergence";
  } catch (const DivergenceError &e) {
    EXPECT_GT(e.iteration(), 1);
    EXPECT_FALSE(e.partial().samples.empty());
    EXPECT_EQ(e.partial().samples.front().k, 1);
  }
}

TEST(Run, GapStoppingNeedsOptimalValue) {
  Objective f = euclidean_quadratic(2, 10.0, 1);
  f.optimal_value.reset();
  IntegratorConfig c{.convexity = f.convexity, .stop_on = StopCriterion::FunctionGap};
  EXPECT_THROW(run(c, f, Point{Eigen::Vector2d(1, 1)}), ConfigError);
}

TEST(Run, InvalidConfig) {
  const Objective f = rayleigh10();
  IntegratorConfig c{.h = 0.0, .convexity = f.convexity};
  EXPECT_THROW(run(c, f, random_start(f, 1)), ConfigError);
  c.h = 1e-3;
  c.max_iters = 0;
  EXPECT_THROW(run(c, f, random_start(f, 1)), ConfigError);
}

TEST(GradientDescent, Examples) {
  const Objective f = euclidean_quadratic(3, 1.0, 9);  // Q = I
  IntegratorConfig c{.h = 1.0};
  const Point x1 = gradient_descent_step(Point{Eigen::Vector3d(1, -2, 3)}, c, f);
  EXPECT_LE(x1.coords.norm(), 1e-14);
  const Point z{Eigen::Vector3d::Zero()};
  EXPECT_EQ(gradient_descent_step(z, c, f).coords, z.coords);
}

TEST(GradientDescent, RayleighNonIncreasingForSmallStep) {
  const Objective f = rayleigh10();
  IntegratorConfig c{.h = 1.0 / *f.smoothness, .max_iters = 500};
  const TrajectoryRecord r = run_gradient_descent(c, f, random_start(f, 4));
  for (std::size_t i = 1; i < r.samples.size(); ++i) EXPECT_LE(*r.samples[i].f_gap, *r.samples[i - 1].f_gap + 1e-12);
}

TEST(Reference, ZeroFieldIsConstant) {
  const Manifold e = Manifold::euclidean(2);
  OdeSystem sys{.manifold = e, .rhs = [](double, const Vector &y) { return Vector(Vector::Zero(y.size())); }};
  const Point x{Eigen::Vector2d(0.3, 0.4)};
  const auto traj = reference_integrate(sys, pack_state(x, e.zero(x)), 0.0, 1.0, 0.1);
  ASSERT_EQ(traj.size(), 11u);
  for (const auto &s : traj) EXPECT_EQ(state_point(sys, s.y).coords, x.coords);
}

TEST(Reference, SphereGeodesicEndpointAndOrder) {
  const Manifold s = Manifold::sphere(3);
  const OdeSystem sys = geodesic_system(s);
  const Point x{Eigen::Vector3d(1, 0, 0)};
  const Tangent v{x, Eigen::Vector3d(0, 0.6, 0.8)};
  const Point exact = s.exp(x, v);
  const auto err = [&](double h) {
    return (state_point(sys, reference_integrate(sys, pack_state(x, v), 0.0, 1.0, h).back().y).coords -
            exact.coords)
        .norm();
  };
  EXPECT_LE(err(1e-3), 1e-8);
  // fourth order: halving the step cuts the endpoint error ~16x
  const double ratio = err(0.1) / err(0.05);
  EXPECT_GT(ratio, 12.0);
  EXPECT_LT(ratio, 20.0);
}

TEST(Reference, RequiresSortedOutputTimes) {
  const Manifold s = Manifold::sphere(3);
  const OdeSystem sys = geodesic_system(s);
  const Point x{Eigen::Vector3d(1, 0, 0)};
  const std::vector<double> times = {0.5, 0.2};
  EXPECT_THROW(reference_integrate(sys, pack_state(x, s.zero(x)), 0.0, times, 1e-2), DomainError);
  EXPECT_THROW(reference_integrate(sys, pack_state(x, s.zero(x)), 0.0, 1.0, 0.0), DomainError);
}

TEST(Reference, PoincareShortRunStaysOnZeroLevel) {
  Objective f = rayleigh10();
  f.convexity = ConvexityClass::convex();
  const auto q = BregmanParameters::make(2, 0.25, 1.0, f.convexity);
  const Point x0 = random_start(f, 8);
  const ExtendedState e = poincare_initial_state({x0, f.manifold.zero(x0), 0.5}, q, f);
  const OdeSystem sys = poincare_system(q, 1.0, f);
  const auto traj = reference_integrate(sys, pack_state(e.x, e.r, {e.xt, e.rt}), 0.0, 0.2, 1e-3, 10);
  for (const auto &s : traj) {
    const ExtendedState es{state_point(sys, s.y), s.y(20), state_tangent(sys, s.y), s.y(21)};
    EXPECT_LE(std::abs(poincare_hamiltonian(es, q, 1.0, f)), 1e-6);
  }
}

TEST(Reference, TrajectoryFillsMonitors) {
  Objective f = rayleigh10();
  f.convexity = ConvexityClass::convex();
  const auto q = BregmanParameters::make(2, 0.25, 1.0, f.convexity);
  const Point x0 = random_start(f, 9);
  const TrajectoryRecord r = reference_trajectory(q, f, {x0, f.manifold.zero(x0), 0.01}, 1.0, 1e-2, 5);
  ASSERT_GE(r.samples.size(), 2u);
  for (const auto &s : r.samples) {
    EXPECT_TRUE(s.f_gap && s.grad_norm && s.lyapunov && s.bound);
  }
  EXPECT_DOUBLE_EQ(r.samples.front().t, 0.01);
  EXPECT_DOUBLE_EQ(r.samples.back().t, 1.0);
}

TEST(Rate, ExactPowerLaws) {
  std::vector<double> t, g2, g6;
  for (int i = 0; i < 50; ++i) {
    t.push_back(1.0 + 0.37 * i);
    g2.push_back(std::pow(t.back(), -2.0));
    g6.push_back(5.0 * std::pow(t.back(), -6.0));
  }
  const RateEstimate a = estimate_rate(t, g2, 1.0, 100.0);
  EXPECT_NEAR(a.slope, -2.0, 1e-9);
  EXPECT_NEAR(a.r_squared, 1.0, 1e-12);
  EXPECT_EQ(a.count, 50u);
  EXPECT_NEAR(estimate_rate(t, g6, 1.0, 100.0).slope, -6.0, 1e-9);
  EXPECT_NEAR(estimate_rate(t, g6, 1.0, 100.0).intercept, std::log(5.0), 1e-9);
}

TEST(Rate, ExponentialLooksSteep) {
  std::vector<double> t, g;
  for (int i = 0; i <= 100; ++i) {
    t.push_back(10.0 + 0.1 * i);
    g.push_back(std::exp(-t.back()));
  }
  EXPECT_LT(estimate_rate(t, g, 10.0, 20.0).slope, -10.0);
}

TEST(Rate, Errors) {
  std::vector<double> t = {1, 2, 3, 4, 5}, g = {1, 1, 1, 1, 1};
  EXPECT_THROW(estimate_rate(t, g, 1, 5), EstimationError);
  t.clear(), g.clear();
  for (int i = 1; i <= 20; ++i) t.push_back(i), g.push_back(i == 7 ? 0.0 : 1.0 / i);
  EXPECT_THROW(estimate_rate(t, g, 1, 20), EstimationError);
  EXPECT_THROW(estimate_rate(t, g, 5, 5), EstimationError);
}

TEST(Rate, TailWindow) {
  std::vector<double> t, g;
  for (int i = 1; i <= 100; ++i) {
    t.push_back(i);
    g.push_back(i <= 40 ? 1.0 : std::pow(i, -3.0));  // transient plateau, then t^-3
  }
  const RateEstimate e = estimate_rate_tail(t, g, 0.6);
  EXPECT_EQ(e.t_lo, 41.0);
  EXPECT_NEAR(e.slope, -3.0, 1e-9);
}
