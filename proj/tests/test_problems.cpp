#include "riemann_accel/problems.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace riemann_accel;

TEST(BuildMatrix, EigenvaluesRecoveredByIndependentSolver) {
  const SymmetricMatrixSpec spec = SymmetricMatrixSpec::log_spaced(10, 1.0, 100.0, 42);
  const SymmetricMatrix m = build_matrix(spec);
  EXPECT_LE((m.a - m.a.transpose()).cwiseAbs().maxCoeff(), 1e-14);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m.a);
  for (int i = 0; i < 10; ++i) EXPECT_NEAR(eig.eigenvalues()(9 - i), spec.eigenvalues[i], 1e-10);
  EXPECT_NEAR(spec.eigenvalues.front(), 100.0, 1e-12);
  EXPECT_NEAR(spec.eigenvalues.back(), 1.0, 1e-12);
  // basis is orthogonal
  EXPECT_LE((m.basis.transpose() * m.basis - Matrix::Identity(10, 10)).norm(), 1e-13);
}

TEST(BuildMatrix, EqualEigenvaluesGiveScaledIdentity) {
  for (std::uint64_t seed : {1u, 2u, 99u}) {
    const SymmetricMatrix m = build_matrix({.n = 5, .eigenvalues = {3, 3, 3, 3, 3}, .seed = seed});
    EXPECT_LE((m.a - 3.0 * Matrix::Identity(5, 5)).cwiseAbs().maxCoeff(), 1e-13);
  }
}

TEST(BuildMatrix, DeterministicInSeed) {
  const auto a = build_matrix(SymmetricMatrixSpec::log_spaced(8, 1, 10, 5));
  const auto b = build_matrix(SymmetricMatrixSpec::log_spaced(8, 1, 10, 5));
  const auto c = build_matrix(SymmetricMatrixSpec::log_spaced(8, 1, 10, 6));
  EXPECT_EQ(a.a, b.a);
  EXPECT_GT((a.a - c.a).norm(), 1e-3);
}

TEST(BuildMatrix, RejectsBadSpecs) {
  EXPECT_THROW(build_matrix({.n = 3, .eigenvalues = {1, 2}}), DomainError);
  EXPECT_THROW(build_matrix({.n = 2, .eigenvalues = {1, NAN}}), DomainError);
}

TEST(Rayleigh, TwoByTwoExample) {
  Eigen::Matrix2d a;
  a << 2, 0, 0, 1;
  const Objective f = rayleigh_objective(Matrix(a));
  const Point v{Eigen::Vector2d(1, 1) / std::sqrt(2.0)};
  EXPECT_NEAR(f.value(v), -1.5, 1e-15);
  const Tangent g = f.gradient(v);
  EXPECT_NEAR(g.vec(0), -1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(g.vec(1), 1 / std::sqrt(2.0), 1e-15);
  const Point e1{Eigen::Vector2d(1, 0)};
  EXPECT_LE(f.gradient(e1).vec.norm(), 1e-15);
  EXPECT_DOUBLE_EQ(*f.optimal_value, -2.0);
}

TEST(Rayleigh, MinimizerAndRange) {
  const Objective f = rayleigh_objective(SymmetricMatrixSpec::log_spaced(10, 1, 100, 42));
  EXPECT_EQ(f.convexity.kind(), ConvexityClass::Kind::WeaklyQuasiConvex);
  EXPECT_EQ(f.convexity.alpha(), 1.0);
  EXPECT_LE(f.gradient(*f.minimizer).vec.norm(), 1e-8);
  EXPECT_NEAR(f.value(*f.minimizer), -100.0, 1e-10);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const Point x = f.manifold.random_point(rng);
    EXPECT_GE(f.value(x), -100.0 - 1e-10);
    EXPECT_LE(f.value(x), -1.0 + 1e-10);
  }
  EXPECT_NEAR(*f.smoothness, 2.0 * 99.0, 1e-10);
  EXPECT_EQ(rayleigh_objective(SymmetricMatrixSpec::log_spaced(4, 1, 2, 1), 0.4).convexity.alpha(), 0.4);
}

TEST(Rayleigh, NegatedMatrixFindsBottomEigenvector) {
  const SymmetricMatrix m = build_matrix(SymmetricMatrixSpec::log_spaced(6, 1, 20, 3));
  const Objective f = rayleigh_objective(Matrix(-m.a));
  const Vector bottom = m.basis.col(5);
  EXPECT_NEAR(std::abs(f.minimizer->coords.dot(bottom)), 1.0, 1e-10);
  EXPECT_NEAR(*f.optimal_value, 1.0, 1e-10);
}

TEST(Rayleigh, NeedsDimensionTwo) {
  EXPECT_THROW(rayleigh_objective(Matrix::Ones(1, 1)), DomainError);
}

TEST(Hyperbolic, Examples) {
  const Manifold h = Manifold::hyperbolic(2);
  const Point q = h.exp(h.origin(), Tangent(h.origin(), Eigen::Vector3d(0, 0.3, -0.1)));
  const Objective f = hyperbolic_distance_objective(q);
  EXPECT_EQ(f.value(q), 0.0);
  EXPECT_LE(f.gradient(q).vec.norm(), 1e-15);
  std::mt19937_64 rng(2);
  const Point x = h.exp(q, h.random_tangent(q, rng, 1.0));
  EXPECT_NEAR(f.value(x), 0.5, 1e-12);
  EXPECT_NEAR(h.norm(f.gradient(x)), 1.0, 1e-12);
  EXPECT_EQ(f.convexity.kind(), ConvexityClass::Kind::StronglyConvex);
  EXPECT_EQ(f.convexity.mu(), 1.0);
  EXPECT_EQ(*f.optimal_value, 0.0);
}

TEST(Hyperbolic, GradientMatchesFiniteDifferences) {
  const Manifold h = Manifold::hyperbolic(2);
  const Objective f = hyperbolic_distance_objective(h.origin());
  std::mt19937_64 rng(3);
  constexpr double eps = 1e-5;
  for (int i = 0; i < 50; ++i) {
    const Point x = h.random_point(rng);
    const Tangent v = h.random_tangent(x, rng, 1.0);
    const double fd = (f.value(h.exp(x, v * eps)) - f.value(h.exp(x, v * -eps))) / (2 * eps);
    EXPECT_NEAR(fd, h.metric(f.gradient(x), v), 1e-6);
  }
}

TEST(Hyperbolic, GeodesicStrongConvexity) {
  const Manifold h = Manifold::hyperbolic(2);
  const Objective f = hyperbolic_distance_objective(h.origin(), 1.0);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const Point a = h.random_point(rng), b = h.random_point(rng);
    const Tangent ab = h.log(a, b);
    const double d = h.norm(ab), t = u(rng);
    const double lhs = f.value(h.exp(a, ab * t)) - ((1 - t) * f.value(a) + t * f.value(b));
    EXPECT_LE(lhs, -0.5 * t * (1 - t) * d * d + 1e-8);
  }
}

TEST(Quadratic, Examples) {
  const Objective f = quadratic_objective(Matrix::Constant(1, 1, 2.0));
  const Point x{Vector::Constant(1, 3.0)};
  EXPECT_DOUBLE_EQ(f.value(x), 9.0);
  EXPECT_DOUBLE_EQ(f.gradient(x).vec(0), 6.0);
  const Objective g = euclidean_quadratic(5, 100.0, 7);
  const Point z{Vector::Zero(5)};
  EXPECT_EQ(g.value(z), 0.0);
  EXPECT_EQ(g.gradient(z).vec.norm(), 0.0);
  EXPECT_EQ(g.convexity.mu(), 1.0);
  EXPECT_NEAR(*g.smoothness, 100.0, 1e-10);
  const Objective id = euclidean_quadratic(4, 1.0, 7);
  const Point y{Eigen::Vector4d(1, 2, 3, 4)};
  EXPECT_NEAR(id.value(y), 0.5 * 30.0, 1e-12);
  EXPECT_THROW(euclidean_quadratic(3, 0.5, 1), DomainError);
}

TEST(Objectives, GradientVanishesAtMinimizer) {
  const Manifold h = Manifold::hyperbolic(2);
  for (const Objective &f : {rayleigh_objective(SymmetricMatrixSpec::log_spaced(7, 0.5, 30, 11)),
                             hyperbolic_distance_objective(h.origin()), euclidean_quadratic(6, 50, 2)}) {
    ASSERT_TRUE(f.minimizer);
    EXPECT_LE(f.manifold.norm(riemannian_gradient(f, *f.minimizer)), 1e-8) << f.name;
  }
}
