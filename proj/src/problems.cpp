#include "riemann_accel/problems.hpp"

#include "riemann_accel/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>

namespace riemann_accel {

namespace {

Objective make_rayleigh(std::shared_ptr<const Matrix> a, const Vector &top, double lambda_max,
                        double lambda_min, double alpha) {
  const auto n = static_cast<int>(a->rows());
  if (n < 2) throw DomainError("rayleigh: n must be >= 2");
  Objective f{.name = "rayleigh", .manifold = Manifold::sphere(n)};
  f.value = [a](const Point &v) { return -v.coords.dot(kernels::symmetric_matvec(*a, v.coords)); };
  const Manifold m = f.manifold;
  f.gradient = [a, m](const Point &v) {
    return m.gradient_from_ambient(v, Vector(-2.0 * kernels::symmetric_matvec(*a, v.coords)));
  };
  f.convexity = ConvexityClass::weakly_quasi_convex(alpha);
  f.minimizer = Point{top / top.norm()};
  f.optimal_value = -lambda_max;
  f.smoothness = 2.0 * (lambda_max - lambda_min);
  return f;
}

}  // namespace

SymmetricMatrixSpec SymmetricMatrixSpec::log_spaced(int n, double lo, double hi, std::uint64_t seed) {
  if (n < 1 || !(lo > 0.0) || !(hi >= lo)) throw DomainError("log_spaced: need n >= 1, 0 < lo <= hi");
  SymmetricMatrixSpec spec{n, std::vector<double>(n), seed};
  for (int i = 0; i < n; ++i) {
    const double frac = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
    spec.eigenvalues[i] = hi * std::pow(lo / hi, frac);
  }
  spec.eigenvalues.front() = hi;
  spec.eigenvalues.back() = n == 1 ? hi : lo;
  return spec;
}

SymmetricMatrix build_matrix(const SymmetricMatrixSpec &spec) {
  if (spec.n < 1 || static_cast<int>(spec.eigenvalues.size()) != spec.n)
    throw DomainError("build_matrix: eigenvalue count must equal n");
  for (double e : spec.eigenvalues)
    if (!std::isfinite(e)) throw DomainError("build_matrix: eigenvalues must be finite");

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> gauss;
  Matrix g(spec.n, spec.n);
  for (Eigen::Index j = 0; j < g.cols(); ++j)
    for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, j) = gauss(rng);

  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(spec.n, spec.n);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < spec.n; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);

  SymmetricMatrix out;
  out.eigenvalues = Eigen::Map<const Vector>(spec.eigenvalues.data(), spec.n);
  out.basis = q;
  out.a = q * out.eigenvalues.asDiagonal() * q.transpose();
  out.a = 0.5 * (out.a + out.a.transpose()).eval();
  return out;
}

Objective rayleigh_objective(const SymmetricMatrixSpec &spec, double alpha) {
  if (!std::is_sorted(spec.eigenvalues.rbegin(), spec.eigenvalues.rend()))
    throw DomainError("rayleigh: eigenvalues must be in descending order");
  const SymmetricMatrix built = build_matrix(spec);
  auto a = std::make_shared<const Matrix>(built.a);
  Objective f = make_rayleigh(a, built.basis.col(0), built.eigenvalues(0),
                              built.eigenvalues(spec.n - 1), alpha);
  f.name = "rayleigh";
  return f;
}

Objective rayleigh_objective(const Matrix &a, double alpha) {
  if (a.rows() != a.cols()) throw DomainError("rayleigh: matrix must be square");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(a);
  const Eigen::Index n = a.rows();
  return make_rayleigh(std::make_shared<const Matrix>(a), eig.eigenvectors().col(n - 1),
                       eig.eigenvalues()(n - 1), eig.eigenvalues()(0), alpha);
}

Objective hyperbolic_distance_objective(const Point &q, double mu, int dim) {
  Objective f{.name = "hyperbolic", .manifold = Manifold::hyperbolic(dim)};
  if (q.dim() != f.manifold.ambient_dim()) throw DomainError("hyperbolic: q has wrong dimension");
  if (f.manifold.constraint_residual(q) > 1e-9) throw DomainError("hyperbolic: q is not on the hyperboloid");
  const Manifold m = f.manifold;
  f.value = [m, q](const Point &x) {
    const double d = m.distance(x, q);
    return 0.5 * d * d;
  };
  f.gradient = [m, q](const Point &x) { return -m.log(x, q); };
  f.convexity = ConvexityClass::strongly_convex(mu);
  f.minimizer = q;
  f.optimal_value = 0.0;
  f.smoothness = 1.0 / std::tanh(1.0);  // d coth d on a diameter-1 domain
  return f;
}

Objective quadratic_objective(const Matrix &q) {
  if (q.rows() != q.cols()) throw DomainError("quadratic: matrix must be square");
  const auto n = static_cast<int>(q.rows());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(q);
  const double lo = eig.eigenvalues()(0);
  const double hi = eig.eigenvalues()(n - 1);
  if (!(lo > 0.0)) throw DomainError("quadratic: matrix must be positive definite");
  auto qm = std::make_shared<const Matrix>(q);
  Objective f{.name = "quadratic", .manifold = Manifold::euclidean(n)};
  f.value = [qm](const Point &x) {
    return 0.5 * x.coords.dot(kernels::symmetric_matvec(*qm, x.coords));
  };
  f.gradient = [qm](const Point &x) { return Tangent(x, kernels::symmetric_matvec(*qm, x.coords)); };
  f.convexity = ConvexityClass::strongly_convex(lo);
  f.minimizer = Point{Vector::Zero(n)};
  f.optimal_value = 0.0;
  f.smoothness = hi;
  return f;
}

Objective euclidean_quadratic(int n, double condition_number, std::uint64_t seed) {
  if (!(condition_number >= 1.0)) throw DomainError("quadratic: condition number must be >= 1");
  SymmetricMatrixSpec spec = SymmetricMatrixSpec::log_spaced(n, 1.0, condition_number, seed);
  if (n == 1) spec.eigenvalues = {1.0};
  Objective f = quadratic_objective(build_matrix(spec).a);
  f.convexity = ConvexityClass::strongly_convex(1.0);
  return f;
}

}  // namespace riemann_accel
