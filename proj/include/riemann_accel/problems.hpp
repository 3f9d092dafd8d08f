#pragma once

#include "riemann_accel/objective.hpp"

#include <cstdint>
#include <vector>

namespace riemann_accel {

/// Recipe for a dense symmetric matrix with a prescribed spectrum.
struct SymmetricMatrixSpec {
  int n = 10;
  std::vector<double> eigenvalues;  // descending
  std::uint64_t seed = 0;

  /// n eigenvalues log-spaced over [lo, hi], largest first.
  static SymmetricMatrixSpec log_spaced(int n, double lo, double hi, std::uint64_t seed);
};

struct SymmetricMatrix {
  Matrix a;
  Matrix basis;  // orthonormal eigenvectors as columns, matching `eigenvalues`
  Vector eigenvalues;
};

/// A = Q diag(eigenvalues) Q^T with Q from the QR factorization of a seeded
/// Gaussian matrix (column signs fixed by diag(R) > 0).
SymmetricMatrix build_matrix(const SymmetricMatrixSpec &spec);

/// f(v) = -v^T A v on S^{n-1}; minimized by the top eigenvector.
/// Labelled alpha-WQC (alpha defaults to 1).
Objective rayleigh_objective(const SymmetricMatrixSpec &spec, double alpha = 1.0);
Objective rayleigh_objective(const Matrix &a, double alpha = 1.0);

/// f(x) = d(x, q)^2 / 2 on the hyperbolic space containing q, mu-strongly convex.
Objective hyperbolic_distance_objective(const Point &q, double mu = 1.0, int dim = 2);

/// f(x) = x^T Q x / 2 on R^n with spectrum log-spaced over [1, condition_number].
Objective euclidean_quadratic(int n, double condition_number, std::uint64_t seed);
Objective quadratic_objective(const Matrix &q);

}  // namespace riemann_accel
