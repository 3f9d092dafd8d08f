#pragma once

#include "riemann_accel/core.hpp"

#include <random>
#include <string>

namespace riemann_accel {

enum class ManifoldKind { Sphere, Hyperbolic, Euclidean };

/// Lower sectional-curvature bound and an upper bound on the diameter of the
/// region the iterates live in.
struct CurvatureBounds {
  double k_min = 0.0;
  double diameter = 1.0;
};

/// Curvature constant entering the Bregman dynamics. Equal to 1 on
/// non-negatively curved domains, sqrt(-k) D coth(sqrt(-k) D) otherwise.
double zeta(const CurvatureBounds &bounds);

/// An isometrically embedded Riemannian manifold.
///
///   Sphere     - unit sphere S^{n-1} in R^n, Euclidean metric.
///   Hyperbolic - upper sheet of the hyperboloid <x,x>_M = -1 in R^{n+1} with
///                Minkowski product <a,b>_M = -a0 b0 + sum_i ai bi; the metric
///                is the restriction of <.,.>_M to tangent spaces.
///   Euclidean  - R^n.
///
/// Points and tangent vectors are stored in ambient coordinates. Exp and
/// transport renormalize their output so the constraint holds to rounding.
class Manifold {
 public:
  static Manifold sphere(int ambient_dim);
  /// Hyperbolic space of intrinsic dimension `dim` (the plane for dim = 2).
  static Manifold hyperbolic(int dim = 2);
  static Manifold euclidean(int dim);

  ManifoldKind kind() const { return kind_; }
  int ambient_dim() const { return ambient_dim_; }
  std::string name() const;

  /// Constant sectional curvature (+1, -1, 0).
  double sectional_curvature() const;
  /// Curvature bounds for a domain of the given diameter.
  CurvatureBounds bounds(double diameter) const { return {sectional_curvature(), diameter}; }

  /// Ambient bilinear form: dot product, or Minkowski product on the hyperboloid.
  double ambient_inner(const Vector &a, const Vector &b) const;

  double metric(const Tangent &u, const Tangent &v) const;
  double norm(const Tangent &u) const;

  Point exp(const Point &x, const Tangent &v) const;
  Tangent log(const Point &x, const Point &y) const;
  Tangent transport(const Point &x, const Point &y, const Tangent &v) const;
  double distance(const Point &x, const Point &y) const;

  /// Metric-orthogonal projection of an ambient vector onto T_x.
  Tangent project(const Point &x, const Vector &w) const;
  /// Riemannian gradient from the ambient (Euclidean) gradient of an extension.
  Tangent gradient_from_ambient(const Point &x, const Vector &egrad) const;

  /// Pull a drifted point back onto the manifold.
  Point retract(const Point &x) const;
  Point retract(const Vector &coords) const { return retract(Point{coords}); }

  /// Normal part of the ambient acceleration of a curve with velocity u
  /// carrying a field w: d/dt w = nabla_u w + normal_term(x, u, w).
  Vector normal_term(const Point &x, const Vector &u, const Vector &w) const;

  /// Deviation from the defining constraint (0 for Euclidean space).
  double constraint_residual(const Point &x) const;
  /// Deviation of v from T_x, measured with the ambient form.
  double tangency_residual(const Tangent &v) const;

  /// Injectivity radius (pi for the sphere, infinity otherwise).
  double injectivity_radius() const;

  Tangent zero(const Point &x) const { return {x, Vector::Zero(ambient_dim_)}; }

  /// Canonical base point: e_0 on sphere and hyperboloid, origin otherwise.
  Point origin() const;

  Point random_point(std::mt19937_64 &rng, double spread = 1.0) const;
  /// Gaussian tangent vector at x scaled to have norm `length`.
  Tangent random_tangent(const Point &x, std::mt19937_64 &rng, double length) const;

  /// Throws DomainError unless v is based at x (relative tolerance 1e-12).
  void require_base(const Tangent &v, const Point &x) const;

 private:
  Manifold(ManifoldKind kind, int ambient_dim) : kind_(kind), ambient_dim_(ambient_dim) {}

  ManifoldKind kind_;
  int ambient_dim_;
};

}  // namespace riemann_accel
