#include "riemann_accel/objective.hpp"

#include <cmath>

namespace riemann_accel {

ConvexityClass ConvexityClass::weakly_quasi_convex(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw DomainError("weakly-quasi-convex: alpha must lie in (0, 1]");
  return ConvexityClass(Kind::WeaklyQuasiConvex, alpha, 0.0);
}

ConvexityClass ConvexityClass::strongly_convex(double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw DomainError("strongly convex: mu must be > 0");
  return ConvexityClass(Kind::StronglyConvex, 1.0, mu);
}

std::string ConvexityClass::name() const {
  switch (kind_) {
    case Kind::Convex:
      return "convex";
    case Kind::WeaklyQuasiConvex:
      return "wqc";
    case Kind::StronglyConvex:
      return "sc";
  }
  return "?";
}

Tangent riemannian_gradient(const Objective &objective, const Point &x) {
  return objective.manifold.project(x, objective.gradient(x).vec);
}

}  // namespace riemann_accel
