#pragma once

#include "riemann_accel/geometry.hpp"

#include <functional>
#include <optional>
#include <string>

namespace riemann_accel {

/// Geodesic convexity class of an objective, selecting which member of the
/// Bregman family (and which convergence theorem) applies.
class ConvexityClass {
 public:
  enum class Kind { Convex, WeaklyQuasiConvex, StronglyConvex };

  static ConvexityClass convex() { return ConvexityClass(Kind::Convex, 1.0, 0.0); }
  /// alpha in (0, 1].
  static ConvexityClass weakly_quasi_convex(double alpha);
  /// mu > 0.
  static ConvexityClass strongly_convex(double mu);

  Kind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  double mu() const { return mu_; }
  bool polynomial() const { return kind_ != Kind::StronglyConvex; }
  std::string name() const;

 private:
  ConvexityClass(Kind k, double alpha, double mu) : kind_(k), alpha_(alpha), mu_(mu) {}
  Kind kind_;
  double alpha_;
  double mu_;
};

/// An objective on a manifold: value, Riemannian gradient, declared class and
/// optional knowledge of the minimizer.
struct Objective {
  std::string name;
  Manifold manifold;
  std::function<double(const Point &)> value;
  std::function<Tangent(const Point &)> gradient;
  ConvexityClass convexity = ConvexityClass::convex();
  std::optional<Point> minimizer;
  std::optional<double> optimal_value;
  std::optional<double> smoothness;

  double gap(const Point &x) const { return value(x) - optimal_value.value_or(0.0); }
};

/// Riemannian gradient of `objective` at x, tangent-projected against drift.
Tangent riemannian_gradient(const Objective &objective, const Point &x);

}  // namespace riemann_accel
