#include "riemann_accel/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace riemann_accel {

namespace {

// Sphere Log errors out when <x,y> falls within this margin of -1.
constexpr double kAntipodalMargin = 1e-10;

double minkowski(const Vector &a, const Vector &b) {
  return a.tail(a.size() - 1).dot(b.tail(b.size() - 1)) - a(0) * b(0);
}

}  // namespace

double zeta(const CurvatureBounds &bounds) {
  if (!(bounds.diameter > 0.0) || !std::isfinite(bounds.diameter))
    throw DomainError("zeta: diameter must be finite and positive");
  if (bounds.k_min >= 0.0) return 1.0;
  const double s = std::sqrt(-bounds.k_min) * bounds.diameter;
  return s / std::tanh(s);
}

Manifold Manifold::sphere(int ambient_dim) {
  if (ambient_dim < 2) throw DomainError("sphere: ambient dimension must be >= 2");
  return {ManifoldKind::Sphere, ambient_dim};
}

Manifold Manifold::hyperbolic(int dim) {
  if (dim < 1) throw DomainError("hyperbolic: dimension must be >= 1");
  return {ManifoldKind::Hyperbolic, dim + 1};
}

Manifold Manifold::euclidean(int dim) {
  if (dim < 1) throw DomainError("euclidean: dimension must be >= 1");
  return {ManifoldKind::Euclidean, dim};
}

std::string Manifold::name() const {
  switch (kind_) {
    case ManifoldKind::Sphere:
      return "S^" + std::to_string(ambient_dim_ - 1);
    case ManifoldKind::Hyperbolic:
      return "H^" + std::to_string(ambient_dim_ - 1);
    case ManifoldKind::Euclidean:
      return "R^" + std::to_string(ambient_dim_);
  }
  return "?";
}

double Manifold::sectional_curvature() const {
  switch (kind_) {
    case ManifoldKind::Sphere:
      return 1.0;
    case ManifoldKind::Hyperbolic:
      return -1.0;
    case ManifoldKind::Euclidean:
      return 0.0;
  }
  return 0.0;
}

double Manifold::ambient_inner(const Vector &a, const Vector &b) const {
  return kind_ == ManifoldKind::Hyperbolic ? minkowski(a, b) : a.dot(b);
}

void Manifold::require_base(const Tangent &v, const Point &x) const {
  if (v.base.size() != x.coords.size() || v.vec.size() != x.coords.size())
    throw DomainError("tangent vector dimension does not match point");
  const double scale = std::max(1.0, x.coords.lpNorm<Eigen::Infinity>());
  if ((v.base - x.coords).lpNorm<Eigen::Infinity>() > 1e-12 * scale)
    throw DomainError("tangent vector is based at a different point");
}

double Manifold::metric(const Tangent &u, const Tangent &v) const {
  require_base(v, u.point());
  return ambient_inner(u.vec, v.vec);
}

double Manifold::norm(const Tangent &u) const {
  return std::sqrt(std::max(0.0, ambient_inner(u.vec, u.vec)));
}

Point Manifold::exp(const Point &x, const Tangent &v) const {
  require_base(v, x);
  const double nv = norm(v);
  if (nv == 0.0) return x;
  switch (kind_) {
    case ManifoldKind::Sphere:
      return retract(Vector(std::cos(nv) * x.coords + (std::sin(nv) / nv) * v.vec));
    case ManifoldKind::Hyperbolic:
      return retract(Vector(std::cosh(nv) * x.coords + (std::sinh(nv) / nv) * v.vec));
    case ManifoldKind::Euclidean:
      return Point{x.coords + v.vec};
  }
  return x;
}

Tangent Manifold::log(const Point &x, const Point &y) const {
  switch (kind_) {
    case ManifoldKind::Sphere: {
      const double c = std::clamp(x.coords.dot(y.coords), -1.0, 1.0);
      if (c <= -1.0 + kAntipodalMargin) throw CutLocusError("sphere log: points are antipodal");
      Vector w = y.coords - c * x.coords;
      const double nw = w.norm();
      if (nw == 0.0) return zero(x);
      return project(x, Vector((std::atan2(nw, c) / nw) * w));
    }
    case ManifoldKind::Hyperbolic: {
      const double c = std::max(1.0, -minkowski(x.coords, y.coords));
      Vector w = y.coords - c * x.coords;
      const double nw = std::sqrt(std::max(0.0, minkowski(w, w)));
      if (nw == 0.0) return zero(x);
      return project(x, Vector((distance(x, y) / nw) * w));
    }
    case ManifoldKind::Euclidean:
      return {x, Vector(y.coords - x.coords)};
  }
  return zero(x);
}

Tangent Manifold::transport(const Point &x, const Point &y, const Tangent &v) const {
  require_base(v, x);
  switch (kind_) {
    case ManifoldKind::Sphere: {
      const double c = x.coords.dot(y.coords);
      if (c <= -1.0 + kAntipodalMargin)
        throw CutLocusError("sphere transport: points are antipodal");
      const double s = y.coords.dot(v.vec) / (1.0 + c);
      return project(y, Vector(v.vec - s * (x.coords + y.coords)));
    }
    case ManifoldKind::Hyperbolic: {
      const double c = -minkowski(x.coords, y.coords);
      const double s = minkowski(y.coords, v.vec) / (1.0 + c);
      return project(y, Vector(v.vec + s * (x.coords + y.coords)));
    }
    case ManifoldKind::Euclidean:
      return {y, v.vec};
  }
  return v;
}

double Manifold::distance(const Point &x, const Point &y) const {
  switch (kind_) {
    case ManifoldKind::Sphere: {
      const double c = std::clamp(x.coords.dot(y.coords), -1.0, 1.0);
      return std::atan2((y.coords - c * x.coords).norm(), c);
    }
    case ManifoldKind::Hyperbolic: {
      const Vector diff = x.coords - y.coords;
      return 2.0 * std::asinh(0.5 * std::sqrt(std::max(0.0, minkowski(diff, diff))));
    }
    case ManifoldKind::Euclidean:
      return (x.coords - y.coords).norm();
  }
  return 0.0;
}

Tangent Manifold::project(const Point &x, const Vector &w) const {
  switch (kind_) {
    case ManifoldKind::Sphere:
      return {x, Vector(w - x.coords.dot(w) * x.coords)};
    case ManifoldKind::Hyperbolic:
      return {x, Vector(w + minkowski(w, x.coords) * x.coords)};
    case ManifoldKind::Euclidean:
      return {x, w};
  }
  return {x, w};
}

Tangent Manifold::gradient_from_ambient(const Point &x, const Vector &egrad) const {
  if (kind_ != ManifoldKind::Hyperbolic) return project(x, egrad);
  Vector flipped = egrad;
  flipped(0) = -flipped(0);
  return project(x, flipped);
}

Point Manifold::retract(const Point &x) const {
  switch (kind_) {
    case ManifoldKind::Sphere:
      return Point{x.coords / x.coords.norm()};
    case ManifoldKind::Hyperbolic: {
      Point out = x;
      out.coords(0) = std::sqrt(1.0 + x.coords.tail(ambient_dim_ - 1).squaredNorm());
      return out;
    }
    case ManifoldKind::Euclidean:
      return x;
  }
  return x;
}

Vector Manifold::normal_term(const Point &x, const Vector &u, const Vector &w) const {
  switch (kind_) {
    case ManifoldKind::Sphere:
      return -u.dot(w) * x.coords;
    case ManifoldKind::Hyperbolic:
      return minkowski(u, w) * x.coords;
    case ManifoldKind::Euclidean:
      return Vector::Zero(ambient_dim_);
  }
  return Vector::Zero(ambient_dim_);
}

double Manifold::constraint_residual(const Point &x) const {
  switch (kind_) {
    case ManifoldKind::Sphere:
      return std::abs(x.coords.norm() - 1.0);
    case ManifoldKind::Hyperbolic: {
      const double r = std::abs(minkowski(x.coords, x.coords) + 1.0);
      return x.coords(0) > 0.0 ? r : std::numeric_limits<double>::infinity();
    }
    case ManifoldKind::Euclidean:
      return 0.0;
  }
  return 0.0;
}

double Manifold::tangency_residual(const Tangent &v) const {
  if (kind_ == ManifoldKind::Euclidean) return 0.0;
  return std::abs(ambient_inner(v.base, v.vec));
}

double Manifold::injectivity_radius() const {
  return kind_ == ManifoldKind::Sphere ? std::numbers::pi : std::numeric_limits<double>::infinity();
}

Point Manifold::origin() const {
  Vector o = Vector::Zero(ambient_dim_);
  if (kind_ != ManifoldKind::Euclidean) o(0) = 1.0;
  return Point{o};
}

Point Manifold::random_point(std::mt19937_64 &rng, double spread) const {
  std::normal_distribution<double> gauss;
  Vector g(ambient_dim_);
  for (auto &gi : g) gi = gauss(rng);
  switch (kind_) {
    case ManifoldKind::Sphere:
      return Point{g / g.norm()};
    case ManifoldKind::Hyperbolic: {
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      const Point o = origin();
      return exp(o, random_tangent(o, rng, spread * unit(rng)));
    }
    case ManifoldKind::Euclidean:
      return Point{spread * g};
  }
  return origin();
}

Tangent Manifold::random_tangent(const Point &x, std::mt19937_64 &rng, double length) const {
  std::normal_distribution<double> gauss;
  Vector g(ambient_dim_);
  for (auto &gi : g) gi = gauss(rng);
  Tangent t = project(x, g);
  const double n = norm(t);
  if (n == 0.0) return zero(x);
  return t * (length / n);
}

}  // namespace riemann_accel
