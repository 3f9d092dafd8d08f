#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace riemann_accel {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// A point on an embedded manifold, stored in ambient coordinates.
struct Point {
  Vector coords;

  Eigen::Index dim() const { return coords.size(); }
};

/// A tangent vector in ambient coordinates together with its base point.
struct Tangent {
  Vector base;
  Vector vec;

  Tangent() = default;
  Tangent(const Point &at, Vector v) : base(at.coords), vec(std::move(v)) {}

  Point point() const { return Point{base}; }
  Eigen::Index dim() const { return vec.size(); }

  Tangent operator+(const Tangent &o) const { return {point(), Vector(vec + o.vec)}; }
  Tangent operator-(const Tangent &o) const { return {point(), Vector(vec - o.vec)}; }
  Tangent operator-() const { return {point(), Vector(-vec)}; }
  Tangent operator*(double s) const { return {point(), Vector(s * vec)}; }
  friend Tangent operator*(double s, const Tangent &t) { return t * s; }
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a formula (t <= 0, bad diameter, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Requested Log / transport between points with no unique minimizing geodesic.
class CutLocusError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class EstimationError : public Error {
 public:
  using Error::Error;
};

}  // namespace riemann_accel
