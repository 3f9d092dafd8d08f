#pragma once

#include "riemann_accel/core.hpp"

#include <array>
#include <functional>

// Coordinate-chart computations on the 2-sphere, used as an independent check
// of the embedded (ambient-coordinate) geometry. Nothing here calls into
// Manifold; metric derivatives are taken by central finite differences.
namespace riemann_accel::oracle {

using Coord2 = Eigen::Vector2d;
using Metric2 = Eigen::Matrix2d;
/// gamma[k](i, j) = Gamma^k_ij
using Christoffel2 = std::array<Eigen::Matrix2d, 2>;

/// Spherical chart (theta, phi) -> (sin t cos p, sin t sin p, cos t).
Eigen::Vector3d sphere_embedding(const Coord2 &q);
Eigen::Matrix<double, 3, 2> sphere_jacobian(const Coord2 &q);
Coord2 sphere_chart(const Eigen::Vector3d &x);

/// g_ij = J^T J of the chart.
Metric2 sphere_metric(const Coord2 &q);

/// Gamma^k_ij = 1/2 g^kl (d_i g_jl + d_j g_il - d_l g_ij), derivatives of the
/// metric by central differences with step `step`.
Christoffel2 christoffel(const std::function<Metric2(const Coord2 &)> &metric, const Coord2 &q,
                         double step = 1e-5);

/// Covariant acceleration qdd^k + Gamma^k_ij qd^i qd^j in chart components.
Coord2 covariant_acceleration(const Christoffel2 &gamma, const Coord2 &qd, const Coord2 &qdd);

/// Chart acceleration from the coordinate Euler-Lagrange equation
///   qdd^k = -Gamma^k_ij qd^i qd^j - damping qd^k - force g^kl d_l f
/// with d_l f from central differences of f composed with the chart.
Coord2 coordinate_el_acceleration(const std::function<double(const Eigen::Vector3d &)> &f,
                                  const Coord2 &q, const Coord2 &qd, double damping, double force,
                                  double step = 1e-5);

}  // namespace riemann_accel::oracle
