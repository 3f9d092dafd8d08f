#include "riemann_accel/oracles.hpp"

#include <algorithm>
#include <cmath>

namespace riemann_accel::oracle {

Eigen::Vector3d sphere_embedding(const Coord2 &q) {
  const double st = std::sin(q(0));
  return {st * std::cos(q(1)), st * std::sin(q(1)), std::cos(q(0))};
}

Eigen::Matrix<double, 3, 2> sphere_jacobian(const Coord2 &q) {
  const double st = std::sin(q(0)), ct = std::cos(q(0));
  const double sp = std::sin(q(1)), cp = std::cos(q(1));
  Eigen::Matrix<double, 3, 2> j;
  j << ct * cp, -st * sp,  //
      ct * sp, st * cp,    //
      -st, 0.0;
  return j;
}

Coord2 sphere_chart(const Eigen::Vector3d &x) {
  return {std::acos(std::clamp(x(2) / x.norm(), -1.0, 1.0)), std::atan2(x(1), x(0))};
}

Metric2 sphere_metric(const Coord2 &q) {
  const auto j = sphere_jacobian(q);
  return j.transpose() * j;
}

Christoffel2 christoffel(const std::function<Metric2(const Coord2 &)> &metric, const Coord2 &q,
                         double step) {
  std::array<Metric2, 2> dg;  // dg[l](i, j) = d_l g_ij
  for (int l = 0; l < 2; ++l) {
    Coord2 e = Coord2::Zero();
    e(l) = step;
    dg[l] = (metric(q + e) - metric(q - e)) / (2.0 * step);
  }
  const Metric2 ginv = metric(q).inverse();
  Christoffel2 gamma;
  for (int k = 0; k < 2; ++k) {
    gamma[k].setZero();
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 2; ++l)
          gamma[k](i, j) += 0.5 * ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
  }
  return gamma;
}

Coord2 covariant_acceleration(const Christoffel2 &gamma, const Coord2 &qd, const Coord2 &qdd) {
  return {qdd(0) + qd.dot(gamma[0] * qd), qdd(1) + qd.dot(gamma[1] * qd)};
}

Coord2 coordinate_el_acceleration(const std::function<double(const Eigen::Vector3d &)> &f,
                                  const Coord2 &q, const Coord2 &qd, double damping, double force,
                                  double step) {
  Coord2 df;
  for (int l = 0; l < 2; ++l) {
    Coord2 e = Coord2::Zero();
    e(l) = step;
    df(l) = (f(sphere_embedding(q + e)) - f(sphere_embedding(q - e))) / (2.0 * step);
  }
  const Christoffel2 gamma = christoffel(sphere_metric, q, step);
  const Coord2 quad{qd.dot(gamma[0] * qd), qd.dot(gamma[1] * qd)};
  return -quad - damping * qd - force * sphere_metric(q).inverse() * df;
}

}  // namespace riemann_accel::oracle
