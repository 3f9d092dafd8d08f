#include "riemann_accel/kernels.hpp"

#include <omp.h>

namespace riemann_accel::kernels {

namespace {

void check_shapes(const Matrix &a, const Vector &x) {
  if (a.rows() != a.cols() || a.cols() != x.size()) throw DomainError("symmetric_matvec: dimension mismatch");
}

}  // namespace

Vector symmetric_matvec_serial(const Matrix &a, const Vector &x) {
  check_shapes(a, x);
  const Eigen::Index n = a.cols();
  Vector y(n);
  for (Eigen::Index i = 0; i < n; ++i) y(i) = a.col(i).dot(x);
  return y;
}

Vector symmetric_matvec_parallel(const Matrix &a, const Vector &x) {
  check_shapes(a, x);
  const Eigen::Index n = a.cols();
  Vector y(n);
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) y(i) = a.col(i).dot(x);
  return y;
}

Vector symmetric_matvec(const Matrix &a, const Vector &x, Execution exec) {
  if (exec == Execution::Auto)
    exec = a.cols() >= kParallelThreshold ? Execution::Parallel : Execution::Serial;
  return exec == Execution::Parallel ? symmetric_matvec_parallel(a, x)
                                     : symmetric_matvec_serial(a, x);
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace riemann_accel::kernels
