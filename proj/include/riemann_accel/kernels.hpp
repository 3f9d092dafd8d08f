#pragma once

#include "riemann_accel/core.hpp"

namespace riemann_accel::kernels {

enum class Execution { Serial, Parallel, Auto };

// Dimension at which Auto switches the dense products to the OpenMP path.
inline constexpr Eigen::Index kParallelThreshold = 256;

// y = A x for symmetric A. Each output entry is the dot product of a column of
// A with x, so the serial and parallel kernels agree bit for bit.
Vector symmetric_matvec_serial(const Matrix &a, const Vector &x);
Vector symmetric_matvec_parallel(const Matrix &a, const Vector &x);
Vector symmetric_matvec(const Matrix &a, const Vector &x, Execution exec = Execution::Auto);

int max_threads();

}  // namespace riemann_accel::kernels
