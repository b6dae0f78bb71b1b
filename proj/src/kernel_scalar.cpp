// kernel_scalar.cpp — reference factor kernel and the shared reduction.
#include <cmath>
#include <limits>

#include "gpchain/kernels.hpp"

namespace gpchain {

KernelScan scalar_factor_kernel(const FactorTable& table, double t,
                                double* log_out) {
  KernelScan scan;
  for (std::size_t i = 0; i < table.padded; ++i) {
    const double s0 = std::sin(table.w0[i] * t);
    const double s1 = std::sin(table.w1[i] * t);
    const double cd = std::cos(table.dw[i] * t);
    const double b = 2.0 * s0 * s1;
    double f = 1.0 + b * (table.a[i] * cd - table.as2d[i] * b) -
               table.q0[i] * s0 * s0 - table.q1[i] * s1 * s1;
    if (f < scan.min_factor) {
      scan.min_factor = f;
      scan.min_index = i;
    }
    if (f < 0.0) {
      if (f < -kFactorTolerance) {
        log_out[i] = std::numeric_limits<double>::quiet_NaN();
        continue;  // caller aborts on min_factor
      }
      ++scan.clamped;
      f = 0.0;
    }
    log_out[i] = std::log(f);
  }
  return scan;
}

double pairwise_sum(const double* x, std::size_t n) {
  // Fixed binary tree: blocks of 8 summed left to right, then recursion on
  // halves. Identical result for any thread count because threads never
  // split this reduction.
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(x, half) + pairwise_sum(x + half, n - half);
}

}  // namespace gpchain
