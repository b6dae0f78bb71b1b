// kernels.hpp — runtime-selected inner loops for the per-mode factor product.
//
// A kernel fills log_out[0..padded) with ln of each mode's factor at time t
// and reports the smallest factor seen. The scalar kernel is the reference;
// the AVX2 kernel must match it to ~1e-13 in the reduced modulus and is
// checked against it in the test suite. Padding lanes hold neutral modes
// (factor identically 1, ln = 0), so both kernels can run whole blocks.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace gpchain {

// Precomputed per-mode coefficients of the factor
//   f_k(t) = a b cos(dw t) - a s2d b^2 + 1 - q0 sin^2(w0 t) - q1 sin^2(w1 t),
//   b = 2 sin(w0 t) sin(w1 t),
// where w0/w1 are the dispersions at the two effective fields, a the product
// of mixing-angle sines, q0/q1 their squares and s2d the squared sine of the
// mixing-angle difference. Arrays are padded to a multiple of the widest
// SIMD block.
struct FactorTable {
  std::size_t modes = 0;
  std::size_t padded = 0;
  std::vector<double> w0, w1, dw;  // dispersions and their difference
  std::vector<double> a;           // sin(2 mix_up) * sin(2 mix_down)
  std::vector<double> as2d;        // a * sin^2(mix_up - mix_down)
  std::vector<double> q0, q1;      // sin^2(2 mix_up), sin^2(2 mix_down)
};

struct KernelScan {
  double min_factor = 1.0;  // smallest factor encountered (pre-clamp)
  std::size_t min_index = 0;  // mode index (0-based) of min_factor
  std::size_t clamped = 0;  // factors in [-tol, 0) zeroed this call
};

// Factors this far below zero abort the evaluation: the closed form would
// have to be wrong, not merely rounding at a zero crossing.
inline constexpr double kFactorTolerance = 1e-12;

using KernelFn = KernelScan (*)(const FactorTable&, double t,
                                double* log_out);

enum class KernelKind { automatic, scalar, avx2 };

struct KernelInfo {
  KernelKind kind;
  const char* name;
  KernelFn fn;
};

// Kernels compiled into this binary that the current CPU can run.
const std::vector<KernelInfo>& available_kernels();

// Resolve a selection; automatic picks the widest supported kernel.
// Throws std::invalid_argument for a kernel this CPU cannot run.
const KernelInfo& select_kernel(KernelKind kind);

KernelKind parse_kernel_name(const std::string& name);

// Deterministic pairwise reduction, identical tree for every kernel and
// worker count.
double pairwise_sum(const double* x, std::size_t n);

// Reference kernel (libm trig/log, plain loop).
KernelScan scalar_factor_kernel(const FactorTable& table, double t,
                                double* log_out);

#if defined(__x86_64__) || defined(_M_X64)
bool avx2_available();
KernelScan avx2_factor_kernel(const FactorTable& table, double t,
                              double* log_out);
#endif

}  // namespace gpchain
