// decoherence.hpp — modulus of the chain-induced decoherence factor.
#pragma once

#include <stdexcept>
#include <vector>

#include "gpchain/kernels.hpp"
#include "gpchain/model.hpp"

namespace gpchain {

// Raised when a per-mode factor falls below -kFactorTolerance, which no
// rounding at a product zero can explain.
struct FactorDomainError : std::runtime_error {
  FactorDomainError(int k, double t, double factor);
  int mode;
  double time;
  double factor;
};

// Counters accumulated across evaluations of one series or sweep point.
struct DecoherenceDiagnostics {
  std::size_t clamped_factors = 0;  // negatives within tolerance zeroed
  int degenerate_modes = 0;         // gapless points in the mode tables
};

// Shares one precomputed factor table across any number of threads; all
// methods are const and lock-free (scratch is thread-local).
class DecoherenceEvaluator {
 public:
  explicit DecoherenceEvaluator(const ModelParams& p,
                                KernelKind kernel = KernelKind::automatic);

  // |F(t)|, clamped to [0, 1]. diag, when given, accumulates counters.
  double modulus(double t, DecoherenceDiagnostics* diag = nullptr) const;

  // |F(t)| restricted to momenta k <= k_cut (low-energy part of the
  // product). k_cut beyond the grid is the full product.
  double modulus_cutoff(double t, int k_cut,
                        DecoherenceDiagnostics* diag = nullptr) const;

  const ModeAngles& angles() const { return angles_; }
  const KernelInfo& kernel() const { return *kernel_; }

 private:
  double reduce(const FactorTable& table, double t,
                DecoherenceDiagnostics* diag) const;

  ModeAngles angles_;
  FactorTable table_;
  const KernelInfo* kernel_;
};

// One-shot helper.
double decoherence_modulus(const ModelParams& p, double t,
                           KernelKind kernel = KernelKind::automatic);

// Uniform samples of |F| on [0, T] with steps+1 points, T the quasi-cycle.
struct DecoherenceSeries {
  std::vector<double> times;
  std::vector<double> values;
  DecoherenceDiagnostics diag;
};

DecoherenceSeries decoherence_series(const ModelParams& p, int steps,
                                     KernelKind kernel = KernelKind::automatic);

}  // namespace gpchain
