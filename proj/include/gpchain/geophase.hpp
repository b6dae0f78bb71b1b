// geophase.hpp — geometric phase of the probe qubit over one quasi-cycle.
#pragma once

#include <stdexcept>

#include "gpchain/decoherence.hpp"
#include "gpchain/model.hpp"

namespace gpchain {

// Instantaneous eigenvalues and mixing angle of the reduced qubit state
// for preparation angle beta and decoherence modulus fmod:
//   eps_plus  = (1 + sqrt(cos^2 beta + sin^2 beta fmod^2)) / 2
//   beta_plus = 2 atan[(cot beta + sqrt(cot^2 beta + fmod^2)) / fmod]
// Degenerate limits: beta = 0 -> beta_plus = pi; beta = pi -> beta_plus = 0;
// fmod = 0 -> pi, 0 or pi/2 according to the sign of cos beta.
struct SpectralData {
  double eps_plus = 1.0;
  double eps_minus = 0.0;   // 1 - eps_plus, exactly 0 at fmod = 1
  double beta_plus = 0.0;   // in [0, pi]
};

SpectralData eigen_spectrum(double beta, double fmod);

// sin^2(beta_plus/2) evaluated without forming the angle, stable for
// fmod -> 0 and large |cot beta|.
double upper_weight(double beta, double fmod);

// Phase of the uncoupled qubit, pi (1 + cos beta).
double unperturbed_phase(double beta);

struct QuadratureError : std::runtime_error {
  QuadratureError(double achieved, double value);
  double achieved;  // error estimate at the evaluation budget
  double value;     // last integral value
};

struct GpResult {
  double phi = 0;              // reported in [0, 2 pi)
  double phi_raw = 0;          // integral before wrapping
  double quadrature_error = 0; // Richardson estimate of the integral error
  long evaluations = 0;        // modulus evaluations spent
  DecoherenceDiagnostics diag; // counters from the modulus evaluations
};

// Phase from the closed-form weight: eta * integral of sin^2(beta_plus/2)
// over one quasi-cycle, by composite Simpson with interval halving and
// Richardson acceptance at tol. Throws QuadratureError if the 2^20
// evaluation budget is exhausted first.
GpResult geometric_phase(const ModelParams& p, double tol = 1e-9,
                         KernelKind kernel = KernelKind::automatic);

// Same integral with the environment product truncated to the first k_cut
// momentum modes. Isolates the low-frequency sector: band modes oscillate
// too fast to follow the qubit cycle and only add a frequency-independent
// background, so scaling laws in the level splitting are read off the
// truncated product.
GpResult geometric_phase_cutoff(const ModelParams& p, int k_cut,
                                double tol = 1e-9,
                                KernelKind kernel = KernelKind::automatic);

// Same phase from the general mixed-state definition: accumulates the
// upper eigenstate's connection integral and end-point overlap on a
// uniform grid of the given number of steps, and takes the argument of
// the weighted sum over both eigenstates. Cross-check route; its
// quadrature_error field reports a step-halving estimate.
GpResult geometric_phase_general(const ModelParams& p, int steps = 4096,
                                 KernelKind kernel = KernelKind::automatic);

// Smallest nonnegative representative of the difference of two angles
// modulo 2 pi (used to compare the two routes).
double circular_distance(double a, double b);

}  // namespace gpchain
