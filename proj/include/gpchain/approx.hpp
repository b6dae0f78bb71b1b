// approx.hpp — weak-coupling, low-momentum closed forms.
//
// Valid away from the critical line lambda = 1 + 2 alpha, where the
// low-momentum dispersion has a gap. Every function here throws
// CriticalityError when that gap parameter falls below 1e-12.
#pragma once

#include <stdexcept>

#include "gpchain/model.hpp"

namespace gpchain {

struct CriticalityError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// E(K_c) = 4 pi^2 K_c (K_c+1)(2K_c+1) / (6 N^2): the momentum-squared sum
// over the K_c lowest modes in lattice-phase units.
double cutoff_sum(int k_cut, int n_sites);

// Gaussian decay rate tau = 8 E(K_c) gamma^2 g^2 / (lambda - 1 - 2 alpha)^2
// of the short-time envelope |F| ~ exp(-tau t^2).
double decay_rate(const ModelParams& p, int k_cut);

double gaussian_envelope(double tau, double t);

// First-order low-momentum mixing-angle sine for field index n (0 or 1):
//   (-1)^{n+1} pi gamma k g / (N |(Lambda_n - 1 - 2a)(lambda - 1 - 2a)|).
double small_k_mixing(const ModelParams& p, int field_index, int k);

// First-order sine of the mixing-angle difference:
//   -2 pi gamma k g / (N |(Lambda_0 - 1 - 2a)(Lambda_1 - 1 - 2a)|).
double small_k_mixing_diff(const ModelParams& p, int k);

// Two-term weak-coupling phase:
//   pi (1 + cos beta)
//     + 64 E(K_c) pi^3 gamma^2 cos(beta) sin^2(beta) g^2
//       / (3 eta^2 (lambda - 1 - 2 alpha)^2).
double approx_gp(const ModelParams& p, int k_cut);

}  // namespace gpchain
