// oracle.hpp — Independent checks of the chain dynamics.
//
// Two routes, deliberately separate from the closed-form evaluator:
//   * mode_overlap: evolves each even-parity momentum pair with exact 2x2
//     unitaries built from the pairing Hamiltonian blocks, and multiplies
//     the per-mode overlaps. Same free-fermion idealization, independent
//     algebra.
//   * ExactDiagOracle: dense diagonalization of the full periodic spin
//     Hamiltonian (small chains only). Carries the physical boundary term
//     the momentum-space treatment drops, so it agrees with the other two
//     routes only up to a finite-size gap that must shrink with N.
#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "gpchain/model.hpp"

namespace gpchain {

// Even-parity 2x2 block of one momentum pair, in the basis
// {both modes empty, both occupied}:
//     [ -eps    i*delta ]
//     [ -i*delta    eps ]
// with eps = 2(Lambda - cos ka - 2 alpha cos 2ka), delta = 2 gamma sin ka.
// Eigenvalues are -/+ Omega (the dispersion), so the block gap is 2*Omega.
// The lower eigenvector is (cos(theta/2), i sin(theta/2)) with
// tan theta = delta/eps, matching the chain ground state per mode.
struct ModeBlock {
  int k = 0;
  double eps = 0;
  double delta = 0;
  // Row-major 2x2 complex matrix.
  std::complex<double> m[4] = {};
};

ModeBlock build_mode_block(double field, double gamma, double alpha,
                           const ModeGrid& grid, int k);

// Ground eigenvector of a block, (cos(theta/2), i sin(theta/2)).
void mode_ground_vector(const ModeBlock& b, std::complex<double> out[2]);

// Overlap F(t) = <G| exp(+i H_down t) exp(-i H_up t) |G> with |G> the bare
// chain ground state, built mode by mode from closed-form 2x2 exponentials.
// Only the modulus is physically meaningful here (per-pair additive energy
// constants are dropped, shifting the phase).
std::complex<double> mode_overlap(const ModelParams& p, double t);

// Dense exact treatment of the full spin model on the 2^N chain Hilbert
// space. The probe qubit is handled through its two field sectors, which is
// exact because the full Hamiltonian commutes with the qubit's sigma_z.
// Guarded to n_sites <= 12.
class ExactDiagOracle {
 public:
  explicit ExactDiagOracle(const ModelParams& p);

  // F(t) = <G| exp(+i H_down t) exp(-i H_up t) |G>, boundary term included.
  std::complex<double> factor(double t) const;

 private:
  int dim_ = 0;
  std::vector<double> ground_;              // bare-chain ground state
  std::vector<double> evals_up_, evals_down_;
  std::vector<double> evecs_up_, evecs_down_;  // column-major, dim x dim
  std::vector<double> ground_in_up_, ground_in_down_;  // eigenbasis coords
};

// One Pauli-string term of a spin Hamiltonian: coefficient times a product
// of single-site operators. op codes: 1 = x, 2 = y, 3 = z.
struct PauliTerm {
  double coeff = 0;
  std::vector<std::pair<int, int>> ops;  // (site, op code)
};

// Periodic chain Hamiltonian terms at a given transverse field:
//   - sum_l [ (1+gamma)/2 x_l x_{l+1} + (1-gamma)/2 y_l y_{l+1}
//             + field z_l ]
//   - alpha sum_l [ x_{l-1} z_l x_{l+1} + y_{l-1} z_l y_{l+1} ]
std::vector<PauliTerm> chain_terms(int n_sites, double gamma, double alpha,
                                   double field);

// Full probe+chain Hamiltonian terms (qubit is site index n_sites):
// eta z_q  + chain terms at the bare field  - g z_q sum_l z_l.
std::vector<PauliTerm> full_system_terms(const ModelParams& p);

// Dense real matrix of a term list over n_spins sites, row-major,
// dimension 2^n_spins. Every term with an odd number of y factors is
// rejected (it would make the matrix complex); the models here never
// produce one.
std::vector<double> build_dense(const std::vector<PauliTerm>& terms,
                                int n_spins);

}  // namespace gpchain
