// model.hpp — Parameters and single-mode theory of the anisotropic XY chain
// with a three-site interaction, coupled to a central probe qubit.
#pragma once

#include <stdexcept>
#include <vector>

namespace gpchain {

// Physical parameters of one simulation. The chain is periodic with n_sites
// spins; the probe qubit couples to every spin with strength g, so the chain
// sees one of two effective transverse fields depending on the qubit state.
struct ModelParams {
  double eta = 2.0;      // qubit level splitting (half-gap of eta * sigma_z)
  double gamma = 1.0;    // XY anisotropy (1 = Ising limit, 0 = isotropic)
  double alpha = 0.0;    // three-site interaction strength
  double lambda = 0.0;   // transverse field on the chain
  double g = 0.0;        // qubit-chain coupling
  int n_sites = 501;     // chain length N (>= 2)
  double beta = 0.0;     // qubit preparation angle, in [0, pi]

  // Throws std::invalid_argument if any value is out of domain.
  void validate() const;

  // Duration of one quasi-cyclic evolution, T = 2*pi/eta.
  double period() const;
};

// The two effective transverse fields lambda + g and lambda - g seen by the
// chain when the qubit sits in its upper/lower state.
struct EffectiveField {
  double up = 0.0;    // lambda + g  (qubit state 0)
  double down = 0.0;  // lambda - g  (qubit state 1)

  double operator[](int n) const { return n == 0 ? up : down; }
};

EffectiveField effective_fields(const ModelParams& p);

// Positive-momentum grid of the periodic chain: k = 1..modes with phase
// a*k = 2*pi*k/N per site. Negative momenta are implied partners.
struct ModeGrid {
  int n_sites = 0;
  int modes = 0;             // N/2 for even N, (N-1)/2 for odd N
  double lattice_phase = 0;  // a = 2*pi/N

  static ModeGrid build(int n_sites);

  // Phase a*k of momentum index k (1-based), in (0, pi].
  double phase(int k) const { return lattice_phase * k; }
};

// Quasiparticle energy 2*sqrt((Lambda - cos ka - 2 alpha cos 2ka)^2
//                             + gamma^2 sin^2 ka) of one mode.
double dispersion(double field, double gamma, double alpha, double ka);

// Pairing rotation angle of one mode, resolved over the full circle:
// theta = atan2(gamma sin ka, Lambda - cos ka - 2 alpha cos 2ka) in (-pi, pi].
// degenerate is set when both arguments vanish (gapless point); theta is then
// reported as 0 and downstream quantities stay finite.
struct AngleResult {
  double theta = 0;
  bool degenerate = false;
};

AngleResult pairing_angle(double field, double gamma, double alpha, double ka);

// Half the difference between the pairing angles at one effective field and
// at the bare field: the rotation that connects the two mode vacua.
// field_index selects up (0) or down (1). Zero when g = 0.
struct MixingResult {
  double value = 0;
  bool degenerate = false;
};

MixingResult mixing_angle(const ModelParams& p, int field_index, int k);

// Per-mode angle tables for one parameter set, shared read-only by
// evaluators and tests. Index 0 of each vector is momentum k = 1.
struct ModeAngles {
  ModeGrid grid;
  std::vector<double> omega_up;     // dispersion at field lambda + g
  std::vector<double> omega_down;   // dispersion at field lambda - g
  std::vector<double> theta_bare;   // pairing angle at field lambda
  std::vector<double> mix_up;       // mixing angle, field index 0
  std::vector<double> mix_down;     // mixing angle, field index 1
  int degenerate_modes = 0;         // gapless points seen while building

  static ModeAngles build(const ModelParams& p);
};

}  // namespace gpchain
