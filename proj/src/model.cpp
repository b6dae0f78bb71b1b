// model.cpp — chain-core implementation.
#include "gpchain/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace gpchain {

void ModelParams::validate() const {
  if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");
  if (n_sites < 2) throw std::invalid_argument("n_sites must be at least 2");
  if (!(beta >= 0.0 && beta <= std::numbers::pi))
    throw std::invalid_argument("beta must lie in [0, pi]");
  if (!std::isfinite(gamma) || !std::isfinite(alpha) ||
      !std::isfinite(lambda) || !std::isfinite(g))
    throw std::invalid_argument("model parameters must be finite");
}

double ModelParams::period() const { return 2.0 * std::numbers::pi / eta; }

EffectiveField effective_fields(const ModelParams& p) {
  return {p.lambda + p.g, p.lambda - p.g};
}

ModeGrid ModeGrid::build(int n_sites) {
  if (n_sites < 2) throw std::invalid_argument("n_sites must be at least 2");
  ModeGrid grid;
  grid.n_sites = n_sites;
  grid.modes = n_sites / 2;  // (N-1)/2 for odd N by integer division
  grid.lattice_phase = 2.0 * std::numbers::pi / n_sites;
  return grid;
}

namespace {

// Shared by dispersion and pairing_angle: the two components whose polar
// form gives the quasiparticle energy and rotation angle.
inline void mode_components(double field, double gamma, double alpha,
                            double ka, double& u, double& v) {
  u = field - std::cos(ka) - 2.0 * alpha * std::cos(2.0 * ka);
  v = gamma * std::sin(ka);
}

}  // namespace

double dispersion(double field, double gamma, double alpha, double ka) {
  double u, v;
  mode_components(field, gamma, alpha, ka, u, v);
  return 2.0 * std::hypot(u, v);
}

AngleResult pairing_angle(double field, double gamma, double alpha,
                          double ka) {
  double u, v;
  mode_components(field, gamma, alpha, ka, u, v);
  if (u == 0.0 && v == 0.0) return {0.0, true};
  return {std::atan2(v, u), false};
}

MixingResult mixing_angle(const ModelParams& p, int field_index, int k) {
  if (field_index != 0 && field_index != 1)
    throw std::invalid_argument("field_index must be 0 or 1");
  const ModeGrid grid = ModeGrid::build(p.n_sites);
  if (k < 1 || k > grid.modes)
    throw std::invalid_argument("momentum index out of range: " +
                                std::to_string(k));
  const double ka = grid.phase(k);
  const AngleResult shifted =
      pairing_angle(effective_fields(p)[field_index], p.gamma, p.alpha, ka);
  const AngleResult bare = pairing_angle(p.lambda, p.gamma, p.alpha, ka);
  return {0.5 * (shifted.theta - bare.theta),
          shifted.degenerate || bare.degenerate};
}

ModeAngles ModeAngles::build(const ModelParams& p) {
  p.validate();
  ModeAngles out;
  out.grid = ModeGrid::build(p.n_sites);
  const int m = out.grid.modes;
  out.omega_up.resize(m);
  out.omega_down.resize(m);
  out.theta_bare.resize(m);
  out.mix_up.resize(m);
  out.mix_down.resize(m);
  const EffectiveField field = effective_fields(p);
  for (int k = 1; k <= m; ++k) {
    const double ka = out.grid.phase(k);
    out.omega_up[k - 1] = dispersion(field.up, p.gamma, p.alpha, ka);
    out.omega_down[k - 1] = dispersion(field.down, p.gamma, p.alpha, ka);
    const AngleResult bare = pairing_angle(p.lambda, p.gamma, p.alpha, ka);
    const AngleResult up = pairing_angle(field.up, p.gamma, p.alpha, ka);
    const AngleResult down = pairing_angle(field.down, p.gamma, p.alpha, ka);
    out.theta_bare[k - 1] = bare.theta;
    out.mix_up[k - 1] = 0.5 * (up.theta - bare.theta);
    out.mix_down[k - 1] = 0.5 * (down.theta - bare.theta);
    out.degenerate_modes +=
        int(bare.degenerate) + int(up.degenerate) + int(down.degenerate);
  }
  return out;
}

}  // namespace gpchain
