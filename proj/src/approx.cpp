// approx.cpp — weak-coupling closed forms.
#include "gpchain/approx.hpp"

#include <cmath>
#include <numbers>

namespace gpchain {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGapFloor = 1e-12;

// Distance of a field value from the low-momentum gap closure.
double gap(double field, double alpha) { return field - 1.0 - 2.0 * alpha; }

void require_off_critical(double field, double alpha) {
  if (std::abs(gap(field, alpha)) < kGapFloor)
    throw CriticalityError("field sits on the critical line 1 + 2 alpha");
}

}  // namespace

double cutoff_sum(int k_cut, int n_sites) {
  if (k_cut < 0) throw std::invalid_argument("cutoff must be nonnegative");
  if (n_sites < 2) throw std::invalid_argument("n_sites must be at least 2");
  const double kc = k_cut;
  const double n = n_sites;
  return 4.0 * kPi * kPi * kc * (kc + 1.0) * (2.0 * kc + 1.0) /
         (6.0 * n * n);
}

double decay_rate(const ModelParams& p, int k_cut) {
  p.validate();
  require_off_critical(p.lambda, p.alpha);
  const double u = gap(p.lambda, p.alpha);
  return 8.0 * cutoff_sum(k_cut, p.n_sites) * p.gamma * p.gamma * p.g * p.g /
         (u * u);
}

double gaussian_envelope(double tau, double t) {
  if (!(tau >= 0.0)) throw std::invalid_argument("decay rate must be >= 0");
  return std::exp(-tau * t * t);
}

double small_k_mixing(const ModelParams& p, int field_index, int k) {
  if (field_index != 0 && field_index != 1)
    throw std::invalid_argument("field_index must be 0 or 1");
  if (k < 0) throw std::invalid_argument("momentum index must be >= 0");
  p.validate();
  const double shifted = effective_fields(p)[field_index];
  require_off_critical(p.lambda, p.alpha);
  require_off_critical(shifted, p.alpha);
  const double sign = field_index == 0 ? -1.0 : 1.0;
  return sign * kPi * p.gamma * k * p.g /
         (p.n_sites * std::abs(gap(shifted, p.alpha) * gap(p.lambda, p.alpha)));
}

double small_k_mixing_diff(const ModelParams& p, int k) {
  if (k < 0) throw std::invalid_argument("momentum index must be >= 0");
  p.validate();
  const EffectiveField field = effective_fields(p);
  require_off_critical(field.up, p.alpha);
  require_off_critical(field.down, p.alpha);
  return -2.0 * kPi * p.gamma * k * p.g /
         (p.n_sites *
          std::abs(gap(field.up, p.alpha) * gap(field.down, p.alpha)));
}

double approx_gp(const ModelParams& p, int k_cut) {
  p.validate();
  require_off_critical(p.lambda, p.alpha);
  const double u = gap(p.lambda, p.alpha);
  const double sinb = std::sin(p.beta);
  const double correction = 64.0 * cutoff_sum(k_cut, p.n_sites) * kPi * kPi *
                            kPi * p.gamma * p.gamma * std::cos(p.beta) *
                            sinb * sinb * p.g * p.g /
                            (3.0 * p.eta * p.eta * u * u);
  return kPi * (1.0 + std::cos(p.beta)) + correction;
}

}  // namespace gpchain
