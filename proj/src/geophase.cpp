// geophase.cpp — spectral weights and the quasi-cycle phase integrals.
#include "gpchain/geophase.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <vector>

namespace gpchain {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr long kEvalBudget = 1 << 20;

void check_spectral_args(double beta, double fmod) {
  if (!(beta >= 0.0 && beta <= kPi))
    throw std::invalid_argument("beta must lie in [0, pi]");
  if (!(fmod >= 0.0 && fmod <= 1.0))
    throw std::invalid_argument("modulus must lie in [0, 1]");
}

// Slope q = tan(beta_plus / 2) >= 0, written so neither sign of cos beta
// cancels: (cot + r)/fmod and fmod/(r - cot) are the same number.
double half_angle_slope(double beta, double fmod) {
  const double cot = std::cos(beta) / std::sin(beta);
  const double r = std::hypot(cot, fmod);
  return cot >= 0.0 ? (cot + r) / fmod : fmod / (r - cot);
}

}  // namespace

SpectralData eigen_spectrum(double beta, double fmod) {
  check_spectral_args(beta, fmod);
  SpectralData out;
  const double sinb = std::sin(beta);
  // 1 - m = sin^2 beta (1 - fmod^2), kept in factored form so a pure state
  // (fmod = 1) gives eps_minus = 0 with no rounding residue.
  const double defect = sinb * sinb * (1.0 - fmod) * (1.0 + fmod);
  const double h = std::sqrt(1.0 - defect);
  out.eps_minus = defect / (2.0 * (1.0 + h));
  out.eps_plus = 1.0 - out.eps_minus;
  if (beta == 0.0) {
    out.beta_plus = kPi;
  } else if (beta == kPi) {
    out.beta_plus = 0.0;
  } else if (fmod == 0.0) {
    const double c = std::cos(beta);
    out.beta_plus = c > 0.0 ? kPi : (c < 0.0 ? 0.0 : kPi / 2.0);
  } else {
    out.beta_plus = 2.0 * std::atan(half_angle_slope(beta, fmod));
  }
  return out;
}

double upper_weight(double beta, double fmod) {
  check_spectral_args(beta, fmod);
  if (beta == 0.0) return 1.0;
  if (beta == kPi) return 0.0;
  if (fmod == 0.0) {
    const double c = std::cos(beta);
    return c > 0.0 ? 1.0 : (c < 0.0 ? 0.0 : 0.5);
  }
  const double q = half_angle_slope(beta, fmod);
  if (q > 1.0) {
    const double iq = 1.0 / q;
    return 1.0 / (1.0 + iq * iq);
  }
  return q * q / (1.0 + q * q);
}

double unperturbed_phase(double beta) {
  return kPi * (1.0 + std::cos(beta));
}

QuadratureError::QuadratureError(double achieved_, double value_)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "quadrature stalled at error estimate " << achieved_;
        return os.str();
      }()),
      achieved(achieved_), value(value_) {}

namespace {

double wrap_phase(double phi) {
  double w = std::fmod(phi, 2.0 * kPi);
  if (w < 0.0) w += 2.0 * kPi;
  return w;
}

double simpson(const std::vector<double>& vals, double h) {
  double odd = 0.0, even = 0.0;
  const std::size_t n = vals.size() - 1;
  for (std::size_t i = 1; i < n; i += 2) odd += vals[i];
  for (std::size_t i = 2; i < n; i += 2) even += vals[i];
  return h / 3.0 * (vals.front() + vals.back() + 4.0 * odd + 2.0 * even);
}

}  // namespace

namespace {

// Shared Simpson driver: integrates upper_weight(beta, modulus(t)) over one
// quasi-cycle with interval halving and Richardson acceptance.
template <typename ModulusFn>
GpResult gp_simpson(const ModelParams& p, double tol,
                    const ModulusFn& modulus) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  const double period = p.period();
  GpResult out;
  const auto weight_at = [&](double t) {
    return upper_weight(p.beta, modulus(t, &out.diag));
  };

  std::size_t n = 16;
  std::vector<double> vals(n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    vals[i] = weight_at(period * double(i) / double(n));
  out.evaluations = long(n) + 1;
  double coarse = simpson(vals, period / double(n));
  while (true) {
    if (out.evaluations + long(n) > kEvalBudget)
      throw QuadratureError(out.quadrature_error, p.eta * coarse);
    std::vector<double> next(2 * n + 1);
    for (std::size_t i = 0; i <= n; ++i) next[2 * i] = vals[i];
    for (std::size_t i = 0; i < n; ++i)
      next[2 * i + 1] = weight_at(period * (2.0 * i + 1.0) / double(2 * n));
    out.evaluations += long(n);
    n *= 2;
    vals.swap(next);
    const double fine = simpson(vals, period / double(n));
    const double est = std::abs(fine - coarse) / 15.0;
    out.quadrature_error = p.eta * est;
    if (est <= tol / p.eta) {
      out.phi_raw = p.eta * (fine + (fine - coarse) / 15.0);
      out.phi = wrap_phase(out.phi_raw);
      return out;
    }
    coarse = fine;
  }
}

}  // namespace

GpResult geometric_phase(const ModelParams& p, double tol,
                         KernelKind kernel) {
  p.validate();
  const DecoherenceEvaluator eval(p, kernel);
  return gp_simpson(p, tol, [&](double t, DecoherenceDiagnostics* diag) {
    return eval.modulus(t, diag);
  });
}

GpResult geometric_phase_cutoff(const ModelParams& p, int k_cut, double tol,
                                KernelKind kernel) {
  p.validate();
  if (k_cut < 1) throw std::invalid_argument("cutoff must be at least 1");
  const DecoherenceEvaluator eval(p, kernel);
  return gp_simpson(p, tol, [&](double t, DecoherenceDiagnostics* diag) {
    return eval.modulus_cutoff(t, k_cut, diag);
  });
}

GpResult geometric_phase_general(const ModelParams& p, int steps,
                                 KernelKind kernel) {
  p.validate();
  if (steps < 8 || steps % 2 != 0)
    throw std::invalid_argument("steps must be even and at least 8");
  const DecoherenceEvaluator eval(p, kernel);
  const double period = p.period();
  GpResult out;

  std::vector<double> weight(steps + 1), half_angle(steps + 1);
  std::vector<double> eps_plus(steps + 1), eps_minus(steps + 1);
  for (int i = 0; i <= steps; ++i) {
    const double t = period * double(i) / double(steps);
    const SpectralData s = eigen_spectrum(p.beta, eval.modulus(t, &out.diag));
    half_angle[i] = 0.5 * s.beta_plus;
    const double sn = std::sin(half_angle[i]);
    weight[i] = sn * sn;
    eps_plus[i] = s.eps_plus;
    eps_minus[i] = s.eps_minus;
  }
  out.evaluations = steps + 1;

  // arg of sum_k sqrt(eps_k(0) eps_k(T)) <eps_k(0)|eps_k(T)> e^{i conn_k};
  // the connection integrals are eta * int sin^2 resp. cos^2 of the half
  // angle. stride 2 reuses the same samples for the error estimate.
  const auto route_phase = [&](int stride) {
    const double h = period * double(stride) / double(steps);
    double up = 0.0, down = 0.0;  // trapezoid sums
    for (int i = 0; i <= steps; i += stride) {
      const double w = (i == 0 || i == steps) ? 0.5 : 1.0;
      up += w * weight[i];
      down += w * (1.0 - weight[i]);
    }
    const std::complex<double> twist = std::polar(1.0, -p.eta * period);
    const double s0 = std::sin(half_angle[0]), c0 = std::cos(half_angle[0]);
    const double sT = std::sin(half_angle[steps]),
                 cT = std::cos(half_angle[steps]);
    const std::complex<double> ov_up = s0 * sT * twist + c0 * cT;
    const std::complex<double> ov_down = c0 * cT * twist + s0 * sT;
    const std::complex<double> total =
        std::sqrt(eps_plus[0] * eps_plus[steps]) * ov_up *
            std::polar(1.0, p.eta * h * up) +
        std::sqrt(eps_minus[0] * eps_minus[steps]) * ov_down *
            std::polar(1.0, p.eta * h * down);
    return std::arg(total);
  };

  const double fine = route_phase(1);
  const double coarse = route_phase(2);
  out.quadrature_error = circular_distance(fine, coarse);
  out.phi_raw = fine;
  out.phi = wrap_phase(fine);
  return out;
}

double circular_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), 2.0 * kPi);
  if (d > kPi) d = 2.0 * kPi - d;
  return d;
}

}  // namespace gpchain
