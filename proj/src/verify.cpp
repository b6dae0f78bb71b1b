// verify.cpp — the checks behind the verify front-end.
#include "gpchain/verify.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <vector>

#include "gpchain/decoherence.hpp"
#include "gpchain/geophase.hpp"
#include "gpchain/oracle.hpp"

namespace gpchain {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(const char* pattern, double a, double b = 0.0,
                double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

ModelParams reference_params(int n_sites, double g) {
  ModelParams p;
  p.eta = 2.0 * kPi / 3.0;
  p.gamma = 1.0;
  p.alpha = 0.2;
  p.lambda = 0.5;
  p.g = g;
  p.n_sites = n_sites;
  p.beta = kPi / 5.0;
  return p;
}

double default_modulus(const ModelParams& p, double t, KernelKind kernel) {
  return decoherence_modulus(p, t, kernel);
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= double(x.size());
  my /= double(x.size());
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += (x[i] - mx) * (y[i] - my);
    den += (x[i] - mx) * (x[i] - mx);
  }
  return num / den;
}

}  // namespace

bool VerifyReport::all_pass() const {
  for (const CheckResult& c : checks)
    if (!c.pass) return false;
  return true;
}

VerifyReport run_verify(VerifyLevel level, KernelKind kernel,
                        const VerifyHooks& hooks) {
  const auto modulus = [&](const ModelParams& p, double t) {
    return hooks.modulus ? hooks.modulus(p, t)
                         : default_modulus(p, t, kernel);
  };
  VerifyReport report;
  const auto add = [&](std::string name, bool pass, std::string detail) {
    report.checks.push_back({std::move(name), pass, std::move(detail)});
  };

  {
    const ModelParams p = reference_params(64, 0.05);
    const double f0 = modulus(p, 0.0);
    add("modulus at start of cycle", f0 == 1.0, fmt("F(0)=%.17g", f0));
  }

  {
    double worst = 0.0;
    for (int i = 0; i <= 8; ++i) {
      ModelParams p = reference_params(64, 0.0);
      p.beta = kPi * double(i) / 8.0;
      const GpResult r = geometric_phase(p, 1e-10, kernel);
      worst = std::max(worst,
                       std::abs(r.phi_raw - unperturbed_phase(p.beta)));
    }
    add("decoupled cycle phase", worst < 1e-9,
        fmt("max deviation %.3g over 9 preparation angles (gate 1e-9)",
            worst));
  }

  {
    const ModelParams p = reference_params(100, 0.0);
    const ModeAngles a = ModeAngles::build(p);
    double worst = 0.0;
    for (int i = 0; i < a.grid.modes; ++i)
      worst = std::max(worst, std::max(std::abs(a.mix_up[std::size_t(i)]),
                                       std::abs(a.mix_down[std::size_t(i)])));
    add("mixing angles decoupled", worst < 1e-15,
        fmt("max |mixing angle| %.3g at zero coupling (gate 1e-15)", worst));
  }

  const auto oracle_agreement = [&](int n_sites) {
    const ModelParams p = reference_params(n_sites, 0.05);
    const double period = p.period();
    double worst = 0.0;
    for (int i = 0; i < 64; ++i) {
      const double t = period * double(i) / 63.0;
      const double closed = modulus(p, t);
      const double direct = std::abs(mode_overlap(p, t));
      worst = std::max(worst, std::abs(closed - direct));
    }
    char name[64];
    std::snprintf(name, sizeof name, "mode oracle agreement N=%d", n_sites);
    add(name, worst < 1e-10,
        fmt("max modulus gap %.3g over 64 times (gate 1e-10)", worst));
  };
  oracle_agreement(10);

  if (level == VerifyLevel::full) {
    oracle_agreement(100);

    {
      const std::vector<double> gs = {1e-3, 2e-3, 5e-3, 1e-2};
      std::vector<double> lx, ly;
      bool usable = true;
      for (double g : gs) {
        const ModelParams p = reference_params(501, g);
        const GpResult r = geometric_phase(p, 1e-9, kernel);
        const double shift = r.phi_raw - unperturbed_phase(p.beta);
        if (!(std::abs(shift) > 0.0)) { usable = false; break; }
        lx.push_back(std::log(g));
        ly.push_back(std::log(std::abs(shift)));
      }
      const double slope = usable ? fit_slope(lx, ly) : 0.0;
      add("coupling-power fit", usable && std::abs(slope - 2.0) <= 0.05,
          fmt("slope %.4f (gate 2.00 +/- 0.05)", slope));
    }

    {
      ModelParams p = reference_params(201, 0.01);
      p.beta = kPi / 3.0;
      const GpResult closed = geometric_phase(p, 1e-9, kernel);
      const GpResult general = geometric_phase_general(p, 4096, kernel);
      const double gap = circular_distance(closed.phi, general.phi);
      add("route agreement", gap <= 1e-5,
          fmt("|closed - general| = %.3g rad (gate 1e-5)", gap));
    }

    {
      double gaps[3] = {0.0, 0.0, 0.0};
      const int sizes[3] = {8, 10, 12};
      for (int s = 0; s < 3; ++s) {
        const ModelParams p = reference_params(sizes[s], 0.05);
        const ExactDiagOracle oracle(p);
        const DecoherenceEvaluator eval(p, kernel);
        const double period = p.period();
        for (int i = 0; i < 16; ++i) {
          const double t = period * double(i) / 15.0;
          gaps[s] = std::max(gaps[s], std::abs(std::abs(oracle.factor(t)) -
                                               eval.modulus(t)));
        }
      }
      add("dense diagonalization drift",
          gaps[0] > gaps[1] && gaps[1] > gaps[2],
          fmt("boundary-term gap %.3g -> %.3g -> %.3g for 8 -> 10 -> 12 "
              "spins (must shrink)",
              gaps[0], gaps[1], gaps[2]));
    }
  }

  return report;
}

}  // namespace gpchain
