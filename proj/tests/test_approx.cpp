#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "gpchain/approx.hpp"
#include "gpchain/decoherence.hpp"
#include "gpchain/model.hpp"

using namespace gpchain;
namespace {
constexpr double kPi = std::numbers::pi;

ModelParams off_critical(double g) {
  ModelParams p;
  p.eta = 2.0 * kPi / 3.0;
  p.gamma = 1.0;
  p.alpha = 0.2;
  p.lambda = 1.5;
  p.g = g;
  p.n_sites = 501;
  p.beta = kPi / 5.0;
  return p;
}
}  // namespace

TEST_CASE("momentum-squared partial sum matches the direct sum") {
  for (const auto [kc, n] : {std::pair{3, 501}, {5, 10}, {1, 2}, {12, 64}}) {
    double direct = 0.0;
    for (int k = 1; k <= kc; ++k) {
      const double ka = 2.0 * kPi * k / n;
      direct += ka * ka;
    }
    CHECK(cutoff_sum(kc, n) == doctest::Approx(direct).epsilon(1e-14));
  }
  CHECK(cutoff_sum(0, 100) == 0.0);
  CHECK_THROWS_AS(cutoff_sum(-1, 100), std::invalid_argument);
  CHECK_THROWS_AS(cutoff_sum(3, 1), std::invalid_argument);
}

TEST_CASE("decay rate follows its closed form") {
  const ModelParams p = off_critical(0.03);
  const double e = cutoff_sum(3, p.n_sites);
  const double u = p.lambda - 1.0 - 2.0 * p.alpha;
  CHECK(decay_rate(p, 3) ==
        doctest::Approx(8.0 * e * p.gamma * p.gamma * p.g * p.g / (u * u))
            .epsilon(1e-14));
}

TEST_CASE("gaussian envelope evaluates and guards its domain") {
  CHECK(gaussian_envelope(2.0, 0.0) == 1.0);
  CHECK(gaussian_envelope(2.0, 1.5) ==
        doctest::Approx(std::exp(-4.5)).epsilon(1e-14));
  CHECK_THROWS_AS(gaussian_envelope(-1.0, 0.5), std::invalid_argument);
}

TEST_CASE("short-time envelope matches the truncated product deep in the "
          "gapped regime") {
  // All three cutoff momenta sit far inside the gap scale here, which is
  // where the quadratic-in-momentum expansion behind the rate holds.
  ModelParams p = off_critical(1e-3);
  p.n_sites = 20001;
  const DecoherenceEvaluator eval(p);
  const double tau = decay_rate(p, 3);
  const double tw = p.period() / 20.0;
  double s4 = 0.0, b2 = 0.0;
  double worst = 0.0;
  for (int i = 1; i <= 64; ++i) {
    const double t = tw * i / 64.0;
    const double f = eval.modulus_cutoff(t, 3);
    const double l = std::log(f);
    s4 += t * t * t * t;
    b2 += l * t * t;
    worst = std::max(worst, std::abs(gaussian_envelope(tau, t) - f) / f);
  }
  const double c2 = b2 / s4;
  CHECK(-c2 / tau == doctest::Approx(1.0).epsilon(5e-3));
  CHECK(worst < 1e-12);
}

TEST_CASE("first-order mixing sines approach the exact angles") {
  ModelParams p = off_critical(1e-3);
  p.lambda = 0.5;
  p.n_sites = 100000;
  for (int k : {1, 2, 3}) {
    const double exact0 = std::sin(mixing_angle(p, 0, k).value);
    const double exact1 = std::sin(mixing_angle(p, 1, k).value);
    CHECK(small_k_mixing(p, 0, k) ==
          doctest::Approx(exact0).epsilon(1e-6));
    CHECK(small_k_mixing(p, 1, k) ==
          doctest::Approx(exact1).epsilon(1e-6));
  }
}

TEST_CASE("mixing-difference sine carries twice the single-field "
          "coefficient") {
  ModelParams p = off_critical(1e-3);
  p.lambda = 0.5;
  p.n_sites = 100000;
  for (int k : {1, 2, 3}) {
    const double diff = small_k_mixing_diff(p, k);
    const double exact = std::sin(mixing_angle(p, 0, k).value -
                                  mixing_angle(p, 1, k).value);
    CHECK(diff == doctest::Approx(exact).epsilon(1e-5));
    // Up and down shifts are antisymmetric at leading order, so the
    // difference doubles the single-field magnitude.
    CHECK(diff ==
          doctest::Approx(2.0 * small_k_mixing(p, 0, k)).epsilon(1e-2));
    CHECK(small_k_mixing(p, 0, k) < 0.0);
    CHECK(small_k_mixing(p, 1, k) > 0.0);
  }
}

TEST_CASE("phase correction is exactly quadratic in the coupling") {
  const double base = unperturbed_phase(kPi / 5.0);
  double first = 0.0;
  bool have_first = false;
  for (double g : {1e-3, 1e-2, 1e-1}) {
    const ModelParams p = off_critical(g);
    const double scaled = (approx_gp(p, 3) - base) / (g * g);
    if (!have_first) {
      first = scaled;
      have_first = true;
    } else {
      CHECK(scaled == doctest::Approx(first).epsilon(1e-12));
    }
  }
  CHECK(first != 0.0);
}

TEST_CASE("phase correction diverges with the inverse square of the gap") {
  ModelParams closer = off_critical(0.01);
  ModelParams farther = off_critical(0.01);
  closer.lambda = 1.42;
  farther.lambda = 1.44;
  const double base = unperturbed_phase(kPi / 5.0);
  const double ratio =
      (approx_gp(closer, 3) - base) / (approx_gp(farther, 3) - base);
  CHECK(ratio == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("phase correction vanishes for the balanced preparation") {
  ModelParams p = off_critical(0.05);
  p.beta = kPi / 2.0;
  CHECK(std::abs(approx_gp(p, 3) - kPi) < 1e-10);
}

TEST_CASE("closed forms refuse the critical line") {
  ModelParams p = off_critical(0.01);
  p.lambda = 1.0 + 2.0 * p.alpha;
  CHECK_THROWS_AS(approx_gp(p, 3), CriticalityError);
  CHECK_THROWS_AS(decay_rate(p, 3), CriticalityError);
  CHECK_THROWS_AS(small_k_mixing(p, 0, 1), CriticalityError);
  CHECK_THROWS_AS(small_k_mixing_diff(p, 1), CriticalityError);

  // A shifted field can land on the line even when the bare field is off
  // it.
  ModelParams shifted = off_critical(0.01);
  shifted.lambda = 1.0 + 2.0 * shifted.alpha - shifted.g;
  CHECK_THROWS_AS(small_k_mixing(shifted, 0, 1), CriticalityError);
  CHECK_NOTHROW(small_k_mixing(shifted, 1, 1));
}

TEST_CASE("criticality guard is a narrow band, not a region") {
  ModelParams p = off_critical(0.01);
  p.lambda = 1.0 + 2.0 * p.alpha + 1e-13;
  CHECK_THROWS_AS(approx_gp(p, 3), CriticalityError);
  p.lambda = 1.0 + 2.0 * p.alpha + 1e-9;
  CHECK_NOTHROW(approx_gp(p, 3));
}
