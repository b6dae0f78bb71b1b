#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "gpchain/model.hpp"

using namespace gpchain;
namespace {
constexpr double kPi = std::numbers::pi;

ModelParams reference(int n_sites, double g) {
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
}  // namespace

TEST_CASE("parameter validation rejects out-of-domain values") {
  ModelParams p;
  CHECK_NOTHROW(p.validate());

  p = ModelParams{};
  p.eta = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = ModelParams{};
  p.eta = -1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = ModelParams{};
  p.n_sites = 1;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = ModelParams{};
  p.beta = -0.1;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = ModelParams{};
  p.beta = kPi + 0.1;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = ModelParams{};
  p.lambda = std::nan("");
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("cycle duration is 2 pi over the level splitting") {
  ModelParams p;
  p.eta = 2.0;
  CHECK(p.period() == doctest::Approx(kPi).epsilon(1e-15));
  p.eta = 2.0 * kPi / 3.0;
  CHECK(p.period() == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("effective fields bracket the bare field by the coupling") {
  ModelParams p = reference(10, 0.05);
  const EffectiveField f = effective_fields(p);
  CHECK(f.up == doctest::Approx(0.55).epsilon(1e-15));
  CHECK(f.down == doctest::Approx(0.45).epsilon(1e-15));
  CHECK(f[0] == f.up);
  CHECK(f[1] == f.down);
}

TEST_CASE("momentum grid counts positive modes") {
  const ModeGrid even = ModeGrid::build(10);
  CHECK(even.modes == 5);
  CHECK(even.lattice_phase == doctest::Approx(2.0 * kPi / 10.0));
  const ModeGrid odd = ModeGrid::build(11);
  CHECK(odd.modes == 5);
  const ModeGrid tiny = ModeGrid::build(2);
  CHECK(tiny.modes == 1);
  CHECK(tiny.phase(1) == doctest::Approx(kPi));
  CHECK_THROWS_AS(ModeGrid::build(1), std::invalid_argument);
}

TEST_CASE("dispersion at hand-checkable momenta") {
  // At ka = pi/2 both cosines drop out of the longitudinal component.
  CHECK(dispersion(2.0, 1.0, 0.0, kPi / 2.0) ==
        doctest::Approx(2.0 * std::sqrt(5.0)).epsilon(1e-15));
  // At the zone edge the transverse component vanishes.
  CHECK(dispersion(0.5, 0.7, 0.2, kPi) ==
        doctest::Approx(2.0 * std::abs(0.5 + 1.0 - 0.4)).epsilon(1e-14));
  CHECK(dispersion(0.0, 1.0, 0.0, kPi / 2.0) ==
        doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("pairing angle is resolved over the full circle") {
  CHECK(pairing_angle(1.0, 1.0, 0.0, kPi / 2.0).theta ==
        doctest::Approx(kPi / 4.0).epsilon(1e-15));
  CHECK(pairing_angle(0.0, 1.0, 0.0, kPi / 2.0).theta ==
        doctest::Approx(kPi / 2.0).epsilon(1e-15));
  // Negative longitudinal component lands in the second quadrant, where a
  // plain arctangent of the ratio would fold back.
  const AngleResult back = pairing_angle(-2.0, 1.0, 0.0, kPi / 2.0);
  CHECK(back.theta == doctest::Approx(kPi - std::atan(0.5)).epsilon(1e-15));
  CHECK_FALSE(back.degenerate);
}

TEST_CASE("pairing angle flags the gapless point") {
  // Both components vanish at the zone edge when the field is -1.
  const AngleResult gapless = pairing_angle(-1.0, 1.0, 0.0, kPi);
  CHECK(gapless.degenerate);
  CHECK(gapless.theta == 0.0);
}

TEST_CASE("mixing angles vanish without coupling") {
  const ModelParams p = reference(100, 0.0);
  for (int k = 1; k <= 50; ++k) {
    CHECK(mixing_angle(p, 0, k).value == 0.0);
    CHECK(mixing_angle(p, 1, k).value == 0.0);
  }
}

TEST_CASE("mixing angle reference values") {
  const ModelParams p = reference(10, 0.05);
  CHECK(mixing_angle(p, 0, 1).value ==
        doctest::Approx(-0.028723646092288391).epsilon(1e-13));
  CHECK(mixing_angle(p, 1, 1).value ==
        doctest::Approx(0.026486115600442117).epsilon(1e-13));
}

TEST_CASE("mixing angle rejects bad indices") {
  const ModelParams p = reference(10, 0.05);
  CHECK_THROWS_AS(mixing_angle(p, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(mixing_angle(p, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(mixing_angle(p, 0, 6), std::invalid_argument);
}

TEST_CASE("angle tables agree with the single-mode functions") {
  const ModelParams p = reference(11, 0.05);
  const ModeAngles a = ModeAngles::build(p);
  REQUIRE(a.grid.modes == 5);
  REQUIRE(a.omega_up.size() == 5);
  const EffectiveField f = effective_fields(p);
  for (int k = 1; k <= 5; ++k) {
    const double ka = a.grid.phase(k);
    CHECK(a.omega_up[k - 1] ==
          doctest::Approx(dispersion(f.up, p.gamma, p.alpha, ka))
              .epsilon(1e-15));
    CHECK(a.omega_down[k - 1] ==
          doctest::Approx(dispersion(f.down, p.gamma, p.alpha, ka))
              .epsilon(1e-15));
    CHECK(a.theta_bare[k - 1] ==
          doctest::Approx(pairing_angle(p.lambda, p.gamma, p.alpha, ka).theta)
              .epsilon(1e-15));
    CHECK(a.mix_up[k - 1] ==
          doctest::Approx(mixing_angle(p, 0, k).value).epsilon(1e-15));
    CHECK(a.mix_down[k - 1] ==
          doctest::Approx(mixing_angle(p, 1, k).value).epsilon(1e-15));
  }
  CHECK(a.degenerate_modes == 0);
}
