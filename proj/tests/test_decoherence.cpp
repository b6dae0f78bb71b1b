#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "gpchain/decoherence.hpp"
#include "gpchain/kernels.hpp"
#include "gpchain/model.hpp"
#include "gpchain/oracle.hpp"

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

// A one-mode table whose factor at t = 1 is exactly 1 - q0 (the sine hits
// 1 at w0 = pi/2), used to drive the kernels through chosen factor values.
FactorTable single_factor_table(double q0) {
  FactorTable tb;
  tb.modes = 1;
  tb.padded = 8;
  for (auto* v : {&tb.w0, &tb.w1, &tb.dw, &tb.a, &tb.as2d, &tb.q0, &tb.q1})
    v->assign(tb.padded, 0.0);
  tb.w0[0] = kPi / 2.0;
  tb.q0[0] = q0;
  return tb;
}
}  // namespace

TEST_CASE("modulus is exactly one at the start of the cycle") {
  const DecoherenceEvaluator eval(reference(64, 0.05));
  CHECK(eval.modulus(0.0) == 1.0);
}

TEST_CASE("modulus stays inside the unit interval") {
  const ModelParams p = reference(101, 0.08);
  const DecoherenceEvaluator eval(p);
  for (int i = 0; i <= 64; ++i) {
    const double f = eval.modulus(p.period() * double(i) / 64.0);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
  }
}

TEST_CASE("modulus reference values at ten sites") {
  const ModelParams p = reference(10, 0.05);
  const DecoherenceEvaluator eval(p);
  CHECK(eval.modulus(0.5 * p.period()) ==
        doctest::Approx(0.99484423456285842).epsilon(1e-13));
  CHECK(eval.modulus(0.37 * p.period()) ==
        doctest::Approx(0.99244945833879572).epsilon(1e-13));
}

TEST_CASE("modulus matches the pair-product route") {
  const ModelParams p = reference(10, 0.05);
  const DecoherenceEvaluator eval(p);
  double worst = 0.0;
  for (int i = 0; i < 64; ++i) {
    const double t = p.period() * double(i) / 63.0;
    worst = std::max(worst,
                     std::abs(eval.modulus(t) - std::abs(mode_overlap(p, t))));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("every compiled kernel reproduces the reference kernel") {
  // Two regimes: weak coupling far from the transition, and strong
  // coupling near it where single factors dip by orders of magnitude.
  ModelParams weak = reference(501, 0.05);
  ModelParams strong = reference(501, 0.1);
  strong.lambda = 1.3;
  for (const ModelParams& p : {weak, strong}) {
    const DecoherenceEvaluator ref(p, KernelKind::scalar);
    for (const KernelInfo& info : available_kernels()) {
      if (info.kind == KernelKind::scalar) continue;
      const DecoherenceEvaluator other(p, info.kind);
      double worst = 0.0;
      for (int i = 0; i <= 128; ++i) {
        const double t = p.period() * double(i) / 128.0;
        worst = std::max(worst, std::abs(ref.modulus(t) - other.modulus(t)));
      }
      CHECK(worst < 1e-13);
    }
  }
}

TEST_CASE("kernel scan reports the smallest factor and clamps rounding "
          "negatives") {
  std::vector<double> logs(8);
  for (const KernelInfo& info : available_kernels()) {
    // Factor exactly -0.5: far below tolerance, log lane poisoned.
    const FactorTable bad = single_factor_table(1.5);
    KernelScan scan = info.fn(bad, 1.0, logs.data());
    CHECK(scan.min_factor == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(std::isnan(logs[0]));

    // Factor -1e-13: inside the rounding band, clamped to a hard zero.
    const FactorTable edge = single_factor_table(1.0 + 1e-13);
    scan = info.fn(edge, 1.0, logs.data());
    CHECK(scan.clamped == 1);
    CHECK(logs[0] == -std::numeric_limits<double>::infinity());

    // Neutral padding lanes contribute an exact zero.
    CHECK(logs[1] == 0.0);
  }
}

TEST_CASE("evaluator turns an impossible factor into a domain error") {
  // No physical parameter set can produce one, so the check is driven
  // through the kernel contract above; here the error type itself.
  const FactorDomainError err(3, 1.5, -0.25);
  CHECK(err.mode == 3);
  CHECK(err.time == 1.5);
  CHECK(err.factor == -0.25);
  CHECK(std::string(err.what()).find("factor") != std::string::npos);
}

TEST_CASE("truncated product equals the full product at full cutoff") {
  const ModelParams p = reference(51, 0.05);
  const DecoherenceEvaluator eval(p);
  for (int i = 0; i <= 32; ++i) {
    const double t = p.period() * double(i) / 32.0;
    CHECK(eval.modulus_cutoff(t, 25) == eval.modulus(t));
    CHECK(eval.modulus_cutoff(t, 1000) == eval.modulus(t));
  }
}

TEST_CASE("truncated product dominates the full product") {
  const ModelParams p = reference(101, 0.06);
  const DecoherenceEvaluator eval(p);
  for (int i = 0; i <= 32; ++i) {
    const double t = p.period() * double(i) / 32.0;
    CHECK(eval.modulus_cutoff(t, 3) >= eval.modulus(t) - 1e-14);
  }
}

TEST_CASE("truncated product rejects an empty cutoff") {
  const DecoherenceEvaluator eval(reference(10, 0.05));
  CHECK_THROWS_AS(eval.modulus_cutoff(1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(eval.modulus_cutoff(1.0, -2), std::invalid_argument);
}

TEST_CASE("modulus rejects non-finite times") {
  const DecoherenceEvaluator eval(reference(10, 0.05));
  CHECK_THROWS_AS(eval.modulus(std::nan("")), std::invalid_argument);
  CHECK_THROWS_AS(eval.modulus(std::numeric_limits<double>::infinity()),
                  std::invalid_argument);
}

TEST_CASE("series samples one cycle uniformly and carries diagnostics") {
  const ModelParams p = reference(64, 0.05);
  const DecoherenceSeries s = decoherence_series(p, 32);
  REQUIRE(s.times.size() == 33);
  REQUIRE(s.values.size() == 33);
  CHECK(s.times.front() == 0.0);
  CHECK(s.times.back() == doctest::Approx(p.period()).epsilon(1e-15));
  CHECK(s.values.front() == 1.0);
  for (double v : s.values) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
  CHECK(s.diag.clamped_factors == 0);
  CHECK(s.diag.degenerate_modes == 0);
  CHECK_THROWS_AS(decoherence_series(p, 0), std::invalid_argument);
}

TEST_CASE("one-shot helper agrees with the evaluator") {
  const ModelParams p = reference(32, 0.05);
  const DecoherenceEvaluator eval(p);
  CHECK(decoherence_modulus(p, 1.25) == eval.modulus(1.25));
}

TEST_CASE("pairwise reduction matches a high-precision accumulation") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> x(1000);
  long double exact = 0.0L;
  for (double& v : x) {
    v = dist(rng);
    exact += v;
  }
  const double got = pairwise_sum(x.data(), x.size());
  CHECK(std::abs(got - double(exact)) < 1e-12);

  // Integer-valued content is summed exactly.
  std::vector<double> ints(100);
  std::iota(ints.begin(), ints.end(), 1.0);
  CHECK(pairwise_sum(ints.data(), ints.size()) == 5050.0);
}
