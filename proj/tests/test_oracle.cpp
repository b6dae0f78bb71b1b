#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "gpchain/decoherence.hpp"
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
}  // namespace

TEST_CASE("momentum block carries the pairing components") {
  const ModeGrid grid = ModeGrid::build(4);
  const ModeBlock b = build_mode_block(2.0, 1.0, 0.0, grid, 1);
  CHECK(b.k == 1);
  CHECK(b.eps == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(b.delta == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(std::abs(b.m[0] - std::complex<double>(-4.0, 0.0)) < 1e-14);
  CHECK(std::abs(b.m[1] - std::complex<double>(0.0, 2.0)) < 1e-14);
  CHECK(std::abs(b.m[2] - std::complex<double>(0.0, -2.0)) < 1e-14);
  CHECK(std::abs(b.m[3] - std::complex<double>(4.0, 0.0)) < 1e-14);
  // Block eigenvalues are +/- the dispersion, so the two-level gap is
  // twice it: 4 sqrt(5) here.
  const double omega = dispersion(2.0, 1.0, 0.0, grid.phase(1));
  CHECK(std::hypot(b.eps, b.delta) == doctest::Approx(omega).epsilon(1e-15));
  CHECK(2.0 * omega == doctest::Approx(4.0 * std::sqrt(5.0)).epsilon(1e-15));
}

TEST_CASE("block ground vector is a unit eigenvector at minus the gap half") {
  const ModeGrid grid = ModeGrid::build(10);
  for (int k = 1; k <= 5; ++k) {
    const ModeBlock b = build_mode_block(0.7, 0.9, 0.15, grid, k);
    std::complex<double> v[2];
    mode_ground_vector(b, v);
    const double omega = std::hypot(b.eps, b.delta);
    const std::complex<double> r0 = b.m[0] * v[0] + b.m[1] * v[1] +
                                    omega * v[0];
    const std::complex<double> r1 = b.m[2] * v[0] + b.m[3] * v[1] +
                                    omega * v[1];
    CHECK(std::abs(r0) < 1e-13);
    CHECK(std::abs(r1) < 1e-13);
    CHECK(std::norm(v[0]) + std::norm(v[1]) ==
          doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("pair-product overlap starts at one and stays inside the disc") {
  const ModelParams p = reference(10, 0.05);
  CHECK(std::abs(mode_overlap(p, 0.0)) == doctest::Approx(1.0).epsilon(1e-14));
  for (int i = 1; i <= 16; ++i) {
    const double t = p.period() * double(i) / 16.0;
    CHECK(std::abs(mode_overlap(p, t)) <= 1.0 + 1e-12);
  }
}

TEST_CASE("pair-product overlap is unimodular without coupling") {
  const ModelParams p = reference(12, 0.0);
  for (int i = 0; i <= 16; ++i) {
    const double t = p.period() * double(i) / 16.0;
    CHECK(std::abs(mode_overlap(p, t)) == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("chain term list has five terms per site") {
  const auto terms = chain_terms(4, 0.5, 0.1, 0.3);
  CHECK(terms.size() == 20);
  for (const auto& term : terms) {
    CHECK(term.ops.size() >= 1);
    CHECK(term.ops.size() <= 3);
    for (const auto& [site, op] : term.ops) {
      CHECK(site >= 0);
      CHECK(site < 4);
      CHECK(op >= 1);
      CHECK(op <= 3);
    }
  }
}

TEST_CASE("dense build is symmetric and rejects imaginary term lists") {
  const auto terms = chain_terms(4, 0.6, 0.15, 0.4);
  const int dim = 16;
  const std::vector<double> h = build_dense(terms, 4);
  REQUIRE(h.size() == std::size_t(dim) * dim);
  double asym = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      asym = std::max(asym, std::abs(h[i * dim + j] - h[j * dim + i]));
  CHECK(asym == 0.0);

  // A lone y factor would make the matrix complex; the builder refuses it.
  CHECK_THROWS_AS(build_dense({{1.0, {{0, 2}}}}, 2), std::invalid_argument);
}

TEST_CASE("full Hamiltonian commutes with the probe z operator") {
  ModelParams p = reference(3, 0.05);
  const int spins = 4;  // three chain sites plus the probe
  const int dim = 1 << spins;
  const std::vector<double> h = build_dense(full_system_terms(p), spins);
  const std::vector<double> z = build_dense({{1.0, {{3, 3}}}}, spins);
  double worst = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      double hz = 0.0, zh = 0.0;
      for (int l = 0; l < dim; ++l) {
        hz += h[i * dim + l] * z[l * dim + j];
        zh += z[i * dim + l] * h[l * dim + j];
      }
      worst = std::max(worst, std::abs(hz - zh));
    }
  CHECK(worst == 0.0);
}

TEST_CASE("dense oracle is normalized at the start and bounded") {
  const ModelParams p = reference(8, 0.05);
  const ExactDiagOracle oracle(p);
  CHECK(std::abs(oracle.factor(0.0)) == doctest::Approx(1.0).epsilon(1e-12));
  for (int i = 1; i <= 8; ++i) {
    const double t = p.period() * double(i) / 8.0;
    CHECK(std::abs(oracle.factor(t)) <= 1.0 + 1e-10);
  }
}

TEST_CASE("dense oracle differs from the momentum product by a boundary "
          "term at small size") {
  // The dense treatment keeps the ring closure the momentum product drops,
  // so at 8 sites the two must agree only to O(1/N), not to rounding.
  const ModelParams p = reference(8, 0.05);
  const ExactDiagOracle oracle(p);
  const DecoherenceEvaluator eval(p, KernelKind::scalar);
  double gap = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double t = p.period() * double(i) / 7.0;
    gap = std::max(gap,
                   std::abs(std::abs(oracle.factor(t)) - eval.modulus(t)));
  }
  CHECK(gap < 0.02);
  CHECK(gap > 1e-4);
}

TEST_CASE("dense oracle refuses chains past the memory guard") {
  const ModelParams p = reference(14, 0.05);
  CHECK_THROWS_AS(ExactDiagOracle{p}, std::invalid_argument);
}
