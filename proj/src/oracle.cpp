// oracle.cpp — mode-pair 2x2 oracle and dense exact diagonalization.
#include "gpchain/oracle.hpp"

#include <lapacke.h>

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>

namespace gpchain {

namespace {

using cplx = std::complex<double>;
constexpr cplx kI{0.0, 1.0};

// exp(s * i * B t) for a block B with eigenvalues -/+ Omega, in closed form:
// cos(Omega t) I + s i sin(Omega t)/Omega * B. s is -1 (forward evolution)
// or +1 (reversed). A gapless block (Omega = 0) is the identity.
void block_exponential(const ModeBlock& b, double t, int s, cplx out[4]) {
  const double omega = std::hypot(b.eps, b.delta);
  const double c = std::cos(omega * t);
  const double sn = omega == 0.0 ? 0.0 : std::sin(omega * t) / omega;
  const cplx f = double(s) * kI * sn;
  out[0] = c + f * b.m[0];
  out[1] = f * b.m[1];
  out[2] = f * b.m[2];
  out[3] = c + f * b.m[3];
}

}  // namespace

ModeBlock build_mode_block(double field, double gamma, double alpha,
                           const ModeGrid& grid, int k) {
  if (k < 1 || k > grid.modes)
    throw std::invalid_argument("momentum index out of range: " +
                                std::to_string(k));
  const double ka = grid.phase(k);
  ModeBlock b;
  b.k = k;
  b.eps = 2.0 * (field - std::cos(ka) - 2.0 * alpha * std::cos(2.0 * ka));
  b.delta = 2.0 * gamma * std::sin(ka);
  b.m[0] = -b.eps;
  b.m[1] = kI * b.delta;
  b.m[2] = -kI * b.delta;
  b.m[3] = b.eps;
  return b;
}

void mode_ground_vector(const ModeBlock& b, cplx out[2]) {
  const double theta = (b.eps == 0.0 && b.delta == 0.0)
                           ? 0.0
                           : std::atan2(b.delta, b.eps);
  out[0] = std::cos(0.5 * theta);
  out[1] = kI * std::sin(0.5 * theta);
}

std::complex<double> mode_overlap(const ModelParams& p, double t) {
  p.validate();
  const ModeGrid grid = ModeGrid::build(p.n_sites);
  const EffectiveField field = effective_fields(p);
  cplx f = 1.0;
  for (int k = 1; k <= grid.modes; ++k) {
    const ModeBlock bare = build_mode_block(p.lambda, p.gamma, p.alpha, grid, k);
    const ModeBlock up = build_mode_block(field.up, p.gamma, p.alpha, grid, k);
    const ModeBlock down =
        build_mode_block(field.down, p.gamma, p.alpha, grid, k);
    cplx v[2];
    mode_ground_vector(bare, v);
    cplx uf[4], ur[4];
    block_exponential(up, t, -1, uf);    // exp(-i H_up t)
    block_exponential(down, t, +1, ur);  // exp(+i H_down t)
    const cplx w0 = uf[0] * v[0] + uf[1] * v[1];
    const cplx w1 = uf[2] * v[0] + uf[3] * v[1];
    const cplx r0 = ur[0] * w0 + ur[1] * w1;
    const cplx r1 = ur[2] * w0 + ur[3] * w1;
    f *= std::conj(v[0]) * r0 + std::conj(v[1]) * r1;
  }
  return f;
}

std::vector<PauliTerm> chain_terms(int n_sites, double gamma, double alpha,
                                   double field) {
  std::vector<PauliTerm> terms;
  terms.reserve(5 * n_sites);
  for (int l = 0; l < n_sites; ++l) {
    const int r = (l + 1) % n_sites;       // right neighbour
    const int ll = (l + n_sites - 1) % n_sites;  // left neighbour
    terms.push_back({-0.5 * (1.0 + gamma), {{l, 1}, {r, 1}}});
    terms.push_back({-0.5 * (1.0 - gamma), {{l, 2}, {r, 2}}});
    terms.push_back({-field, {{l, 3}}});
    terms.push_back({-alpha, {{ll, 1}, {l, 3}, {r, 1}}});
    terms.push_back({-alpha, {{ll, 2}, {l, 3}, {r, 2}}});
  }
  return terms;
}

std::vector<PauliTerm> full_system_terms(const ModelParams& p) {
  const int q = p.n_sites;  // qubit site index
  std::vector<PauliTerm> terms = chain_terms(p.n_sites, p.gamma, p.alpha,
                                             p.lambda);
  terms.push_back({p.eta, {{q, 3}}});
  for (int l = 0; l < p.n_sites; ++l)
    terms.push_back({-p.g, {{q, 3}, {l, 3}}});
  return terms;
}

std::vector<double> build_dense(const std::vector<PauliTerm>& terms,
                                int n_spins) {
  if (n_spins < 1 || n_spins > 13)
    throw std::invalid_argument("dense build limited to 13 spins");
  const std::size_t dim = std::size_t(1) << n_spins;
  std::vector<double> h(dim * dim, 0.0);
  for (const PauliTerm& term : terms) {
    int y_count = 0;
    for (const auto& [site, op] : term.ops)
      if (op == 2) ++y_count;
    if (y_count % 2 != 0)
      throw std::invalid_argument("term with odd y count is not real");
    for (std::size_t s = 0; s < dim; ++s) {
      // Apply the Pauli string to basis state s. Bit 0 at a site encodes
      // sigma_z = +1. x flips; y flips with +/-i; z reads the sign.
      std::size_t image = s;
      cplx amp = term.coeff;
      for (const auto& [site, op] : term.ops) {
        const bool bit = (image >> site) & 1u;
        switch (op) {
          case 1:
            image ^= std::size_t(1) << site;
            break;
          case 2:
            image ^= std::size_t(1) << site;
            amp *= bit ? -kI : kI;
            break;
          case 3:
            amp *= bit ? -1.0 : 1.0;
            break;
          default:
            throw std::invalid_argument("bad op code");
        }
      }
      h[image * dim + s] += amp.real();
    }
  }
  return h;
}

namespace {

// Full eigendecomposition, values ascending, vectors in columns of a.
void sym_eig(std::vector<double>& a, std::vector<double>& w, int dim) {
  w.resize(dim);
  const int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', dim, a.data(),
                                  dim, w.data());
  if (info != 0)
    throw std::runtime_error("eigensolver failed, info = " +
                             std::to_string(info));
}

// Lowest eigenvector only.
std::vector<double> sym_ground(std::vector<double> a, int dim) {
  std::vector<double> w(dim), z(dim);
  std::vector<lapack_int> isuppz(2);
  lapack_int found = 0;
  const int info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'I', 'L', dim,
                                  a.data(), dim, 0.0, 0.0, 1, 1, 0.0, &found,
                                  w.data(), z.data(), dim, isuppz.data());
  if (info != 0 || found != 1)
    throw std::runtime_error("ground-state solve failed");
  return z;
}

}  // namespace

ExactDiagOracle::ExactDiagOracle(const ModelParams& p) {
  p.validate();
  if (p.n_sites > 12)
    throw std::invalid_argument("exact diagonalization limited to 12 sites");
  dim_ = 1 << p.n_sites;
  const EffectiveField field = effective_fields(p);
  ground_ = sym_ground(build_dense(chain_terms(p.n_sites, p.gamma, p.alpha,
                                               p.lambda), p.n_sites), dim_);
  evecs_up_ = build_dense(chain_terms(p.n_sites, p.gamma, p.alpha, field.up),
                          p.n_sites);
  sym_eig(evecs_up_, evals_up_, dim_);
  evecs_down_ = build_dense(chain_terms(p.n_sites, p.gamma, p.alpha,
                                        field.down), p.n_sites);
  sym_eig(evecs_down_, evals_down_, dim_);
  ground_in_up_.assign(dim_, 0.0);
  ground_in_down_.assign(dim_, 0.0);
  for (int j = 0; j < dim_; ++j) {
    double su = 0.0, sd = 0.0;
    const double* cu = &evecs_up_[std::size_t(j) * dim_];
    const double* cd = &evecs_down_[std::size_t(j) * dim_];
    for (int i = 0; i < dim_; ++i) {
      su += cu[i] * ground_[i];
      sd += cd[i] * ground_[i];
    }
    ground_in_up_[j] = su;
    ground_in_down_[j] = sd;
  }
}

std::complex<double> ExactDiagOracle::factor(double t) const {
  // F(t) = a^T exp(+i D_down t) V_down^T V_up exp(-i D_up t) b with
  // b = V_up^T |G>, a = V_down^T |G>, evaluated as matrix-vector chains.
  std::vector<cplx> c(dim_);
  for (int j = 0; j < dim_; ++j)
    c[j] = std::polar(ground_in_up_[j], -evals_up_[j] * t);
  std::vector<double> zr(dim_, 0.0), zi(dim_, 0.0);
  for (int j = 0; j < dim_; ++j) {
    const double* col = &evecs_up_[std::size_t(j) * dim_];
    const double re = c[j].real(), im = c[j].imag();
    if (re == 0.0 && im == 0.0) continue;
    for (int i = 0; i < dim_; ++i) {
      zr[i] += col[i] * re;
      zi[i] += col[i] * im;
    }
  }
  cplx f = 0.0;
  for (int j = 0; j < dim_; ++j) {
    const double* col = &evecs_down_[std::size_t(j) * dim_];
    double wr = 0.0, wi = 0.0;
    for (int i = 0; i < dim_; ++i) {
      wr += col[i] * zr[i];
      wi += col[i] * zi[i];
    }
    f += ground_in_down_[j] * std::polar(1.0, evals_down_[j] * t) *
         cplx{wr, wi};
  }
  return f;
}

}  // namespace gpchain
