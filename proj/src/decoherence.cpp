// decoherence.cpp — factor table assembly and the log-domain product.
#include "gpchain/decoherence.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gpchain {

FactorDomainError::FactorDomainError(int k, double t, double f)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "mode factor " << f << " below tolerance at k=" << k
           << ", t=" << t;
        return os.str();
      }()),
      mode(k), time(t), factor(f) {}

namespace {

constexpr std::size_t kPad = 8;  // covers any kernel width in the registry

FactorTable build_table(const ModeAngles& angles) {
  FactorTable tb;
  tb.modes = angles.grid.modes;
  tb.padded = (tb.modes + kPad - 1) / kPad * kPad;
  for (auto* v : {&tb.w0, &tb.w1, &tb.dw, &tb.a, &tb.as2d, &tb.q0, &tb.q1})
    v->assign(tb.padded, 0.0);
  for (std::size_t i = 0; i < tb.modes; ++i) {
    const double s_up = std::sin(2.0 * angles.mix_up[i]);
    const double s_down = std::sin(2.0 * angles.mix_down[i]);
    const double s_diff = std::sin(angles.mix_up[i] - angles.mix_down[i]);
    tb.w0[i] = angles.omega_up[i];
    tb.w1[i] = angles.omega_down[i];
    tb.dw[i] = angles.omega_up[i] - angles.omega_down[i];
    tb.a[i] = s_up * s_down;
    tb.as2d[i] = tb.a[i] * s_diff * s_diff;
    tb.q0[i] = s_up * s_up;
    tb.q1[i] = s_down * s_down;
  }
  // Padding lanes already hold the neutral mode: all coefficients zero
  // makes the factor exactly 1 and its log exactly 0.
  return tb;
}

double* scratch(std::size_t n) {
  thread_local std::vector<double> buf;
  if (buf.size() < n) buf.resize(n);
  return buf.data();
}

}  // namespace

DecoherenceEvaluator::DecoherenceEvaluator(const ModelParams& p,
                                           KernelKind kernel)
    : angles_(ModeAngles::build(p)),
      table_(build_table(angles_)),
      kernel_(&select_kernel(kernel)) {}

double DecoherenceEvaluator::reduce(const FactorTable& table, double t,
                                    DecoherenceDiagnostics* diag) const {
  if (!std::isfinite(t))
    throw std::invalid_argument("time must be finite");
  double* logs = scratch(table.padded);
  const KernelScan scan = kernel_->fn(table, t, logs);
  if (scan.min_factor < -kFactorTolerance)
    throw FactorDomainError(int(scan.min_index) + 1, t, scan.min_factor);
  if (diag) {
    diag->clamped_factors += scan.clamped;
    diag->degenerate_modes = angles_.degenerate_modes;
  }
  const double half_log = 0.5 * pairwise_sum(logs, table.padded);
  const double value = std::exp(half_log);
  return value > 1.0 ? 1.0 : value;  // exp handles -inf -> 0
}

double DecoherenceEvaluator::modulus(double t,
                                     DecoherenceDiagnostics* diag) const {
  return reduce(table_, t, diag);
}

double DecoherenceEvaluator::modulus_cutoff(
    double t, int k_cut, DecoherenceDiagnostics* diag) const {
  if (k_cut < 1) throw std::invalid_argument("cutoff must be at least 1");
  if (std::size_t(k_cut) >= table_.modes) return reduce(table_, t, diag);
  FactorTable sub;
  sub.modes = k_cut;
  sub.padded = (sub.modes + kPad - 1) / kPad * kPad;
  const auto slice = [&](std::vector<double>& dst,
                         const std::vector<double>& src) {
    dst.assign(sub.padded, 0.0);
    std::copy(src.begin(), src.begin() + k_cut, dst.begin());
  };
  slice(sub.w0, table_.w0);
  slice(sub.w1, table_.w1);
  slice(sub.dw, table_.dw);
  slice(sub.a, table_.a);
  slice(sub.as2d, table_.as2d);
  slice(sub.q0, table_.q0);
  slice(sub.q1, table_.q1);
  return reduce(sub, t, diag);
}

double decoherence_modulus(const ModelParams& p, double t, KernelKind kernel) {
  return DecoherenceEvaluator(p, kernel).modulus(t);
}

DecoherenceSeries decoherence_series(const ModelParams& p, int steps,
                                     KernelKind kernel) {
  if (steps < 1) throw std::invalid_argument("steps must be positive");
  const DecoherenceEvaluator eval(p, kernel);
  DecoherenceSeries series;
  series.times.resize(steps + 1);
  series.values.resize(steps + 1);
  const double dt = p.period() / steps;
  for (int i = 0; i <= steps; ++i) {
    series.times[i] = dt * i;
    series.values[i] = eval.modulus(series.times[i], &series.diag);
  }
  return series;
}

}  // namespace gpchain
