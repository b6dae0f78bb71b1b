// sweep.cpp — grid expansion, worker pool, presets, extremum location.
#include "gpchain/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace gpchain {

namespace {

constexpr double kPi = std::numbers::pi;

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string axis_name(Axis a) {
  switch (a) {
    case Axis::alpha: return "alpha";
    case Axis::lambda: return "lambda";
    case Axis::g: return "g";
    case Axis::eta: return "eta";
    case Axis::beta: return "beta";
    case Axis::gamma: return "gamma";
    case Axis::n_sites: return "N";
    case Axis::none: return "none";
  }
  throw std::invalid_argument("unknown axis");
}

Axis parse_axis(const std::string& name) {
  if (name == "alpha") return Axis::alpha;
  if (name == "lambda") return Axis::lambda;
  if (name == "g") return Axis::g;
  if (name == "eta") return Axis::eta;
  if (name == "beta") return Axis::beta;
  if (name == "gamma") return Axis::gamma;
  if (name == "N" || name == "n") return Axis::n_sites;
  if (name == "none") return Axis::none;
  throw std::invalid_argument("unknown axis name: " + name);
}

void apply_axis(ModelParams& p, Axis axis, double value) {
  switch (axis) {
    case Axis::alpha: p.alpha = value; return;
    case Axis::lambda: p.lambda = value; return;
    case Axis::g: p.g = value; return;
    case Axis::eta: p.eta = value; return;
    case Axis::beta: p.beta = value; return;
    case Axis::gamma: p.gamma = value; return;
    case Axis::n_sites:
      if (!(value >= 2.0 && value <= 2e9))
        throw std::invalid_argument("chain length out of range");
      p.n_sites = int(std::llround(value));
      return;
    case Axis::none:
      throw std::invalid_argument("cannot sweep axis 'none'");
  }
}

void SweepSpec::validate() const {
  if (axis == Axis::none) throw std::invalid_argument("no sweep axis set");
  if (!(start < stop))
    throw std::invalid_argument("sweep range must satisfy start < stop");
  if (points < 2) throw std::invalid_argument("sweep needs at least 2 points");
  if (!(quadrature_tol > 0.0))
    throw std::invalid_argument("quadrature tolerance must be positive");
  if (!overlays.empty() && overlay_axis == Axis::none)
    throw std::invalid_argument("overlay values given without an overlay axis");
  if (overlay_axis != Axis::none && overlays.empty())
    throw std::invalid_argument("overlay axis given without overlay values");
  if (overlay_axis == axis)
    throw std::invalid_argument("overlay axis equals the sweep axis");

  for (int i = 0; i < points; ++i) {
    const double x =
        start + (stop - start) * double(i) / double(points - 1);
    for (std::size_t j = 0; j < std::max<std::size_t>(overlays.size(), 1);
         ++j) {
      ModelParams p = base;
      apply_axis(p, axis, x);
      if (!overlays.empty()) apply_axis(p, overlay_axis, overlays[j]);
      try {
        p.validate();
      } catch (const std::invalid_argument& e) {
        throw std::invalid_argument("sweep grid point " + format_value(x) +
                                    ": " + e.what());
      }
    }
  }
}

SweepTable run_sweep(const SweepSpec& spec, int threads, KernelKind kernel) {
  spec.validate();
  if (threads < 1) throw std::invalid_argument("thread count must be >= 1");
  const KernelInfo info = select_kernel(kernel);

  struct Job {
    double axis_value;
    double overlay_value;
    ModelParams params;
  };
  std::vector<Job> jobs;
  const std::size_t curves = std::max<std::size_t>(spec.overlays.size(), 1);
  jobs.reserve(std::size_t(spec.points) * curves);
  for (int i = 0; i < spec.points; ++i) {
    const double x = spec.start + (spec.stop - spec.start) * double(i) /
                                      double(spec.points - 1);
    for (std::size_t j = 0; j < curves; ++j) {
      Job job;
      job.axis_value = x;
      job.overlay_value = spec.overlays.empty() ? 0.0 : spec.overlays[j];
      job.params = spec.base;
      apply_axis(job.params, spec.axis, x);
      if (!spec.overlays.empty())
        apply_axis(job.params, spec.overlay_axis, job.overlay_value);
      jobs.push_back(job);
    }
  }

  SweepTable table;
  table.rows.resize(jobs.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> failed{0};
  std::atomic<bool> aborted{false};
  std::exception_ptr first_error;
  std::mutex error_lock;

  const auto worker = [&] {
    while (!aborted.load(std::memory_order_relaxed)) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      SweepRow& row = table.rows[i];
      row.axis = jobs[i].axis_value;
      row.overlay = jobs[i].overlay_value;
      try {
        const GpResult r =
            geometric_phase(jobs[i].params, spec.quadrature_tol, info.kind);
        row.phi = r.phi_raw;
        row.phi_err = r.quadrature_error;
      } catch (const QuadratureError& e) {
        row.phi = e.value;
        row.phi_err = e.achieved;
        failed.fetch_add(1);
      } catch (...) {
        std::lock_guard<std::mutex> hold(error_lock);
        if (!first_error) first_error = std::current_exception();
        aborted.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };

  const int pool = int(std::min<std::size_t>(std::size_t(threads),
                                             jobs.size()));
  if (pool <= 1) {
    worker();
  } else {
    std::vector<std::thread> team;
    team.reserve(std::size_t(pool));
    for (int i = 0; i < pool; ++i) team.emplace_back(worker);
    for (auto& t : team) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  if (failed.load() == jobs.size())
    throw std::runtime_error("every sweep point failed its quadrature");

  auto& h = table.header;
  h.emplace_back("axis", axis_name(spec.axis));
  h.emplace_back("overlay", axis_name(spec.overlay_axis));
  h.emplace_back("start", format_value(spec.start));
  h.emplace_back("stop", format_value(spec.stop));
  h.emplace_back("points", std::to_string(spec.points));
  if (!spec.overlays.empty()) {
    std::string list;
    for (std::size_t j = 0; j < spec.overlays.size(); ++j) {
      if (j) list += ' ';
      list += format_value(spec.overlays[j]);
    }
    h.emplace_back("overlay_values", list);
  }
  const auto fixed = [&](Axis a) {
    return a != spec.axis && a != spec.overlay_axis;
  };
  if (fixed(Axis::eta)) h.emplace_back("eta", format_value(spec.base.eta));
  if (fixed(Axis::gamma))
    h.emplace_back("gamma", format_value(spec.base.gamma));
  if (fixed(Axis::alpha))
    h.emplace_back("alpha", format_value(spec.base.alpha));
  if (fixed(Axis::lambda))
    h.emplace_back("lambda", format_value(spec.base.lambda));
  if (fixed(Axis::g)) h.emplace_back("g", format_value(spec.base.g));
  if (fixed(Axis::n_sites))
    h.emplace_back("N", std::to_string(spec.base.n_sites));
  if (fixed(Axis::beta)) h.emplace_back("beta", format_value(spec.base.beta));
  h.emplace_back("quadrature_tol", format_value(spec.quadrature_tol));
  h.emplace_back("kernel", info.name);
  return table;
}

SweepSpec figure_preset(const std::string& id) {
  SweepSpec s;
  s.quadrature_tol = 1e-7;

  // Shared survey bases: qubit over the zero-field chain scanned in the
  // three-site coupling, and the same qubit scanned in the field with the
  // three-site coupling held at 0.2.
  const auto alpha_scan = [&] {
    s.axis = Axis::alpha;
    s.start = -1.0;
    s.stop = 1.0;
    s.points = 201;
    s.base.lambda = 0.0;
    s.base.n_sites = 501;
    s.base.g = 0.03;
  };
  const auto lambda_scan = [&] {
    s.axis = Axis::lambda;
    s.start = 0.0;
    s.stop = 2.0;
    s.points = 201;
    s.base.alpha = 0.2;
    s.base.n_sites = 501;
    s.base.g = 0.03;
  };

  if (id == "fig1") {
    alpha_scan();
    s.base.gamma = 1.0;
    s.base.eta = 2.0 * kPi / 3.0;
    s.overlay_axis = Axis::beta;
    s.overlays = {kPi / 5.0, 2.0 * kPi / 5.0, kPi / 2.0, 3.0 * kPi / 5.0,
                  4.0 * kPi / 5.0};
    s.base.beta = s.overlays.front();
  } else if (id == "fig2a") {
    alpha_scan();
    s.base.gamma = 1.0;
    s.base.beta = kPi / 5.0;
    s.overlay_axis = Axis::eta;
    s.overlays = {kPi / 5.0, 2.0 * kPi / 5.0, 2.0 * kPi / 3.0, kPi};
    s.base.eta = s.overlays.front();
  } else if (id == "fig2b") {
    alpha_scan();
    s.base.gamma = 0.4;
    s.base.eta = kPi / 5.0;
    s.base.beta = kPi / 5.0;
    s.overlay_axis = Axis::g;
    s.overlays = {0.01, 0.03, 0.06, 0.1};
    s.base.g = s.overlays.front();
  } else if (id == "fig2c") {
    alpha_scan();
    s.base.gamma = 1.0;
    s.base.eta = 2.0 * kPi / 3.0;
    s.base.beta = kPi / 3.0;
    s.overlay_axis = Axis::n_sites;
    s.overlays = {101.0, 201.0, 501.0, 1001.0};
  } else if (id == "fig2d") {
    alpha_scan();
    s.base.eta = kPi / 5.0;
    s.base.beta = kPi / 5.0;
    s.overlay_axis = Axis::gamma;
    s.overlays = {0.2, 0.4, 0.7, 1.0};
    s.base.gamma = s.overlays.front();
  } else if (id == "fig3") {
    lambda_scan();
    s.base.gamma = 1.0;
    s.base.eta = 2.0 * kPi / 3.0;
    s.base.beta = kPi / 3.0;
    s.overlay_axis = Axis::alpha;
    s.overlays = {0.0, 0.1, 0.2};
    s.base.alpha = s.overlays.front();
  } else if (id == "fig4a") {
    lambda_scan();
    s.base.gamma = 1.0;
    s.base.beta = kPi / 5.0;
    s.overlay_axis = Axis::eta;
    s.overlays = {kPi / 5.0, 2.0 * kPi / 5.0, 2.0 * kPi / 3.0, kPi};
    s.base.eta = s.overlays.front();
  } else if (id == "fig4b") {
    lambda_scan();
    s.base.gamma = 1.0;
    s.base.eta = 2.0 * kPi / 3.0;
    s.overlay_axis = Axis::beta;
    s.overlays = {kPi / 5.0, kPi / 4.0, kPi / 3.0, 2.0 * kPi / 5.0};
    s.base.beta = s.overlays.front();
  } else if (id == "fig4c") {
    lambda_scan();
    s.base.gamma = 1.0;
    s.base.eta = 2.0 * kPi / 3.0;
    s.base.beta = kPi / 3.0;
    s.overlay_axis = Axis::n_sites;
    s.overlays = {101.0, 201.0, 501.0, 1001.0};
  } else if (id == "fig4d") {
    lambda_scan();
    s.base.eta = kPi / 5.0;
    s.base.beta = kPi / 5.0;
    s.overlay_axis = Axis::gamma;
    s.overlays = {0.2, 0.4, 0.7, 1.0};
    s.base.gamma = s.overlays.front();
  } else {
    throw std::invalid_argument("unknown figure id: " + id);
  }
  return s;
}

std::vector<std::string> figure_ids() {
  return {"fig1",  "fig2a", "fig2b", "fig2c", "fig2d",
          "fig3",  "fig4a", "fig4b", "fig4c", "fig4d"};
}

namespace {

// Height of extremum i above the higher of the two valleys separating it
// from taller terrain (or from the data ends). `up` gives the orientation.
double prominence_at(const std::vector<double>& ys, int i, bool up) {
  const double sign = up ? 1.0 : -1.0;
  const double peak = sign * ys[std::size_t(i)];
  double left = peak, right = peak;
  for (int j = i - 1; j >= 0; --j) {
    const double v = sign * ys[std::size_t(j)];
    if (v > peak) break;
    left = std::min(left, v);
  }
  for (int j = i + 1; j < int(ys.size()); ++j) {
    const double v = sign * ys[std::size_t(j)];
    if (v > peak) break;
    right = std::min(right, v);
  }
  return peak - std::max(left, right);
}

}  // namespace

std::vector<Extremum> find_extrema(const std::vector<double>& xs,
                                   const std::vector<double>& ys,
                                   double min_prominence) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("extremum search needs matching lengths");
  if (xs.size() < 3)
    throw std::invalid_argument("extremum search needs at least 3 samples");
  std::vector<Extremum> out;
  for (int i = 1; i + 1 < int(xs.size()); ++i) {
    const double y = ys[std::size_t(i)];
    const bool up = y > ys[std::size_t(i) - 1] && y > ys[std::size_t(i) + 1];
    const bool down = y < ys[std::size_t(i) - 1] && y < ys[std::size_t(i) + 1];
    if (!up && !down) continue;
    Extremum e;
    e.x = xs[std::size_t(i)];
    e.y = y;
    e.index = i;
    e.orientation = up ? 1 : -1;
    e.prominence = prominence_at(ys, i, up);
    if (e.prominence >= min_prominence) out.push_back(e);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Extremum& a, const Extremum& b) {
                     return a.prominence > b.prominence;
                   });
  return out;
}

}  // namespace gpchain
