// sweep.hpp — Parameter sweeps over the phase pipeline: grid expansion,
// deterministic parallel evaluation, figure presets, extremum location.
#pragma once

#include <string>
#include <vector>

#include "gpchain/geophase.hpp"
#include "gpchain/model.hpp"

namespace gpchain {

// Sweepable parameter. n_sites values are rounded to the nearest integer.
enum class Axis { alpha, lambda, g, eta, beta, gamma, n_sites, none };

// Name used in CSV headers and on the command line ("alpha", ..., "N").
std::string axis_name(Axis a);

// Inverse of axis_name; accepts "N" or "n" for the chain length and
// throws std::invalid_argument for anything unknown.
Axis parse_axis(const std::string& name);

// Overwrites one parameter of p with the given value.
void apply_axis(ModelParams& p, Axis axis, double value);

// One sweep: `points` uniform samples of `axis` on [start, stop], repeated
// for every overlay value (a second parameter held fixed per curve). An
// empty overlay list runs the base parameters as a single curve.
struct SweepSpec {
  ModelParams base;
  Axis axis = Axis::lambda;
  double start = 0.0;
  double stop = 1.0;
  int points = 201;
  Axis overlay_axis = Axis::none;
  std::vector<double> overlays;
  double quadrature_tol = 1e-7;

  // Throws std::invalid_argument unless start < stop, points >= 2, and
  // every grid point yields parameters that pass ModelParams::validate.
  void validate() const;
};

// One evaluated grid point. phi is the unwrapped phase so curves passing
// 2 pi stay continuous for plotting and extremum location; phi_err is the
// quadrature error estimate (points whose refinement stalled report the
// estimate they reached, which then exceeds the requested tolerance).
struct SweepRow {
  double axis = 0.0;
  double overlay = 0.0;
  double phi = 0.0;
  double phi_err = 0.0;
};

//Result of run_sweep: rows in axis-major order (outer loop over the
// axis grid, inner loop over overlays) plus the resolved header written to
// CSV. header holds key=value pairs in emission order.
struct SweepTable {
  std::vector<std::pair<std::string, std::string>> header;
  std::vector<SweepRow> rows;
};

// Evaluates the grid with `threads` workers (>= 1). Row order and content
// are independent of the worker count: rows are written by index and each
// point's quadrature is sequential. Throws only if every point fails; a
// partial failure is reported through phi_err as documented on SweepRow.
SweepTable run_sweep(const SweepSpec& spec, int threads = 1,
                     KernelKind kernel = KernelKind::automatic);

// Named presets reproducing the survey plots shipped with the project:
// fig1, fig2a..fig2d, fig3, fig4a..fig4d. Throws for unknown ids.
SweepSpec figure_preset(const std::string& id);
std::vector<std::string> figure_ids();

// A local extremum of a sampled curve, ranked by prominence (height above
// the highest saddle separating it from a larger extremum of the same
// orientation; endpoints count as saddles).
struct Extremum {
  double x = 0.0;
  double y = 0.0;
  int index = 0;
  int orientation = 1;  // +1 maximum, -1 minimum
  double prominence = 0.0;
};

// All interior extrema of y(x) with prominence at least min_prominence,
// most prominent first. xs and ys must have equal size >= 3.
std::vector<Extremum> find_extrema(const std::vector<double>& xs,
                                   const std::vector<double>& ys,
                                   double min_prominence = 0.0);

}  // namespace gpchain
