// gpchain — command-line front-end for the qubit-probe spin chain
// simulator: parameter sweeps, bundled survey figures, decoherence
// series, closed-form estimates, and the self-check suite.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gpchain/approx.hpp"
#include "gpchain/decoherence.hpp"
#include "gpchain/geophase.hpp"
#include "gpchain/io.hpp"
#include "gpchain/sweep.hpp"
#include "gpchain/verify.hpp"

namespace {

using namespace gpchain;

// All numeric options arrive as text and pass through the pi-rational
// reader, so "--eta 2pi/3" works anywhere a number does.
struct ParamFlags {
  std::string eta = "2";
  std::string gamma = "1";
  std::string alpha = "0";
  std::string lambda = "0";
  std::string g = "0";
  std::string beta = "0";
  int n_sites = 501;

  void attach(CLI::App* cmd) {
    cmd->add_option("--eta", eta, "Qubit level splitting")
        ->capture_default_str();
    cmd->add_option("--gamma", gamma, "Chain anisotropy")
        ->capture_default_str();
    cmd->add_option("--alpha", alpha, "Three-site interaction strength")
        ->capture_default_str();
    cmd->add_option("--lambda", lambda, "Transverse field")
        ->capture_default_str();
    cmd->add_option("--g", g, "Qubit-chain coupling")->capture_default_str();
    cmd->add_option("--beta", beta, "Qubit preparation angle, in [0, pi]")
        ->capture_default_str();
    cmd->add_option("--sites,-N", n_sites, "Chain length")
        ->capture_default_str();
  }

  ModelParams resolve() const {
    ModelParams p;
    p.eta = parse_pi_expression(eta);
    p.gamma = parse_pi_expression(gamma);
    p.alpha = parse_pi_expression(alpha);
    p.lambda = parse_pi_expression(lambda);
    p.g = parse_pi_expression(g);
    p.beta = parse_pi_expression(beta);
    p.n_sites = n_sites;
    p.validate();
    return p;
  }
};

// Config file entries fill any option the command line left untouched.
void apply_config(CLI::App* cmd, const std::string& path) {
  if (path.empty()) return;
  for (const auto& [key, value] : read_config(path)) {
    CLI::Option* opt = cmd->get_option_no_throw("--" + key);
    if (opt == nullptr && key == "N")
      opt = cmd->get_option_no_throw("--sites");
    if (opt == nullptr)
      throw std::invalid_argument("config key '" + key +
                                  "' matches no option of this command");
    if (opt->count() > 0) continue;  // explicit flags win
    opt->add_result(value);
    opt->run_callback();
  }
}

void write_table(const SweepTable& table, const std::string& out,
                 const std::string& plot, double tol) {
  std::size_t stalled = 0;
  for (const SweepRow& r : table.rows)
    if (r.phi_err > tol) ++stalled;
  if (stalled > 0)
    std::cerr << "note: " << stalled << " of " << table.rows.size()
              << " points stopped above the requested tolerance\n";
  if (out == "-")
    emit_csv(table, std::cout);
  else
    write_csv(table, out);
  if (!plot.empty()) write_plot(table, plot);
}

int run_verify_command(const std::string& level_name, KernelKind kernel) {
  const VerifyLevel level =
      level_name == "full" ? VerifyLevel::full : VerifyLevel::quick;
  const VerifyReport report = run_verify(level, kernel);
  for (const CheckResult& c : report.checks)
    std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.name << ": "
              << c.detail << '\n';
  std::cout << (report.all_pass() ? "all checks passed\n"
                                  : "CHECKS FAILED\n");
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometric phase of a qubit probing an anisotropic XY chain "
               "with three-site interaction"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string kernel_name = "auto";
  app.add_option("--kernel", kernel_name,
                 "Evaluation kernel: auto, scalar, or avx2")
      ->capture_default_str();

  // sweep
  auto* sweep_cmd =
      app.add_subcommand("sweep", "Scan the cycle phase over one parameter");
  ParamFlags sweep_params;
  sweep_params.attach(sweep_cmd);
  std::string axis_str, overlay_axis_str = "none", config_path;
  std::string start_str, stop_str;
  std::vector<std::string> overlay_strs;
  int points = 201, threads = 1;
  double tol = 1e-7;
  std::string out_path = "sweep.csv", plot_path;
  sweep_cmd->add_option("--axis", axis_str,
                        "Swept parameter: alpha, lambda, g, eta, beta, "
                        "gamma, or N")
      ->required();
  sweep_cmd->add_option("--start", start_str, "First axis value")->required();
  sweep_cmd->add_option("--stop", stop_str, "Last axis value")->required();
  sweep_cmd->add_option("--points", points, "Grid size")
      ->capture_default_str();
  sweep_cmd->add_option("--overlay-axis", overlay_axis_str,
                        "Parameter distinguishing curves")
      ->capture_default_str();
  sweep_cmd->add_option("--overlay", overlay_strs,
                        "Overlay value (repeatable)");
  sweep_cmd->add_option("--tol", tol, "Quadrature tolerance per point")
      ->capture_default_str();
  sweep_cmd->add_option("--threads", threads, "Worker count")
      ->capture_default_str();
  sweep_cmd->add_option("--config", config_path,
                        "key = value file; explicit flags win");
  sweep_cmd->add_option("--out", out_path, "CSV destination, - for stdout")
      ->capture_default_str();
  sweep_cmd->add_option("--plot", plot_path, "Also write an SVG plot here");

  // figure
  auto* figure_cmd = app.add_subcommand(
      "figure", "Reproduce one of the bundled survey plots");
  std::string figure_id;
  std::string fig_out, fig_plot;
  double fig_tol = 0.0;
  int fig_points = 0, fig_threads = 1;
  figure_cmd
      ->add_option("id", figure_id,
                   "fig1, fig2a..fig2d, fig3, or fig4a..fig4d")
      ->required();
  figure_cmd->add_option("--out", fig_out,
                         "CSV destination (default <id>.csv)");
  figure_cmd->add_option("--plot", fig_plot,
                         "SVG destination (default none)");
  figure_cmd->add_option("--tol", fig_tol, "Override preset tolerance");
  figure_cmd->add_option("--points", fig_points, "Override preset grid");
  figure_cmd->add_option("--threads", fig_threads, "Worker count")
      ->capture_default_str();

  // decoherence
  auto* deco_cmd = app.add_subcommand(
      "decoherence", "Tabulate the coherence envelope over one cycle");
  ParamFlags deco_params;
  deco_params.attach(deco_cmd);
  int deco_steps = 512, deco_cut = 0;
  std::string deco_out = "-";
  deco_cmd->add_option("--steps", deco_steps, "Sample count minus one")
      ->capture_default_str();
  deco_cmd->add_option("--k-cut", deco_cut,
                       "Keep only the first k momentum modes (0 = all)")
      ->capture_default_str();
  deco_cmd->add_option("--out", deco_out, "CSV destination, - for stdout")
      ->capture_default_str();

  // approx
  auto* approx_cmd = app.add_subcommand(
      "approx", "Closed-form weak-coupling estimates near the gap closure");
  ParamFlags approx_params;
  approx_params.attach(approx_cmd);
  int approx_cut = 3;
  bool approx_compare = false;
  approx_cmd
      ->add_option("--k-cut", approx_cut, "Momentum cutoff of the estimate")
      ->capture_default_str();
  approx_cmd->add_flag("--compare", approx_compare,
                       "Also evaluate the numerical phase");

  // verify
  auto* verify_cmd =
      app.add_subcommand("verify", "Run the self-check suite");
  std::string verify_level = "quick";
  verify_cmd->add_option("--level", verify_level, "quick or full")
      ->check(CLI::IsMember({"quick", "full"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const KernelKind kernel = parse_kernel_name(kernel_name);

    if (app.got_subcommand(sweep_cmd)) {
      apply_config(sweep_cmd, config_path);
      SweepSpec spec;
      spec.base = sweep_params.resolve();
      spec.axis = parse_axis(axis_str);
      spec.start = parse_pi_expression(start_str);
      spec.stop = parse_pi_expression(stop_str);
      spec.points = points;
      spec.overlay_axis = parse_axis(overlay_axis_str);
      for (const std::string& s : overlay_strs)
        spec.overlays.push_back(parse_pi_expression(s));
      spec.quadrature_tol = tol;
      const SweepTable table = run_sweep(spec, threads, kernel);
      write_table(table, out_path, plot_path, spec.quadrature_tol);
      return 0;
    }

    if (app.got_subcommand(figure_cmd)) {
      SweepSpec spec = figure_preset(figure_id);
      if (fig_tol > 0.0) spec.quadrature_tol = fig_tol;
      if (fig_points > 0) spec.points = fig_points;
      const SweepTable table = run_sweep(spec, fig_threads, kernel);
      const std::string out =
          fig_out.empty() ? figure_id + ".csv" : fig_out;
      write_table(table, out, fig_plot, spec.quadrature_tol);
      return 0;
    }

    if (app.got_subcommand(deco_cmd)) {
      const ModelParams p = deco_params.resolve();
      if (deco_steps < 1)
        throw std::invalid_argument("need at least one step");
      if (deco_cut < 0)
        throw std::invalid_argument("mode cutoff cannot be negative");
      const DecoherenceEvaluator eval(p, kernel);
      DecoherenceDiagnostics diag;
      std::vector<double> times(std::size_t(deco_steps) + 1);
      std::vector<double> values(times.size());
      const double period = p.period();
      for (std::size_t i = 0; i < times.size(); ++i) {
        times[i] = period * double(i) / double(deco_steps);
        values[i] = deco_cut > 0
                        ? eval.modulus_cutoff(times[i], deco_cut, &diag)
                        : eval.modulus(times[i], &diag);
      }
      std::vector<std::pair<std::string, std::string>> header;
      const auto num = [](double v) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
      };
      header.emplace_back("eta", num(p.eta));
      header.emplace_back("gamma", num(p.gamma));
      header.emplace_back("alpha", num(p.alpha));
      header.emplace_back("lambda", num(p.lambda));
      header.emplace_back("g", num(p.g));
      header.emplace_back("N", std::to_string(p.n_sites));
      header.emplace_back("beta", num(p.beta));
      if (deco_cut > 0)
        header.emplace_back("k_cut", std::to_string(deco_cut));
      if (diag.clamped_factors > 0)
        header.emplace_back("clamped_factors",
                            std::to_string(diag.clamped_factors));
      if (deco_out == "-") {
        emit_series_csv(header, "t,f", times, values, std::cout);
      } else {
        std::ofstream file(deco_out, std::ios::binary);
        if (!file)
          throw std::runtime_error("cannot open for writing: " + deco_out);
        emit_series_csv(header, "t,f", times, values, file);
        file.flush();
        if (!file) throw std::runtime_error("write failed: " + deco_out);
      }
      return 0;
    }

    if (app.got_subcommand(approx_cmd)) {
      const ModelParams p = approx_params.resolve();
      const auto line = [](const char* key, double v) {
        std::printf("%s=%.17g\n", key, v);
      };
      line("phi_unperturbed", unperturbed_phase(p.beta));
      line("phi_approx", approx_gp(p, approx_cut));
      line("tau", decay_rate(p, approx_cut));
      line("cutoff_sum", cutoff_sum(approx_cut, p.n_sites));
      if (approx_compare) {
        const GpResult full = geometric_phase(p, 1e-9, kernel);
        const GpResult cut =
            geometric_phase_cutoff(p, approx_cut, 1e-9, kernel);
        line("phi_numeric", full.phi_raw);
        line("phi_numeric_cutoff", cut.phi_raw);
        line("approx_minus_cutoff",
             approx_gp(p, approx_cut) - cut.phi_raw);
      }
      return 0;
    }

    if (app.got_subcommand(verify_cmd))
      return run_verify_command(verify_level, kernel);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
