#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pskit/cli.hpp"

namespace {

using pskit::cli::RunConfig;
using pskit::cli::UsageError;

std::vector<double> list_of(const std::string& text, size_t count, const char* what) {
  const std::vector<double> v = pskit::cli::parse_number_list(text);
  if (count != 0 && v.size() != count)
    throw UsageError(std::string(what) + " expects " + std::to_string(count) + " values, got " +
                     std::to_string(v.size()));
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "pskit: Wigner and Fermi phase-space portraits of 1-D wave packets.\n"
      "Commands: fig1 (phase rows), fig2 (two-hump amplitude), fig3 (quartic\n"
      "oscillator snapshots), compare (generic contour comparison),\n"
      "reconstruct (wave function from a branch-curve file)."};
  app.set_config("--config", "", "plain-text key=value file; flags take precedence");

  RunConfig rc;
  std::string times_str, grid_str, window_str, amp_str, phase_str, alpha_str, anchor_str;

  app.add_option("command", rc.command, "fig1 | fig2 | fig3 | compare | reconstruct")
      ->required();
  app.add_option("--row", rc.row, "fig1 phase row, 1..4");
  app.add_option("--a", rc.a, "fig2 amplitude parameter, a > 0");
  app.add_option("--times", times_str, "fig3 times as fractions of the revival time, e.g. 0,0.4");
  app.add_option("--grid", grid_str, "samples per axis as NX,NP (default 256,256)");
  app.add_option("--window", window_str, "scaled window XMIN,XMAX,PMIN,PMAX");
  app.add_option("--format", rc.format, "field file layout: matrix | long");
  app.add_option("--out", rc.out_dir, "output directory (created if missing)");
  app.add_option("--x0", rc.x0, "packet center position");
  app.add_option("--p0", rc.p0, "packet center momentum");
  app.add_option("--delta", rc.delta, "packet width");
  app.add_option("--amp", amp_str, "amplitude polynomial P coefficients, ascending");
  app.add_option("--phase", phase_str, "phase polynomial theta coefficients, ascending");
  app.add_option("--lambda-hbar", rc.lambda_hbar, "quartic coupling hbar*lambda");
  app.add_option("--alpha", alpha_str, "coherent amplitude RE or RE,IM");
  app.add_option("--nmax", rc.n_max, "Fock truncation (-1 = automatic)");
  app.add_option("--hbar", rc.phys.hbar, "Planck constant");
  app.add_option("--mass", rc.phys.mass, "particle mass");
  app.add_option("--omega", rc.phys.omega, "oscillator frequency");
  app.add_option("--level-frac", rc.level_frac, "compare contour level as fraction of W_max");
  app.add_option("--curve", rc.curve_file, "reconstruct input branch-curve file");
  app.add_flag("--fidelity", rc.fidelity, "reconstruct: report overlap with the packet flags");
  app.add_option("--anchor", anchor_str, "reconstruct anchor as X,R,S");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (!times_str.empty()) rc.times = pskit::cli::parse_number_list(times_str);
    if (!grid_str.empty()) {
      const std::vector<double> g = list_of(grid_str, 2, "--grid");
      rc.nx = static_cast<pskit::Index>(g[0]);
      rc.np = static_cast<pskit::Index>(g[1]);
      if (double(rc.nx) != g[0] || double(rc.np) != g[1])
        throw UsageError("--grid expects integers");
    }
    if (!window_str.empty()) {
      const std::vector<double> w = list_of(window_str, 4, "--window");
      std::copy(w.begin(), w.end(), rc.window);
      rc.has_window = true;
    }
    if (!amp_str.empty()) rc.amp = pskit::cli::parse_number_list(amp_str);
    if (!phase_str.empty()) rc.phase = pskit::cli::parse_number_list(phase_str);
    if (!alpha_str.empty()) {
      const std::vector<double> a = pskit::cli::parse_number_list(alpha_str);
      if (a.size() > 2) throw UsageError("--alpha expects RE or RE,IM");
      rc.alpha_re = a[0];
      rc.alpha_im = a.size() > 1 ? a[1] : 0.0;
    }
    if (!anchor_str.empty()) {
      const std::vector<double> a = list_of(anchor_str, 3, "--anchor");
      rc.anchor_x = a[0];
      rc.anchor_r = a[1];
      rc.anchor_s = a[2];
      rc.has_anchor = true;
    }
    return pskit::cli::run(rc);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
