#ifndef PSKIT_CLI_HPP
#define PSKIT_CLI_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "pskit/types.hpp"

namespace pskit::cli {

/// Bad user input; the front end maps this to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Fully resolved run parameters. Flags override an optional key=value
/// config file; the front end performs that merge, run() only validates.
struct RunConfig {
  std::string command;  // fig1 | fig2 | fig3 | compare | reconstruct

  int row = 1;                                  // fig1
  double a = 10.0;                              // fig2
  std::vector<double> times{0.0, 0.4, 0.8, 1.2};  // fig3, units of the revival time

  // analytic packet (fig1 phase rows are added on top of this base)
  double x0 = 0.0, p0 = 0.0, delta = 1.0;
  std::vector<double> amp;    // P coefficients, ascending powers of the scaled coordinate
  std::vector<double> phase;  // theta coefficients, ascending

  // quartic oscillator
  double lambda_hbar = 0.01;               // hbar*lambda in units of omega
  double alpha_re = 2.1213203435596424;    // 3/sqrt(2): scaled center (3, 0)
  double alpha_im = 0.0;
  int n_max = -1;  // -1: automatic truncation

  Index nx = 256, np = 256;
  bool has_window = false;
  double window[4] = {0.0, 0.0, 0.0, 0.0};  // scaled units: xmin xmax pmin pmax

  std::string format = "matrix";  // matrix | long
  std::string out_dir = ".";

  double level_frac = 0.36787944117144233;  // compare: contour level as fraction of W_max

  std::string curve_file;  // reconstruct input
  bool fidelity = false;   // reconstruct: compare against the packet flags
  bool has_anchor = false;
  double anchor_x = 0.0, anchor_r = 1.0, anchor_s = 0.0;

  PhysConfig phys;
};

/// Comma-separated doubles; throws UsageError on malformed input.
std::vector<double> parse_number_list(const std::string& text);

/// Execute one command; returns 0. Throws UsageError for invalid parameters
/// and std::runtime_error (or derived) for computation/O errors.
int run(const RunConfig& rc);

}  // namespace pskit::cli

#endif
