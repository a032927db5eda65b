#include "pskit/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <sstream>
#include <utility>

#include "pskit/contour.hpp"
#include "pskit/fermi.hpp"
#include "pskit/io.hpp"
#include "pskit/packets.hpp"
#include "pskit/quartic.hpp"
#include "pskit/wigner.hpp"

namespace pskit::cli {

namespace {

namespace fs = std::filesystem;
using contour::Polyline;

std::string tag(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::string join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

io::FieldFormat field_format(const RunConfig& rc) {
  if (rc.format == "matrix") return io::FieldFormat::matrix;
  if (rc.format == "long") return io::FieldFormat::long_form;
  throw UsageError("unknown format '" + rc.format + "' (expected matrix or long)");
}

void check_common(const RunConfig& rc) {
  try {
    rc.phys.require_valid();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (rc.nx < 2 || rc.np < 2) throw UsageError("grid needs at least 2 samples per axis");
  if (rc.has_window && (rc.window[1] <= rc.window[0] || rc.window[3] <= rc.window[2]))
    throw UsageError("window must satisfy xmin < xmax and pmin < pmax");
  field_format(rc);
}

struct Frame {
  io::ScaledFrame map;
  PhaseSpaceGrid grid;
  double cell_x = 0.0, cell_p = 0.0;  // scaled node spacing
  double densify = 0.0;               // Hausdorff step, scaled units
};

Frame make_frame(const RunConfig& rc, const io::ScaledFrame& map, double half_width) {
  double win[4] = {-half_width, half_width, -half_width, half_width};
  if (rc.has_window) std::copy(rc.window, rc.window + 4, win);
  Frame fr;
  fr.map = map;
  fr.grid.x_min = map.x_center + win[0] * map.x_unit;
  fr.grid.x_max = map.x_center + win[1] * map.x_unit;
  fr.grid.p_min = map.p_center + win[2] * map.p_unit;
  fr.grid.p_max = map.p_center + win[3] * map.p_unit;
  fr.grid.nx = rc.nx;
  fr.grid.np = rc.np;
  fr.grid.require_valid();
  fr.cell_x = (win[1] - win[0]) / double(rc.nx - 1);
  fr.cell_p = (win[3] - win[2]) / double(rc.np - 1);
  fr.densify = 0.5 * std::min(fr.cell_x, fr.cell_p);
  return fr;
}

packets::AnalyticPacket packet_from_flags(const RunConfig& rc,
                                          const std::vector<double>& phase_override = {}) {
  const std::vector<double>& ph = phase_override.empty() ? rc.phase : phase_override;
  VectorXd amp = Eigen::Map<const VectorXd>(rc.amp.data(), Index(rc.amp.size()));
  VectorXd phase = Eigen::Map<const VectorXd>(ph.data(), Index(ph.size()));
  try {
    return packets::make_packet(rc.x0, rc.p0, rc.delta, amp, phase);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

/// Sampling grid for the transform: wide enough for the amplitude tails,
/// fine enough for the local momentum content plus the requested p window.
packets::SampledWavefunction sample_packet(const packets::AnalyticPacket& packet,
                                           const PhysConfig& cfg, const PhaseSpaceGrid& grid) {
  const double u_half = 9.0;
  const double x_lo = packet.x0 - u_half * packet.delta;
  const double x_hi = packet.x0 + u_half * packet.delta;

  const int m = 4001;
  double r_max = 0.0;
  for (int i = 0; i < m; ++i) {
    const double x = x_lo + (x_hi - x_lo) * double(i) / double(m - 1);
    r_max = std::max(r_max, packets::eval_polar(packet, cfg, x).R);
  }
  double k_max = 0.0;
  for (int i = 0; i < m; ++i) {
    const double x = x_lo + (x_hi - x_lo) * double(i) / double(m - 1);
    const packets::PolarData pd = packets::eval_polar(packet, cfg, x);
    if (pd.R >= 1e-8 * r_max) k_max = std::max(k_max, std::abs(pd.dS) / cfg.hbar);
  }

  const double p_need = std::max(std::abs(grid.p_min), std::abs(grid.p_max)) / cfg.hbar;
  const double k_budget = 1.3 * (k_max + p_need) + 10.0 / packet.delta;
  const double span = x_hi - x_lo;
  Index n = 2 * Index(std::ceil(span * k_budget / (2.0 * M_PI))) + 1;
  n = std::max<Index>(n, 129);
  return packets::sample(packet, cfg, x_lo, span / double(n - 1), n, false);
}

packets::SampledWavefunction sample_fock(const quartic::FockState& state,
                                         const quartic::QuarticParams& params,
                                         const PhaseSpaceGrid& grid) {
  const PhysConfig& cfg = params.cfg;
  const double beta = std::sqrt(cfg.mass * cfg.omega / cfg.hbar);

  int n_eff = 0;
  double cum = 0.0;
  for (Index k = 0; k < state.coeffs.size(); ++k) {
    cum += std::norm(state.coeffs(k));
    if (cum < 1.0 - 1e-12) n_eff = int(k) + 1;
  }
  n_eff = std::min(n_eff, state.n_max());

  const double reach = (std::sqrt(2.0 * n_eff + 1.0) + 5.0) / beta;
  const double k_max = beta * std::sqrt(2.0 * n_eff + 1.0);
  const double p_need = std::max(std::abs(grid.p_min), std::abs(grid.p_max)) / cfg.hbar;
  const double k_budget = 1.3 * (k_max + p_need) + 10.0 * beta;
  const double span = 2.0 * reach;
  Index n = 2 * Index(std::ceil(span * k_budget / (2.0 * M_PI))) + 1;
  n = std::max<Index>(n, 129);
  return quartic::fock_to_position(state, params, -reach, span / double(n - 1), n);
}

double closed_area_sum(const std::vector<Polyline>& polys) {
  double sum = 0.0;
  for (const auto& poly : polys)
    if (poly.closed) sum += contour::enclosed_area(poly);
  return sum;
}

/// Everything a figure run derives from one state.
struct Pipeline {
  wigner::TransformResult wig;
  fermi::FermiCurve branches;
  std::vector<Polyline> gf_zero;   // physical coordinates
  std::vector<Polyline> wcontour;  // physical coordinates
  double level = 0.0;              // physical W level of wcontour
  double hausdorff_scaled = 0.0;
};

Pipeline run_pipeline(const packets::SampledWavefunction& psi,
                      const packets::PolarEvaluator& eval, const Frame& fr,
                      const PhysConfig& cfg, double level_frac) {
  Pipeline out;
  out.wig = wigner::wigner_transform(psi, fr.grid, cfg);

  const Index n_dense = 4 * (fr.grid.nx - 1) + 1;
  const VectorXd xs = VectorXd::LinSpaced(n_dense, fr.grid.x_min, fr.grid.x_max);
  out.branches = fermi::fermi_branches(eval, xs, cfg);
  out.gf_zero = fermi::branch_closure(out.branches);

  out.level = level_frac * out.wig.field.max_value();
  out.wcontour = contour::extract_level_set(out.wig.field, out.level);

  out.hausdorff_scaled = contour::hausdorff_distance(
      io::to_scaled(out.gf_zero, fr.map), io::to_scaled(out.wcontour, fr.map), fr.densify);
  return out;
}

void push_pipeline_metrics(std::vector<std::pair<std::string, double>>& kv, const Pipeline& pipe,
                           const Frame& fr) {
  kv.emplace_back("wigner_max", pipe.wig.field.max_value());
  kv.emplace_back("wigner_min", pipe.wig.field.min_value());
  kv.emplace_back("wigner_total_integral", wigner::total_integral(pipe.wig.field));
  kv.emplace_back("wigner_max_imag_residue", pipe.wig.max_imag_residue);
  kv.emplace_back("contour_level", pipe.level);
  kv.emplace_back("n_gf_zero_polylines", double(pipe.gf_zero.size()));
  kv.emplace_back("n_wcontour_polylines", double(pipe.wcontour.size()));
  kv.emplace_back("area_gf_zero", closed_area_sum(pipe.gf_zero));
  kv.emplace_back("area_wcontour", closed_area_sum(pipe.wcontour));
  kv.emplace_back("hausdorff_scaled", pipe.hausdorff_scaled);
  kv.emplace_back("hausdorff_cells", pipe.hausdorff_scaled / std::max(fr.cell_x, fr.cell_p));
}

void write_pipeline(const RunConfig& rc, const Pipeline& pipe, const Frame& fr,
                    const std::string& suffix, const ScalarField* gf_field,
                    std::vector<std::pair<std::string, double>> kv) {
  const io::FieldFormat fmt = field_format(rc);
  io::write_field(join(rc.out_dir, "wigner" + suffix + ".dat"), pipe.wig.field, fmt, fr.map);
  if (gf_field)
    io::write_field(join(rc.out_dir, "fermi" + suffix + ".dat"), *gf_field, fmt, fr.map);
  io::write_polylines(join(rc.out_dir, "gf_zero" + suffix + ".dat"), pipe.gf_zero, 0.0, fr.map);
  io::write_polylines(join(rc.out_dir, "wcontour" + suffix + ".dat"), pipe.wcontour,
                      pipe.level, fr.map);
  io::write_metrics(join(rc.out_dir, "metrics" + suffix + ".dat"), kv);
}

/// Maxima of the amplitude in scaled units, found numerically: coarse scan
/// plus golden-section refinement, symmetric in u.
std::vector<double> amplitude_maxima(const packets::AnalyticPacket& packet,
                                     const PhysConfig& cfg) {
  const auto R = [&](double u) {
    return packets::eval_polar(packet, cfg, packet.x0 + u * packet.delta).R;
  };
  const int m = 4001;
  const double u_hi = 4.0;
  int best = 0;
  double r_best = -1.0;
  for (int i = 0; i < m; ++i) {
    const double u = u_hi * double(i) / double(m - 1);
    const double r = R(u);
    if (r > r_best) {
      r_best = r;
      best = i;
    }
  }
  if (best == 0) return {0.0};

  double lo = u_hi * double(best - 1) / double(m - 1);
  double hi = u_hi * double(best + 1) / double(m - 1);
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - phi * (hi - lo), d = lo + phi * (hi - lo);
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    if (R(c) > R(d)) {
      hi = d;
    } else {
      lo = c;
    }
    c = hi - phi * (hi - lo);
    d = lo + phi * (hi - lo);
  }
  const double u_star = 0.5 * (lo + hi);
  return {-u_star, u_star};
}

int cmd_fig1(const RunConfig& rc) {
  if (rc.row < 1 || rc.row > 4) throw UsageError("fig1 row must be 1, 2, 3 or 4");
  static const std::vector<std::vector<double>> rows = {
      {0.0, 0.0, 1.0},
      {0.0, 0.0, 0.0, 1.0},
      {0.0, 0.0, 1.0, -1.0 / 3.0},
      {0.0, 0.0, 0.0, 0.0, -0.5},
  };
  const packets::AnalyticPacket packet = packet_from_flags(rc, rows[size_t(rc.row) - 1]);
  const io::ScaledFrame map{packet.x0, packet.delta, packet.p0, rc.phys.hbar / packet.delta};
  const Frame fr = make_frame(rc, map, 6.0);

  const packets::SampledWavefunction psi = sample_packet(packet, rc.phys, fr.grid);
  const packets::PolarEvaluator eval = packets::polar_evaluator(packet, rc.phys);
  const Pipeline pipe = run_pipeline(psi, eval, fr, rc.phys, std::exp(-1.0));
  const ScalarField gf = fermi::fermi_field(eval, fr.grid, rc.phys);

  std::vector<std::pair<std::string, double>> kv;
  kv.emplace_back("row", double(rc.row));
  push_pipeline_metrics(kv, pipe, fr);
  write_pipeline(rc, pipe, fr, "_row" + std::to_string(rc.row), &gf, std::move(kv));
  return 0;
}

int cmd_fig2(const RunConfig& rc) {
  if (!(rc.a > 0.0)) throw UsageError("fig2 needs a > 0");
  RunConfig stated = rc;
  stated.amp = {0.0, 0.0, rc.a};
  const packets::AnalyticPacket packet = packet_from_flags(stated);
  const io::ScaledFrame map{packet.x0, packet.delta, packet.p0, rc.phys.hbar / packet.delta};
  const Frame fr = make_frame(rc, map, 4.0);

  const packets::SampledWavefunction psi = sample_packet(packet, rc.phys, fr.grid);
  const packets::PolarEvaluator eval = packets::polar_evaluator(packet, rc.phys);
  const Pipeline pipe = run_pipeline(psi, eval, fr, rc.phys, std::exp(-1.0));
  const ScalarField gf = fermi::fermi_field(eval, fr.grid, rc.phys);

  std::vector<std::pair<std::string, double>> kv;
  kv.emplace_back("a", rc.a);
  push_pipeline_metrics(kv, pipe, fr);
  const std::vector<double> maxima = amplitude_maxima(packet, rc.phys);
  kv.emplace_back("maxima_count", double(maxima.size()));
  for (size_t i = 0; i < maxima.size(); ++i)
    kv.emplace_back("maxima_x_scaled_" + std::to_string(i + 1), maxima[i]);
  write_pipeline(rc, pipe, fr, "_a" + tag(rc.a), &gf, std::move(kv));
  return 0;
}

int cmd_fig3(const RunConfig& rc) {
  if (rc.times.empty()) throw UsageError("fig3 needs at least one time");
  if (!(rc.lambda_hbar > 0.0)) throw UsageError("fig3 needs lambda_hbar > 0");
  quartic::QuarticParams params;
  try {
    params = quartic::make_params(rc.phys, rc.lambda_hbar,
                                  Complex(rc.alpha_re, rc.alpha_im), rc.n_max);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const double beta = std::sqrt(rc.phys.mass * rc.phys.omega / rc.phys.hbar);
  const io::ScaledFrame map{0.0, 1.0 / beta, 0.0, rc.phys.hbar * beta};
  const Frame fr = make_frame(rc, map, 10.0);

  const quartic::FockState state0 = quartic::coherent_coefficients(params.alpha, params.n_max);
  const double t_revival = M_PI / rc.lambda_hbar;

  struct TimeRecord {
    Pipeline pipe;
    std::vector<std::pair<std::string, double>> kv;
    std::string suffix;
  };
  std::vector<TimeRecord> records;
  double norm_lo = 1.0, norm_hi = 1.0;
  double e_lo = 0.0, e_hi = 0.0;

  for (size_t it = 0; it < rc.times.size(); ++it) {
    const double t = rc.times[it] * t_revival;
    const quartic::FockState state = quartic::evolve(state0, params, t);
    const double norm = state.coeffs.squaredNorm();
    const double energy = quartic::energy_expectation(state, params);
    if (it == 0) {
      norm_lo = norm_hi = norm;
      e_lo = e_hi = energy;
    } else {
      norm_lo = std::min(norm_lo, norm);
      norm_hi = std::max(norm_hi, norm);
      e_lo = std::min(e_lo, energy);
      e_hi = std::max(e_hi, energy);
    }

    const packets::SampledWavefunction psi = sample_fock(state, params, fr.grid);
    const packets::PolarEvaluator eval = quartic::polar_evaluator(state, params);
    TimeRecord rec;
    rec.pipe = run_pipeline(psi, eval, fr, rc.phys, std::exp(-1.0));
    rec.suffix = "_t" + tag(rc.times[it]);
    rec.kv.emplace_back("t_over_T", rc.times[it]);
    rec.kv.emplace_back("t", t);
    rec.kv.emplace_back("norm", norm);
    rec.kv.emplace_back("energy", energy);
    rec.kv.emplace_back("n_real_segments", double(rec.pipe.gf_zero.size()));
    push_pipeline_metrics(rec.kv, rec.pipe, fr);
    records.push_back(std::move(rec));
  }

  for (const auto& rec : records) {
    write_pipeline(rc, rec.pipe, fr, rec.suffix, nullptr, rec.kv);
    io::write_branches(join(rc.out_dir, "branches" + rec.suffix + ".dat"), rec.pipe.branches);
  }
  std::vector<std::pair<std::string, double>> summary;
  summary.emplace_back("n_times", double(rc.times.size()));
  summary.emplace_back("revival_time", t_revival);
  summary.emplace_back("norm_drift", norm_hi - norm_lo);
  summary.emplace_back("energy_drift", e_hi - e_lo);
  io::write_metrics(join(rc.out_dir, "metrics_fig3.dat"), summary);
  return 0;
}

int cmd_compare(const RunConfig& rc) {
  if (!(rc.level_frac > 0.0)) throw UsageError("compare needs a positive level fraction");
  const packets::AnalyticPacket packet = packet_from_flags(rc);
  const io::ScaledFrame map{packet.x0, packet.delta, packet.p0, rc.phys.hbar / packet.delta};
  const Frame fr = make_frame(rc, map, 6.0);

  const packets::SampledWavefunction psi = sample_packet(packet, rc.phys, fr.grid);
  const packets::PolarEvaluator eval = packets::polar_evaluator(packet, rc.phys);
  const Pipeline pipe = run_pipeline(psi, eval, fr, rc.phys, rc.level_frac);
  const ScalarField gf = fermi::fermi_field(eval, fr.grid, rc.phys);

  std::vector<std::pair<std::string, double>> kv;
  kv.emplace_back("level_frac", rc.level_frac);
  push_pipeline_metrics(kv, pipe, fr);
  write_pipeline(rc, pipe, fr, "_compare", &gf, std::move(kv));
  io::write_branches(join(rc.out_dir, "branches_compare.dat"), pipe.branches);
  return 0;
}

int cmd_reconstruct(const RunConfig& rc) {
  if (rc.curve_file.empty()) throw UsageError("reconstruct needs --curve FILE");
  const fermi::FermiCurve curve = io::read_branches(rc.curve_file);
  const fermi::PolarReconstruction rec = fermi::reconstruct_polar(curve, rc.phys);

  // Branch files carry masked samples where the amplitude sits below the
  // node floor; tails are trimmed here, interior gaps stay fatal.
  Index lo = 0, hi = curve.size() - 1;
  while (lo <= hi && curve.masked[lo]) ++lo;
  while (hi >= lo && curve.masked[hi]) --hi;
  if (hi - lo + 1 < 8)
    throw std::runtime_error("reconstruct: fewer than 8 unmasked samples in '" + rc.curve_file +
                             "'");
  const Index m = hi - lo + 1;

  std::optional<fermi::ReconstructionAnchor> anchor;
  if (rc.has_anchor) anchor = fermi::ReconstructionAnchor{rc.anchor_x, rc.anchor_r, rc.anchor_s};
  const packets::SampledWavefunction psi = fermi::reconstruct_wavefunction(
      curve.x.segment(lo, m), rec.sprime.segment(lo, m), rec.rpp_over_r.segment(lo, m), rc.phys,
      anchor);

  std::vector<std::pair<std::string, double>> kv;
  kv.emplace_back("n_samples", double(curve.size()));
  kv.emplace_back("n_used", double(m));
  kv.emplace_back("branch_max_imag_residue", rec.max_imag_residue);
  if (rc.fidelity) {
    const packets::AnalyticPacket ref = packet_from_flags(rc);
    const packets::SampledWavefunction ref_psi =
        packets::sample(ref, rc.phys, psi.x_min, psi.dx, psi.n, false);
    const Complex overlap = (ref_psi.psi.adjoint() * psi.psi)(0, 0) * psi.dx;
    kv.emplace_back("fidelity", std::abs(overlap));
  }
  io::write_wavefunction(join(rc.out_dir, "psi_rec.dat"), psi);
  io::write_metrics(join(rc.out_dir, "metrics_reconstruct.dat"), kv);
  return 0;
}

}  // namespace

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::string token;
  std::istringstream ss(text);
  while (std::getline(ss, token, ',')) {
    try {
      size_t used = 0;
      const double v = std::stod(token, &used);
      while (used < token.size() && std::isspace((unsigned char)token[used])) ++used;
      if (used != token.size()) throw std::invalid_argument(token);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("cannot parse number '" + token + "' in '" + text + "'");
    }
  }
  if (out.empty()) throw UsageError("empty number list '" + text + "'");
  return out;
}

int run(const RunConfig& rc) {
  check_common(rc);
  io::ensure_writable_dir(rc.out_dir);
  if (rc.command == "fig1") return cmd_fig1(rc);
  if (rc.command == "fig2") return cmd_fig2(rc);
  if (rc.command == "fig3") return cmd_fig3(rc);
  if (rc.command == "compare") return cmd_compare(rc);
  if (rc.command == "reconstruct") return cmd_reconstruct(rc);
  throw UsageError("unknown command '" + rc.command +
                   "' (expected fig1, fig2, fig3, compare or reconstruct)");
}

}  // namespace pskit::cli
