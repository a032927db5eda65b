#include "pskit/fermi.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace pskit::fermi {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

ScalarField fermi_field(const packets::PolarEvaluator& eval, const PhaseSpaceGrid& grid,
                        const PhysConfig& cfg) {
  cfg.require_valid();
  grid.require_valid();

  ScalarField f = ScalarField::zero(grid);
  const double h2 = cfg.hbar * cfg.hbar;
  for (Index i = 0; i < grid.nx; ++i) {
    const packets::PolarData pd = eval(grid.x(i));
    if (!pd.valid) {
      f.values.row(i).setConstant(kNaN);
      continue;
    }
    const double quantum = h2 * pd.d2R / pd.R;
    for (Index j = 0; j < grid.np; ++j) {
      const double dp = grid.p(j) - pd.dS;
      f.values(i, j) = dp * dp + quantum;
    }
  }
  return f;
}

FermiCurve fermi_branches(const packets::PolarEvaluator& eval, const VectorXd& xs,
                          const PhysConfig& cfg) {
  cfg.require_valid();
  const Index n = xs.size();

  FermiCurve curve;
  curve.x = xs;
  curve.p_plus.resize(n);
  curve.p_minus.resize(n);
  curve.real_branch = ArrayXb::Constant(n, false);
  curve.masked = ArrayXb::Constant(n, false);

  const double h2 = cfg.hbar * cfg.hbar;
  for (Index i = 0; i < n; ++i) {
    const packets::PolarData pd = eval(xs[i]);
    if (!pd.valid) {
      curve.masked[i] = true;
      curve.p_plus[i] = Complex(kNaN, kNaN);
      curve.p_minus[i] = Complex(kNaN, kNaN);
      continue;
    }
    const double disc = -h2 * pd.d2R / pd.R;  // (p - S')^2 on the zero set
    if (disc >= 0.0) {
      const double root = std::sqrt(disc);
      curve.real_branch[i] = true;
      curve.p_plus[i] = Complex(pd.dS + root, 0.0);
      curve.p_minus[i] = Complex(pd.dS - root, 0.0);
    } else {
      const double root = std::sqrt(-disc);
      curve.p_plus[i] = Complex(pd.dS, root);
      curve.p_minus[i] = Complex(pd.dS, -root);
    }
  }
  return curve;
}

std::vector<contour::Polyline> branch_closure(const FermiCurve& curve) {
  std::vector<contour::Polyline> out;
  const Index n = curve.size();

  Index i = 0;
  while (i < n) {
    if (!curve.real_branch[i] || curve.masked[i]) { ++i; continue; }
    Index j = i;
    while (j + 1 < n && curve.real_branch[j + 1] && !curve.masked[j + 1]) ++j;

    if (j - i + 1 >= 3) {
      contour::Polyline poly;
      poly.closed = true;
      for (Index k = i; k <= j; ++k)
        poly.points.emplace_back(curve.x[k], curve.p_plus[k].real());
      for (Index k = j; k >= i; --k) {
        Eigen::Vector2d pt(curve.x[k], curve.p_minus[k].real());
        if ((poly.points.back() - pt).squaredNorm() > 0.0) poly.points.push_back(pt);
      }
      if ((poly.points.front() - poly.points.back()).squaredNorm() == 0.0)
        poly.points.pop_back();
      if (poly.points.size() >= 3 && contour::enclosed_area(poly) > 0.0)
        out.push_back(std::move(poly));
    }
    i = j + 1;
  }
  return out;
}

PolarReconstruction reconstruct_polar(const FermiCurve& curve, const PhysConfig& cfg) {
  cfg.require_valid();
  const Index n = curve.size();

  PolarReconstruction rec;
  rec.sprime.resize(n);
  rec.rpp_over_r.resize(n);
  rec.masked = curve.masked;

  const double h2 = cfg.hbar * cfg.hbar;
  for (Index i = 0; i < n; ++i) {
    if (curve.masked[i]) {
      rec.sprime[i] = kNaN;
      rec.rpp_over_r[i] = kNaN;
      continue;
    }
    const Complex mean = 0.5 * (curve.p_plus[i] + curve.p_minus[i]);
    const Complex half = 0.5 * (curve.p_plus[i] - curve.p_minus[i]);
    const Complex quantum = -half * half / h2;
    rec.sprime[i] = mean.real();
    rec.rpp_over_r[i] = quantum.real();
    rec.max_imag_residue = std::max({rec.max_imag_residue, std::abs(mean.imag()), std::abs(quantum.imag())});
  }
  return rec;
}

namespace {

// Cumulative integral on a uniform grid, cubic (fourth order) rule, exact
// for polynomials up to degree 3. The anchor index gets value 0.
VectorXd cumulative_integral(const VectorXd& f, double h, Index anchor) {
  const Index n = f.size();
  VectorXd steps(n);  // steps[k] = integral over [x_{k-1}, x_k], steps[0] unused
  steps[0] = 0.0;
  for (Index k = 1; k < n; ++k) {
    double s;
    if (n < 4) {
      s = 0.5 * (f[k - 1] + f[k]);
    } else if (k == 1) {
      s = (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]) / 24.0;
    } else if (k == n - 1) {
      s = (9.0 * f[n - 1] + 19.0 * f[n - 2] - 5.0 * f[n - 3] + f[n - 4]) / 24.0;
    } else {
      s = (-f[k - 2] + 13.0 * f[k - 1] + 13.0 * f[k] - f[k + 1]) / 24.0;
    }
    steps[k] = h * s;
  }
  VectorXd out(n);
  out[anchor] = 0.0;
  for (Index k = anchor + 1; k < n; ++k) out[k] = out[k - 1] + steps[k];
  for (Index k = anchor - 1; k >= 0; --k) out[k] = out[k + 1] - steps[k + 1];
  return out;
}

// Numerov march of R'' = q R from one end towards the anchor (inclusive).
// Marching inward amplifies the solution that decays at that end, so the
// arbitrary start values wash out after a few steps.
VectorXd numerov_inward(const VectorXd& q, double h, Index anchor, bool from_right) {
  const Index n = q.size();
  VectorXd y = VectorXd::Zero(n);
  const double c = h * h / 12.0;
  auto w = [&](Index i) { return 1.0 - c * q[i]; };

  auto rescale_if_needed = [&](double v, Index lo, Index hi) {
    if (std::abs(v) > 1e200) {
      for (Index k = lo; k <= hi; ++k) y[k] /= 1e200;
      return true;
    }
    return false;
  };

  if (from_right) {
    y[n - 1] = 0.0;
    y[n - 2] = 1e-30;
    for (Index i = n - 2; i > anchor; --i) {
      y[i - 1] = (2.0 * (1.0 + 5.0 * c * q[i]) * y[i] - w(i + 1) * y[i + 1]) / w(i - 1);
      rescale_if_needed(y[i - 1], i - 1, n - 1);
    }
  } else {
    y[0] = 0.0;
    y[1] = 1e-30;
    for (Index i = 1; i < anchor; ++i) {
      y[i + 1] = (2.0 * (1.0 + 5.0 * c * q[i]) * y[i] - w(i - 1) * y[i - 1]) / w(i + 1);
      rescale_if_needed(y[i + 1], 0, i + 1);
    }
  }
  return y;
}

}  // namespace

packets::SampledWavefunction reconstruct_wavefunction(
    const VectorXd& x, const VectorXd& sprime, const VectorXd& rpp_over_r,
    const PhysConfig& cfg, const std::optional<ReconstructionAnchor>& anchor) {
  cfg.require_valid();
  const Index n = x.size();
  if (n < 8) throw std::invalid_argument("reconstruct_wavefunction: too few samples");
  if (sprime.size() != n || rpp_over_r.size() != n)
    throw std::invalid_argument("reconstruct_wavefunction: sample size mismatch");

  const double h = x[1] - x[0];
  if (!(h > 0.0)) throw std::invalid_argument("reconstruct_wavefunction: x must be increasing");
  for (Index k = 1; k < n; ++k)
    if (std::abs((x[k] - x[k - 1]) - h) > 1e-9 * h)
      throw std::invalid_argument("reconstruct_wavefunction: x grid must be uniform");

  // Nodes make R''/R undefined; reconstruction is only claimed on node-free
  // intervals, so report the masked range instead of integrating across it.
  {
    Index bad_lo = -1, bad_hi = -1;
    for (Index k = 0; k < n; ++k)
      if (!std::isfinite(sprime[k]) || !std::isfinite(rpp_over_r[k])) {
        if (bad_lo < 0) bad_lo = k;
        bad_hi = k;
      }
    if (bad_lo >= 0)
      throw std::invalid_argument(
          "reconstruct_wavefunction: masked interval [" + std::to_string(x[bad_lo]) + ", " +
          std::to_string(x[bad_hi]) + "] inside the reconstruction domain");
  }

  ReconstructionAnchor a;
  if (anchor) {
    a = *anchor;
    if (!(a.x_a >= x[0] && a.x_a <= x[n - 1]))
      throw std::invalid_argument("reconstruct_wavefunction: anchor outside the sample interval");
    if (!(a.R_a > 0.0))
      throw std::invalid_argument("reconstruct_wavefunction: anchor amplitude must be positive");
  } else {
    Index imin;
    rpp_over_r.minCoeff(&imin);
    a.x_a = x[imin];
  }
  Index ia = Index(std::lround((a.x_a - x[0]) / h));
  ia = std::min(std::max(ia, Index(1)), n - 2);

  const VectorXd right = numerov_inward(rpp_over_r, h, ia, true);
  const VectorXd left = numerov_inward(rpp_over_r, h, ia, false);
  if (!(std::abs(right[ia]) > 0.0) || !(std::abs(left[ia]) > 0.0))
    throw std::runtime_error("reconstruct_wavefunction: amplitude march degenerated");

  VectorXd r(n);
  const double sr = a.R_a / right[ia];
  const double sl = a.R_a / left[ia];
  for (Index k = 0; k <= ia; ++k) r[k] = sl * left[k];
  for (Index k = ia; k < n; ++k) r[k] = sr * right[k];

  const VectorXd s = cumulative_integral(sprime, h, ia).array() + a.S_a;

  packets::SampledWavefunction w;
  w.x_min = x[0];
  w.dx = h;
  w.n = n;
  w.psi.resize(n);
  for (Index k = 0; k < n; ++k) w.psi[k] = r[k] * std::polar(1.0, s[k] / cfg.hbar);

  const double norm = w.norm_on_grid();
  if (!(norm > 0.0)) throw std::runtime_error("reconstruct_wavefunction: zero norm");
  w.psi /= std::sqrt(norm);
  return w;
}

}  // namespace pskit::fermi
