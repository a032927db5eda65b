#include "pskit/quartic.hpp"

#include <cmath>
#include <string>

namespace pskit::quartic {

int default_n_max(Complex alpha) {
  const double nbar = std::norm(alpha);
  return int(std::ceil(nbar + 10.0 * std::sqrt(nbar) + 20.0));
}

QuarticParams make_params(const PhysConfig& cfg, double lambda_hbar, Complex alpha, int n_max) {
  cfg.require_valid();
  if (lambda_hbar < 0.0)
    throw std::invalid_argument("QuarticParams: lambda_hbar must be nonnegative");
  QuarticParams p;
  p.cfg = cfg;
  p.lambda_hbar = lambda_hbar;
  p.alpha = alpha;
  p.n_max = n_max < 0 ? default_n_max(alpha) : n_max;
  coherent_coefficients(alpha, p.n_max);  // enforces the truncation invariant
  return p;
}

FockState coherent_coefficients(Complex alpha, int n_max) {
  if (n_max < 0) throw std::invalid_argument("coherent_coefficients: n_max must be >= 0");
  FockState s;
  s.coeffs.resize(n_max + 1);
  Complex c = std::exp(-0.5 * std::norm(alpha));
  s.coeffs[0] = c;
  for (int n = 0; n < n_max; ++n) {
    c *= alpha / std::sqrt(double(n + 1));
    s.coeffs[n + 1] = c;
  }
  const double tail = 1.0 - s.coeffs.squaredNorm();
  if (tail > 1e-12)
    throw std::invalid_argument(
        "coherent_coefficients: truncated tail " + std::to_string(tail) +
        " exceeds 1e-12; increase n_max (suggested " + std::to_string(default_n_max(alpha)) + ")");
  return s;
}

double eigenenergy(int n, const QuarticParams& params) {
  if (n < 0) throw std::invalid_argument("eigenenergy: n must be >= 0");
  const double dn = double(n);
  return params.cfg.hbar * params.cfg.omega * dn +
         params.cfg.hbar * params.lambda_hbar * dn * (dn - 1.0);
}

FockState evolve(const FockState& state, const QuarticParams& params, double t) {
  if (!std::isfinite(t)) throw std::invalid_argument("evolve: time must be finite");
  FockState out;
  out.coeffs.resize(state.coeffs.size());
  for (Index n = 0; n < state.coeffs.size(); ++n) {
    const double phase = -eigenenergy(int(n), params) * t / params.cfg.hbar;
    out.coeffs[n] = state.coeffs[n] * std::polar(1.0, phase);
  }
  return out;
}

double energy_expectation(const FockState& state, const QuarticParams& params) {
  double e = 0.0;
  for (Index n = 0; n < state.coeffs.size(); ++n)
    e += std::norm(state.coeffs[n]) * eigenenergy(int(n), params);
  return e;
}

HermiteBasis hermite_phi(int n_max, double u) {
  if (n_max < 0) throw std::invalid_argument("hermite_phi: n_max must be >= 0");
  HermiteBasis b;
  b.phi.resize(n_max + 1);
  b.dphi.resize(n_max + 1);
  b.d2phi.resize(n_max + 1);

  b.phi[0] = std::pow(M_PI, -0.25) * std::exp(-0.5 * u * u);
  if (n_max >= 1) b.phi[1] = std::sqrt(2.0) * u * b.phi[0];
  for (int n = 1; n < n_max; ++n)
    b.phi[n + 1] = std::sqrt(2.0 / double(n + 1)) * u * b.phi[n] -
                   std::sqrt(double(n) / double(n + 1)) * b.phi[n - 1];

  for (int n = 0; n <= n_max; ++n) {
    const double lower = n > 0 ? std::sqrt(2.0 * n) * b.phi[n - 1] : 0.0;
    b.dphi[n] = lower - u * b.phi[n];
  }
  for (int n = 0; n <= n_max; ++n) {
    const double lower = n > 0 ? std::sqrt(2.0 * n) * b.dphi[n - 1] : 0.0;
    b.d2phi[n] = lower - b.phi[n] - u * b.dphi[n];
  }
  return b;
}

namespace {

// index below which all but 1e-12 of the population lives
int effective_n(const FockState& state) {
  double acc = 0.0;
  for (Index n = 0; n < state.coeffs.size(); ++n) {
    acc += std::norm(state.coeffs[n]);
    if (acc >= 1.0 - 1e-12) return int(n);
  }
  return state.n_max();
}

}  // namespace

PointValue evaluate(const FockState& state, const QuarticParams& params, double x) {
  const double beta = std::sqrt(params.cfg.mass * params.cfg.omega / params.cfg.hbar);
  const HermiteBasis b = hermite_phi(state.n_max(), beta * x);

  Complex psi(0, 0), dpsi(0, 0), d2psi(0, 0);
  for (Index n = 0; n < state.coeffs.size(); ++n) {
    psi += state.coeffs[n] * b.phi[n];
    dpsi += state.coeffs[n] * b.dphi[n];
    d2psi += state.coeffs[n] * b.d2phi[n];
  }
  const double root_beta = std::sqrt(beta);
  return {root_beta * psi, root_beta * beta * dpsi, root_beta * beta * beta * d2psi};
}

packets::SampledWavefunction fock_to_position(const FockState& state, const QuarticParams& params,
                                              double x_min, double dx, Index n) {
  params.cfg.require_valid();
  if (n < 2) throw std::invalid_argument("fock_to_position: need at least two grid points");

  const double beta = std::sqrt(params.cfg.mass * params.cfg.omega / params.cfg.hbar);
  const int n_eff = effective_n(state);
  const double dx_required = M_PI / (beta * std::sqrt(2.0 * std::max(1, n_eff)));
  if (dx >= dx_required)
    throw std::invalid_argument("fock_to_position: grid under-resolves the state; need dx < " +
                                std::to_string(dx_required));

  packets::SampledWavefunction w;
  w.x_min = x_min;
  w.dx = dx;
  w.n = n;
  w.psi.resize(n);
  w.dpsi.resize(n);
  w.d2psi.resize(n);
  for (Index k = 0; k < n; ++k) {
    const PointValue v = evaluate(state, params, x_min + double(k) * dx);
    w.psi[k] = v.psi;
    w.dpsi[k] = v.dpsi;
    w.d2psi[k] = v.d2psi;
  }
  w.truncated = std::abs(1.0 - w.norm_on_grid()) > 1e-8;
  return w;
}

packets::PolarData polar_from_complex(Complex psi, Complex dpsi, Complex d2psi,
                                      const PhysConfig& cfg, double min_abs2) {
  const double abs2 = std::norm(psi);

  packets::PolarData pd;
  pd.R = std::sqrt(abs2);
  pd.valid = abs2 > min_abs2 && abs2 > 0.0;
  if (!(abs2 > 0.0)) {
    pd.valid = false;
    return pd;
  }

  const double rr1 = psi.real() * dpsi.real() + psi.imag() * dpsi.imag();   // R R'
  const double cross = psi.real() * dpsi.imag() - dpsi.real() * psi.imag();
  const double curvature = (std::norm(dpsi) + psi.real() * d2psi.real() +
                            psi.imag() * d2psi.imag()) / abs2 -
                           (rr1 * rr1) / (abs2 * abs2);  // R''/R

  pd.dR = rr1 / pd.R;
  pd.d2R = curvature * pd.R;
  pd.dS = cfg.hbar * cross / abs2;
  return pd;
}

packets::PolarEvaluator polar_evaluator(const FockState& state, const QuarticParams& params) {
  const double beta = std::sqrt(params.cfg.mass * params.cfg.omega / params.cfg.hbar);
  const double reach = (std::sqrt(2.0 * state.n_max() + 1.0) + 2.0) / beta + std::abs(params.alpha);

  double max_abs2 = 0.0;
  const Index n_scan = 4001;
  for (Index k = 0; k < n_scan; ++k) {
    const double x = -reach + 2.0 * reach * double(k) / double(n_scan - 1);
    max_abs2 = std::max(max_abs2, std::norm(evaluate(state, params, x).psi));
  }
  const double floor = packets::kNodeThreshold * packets::kNodeThreshold * max_abs2;

  return [state, params, floor](double x) {
    const PointValue v = evaluate(state, params, x);
    return polar_from_complex(v.psi, v.dpsi, v.d2psi, params.cfg, floor);
  };
}

}  // namespace pskit::quartic
