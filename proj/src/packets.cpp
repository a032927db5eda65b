#include "pskit/packets.hpp"

#include <cmath>

namespace pskit::packets {

double poly_eval(const VectorXd& coeffs, double u) {
  double acc = 0.0;
  for (Index k = coeffs.size() - 1; k >= 0; --k) acc = acc * u + coeffs[k];
  return acc;
}

VectorXd poly_derivative(const VectorXd& coeffs) {
  if (coeffs.size() <= 1) return VectorXd();
  VectorXd d(coeffs.size() - 1);
  for (Index k = 1; k < coeffs.size(); ++k) d[k - 1] = double(k) * coeffs[k];
  return d;
}

namespace {

// Square of 1 + P, ascending coefficients.
VectorXd one_plus_p_squared(const VectorXd& p) {
  VectorXd a = VectorXd::Zero(p.size() == 0 ? 1 : p.size());
  a[0] = 1.0;
  for (Index k = 0; k < p.size(); ++k) a[k] += p[k];
  VectorXd q = VectorXd::Zero(2 * a.size() - 1);
  for (Index i = 0; i < a.size(); ++i)
    for (Index j = 0; j < a.size(); ++j) q[i + j] += a[i] * a[j];
  return q;
}

// integral of pi^{-1/2} e^{-u^2} u^k du over the real line
double gaussian_moment(Index k) {
  if (k % 2 == 1) return 0.0;
  double m = 1.0;
  for (Index j = 1; 2 * j <= k; ++j) m *= double(2 * j - 1) / 2.0;
  return m;
}

}  // namespace

AnalyticPacket make_packet(double x0, double p0, double delta,
                           const VectorXd& amp_poly, const VectorXd& phase_poly) {
  if (!(delta > 0.0))
    throw std::invalid_argument("AnalyticPacket: delta must be strictly positive");
  if (amp_poly.size() > kMaxPolyDegree + 1 || phase_poly.size() > kMaxPolyDegree + 1)
    throw std::invalid_argument("AnalyticPacket: polynomial degree above 16 is not supported");

  AnalyticPacket pk;
  pk.x0 = x0;
  pk.p0 = p0;
  pk.delta = delta;
  pk.amp_poly = amp_poly;
  pk.phase_poly = phase_poly;

  // 1 + P must stay nonnegative; checked on a wide sample grid in u.
  double env_scale = 1.0;
  {
    const Index n_check = 8001;
    for (Index k = 0; k < n_check; ++k) {
      const double u = -20.0 + 40.0 * double(k) / double(n_check - 1);
      const double a = 1.0 + poly_eval(amp_poly, u);
      env_scale = std::max(env_scale, std::abs(a));
      if (a < -1e-12 * env_scale)
        throw std::invalid_argument("AnalyticPacket: 1 + P(u) is negative at u = " + std::to_string(u));
    }
  }

  // L2 normalization. The integral of G^2 (1+P)^2 reduces to Gaussian
  // moments of the squared polynomial, so C is exact.
  const VectorXd q = one_plus_p_squared(amp_poly);
  double norm2 = 0.0;
  for (Index k = 0; k < q.size(); ++k) norm2 += q[k] * gaussian_moment(k);
  if (!(norm2 > 0.0))
    throw std::invalid_argument("AnalyticPacket: amplitude has zero L2 norm");
  pk.norm_const = 1.0 / std::sqrt(norm2);

  // Cache max R for the node threshold.
  const double gauss_norm = 1.0 / std::sqrt(std::sqrt(M_PI) * delta);
  double rmax = 0.0;
  const Index n_scan = 9601;
  for (Index k = 0; k < n_scan; ++k) {
    const double u = -12.0 + 24.0 * double(k) / double(n_scan - 1);
    const double r = pk.norm_const * gauss_norm * std::exp(-0.5 * u * u) *
                     (1.0 + poly_eval(amp_poly, u));
    rmax = std::max(rmax, r);
  }
  pk.r_max = rmax;
  return pk;
}

AnalyticPacket make_gaussian(double x0, double p0, double delta) {
  return make_packet(x0, p0, delta, VectorXd(), VectorXd());
}

PolarData eval_polar(const AnalyticPacket& packet, const PhysConfig& cfg, double x) {
  cfg.require_valid();
  const double delta = packet.delta;
  const double u = (x - packet.x0) / delta;

  const double gauss_norm = 1.0 / std::sqrt(std::sqrt(M_PI) * delta);
  const double g = gauss_norm * std::exp(-0.5 * u * u);

  const double a = 1.0 + poly_eval(packet.amp_poly, u);
  const VectorXd dp = poly_derivative(packet.amp_poly);
  const VectorXd d2p = poly_derivative(dp);
  const double ap = poly_eval(dp, u);    // dP/du
  const double app = poly_eval(d2p, u);  // d2P/du2

  const double cg = packet.norm_const * g;

  PolarData out;
  out.R = cg * a;
  out.dR = cg / delta * (ap - u * a);
  out.d2R = cg / (delta * delta) * ((u * u - 1.0) * a - 2.0 * u * ap + app);
  out.dS = packet.p0 +
           cfg.hbar / delta * poly_eval(poly_derivative(packet.phase_poly), u);
  out.valid = out.R >= kNodeThreshold * packet.r_max;
  return out;
}

PolarEvaluator polar_evaluator(const AnalyticPacket& packet, const PhysConfig& cfg) {
  return [packet, cfg](double x) { return eval_polar(packet, cfg, x); };
}

SampledWavefunction sample(const AnalyticPacket& packet, const PhysConfig& cfg,
                           double x_min, double dx, Index n, bool with_derivatives) {
  cfg.require_valid();
  if (n < 2) throw std::invalid_argument("sample: need at least two grid points");
  if (!(dx > 0.0)) throw std::invalid_argument("sample: dx must be positive");

  SampledWavefunction w;
  w.x_min = x_min;
  w.dx = dx;
  w.n = n;
  w.psi.resize(n);
  if (with_derivatives) {
    w.dpsi.resize(n);
    w.d2psi.resize(n);
  }

  const double hbar = cfg.hbar;
  const VectorXd dtheta = poly_derivative(packet.phase_poly);
  const VectorXd d2theta = poly_derivative(dtheta);

  for (Index k = 0; k < n; ++k) {
    const double x = x_min + double(k) * dx;
    const PolarData pd = eval_polar(packet, cfg, x);
    const double u = (x - packet.x0) / packet.delta;
    const double phase = packet.p0 * x / hbar + poly_eval(packet.phase_poly, u);
    const Complex e = std::polar(1.0, phase);
    w.psi[k] = pd.R * e;
    if (with_derivatives) {
      const double sp = pd.dS;                                                  // S'
      const double spp = hbar / (packet.delta * packet.delta) * poly_eval(d2theta, u);  // S''
      w.dpsi[k] = (pd.dR + Complex(0, 1) * pd.R * sp / hbar) * e;
      w.d2psi[k] = (pd.d2R + Complex(0, 2) * pd.dR * sp / hbar +
                    Complex(0, 1) * pd.R * spp / hbar - pd.R * sp * sp / (hbar * hbar)) * e;
    }
  }

  const double norm = w.norm_on_grid();
  w.truncated = std::abs(1.0 - norm) > 1e-8;
  const double scale = 1.0 / std::sqrt(norm);
  w.psi *= scale;
  if (with_derivatives) {
    w.dpsi *= scale;
    w.d2psi *= scale;
  }
  return w;
}

}  // namespace pskit::packets
