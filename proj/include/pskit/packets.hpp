#ifndef PSKIT_PACKETS_HPP
#define PSKIT_PACKETS_HPP

#include <functional>

#include "pskit/types.hpp"

namespace pskit::packets {

/// Horner evaluation of a coefficient vector in ascending powers.
/// Empty coefficients evaluate to 0.
double poly_eval(const VectorXd& coeffs, double u);

/// Coefficients of the derivative polynomial.
VectorXd poly_derivative(const VectorXd& coeffs);

/// Analytic wave packet R(x) e^{i S(x)/hbar} with
///   R(x) = C G(x) [1 + P(u)],   G(x) = (sqrt(pi) delta)^{-1/2} e^{-u^2/2},
///   S(x) = p0 x + hbar theta(u),  u = (x - x0)/delta.
/// P and theta are polynomials in the scaled coordinate u; C normalizes
/// the amplitude to unit L2 norm.
struct AnalyticPacket {
  double x0 = 0.0;
  double p0 = 0.0;
  double delta = 1.0;
  VectorXd amp_poly;    // coefficients of P, ascending; empty means P == 0
  VectorXd phase_poly;  // coefficients of theta, ascending; empty means theta == 0

  double norm_const = 1.0;  // C, fixed at construction
  double r_max = 0.0;       // max of R, used for the node threshold
};

/// Largest polynomial degree accepted for amp_poly and phase_poly.
inline constexpr int kMaxPolyDegree = 16;

/// Relative amplitude below which a point counts as a node.
inline constexpr double kNodeThreshold = 1e-12;

AnalyticPacket make_packet(double x0, double p0, double delta,
                           const VectorXd& amp_poly, const VectorXd& phase_poly);

/// Plain Gaussian, Eq-of-motion free reference packet (P == 0, theta == 0).
AnalyticPacket make_gaussian(double x0, double p0, double delta);

/// Amplitude/phase data of a wave function at one point.
/// valid is false where R falls below the node threshold; values are still
/// filled so callers can inspect the raw numbers.
struct PolarData {
  double R = 0.0;    // amplitude, >= 0 where valid
  double dR = 0.0;   // dR/dx
  double d2R = 0.0;  // d^2R/dx^2
  double dS = 0.0;   // dS/dx, momentum units
  bool valid = true;
};

/// Exact derivatives of the Gaussian-times-polynomial amplitude and the
/// polynomial phase at position x.
PolarData eval_polar(const AnalyticPacket& packet, const PhysConfig& cfg, double x);

/// Callable supplying PolarData at arbitrary position; the interface between
/// state providers (packets, quartic) and the fermi module.
using PolarEvaluator = std::function<PolarData(double)>;

PolarEvaluator polar_evaluator(const AnalyticPacket& packet, const PhysConfig& cfg);

/// Complex amplitudes on a uniform position grid.
/// dpsi/d2psi have size 0 when derivative channels were not requested.
struct SampledWavefunction {
  double x_min = 0.0;
  double dx = 0.0;
  Index n = 0;
  VectorXcd psi;
  VectorXcd dpsi;
  VectorXcd d2psi;
  bool truncated = false;  // set when the grid leaks more than 1e-8 of the norm

  double x(Index k) const { return x_min + double(k) * dx; }
  VectorXd x_coords() const { return VectorXd::LinSpaced(n, x_min, x_min + double(n - 1) * dx); }
  double norm_on_grid() const { return psi.squaredNorm() * dx; }
};

/// Evaluate the packet on a uniform grid and renormalize there. Derivative
/// channels are filled analytically when requested.
SampledWavefunction sample(const AnalyticPacket& packet, const PhysConfig& cfg,
                           double x_min, double dx, Index n, bool with_derivatives);

}  // namespace pskit::packets

#endif
