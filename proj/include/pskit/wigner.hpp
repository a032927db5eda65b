#ifndef PSKIT_WIGNER_HPP
#define PSKIT_WIGNER_HPP

#include "pskit/grid.hpp"
#include "pskit/packets.hpp"

namespace pskit::wigner {

struct TransformResult {
  ScalarField field;
  double max_imag_residue = 0.0;  // largest |Im| discarded when taking the real part
};

/// Wigner distribution of a sampled wave function.
///
/// For every grid column x the kernel psi(x + y/2) psi*(x - y/2) is formed
/// from the band-limited (trigonometric) interpolant of psi, with the y
/// step equal to the sampling step of psi, and Fourier-transformed over y
/// by exact phase summation at the requested p values. The momentum window
/// must stay below the Nyquist limit pi*hbar/dx of the y sampling.
TransformResult wigner_transform(const packets::SampledWavefunction& psi,
                                 const PhaseSpaceGrid& grid, const PhysConfig& cfg);

/// Closed-form Wigner function of the Gaussian packet:
/// (1/pi hbar) exp(-(x-x0)^2/delta^2 - delta^2 (p-p0)^2/hbar^2).
ScalarField wigner_gaussian_closed(double x0, double p0, double delta,
                                   const PhysConfig& cfg, const PhaseSpaceGrid& grid);

/// Shift-theorem approximation for packets with Gaussian amplitude:
/// the p0-free Gaussian Wigner function evaluated at (x, p - S'(x)).
/// Requires an empty amp_poly.
ScalarField wigner_shift_approx(const packets::AnalyticPacket& packet,
                                const PhysConfig& cfg, const PhaseSpaceGrid& grid);

/// Trapezoidal marginal over p, one value per grid x.
VectorXd marginal_position(const ScalarField& field);

/// Trapezoidal marginal over x, one value per grid p.
VectorXd marginal_momentum(const ScalarField& field);

/// Trapezoidal integral over the whole grid.
double total_integral(const ScalarField& field);

}  // namespace pskit::wigner

#endif
