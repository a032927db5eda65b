#ifndef PSKIT_QUARTIC_HPP
#define PSKIT_QUARTIC_HPP

#include "pskit/packets.hpp"
#include "pskit/types.hpp"

namespace pskit::quartic {

/// Kerr-type oscillator H = hbar omega a^dag a + hbar^2 lambda (a^dag)^2 a^2
/// acting on a coherent state truncated at n_max.
struct QuarticParams {
  PhysConfig cfg;
  double lambda_hbar = 0.01;  // the product hbar*lambda, an energy
  Complex alpha = Complex(0.0, 0.0);
  int n_max = 0;
};

/// Truncation large enough for a 1e-12 Poisson tail.
int default_n_max(Complex alpha);

/// Validates positivity and the truncation invariant.
QuarticParams make_params(const PhysConfig& cfg, double lambda_hbar, Complex alpha,
                          int n_max = -1);

/// Coefficient vector in the harmonic eigenbasis, unit norm.
struct FockState {
  VectorXcd coeffs;
  int n_max() const { return int(coeffs.size()) - 1; }
};

/// c_n = e^{-|alpha|^2/2} alpha^n / sqrt(n!) by the stable recurrence.
/// Throws when the discarded tail exceeds 1e-12.
FockState coherent_coefficients(Complex alpha, int n_max);

/// E_n = hbar omega n + hbar (hbar lambda) n (n-1).
double eigenenergy(int n, const QuarticParams& params);

/// Phase evolution c_n -> c_n e^{-i E_n t / hbar}; exactly norm-preserving.
FockState evolve(const FockState& state, const QuarticParams& params, double t);

/// sum |c_n|^2 E_n, conserved under evolve.
double energy_expectation(const FockState& state, const QuarticParams& params);

/// Normalized oscillator eigenfunctions and derivatives in the scaled
/// coordinate, phi_0(u) = pi^{-1/4} e^{-u^2/2}, by the overflow-free
/// three-term recurrence. Derivatives use phi_n' = sqrt(2n) phi_{n-1} - u phi_n.
struct HermiteBasis {
  VectorXd phi;    // phi_0 .. phi_{n_max}
  VectorXd dphi;   // d/du
  VectorXd d2phi;  // d^2/du^2
};

HermiteBasis hermite_phi(int n_max, double u);

/// Position representation of a Fock state with analytic first and second
/// derivative channels. Throws when dx cannot resolve the highest occupied
/// eigenfunction.
packets::SampledWavefunction fock_to_position(const FockState& state, const QuarticParams& params,
                                              double x_min, double dx, Index n);

/// Amplitude/phase derivatives from psi, psi', psi'' at one point.
/// min_abs2 is the |psi|^2 node floor below which the result is masked.
packets::PolarData polar_from_complex(Complex psi, Complex dpsi, Complex d2psi,
                                      const PhysConfig& cfg, double min_abs2);

/// Pointwise psi, psi', psi'' of a Fock state at arbitrary position.
struct PointValue {
  Complex psi, dpsi, d2psi;
};
PointValue evaluate(const FockState& state, const QuarticParams& params, double x);

/// PolarEvaluator over the state, with the node floor taken relative to the
/// amplitude maximum.
packets::PolarEvaluator polar_evaluator(const FockState& state, const QuarticParams& params);

}  // namespace pskit::quartic

#endif
