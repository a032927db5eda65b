#ifndef PSKIT_FERMI_HPP
#define PSKIT_FERMI_HPP

#include <optional>
#include <vector>

#include "pskit/contour.hpp"
#include "pskit/grid.hpp"
#include "pskit/packets.hpp"

namespace pskit::fermi {

/// Zero-curve branches p+-(x) = S'(x) +- sqrt(-hbar^2 R''/R).
/// Where R'' < 0 the pair is real with p_plus >= p_minus; where R'' > 0 it
/// is a complex-conjugate pair with p_plus carrying the +i root. Samples at
/// amplitude nodes are masked.
struct FermiCurve {
  VectorXd x;
  VectorXcd p_plus;
  VectorXcd p_minus;
  ArrayXb real_branch;  // true iff R'' < 0 (or == 0) away from nodes
  ArrayXb masked;       // true at nodes

  Index size() const { return x.size(); }
};

/// g_F(x,p) = [p - S'(x)]^2 + hbar^2 R''(x)/R(x) on the grid.
/// Node columns are masked (NaN).
ScalarField fermi_field(const packets::PolarEvaluator& eval, const PhaseSpaceGrid& grid,
                        const PhysConfig& cfg);

/// Branch values at the given positions.
FermiCurve fermi_branches(const packets::PolarEvaluator& eval, const VectorXd& xs,
                          const PhysConfig& cfg);

/// One closed polyline per connected run of at least 3 real-branch samples:
/// p_plus left to right, then p_minus back. States without real branches
/// yield an empty list.
std::vector<contour::Polyline> branch_closure(const FermiCurve& curve);

struct PolarReconstruction {
  VectorXd sprime;             // (p_plus + p_minus)/2, NaN where masked
  VectorXd rpp_over_r;         // -((p_plus - p_minus)/2)^2 / hbar^2, NaN where masked
  ArrayXb masked;
  double max_imag_residue = 0.0;  // largest |Im| dropped from either quantity
};

/// Invert the branch formulas back to S' and R''/R.
PolarReconstruction reconstruct_polar(const FermiCurve& curve, const PhysConfig& cfg);

struct ReconstructionAnchor {
  double x_a = 0.0;
  double R_a = 1.0;
  double S_a = 0.0;
};

/// Rebuild the wave function from S' and R''/R sampled on a uniform,
/// node-free grid. R solves R'' = (R''/R) R by Numerov marches from both
/// interval ends inward (which picks the solution decaying at both ends),
/// S accumulates from the anchor, and the result is L2-normalized with
/// S(x_a) = S_a. Without an anchor the minimum of R''/R is used.
packets::SampledWavefunction reconstruct_wavefunction(
    const VectorXd& x, const VectorXd& sprime, const VectorXd& rpp_over_r,
    const PhysConfig& cfg, const std::optional<ReconstructionAnchor>& anchor = std::nullopt);

}  // namespace pskit::fermi

#endif
