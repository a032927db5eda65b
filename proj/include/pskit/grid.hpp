#ifndef PSKIT_GRID_HPP
#define PSKIT_GRID_HPP

#include "pskit/types.hpp"

namespace pskit {

/// Rectangular (x, p) domain with uniform node spacing, endpoints included.
struct PhaseSpaceGrid {
  double x_min = 0.0, x_max = 0.0;
  double p_min = 0.0, p_max = 0.0;
  Index nx = 0, np = 0;

  double dx() const { return (x_max - x_min) / double(nx - 1); }
  double dp() const { return (p_max - p_min) / double(np - 1); }
  double x(Index i) const { return x_min + double(i) * dx(); }
  double p(Index j) const { return p_min + double(j) * dp(); }
  VectorXd x_coords() const { return VectorXd::LinSpaced(nx, x_min, x_max); }
  VectorXd p_coords() const { return VectorXd::LinSpaced(np, p_min, p_max); }

  void require_valid() const;
};

/// Real-valued function sampled on a PhaseSpaceGrid. values(ix, ip) is the
/// sample at (x(ix), p(ip)). Masked cells (nodes of the underlying state)
/// are stored as quiet NaN; every unmasked value is finite.
struct ScalarField {
  PhaseSpaceGrid grid;
  MatrixXd values;

  static ScalarField zero(const PhaseSpaceGrid& g) {
    g.require_valid();
    return ScalarField{g, MatrixXd::Zero(g.nx, g.np)};
  }

  /// Extrema over unmasked samples.
  double max_value() const;
  double min_value() const;
  bool has_masked() const { return values.hasNaN(); }
};

/// Bilinear interpolation of a field at (x, p). Returns NaN outside the grid
/// or when any corner of the containing cell is masked.
double bilinear(const ScalarField& field, double x, double p);

}  // namespace pskit

#endif
