#include "pskit/grid.hpp"

#include <cmath>
#include <limits>

namespace pskit {

void PhaseSpaceGrid::require_valid() const {
  if (!(x_max > x_min) || !(p_max > p_min))
    throw std::invalid_argument("PhaseSpaceGrid: range must be non-degenerate");
  if (nx < 2 || np < 2)
    throw std::invalid_argument("PhaseSpaceGrid: nx and np must be at least 2");
}

double ScalarField::max_value() const {
  double m = -std::numeric_limits<double>::infinity();
  for (Index j = 0; j < values.cols(); ++j)
    for (Index i = 0; i < values.rows(); ++i) {
      const double v = values(i, j);
      if (std::isfinite(v) && v > m) m = v;
    }
  return m;
}

double ScalarField::min_value() const {
  double m = std::numeric_limits<double>::infinity();
  for (Index j = 0; j < values.cols(); ++j)
    for (Index i = 0; i < values.rows(); ++i) {
      const double v = values(i, j);
      if (std::isfinite(v) && v < m) m = v;
    }
  return m;
}

double bilinear(const ScalarField& field, double x, double p) {
  const PhaseSpaceGrid& g = field.grid;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (!(x >= g.x_min && x <= g.x_max && p >= g.p_min && p <= g.p_max)) return nan;

  const double fx = (x - g.x_min) / g.dx();
  const double fp = (p - g.p_min) / g.dp();
  Index i = std::min(Index(fx), g.nx - 2);
  Index j = std::min(Index(fp), g.np - 2);
  const double tx = fx - double(i);
  const double tp = fp - double(j);

  const double v00 = field.values(i, j);
  const double v10 = field.values(i + 1, j);
  const double v01 = field.values(i, j + 1);
  const double v11 = field.values(i + 1, j + 1);
  if (!std::isfinite(v00) || !std::isfinite(v10) || !std::isfinite(v01) || !std::isfinite(v11))
    return nan;

  return (1.0 - tx) * ((1.0 - tp) * v00 + tp * v01) + tx * ((1.0 - tp) * v10 + tp * v11);
}

}  // namespace pskit
