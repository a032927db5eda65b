#ifndef PSKIT_CONTOUR_HPP
#define PSKIT_CONTOUR_HPP

#include <vector>

#include "pskit/grid.hpp"

namespace pskit::contour {

/// Ordered (x, p) vertices. Closed polylines do not repeat the first vertex.
struct Polyline {
  std::vector<Eigen::Vector2d> points;
  bool closed = false;
};

/// Marching-squares level set with linear edge interpolation. Saddle cells
/// are resolved by the cell-center average. Cells touching masked (NaN)
/// samples are excluded. A level outside the field range yields an empty
/// list.
std::vector<Polyline> extract_level_set(const ScalarField& field, double level);

/// Absolute shoelace area of a closed, non-self-intersecting polyline.
double enclosed_area(const Polyline& poly);

/// Symmetric Hausdorff distance between two curves. Each polyline is
/// densified with the given step before measuring point-to-segment
/// distances, so the result is accurate to about one step.
double hausdorff_distance(const Polyline& a, const Polyline& b, double densify_step);

/// Hausdorff distance between unions of curves.
double hausdorff_distance(const std::vector<Polyline>& a, const std::vector<Polyline>& b,
                          double densify_step);

}  // namespace pskit::contour

#endif
