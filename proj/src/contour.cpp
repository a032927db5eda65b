#include "pskit/contour.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace pskit::contour {

namespace {

using Eigen::Vector2d;

// Edge ids: vertical edge (i,j)-(i,j+1) and horizontal edge (i,j)-(i+1,j),
// keyed so that the two cells sharing an edge agree on its id.
long edge_id(long i, long j, bool horizontal, long nx, long np) {
  return (horizontal ? 0L : nx * np) + j * nx + i;
}

struct Segment {
  long a, b;  // edge ids
};

}  // namespace

std::vector<Polyline> extract_level_set(const ScalarField& field, double level) {
  field.grid.require_valid();
  const Index nx = field.grid.nx;
  const Index np = field.grid.np;
  const MatrixXd& v = field.values;

  std::map<long, Vector2d> edge_point;
  std::vector<Segment> segments;

  auto above = [&](Index i, Index j) { return v(i, j) >= level; };

  auto crossing = [&](Index i0, Index j0, Index i1, Index j1) {
    const double va = v(i0, j0), vb = v(i1, j1);
    const double t = (level - va) / (vb - va);
    const double x = field.grid.x(i0) + t * (field.grid.x(i1) - field.grid.x(i0));
    const double p = field.grid.p(j0) + t * (field.grid.p(j1) - field.grid.p(j0));
    return Vector2d(x, p);
  };

  auto register_edge = [&](long id, Index i0, Index j0, Index i1, Index j1) {
    if (edge_point.find(id) == edge_point.end()) edge_point.emplace(id, crossing(i0, j0, i1, j1));
  };

  for (Index j = 0; j + 1 < np; ++j) {
    for (Index i = 0; i + 1 < nx; ++i) {
      const double c0 = v(i, j), c1 = v(i + 1, j), c2 = v(i + 1, j + 1), c3 = v(i, j + 1);
      if (!std::isfinite(c0) || !std::isfinite(c1) || !std::isfinite(c2) || !std::isfinite(c3))
        continue;

      int mask = 0;
      if (above(i, j)) mask |= 1;
      if (above(i + 1, j)) mask |= 2;
      if (above(i + 1, j + 1)) mask |= 4;
      if (above(i, j + 1)) mask |= 8;
      if (mask == 0 || mask == 15) continue;

      const long eB = edge_id(i, j, true, nx, np);
      const long eT = edge_id(i, j + 1, true, nx, np);
      const long eL = edge_id(i, j, false, nx, np);
      const long eR = edge_id(i + 1, j, false, nx, np);

      auto emit = [&](long ea, long eb) {
        if (ea == eB || eb == eB) register_edge(eB, i, j, i + 1, j);
        if (ea == eT || eb == eT) register_edge(eT, i, j + 1, i + 1, j + 1);
        if (ea == eL || eb == eL) register_edge(eL, i, j, i, j + 1);
        if (ea == eR || eb == eR) register_edge(eR, i + 1, j, i + 1, j + 1);
        segments.push_back({ea, eb});
      };

      switch (mask) {
        case 1: case 14: emit(eL, eB); break;
        case 2: case 13: emit(eB, eR); break;
        case 3: case 12: emit(eL, eR); break;
        case 4: case 11: emit(eT, eR); break;
        case 6: case 9:  emit(eB, eT); break;
        case 7: case 8:  emit(eL, eT); break;
        case 5: {
          const bool center_above = 0.25 * (c0 + c1 + c2 + c3) >= level;
          if (center_above) { emit(eB, eR); emit(eL, eT); }
          else              { emit(eL, eB); emit(eT, eR); }
          break;
        }
        case 10: {
          const bool center_above = 0.25 * (c0 + c1 + c2 + c3) >= level;
          if (center_above) { emit(eL, eB); emit(eT, eR); }
          else              { emit(eB, eR); emit(eL, eT); }
          break;
        }
        default: break;
      }
    }
  }

  // Chain segments into polylines. Open chains start from odd-degree edges,
  // remaining segments form cycles.
  std::map<long, std::vector<std::size_t>> incident;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    incident[segments[s].a].push_back(s);
    incident[segments[s].b].push_back(s);
  }

  std::vector<bool> used(segments.size(), false);
  std::vector<Polyline> out;

  auto walk = [&](long start_edge) {
    std::vector<long> chain{start_edge};
    long e = start_edge;
    while (true) {
      std::size_t next = segments.size();
      for (std::size_t s : incident[e])
        if (!used[s]) { next = s; break; }
      if (next == segments.size()) break;
      used[next] = true;
      e = (segments[next].a == e) ? segments[next].b : segments[next].a;
      chain.push_back(e);
    }

    Polyline poly;
    poly.closed = chain.size() > 1 && chain.front() == chain.back();
    if (poly.closed) chain.pop_back();
    for (long id : chain) {
      const Vector2d& pt = edge_point.at(id);
      if (poly.points.empty() || (poly.points.back() - pt).squaredNorm() > 0.0)
        poly.points.push_back(pt);
    }
    if (poly.closed && poly.points.size() >= 2 &&
        (poly.points.front() - poly.points.back()).squaredNorm() == 0.0)
      poly.points.pop_back();

    const bool keep = poly.closed ? (poly.points.size() >= 3 && enclosed_area(poly) > 0.0)
                                  : poly.points.size() >= 2;
    if (keep) out.push_back(std::move(poly));
  };

  for (const auto& [edge, segs] : incident)
    if (segs.size() % 2 == 1) walk(edge);
  for (std::size_t s = 0; s < segments.size(); ++s)
    if (!used[s]) walk(segments[s].a);
  return out;
}

double enclosed_area(const Polyline& poly) {
  if (!poly.closed) throw std::invalid_argument("enclosed_area: polyline is not closed");
  if (poly.points.size() < 3) throw std::invalid_argument("enclosed_area: fewer than 3 vertices");
  double acc = 0.0;
  const std::size_t n = poly.points.size();
  for (std::size_t k = 0; k < n; ++k) {
    const auto& a = poly.points[k];
    const auto& b = poly.points[(k + 1) % n];
    acc += a.x() * b.y() - b.x() * a.y();
  }
  return 0.5 * std::abs(acc);
}

namespace {

double point_segment_distance(const Vector2d& q, const Vector2d& a, const Vector2d& b) {
  const Vector2d ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (q - a).norm();
  const double t = std::clamp((q - a).dot(ab) / len2, 0.0, 1.0);
  return (q - (a + t * ab)).norm();
}

void densify_into(const Polyline& poly, double step, std::vector<Vector2d>& pts) {
  const std::size_t n = poly.points.size();
  if (n == 0) return;
  const std::size_t nseg = poly.closed ? n : n - 1;
  for (std::size_t k = 0; k < nseg; ++k) {
    const Vector2d& a = poly.points[k];
    const Vector2d& b = poly.points[(k + 1) % n];
    const double len = (b - a).norm();
    const int parts = std::max(1, int(std::ceil(len / step)));
    for (int m = 0; m < parts; ++m) pts.push_back(a + (double(m) / parts) * (b - a));
  }
  if (!poly.closed) pts.push_back(poly.points.back());
}

double directed_hausdorff(const std::vector<Vector2d>& pts, const std::vector<const Polyline*>& target) {
  double worst = 0.0;
  for (const Vector2d& q : pts) {
    double best = std::numeric_limits<double>::infinity();
    for (const Polyline* poly : target) {
      const std::size_t n = poly->points.size();
      if (n == 1) best = std::min(best, (q - poly->points[0]).norm());
      const std::size_t nseg = poly->closed ? n : n - 1;
      for (std::size_t k = 0; k < nseg; ++k)
        best = std::min(best, point_segment_distance(q, poly->points[k], poly->points[(k + 1) % n]));
    }
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

double hausdorff_distance(const std::vector<Polyline>& a, const std::vector<Polyline>& b,
                          double densify_step) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("hausdorff_distance: empty curve set");
  if (!(densify_step > 0.0))
    throw std::invalid_argument("hausdorff_distance: densify step must be positive");

  std::vector<Vector2d> pa, pb;
  std::vector<const Polyline*> ra, rb;
  for (const auto& poly : a) { densify_into(poly, densify_step, pa); ra.push_back(&poly); }
  for (const auto& poly : b) { densify_into(poly, densify_step, pb); rb.push_back(&poly); }

  return std::max(directed_hausdorff(pa, rb), directed_hausdorff(pb, ra));
}

double hausdorff_distance(const Polyline& a, const Polyline& b, double densify_step) {
  return hausdorff_distance(std::vector<Polyline>{a}, std::vector<Polyline>{b}, densify_step);
}

}  // namespace pskit::contour
