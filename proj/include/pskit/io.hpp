#ifndef PSKIT_IO_HPP
#define PSKIT_IO_HPP

#include <string>
#include <utility>
#include <vector>

#include "pskit/contour.hpp"
#include "pskit/fermi.hpp"
#include "pskit/grid.hpp"
#include "pskit/packets.hpp"

namespace pskit::io {

enum class FieldFormat { matrix, long_form };

/// Affine map from physical coordinates to the scaled figure coordinates,
/// u = (x - x_center)/x_unit and v = (p - p_center)/p_unit.
struct ScaledFrame {
  double x_center = 0.0;
  double x_unit = 1.0;
  double p_center = 0.0;
  double p_unit = 1.0;

  double sx(double x) const { return (x - x_center) / x_unit; }
  double sp(double p) const { return (p - p_center) / p_unit; }
};

contour::Polyline to_scaled(const contour::Polyline& poly, const ScaledFrame& frame);
std::vector<contour::Polyline> to_scaled(const std::vector<contour::Polyline>& polys,
                                         const ScaledFrame& frame);

/// Exact, locale-independent formatting used by every writer; masked values
/// serialize as the literal token "nan".
std::string format_double(double v);

/// Create the directory if needed and verify it is writable.
void ensure_writable_dir(const std::string& dir);

/// Field in scaled coordinates. "matrix" emits header lines and np rows of
/// nx values; "long" emits x p value triples.
void write_field(const std::string& path, const ScalarField& field, FieldFormat format,
                 const ScaledFrame& frame);

/// Polylines in scaled coordinates, one x<TAB>p pair per line, blank line
/// between polylines, headers carrying the level and closure flag.
void write_polylines(const std::string& path, const std::vector<contour::Polyline>& polys,
                     double level, const ScaledFrame& frame);

/// Branch curve with complex momenta, physical coordinates.
void write_branches(const std::string& path, const fermi::FermiCurve& curve);
fermi::FermiCurve read_branches(const std::string& path);

void write_metrics(const std::string& path, const std::vector<std::pair<std::string, double>>& kv);

/// Complex wave function as x re im rows, physical coordinates.
void write_wavefunction(const std::string& path, const packets::SampledWavefunction& psi);

}  // namespace pskit::io

#endif
