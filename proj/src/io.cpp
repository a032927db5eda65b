#include "pskit/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pskit::io {

namespace fs = std::filesystem;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

contour::Polyline to_scaled(const contour::Polyline& poly, const ScaledFrame& frame) {
  contour::Polyline out;
  out.closed = poly.closed;
  out.points.reserve(poly.points.size());
  for (const auto& q : poly.points) out.points.emplace_back(frame.sx(q.x()), frame.sp(q.y()));
  return out;
}

std::vector<contour::Polyline> to_scaled(const std::vector<contour::Polyline>& polys,
                                         const ScaledFrame& frame) {
  std::vector<contour::Polyline> out;
  out.reserve(polys.size());
  for (const auto& poly : polys) out.push_back(to_scaled(poly, frame));
  return out;
}

void ensure_writable_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + dir + "': " + ec.message());
  const fs::path probe = fs::path(dir) / ".pskit_write_probe";
  {
    std::ofstream out(probe);
    if (!out) throw std::runtime_error("output directory '" + dir + "' is not writable");
  }
  fs::remove(probe, ec);
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  return out;
}

}  // namespace

void write_field(const std::string& path, const ScalarField& field, FieldFormat format,
                 const ScaledFrame& frame) {
  const PhaseSpaceGrid& g = field.grid;
  std::ofstream out = open_out(path);
  out << "# nx " << g.nx << "\n# np " << g.np << "\n";
  out << "# x_range " << format_double(frame.sx(g.x_min)) << " " << format_double(frame.sx(g.x_max))
      << "\n";
  out << "# p_range " << format_double(frame.sp(g.p_min)) << " " << format_double(frame.sp(g.p_max))
      << "\n";
  if (format == FieldFormat::matrix) {
    out << "# rows are momentum samples (low to high), columns position samples\n";
    for (Index j = 0; j < g.np; ++j) {
      for (Index i = 0; i < g.nx; ++i) {
        if (i > 0) out << " ";
        out << format_double(field.values(i, j));
      }
      out << "\n";
    }
  } else {
    out << "# columns: x p value\n";
    for (Index i = 0; i < g.nx; ++i) {
      for (Index j = 0; j < g.np; ++j) {
        out << format_double(frame.sx(g.x(i))) << " " << format_double(frame.sp(g.p(j))) << " "
            << format_double(field.values(i, j)) << "\n";
      }
      out << "\n";
    }
  }
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

void write_polylines(const std::string& path, const std::vector<contour::Polyline>& polys,
                     double level, const ScaledFrame& frame) {
  std::ofstream out = open_out(path);
  out << "# level " << format_double(level) << "\n";
  out << "# polylines " << polys.size() << "\n";
  for (const auto& raw : polys) {
    const contour::Polyline poly = to_scaled(raw, frame);
    out << "# closed " << (poly.closed ? 1 : 0) << " points " << poly.points.size() << "\n";
    for (const auto& q : poly.points)
      out << format_double(q.x()) << "\t" << format_double(q.y()) << "\n";
    out << "\n";
  }
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

void write_branches(const std::string& path, const fermi::FermiCurve& curve) {
  std::ofstream out = open_out(path);
  out << "# columns: x p_plus_re p_plus_im p_minus_re p_minus_im flag\n";
  out << "# flag: 0 masked, 1 real branch, 2 complex branch\n";
  const Index n = curve.x.size();
  for (Index i = 0; i < n; ++i) {
    int flag = curve.masked(i) ? 0 : (curve.real_branch(i) ? 1 : 2);
    out << format_double(curve.x(i)) << " " << format_double(curve.p_plus(i).real()) << " "
        << format_double(curve.p_plus(i).imag()) << " " << format_double(curve.p_minus(i).real())
        << " " << format_double(curve.p_minus(i).imag()) << " " << flag << "\n";
  }
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

fermi::FermiCurve read_branches(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::vector<double> x;
  std::vector<Complex> pp, pm;
  std::vector<bool> real_b, masked;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto fail = [&](const std::string& why) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + why +
                               "; expected 'x p_plus_re p_plus_im p_minus_re p_minus_im flag'");
    };
    std::istringstream ss(line);
    std::string tok[6], extra;
    for (auto& t : tok)
      if (!(ss >> t)) fail("fewer than 6 fields");
    if (ss >> extra) fail("trailing fields");

    double v[5];
    int flag = -1;
    try {
      size_t used = 0;
      for (int k = 0; k < 5; ++k) {
        v[k] = std::stod(tok[k], &used);
        if (used != tok[k].size()) fail("malformed number '" + tok[k] + "'");
      }
      flag = std::stoi(tok[5], &used);
      if (used != tok[5].size()) fail("malformed flag '" + tok[5] + "'");
    } catch (const std::logic_error&) {
      fail("malformed number");
    }
    if (flag < 0 || flag > 2) fail("flag out of range");

    x.push_back(v[0]);
    pp.emplace_back(v[1], v[2]);
    pm.emplace_back(v[3], v[4]);
    masked.push_back(flag == 0);
    real_b.push_back(flag == 1);
  }
  if (x.empty()) throw std::runtime_error(path + ": no data rows");
  fermi::FermiCurve curve;
  const Index n = static_cast<Index>(x.size());
  curve.x.resize(n);
  curve.p_plus.resize(n);
  curve.p_minus.resize(n);
  curve.real_branch.resize(n);
  curve.masked.resize(n);
  for (Index i = 0; i < n; ++i) {
    curve.x(i) = x[i];
    curve.p_plus(i) = pp[i];
    curve.p_minus(i) = pm[i];
    curve.real_branch(i) = real_b[i];
    curve.masked(i) = masked[i];
  }
  return curve;
}

void write_metrics(const std::string& path,
                   const std::vector<std::pair<std::string, double>>& kv) {
  std::ofstream out = open_out(path);
  for (const auto& [key, value] : kv) out << key << " " << format_double(value) << "\n";
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

void write_wavefunction(const std::string& path, const packets::SampledWavefunction& psi) {
  std::ofstream out = open_out(path);
  out << "# columns: x re im\n";
  for (Index i = 0; i < psi.n; ++i) {
    out << format_double(psi.x(i)) << " " << format_double(psi.psi(i).real()) << " "
        << format_double(psi.psi(i).imag()) << "\n";
  }
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace pskit::io
