#include "pskit/wigner.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace pskit::wigner {

namespace {

// DFT coefficients c_j = sum_k psi_k exp(-2 pi i j k / n), via a root table
// so every twiddle is an exactly reduced angle.
VectorXcd dft(const VectorXcd& u) {
  const Index n = u.size();
  std::vector<Complex> root(n);
  for (Index m = 0; m < n; ++m) root[m] = std::polar(1.0, -2.0 * M_PI * double(m) / double(n));
  VectorXcd c(n);
  for (Index j = 0; j < n; ++j) {
    Complex acc(0, 0);
    for (Index k = 0; k < n; ++k) acc += u[k] * root[(j * k) % n];
    c[j] = acc;
  }
  return c;
}

}  // namespace

TransformResult wigner_transform(const packets::SampledWavefunction& psi,
                                 const PhaseSpaceGrid& grid, const PhysConfig& cfg) {
  cfg.require_valid();
  grid.require_valid();
  if (psi.n < 2) throw std::invalid_argument("wigner_transform: wave function too short");

  const Index n = psi.n;
  const double dx = psi.dx;
  const double hbar = cfg.hbar;

  const double p_need = std::max(std::abs(grid.p_min), std::abs(grid.p_max));
  const double p_nyquist = M_PI * hbar / dx;
  if (p_need > p_nyquist)
    throw std::invalid_argument(
        "wigner_transform: momentum window exceeds the Nyquist limit; maximum representable |p| is " +
        std::to_string(p_nyquist));

  // Signed frequencies of the trigonometric interpolant. An even-length
  // Nyquist bin is split symmetrically between +n/2 and -n/2.
  VectorXcd c = dft(psi.psi) / double(n);
  std::vector<long> freq;
  std::vector<Complex> coef;
  freq.reserve(n + 1);
  for (Index j = 0; j < n; ++j) {
    if (n % 2 == 0 && j == n / 2) {
      freq.push_back(n / 2);
      coef.push_back(0.5 * c[j]);
      freq.push_back(-n / 2);
      coef.push_back(0.5 * c[j]);
    } else {
      freq.push_back(j <= n / 2 ? long(j) : long(j) - long(n));
      coef.push_back(c[j]);
    }
  }
  const Index nf = Index(freq.size());
  const double period = double(n) * dx;

  // Interpolant values at x_g + j dx/2 for j in [-(n-1), n-1]:
  //   Phi = E * C,  E(jj,k) = exp(i pi f_k (jj-(n-1)) / n),
  //   C(k,g) = coef_k exp(2 pi i f_k (x_g - x_min)/period).
  const Index nrows = 2 * n - 1;
  std::vector<Complex> pi_root(2 * n);
  for (Index m = 0; m < 2 * n; ++m)
    pi_root[m] = std::polar(1.0, M_PI * double(m) / double(n));

  const Index nx = grid.nx;
  MatrixXcd C(nf, nx);
  for (Index g = 0; g < nx; ++g) {
    const double shift = grid.x(g) - psi.x_min;
    for (Index k = 0; k < nf; ++k)
      C(k, g) = coef[k] * std::polar(1.0, 2.0 * M_PI * double(freq[k]) * shift / period);
  }

  // Phi = E * C with E(jj,k) = exp(i pi f_k (jj-(n-1)) / n), built in row
  // panels so E is never held whole.
  MatrixXcd phi(nrows, nx);
  const Index panel = 512;
  MatrixXcd Eblk;
  for (Index r0 = 0; r0 < nrows; r0 += panel) {
    const Index rows = std::min(panel, nrows - r0);
    Eblk.resize(rows, nf);
    for (Index k = 0; k < nf; ++k) {
      for (Index r = 0; r < rows; ++r) {
        const long j = long(r0 + r) - long(n - 1);
        long m = (freq[k] * j) % (2 * long(n));
        if (m < 0) m += 2 * long(n);
        Eblk(r, k) = pi_root[m];
      }
    }
    phi.middleRows(r0, rows).noalias() = Eblk * C;
  }

  // The interpolant is periodic; outside the sampled domain psi is 0.
  const double x_lo = psi.x_min - 1e-9 * dx;
  const double x_hi = psi.x_min + double(n - 1) * dx + 1e-9 * dx;
  for (Index g = 0; g < nx; ++g) {
    const double xg = grid.x(g);
    for (Index jj = 0; jj < nrows; ++jj) {
      const double q = xg + double(long(jj) - long(n - 1)) * dx / 2.0;
      if (q < x_lo || q > x_hi) phi(jj, g) = Complex(0, 0);
    }
  }

  // K(jj,g) = psi(x_g + y/2) psi*(x_g - y/2) with y = (jj-(n-1)) dx.
  MatrixXcd kernel(nrows, nx);
  for (Index g = 0; g < nx; ++g)
    for (Index jj = 0; jj < nrows; ++jj)
      kernel(jj, g) = phi(jj, g) * std::conj(phi(nrows - 1 - jj, g));

  // Exact phase summation at the requested momenta.
  const Index np = grid.np;
  MatrixXcd phase(np, nrows);
  const double weight = dx / (2.0 * M_PI * hbar);
  for (Index i = 0; i < np; ++i) {
    const double p = grid.p(i);
    for (Index jj = 0; jj < nrows; ++jj) {
      const double y = double(long(jj) - long(n - 1)) * dx;
      phase(i, jj) = std::polar(weight, -p * y / hbar);
    }
  }

  MatrixXcd w = phase * kernel;  // np x nx

  TransformResult out;
  out.field.grid = grid;
  out.field.values.resize(nx, np);
  double residue = 0.0;
  for (Index i = 0; i < np; ++i)
    for (Index g = 0; g < nx; ++g) {
      out.field.values(g, i) = w(i, g).real();
      residue = std::max(residue, std::abs(w(i, g).imag()));
    }
  out.max_imag_residue = residue;
  return out;
}

ScalarField wigner_gaussian_closed(double x0, double p0, double delta,
                                   const PhysConfig& cfg, const PhaseSpaceGrid& grid) {
  cfg.require_valid();
  grid.require_valid();
  if (!(delta > 0.0)) throw std::invalid_argument("wigner_gaussian_closed: delta must be positive");

  ScalarField f = ScalarField::zero(grid);
  const double hbar = cfg.hbar;
  for (Index j = 0; j < grid.np; ++j) {
    const double pb = (grid.p(j) - p0) * delta / hbar;
    for (Index i = 0; i < grid.nx; ++i) {
      const double xb = (grid.x(i) - x0) / delta;
      f.values(i, j) = std::exp(-xb * xb - pb * pb) / (M_PI * hbar);
    }
  }
  return f;
}

ScalarField wigner_shift_approx(const packets::AnalyticPacket& packet,
                                const PhysConfig& cfg, const PhaseSpaceGrid& grid) {
  cfg.require_valid();
  grid.require_valid();
  if (packet.amp_poly.size() != 0)
    throw std::invalid_argument("wigner_shift_approx: requires a packet with empty amp_poly");

  const double hbar = cfg.hbar;
  const double delta = packet.delta;
  const VectorXd dtheta = packets::poly_derivative(packet.phase_poly);

  ScalarField f = ScalarField::zero(grid);
  for (Index i = 0; i < grid.nx; ++i) {
    const double x = grid.x(i);
    const double u = (x - packet.x0) / delta;
    const double sprime = packet.p0 + hbar / delta * packets::poly_eval(dtheta, u);
    const double xb = u;
    for (Index j = 0; j < grid.np; ++j) {
      const double pb = (grid.p(j) - sprime) * delta / hbar;
      f.values(i, j) = std::exp(-xb * xb - pb * pb) / (M_PI * hbar);
    }
  }
  return f;
}

namespace {

VectorXd trapezoid_weights(Index n, double h) {
  VectorXd w = VectorXd::Constant(n, h);
  w[0] = 0.5 * h;
  w[n - 1] = 0.5 * h;
  return w;
}

}  // namespace

VectorXd marginal_position(const ScalarField& field) {
  return field.values * trapezoid_weights(field.grid.np, field.grid.dp());
}

VectorXd marginal_momentum(const ScalarField& field) {
  return field.values.transpose() * trapezoid_weights(field.grid.nx, field.grid.dx());
}

double total_integral(const ScalarField& field) {
  return marginal_position(field).dot(trapezoid_weights(field.grid.nx, field.grid.dx()));
}

}  // namespace pskit::wigner
