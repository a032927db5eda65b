#ifndef PSKIT_TYPES_HPP
#define PSKIT_TYPES_HPP

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace pskit {

using Complex = std::complex<double>;
using Eigen::Index;
using Eigen::VectorXd;
using Eigen::VectorXcd;
using Eigen::MatrixXd;
using Eigen::MatrixXcd;
using ArrayXb = Eigen::Array<bool, Eigen::Dynamic, 1>;

/// Physical constants of the model. Defaults give dimensionless units.
struct PhysConfig {
  double hbar = 1.0;
  double mass = 1.0;
  double omega = 1.0;

  void require_valid() const {
    if (!(hbar > 0.0) || !(mass > 0.0) || !(omega > 0.0))
      throw std::invalid_argument("PhysConfig: hbar, mass and omega must be strictly positive");
  }
};

}  // namespace pskit

#endif
