#pragma once

#include <complex>
#include <string>

#include <Eigen/Dense>

namespace gsk {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// every numeric tolerance used by the library lives here
struct Tolerances {
  double symplectic = 1e-10;
  double recon = 1e-9;
  double determinant = 1e-8;
  double unitarity = 1e-10;
  double hermitian = 1e-10;
  double hull_margin = 1e-9;
};

inline const Tolerances& tolerances() {
  static const Tolerances t{};
  return t;
}

inline const char* version_string() { return "gsk 1.0.0"; }

}  // namespace gsk
