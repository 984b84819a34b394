#include "gsk/random.hpp"

#include <cmath>

#include <Eigen/QR>
#include <unsupported/Eigen/MatrixFunctions>

#include "gsk/errors.hpp"

namespace gsk {

Mat random_symmetric(int n, double box, Rng& rng) {
  std::uniform_real_distribution<double> u(-box, box);
  Mat A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) A(i, j) = A(j, i) = u(rng);
  return A;
}

CMat random_unitary(int m, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMat Z(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) Z(i, j) = cplx(g(rng), g(rng));
  Eigen::HouseholderQR<CMat> qr(Z);
  CMat Q = qr.householderQ();
  const CMat R = qr.matrixQR();
  for (int j = 0; j < m; ++j) {
    const double a = std::abs(R(j, j));
    if (a > 0) Q.col(j) *= R(j, j) / a;
  }
  return Q;
}

SymplecticMatrix random_orthogonal_symplectic(int m, Rng& rng) {
  return SymplecticMatrix::trusted(realify(random_unitary(m, rng)));
}

SymplecticMatrix random_orthogonal_symplectic(int m, double eps, Rng& rng) {
  if (eps < 0 || eps > 2) throw ParameterError("orthogonal distance must lie in [0, 2]");
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vec th(m);
  for (int j = 0; j < m; ++j) th(j) = u(rng);
  Eigen::Index jmax;
  const double amax = th.cwiseAbs().maxCoeff(&jmax);
  const double target = 2.0 * std::asin(eps / 2.0);
  th *= (amax > 0 ? target / amax : 0.0);
  if (amax == 0) th(0) = target;
  const Mat K = realify(random_unitary(m, rng));
  return SymplecticMatrix::trusted(K * rotation_blocks(th) * K.transpose());
}

SymplecticMatrix random_positive_symplectic(int m, double eps, Rng& rng) {
  if (eps < 0) throw ParameterError("positive distance must be >= 0");
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vec r(m);
  for (int j = 0; j < m; ++j) r(j) = std::log1p(eps * u(rng));
  r(std::uniform_int_distribution<int>(0, m - 1)(rng)) = std::log1p(eps);
  const Mat K = realify(random_unitary(m, rng));
  Mat P = K * squeezer(r) * K.transpose();
  return SymplecticMatrix::trusted(0.5 * (P + P.transpose()));
}

SymplecticMatrix random_symplectic(int m, double eps, Rng& rng) {
  const Mat X = omega(m) * random_symmetric(2 * m, 1.0, rng);
  const Mat I = Mat::Identity(2 * m, 2 * m);
  auto dist = [&](double t) { return op_norm(Mat((t * X).exp() - I)); };
  double lo = 0.0, hi = 1.0;
  while (dist(hi) < eps) hi *= 2.0;
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    (dist(mid) < eps ? lo : hi) = mid;
  }
  return SymplecticMatrix::trusted((0.5 * (lo + hi) * X).exp());
}

}  // namespace gsk
