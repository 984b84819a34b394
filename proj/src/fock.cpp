#include "gsk/fock.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include "gsk/errors.hpp"
#include "gsk/net.hpp"

namespace gsk {

namespace {

void check_mode(int j, int m, int d) {
  if (m < 1 || j < 0 || j >= m) throw ParameterError("fock: mode index out of range");
  if (d < 2) throw ParameterError("fock: cutoff must be >= 2");
}

CMat single_a(int d) {
  CMat a = CMat::Zero(d, d);
  for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

CMat embed(const CMat& op, int j, int m, int d) {
  CMat out = CMat::Identity(1, 1);
  for (int k = 0; k < m; ++k) {
    const CMat f = (k == j) ? op : CMat::Identity(d, d);
    out = Eigen::kroneckerProduct(out, f).eval();
  }
  return out;
}

FockOperator wrap(CMat M, int m, int d) { return FockOperator{std::move(M), d, m}; }

}  // namespace

double FockOperator::unitarity_defect() const {
  return op_norm(CMat(entries.adjoint() * entries - CMat::Identity(dim(), dim())));
}

long fock_dim(int m, int d) {
  long n = 1;
  for (int k = 0; k < m; ++k) n *= d;
  return n;
}

FockOperator annihilation(int j, int m, int d) {
  check_mode(j, m, d);
  return wrap(embed(single_a(d), j, m, d), m, d);
}

FockOperator creation(int j, int m, int d) {
  check_mode(j, m, d);
  return wrap(embed(single_a(d).adjoint(), j, m, d), m, d);
}

FockOperator number_operator(int m, int d) {
  check_mode(0, m, d);
  const long n = fock_dim(m, d);
  CVec diag(n);
  for (long i = 0; i < n; ++i) {
    long rest = i, tot = 0;
    for (int k = 0; k < m; ++k) {
      tot += rest % d;
      rest /= d;
    }
    diag(i) = static_cast<double>(tot);
  }
  return wrap(diag.asDiagonal(), m, d);
}

FockOperator quadrature_x(int j, int m, int d) {
  check_mode(j, m, d);
  const CMat a = single_a(d);
  return wrap(embed((a + a.adjoint()) / std::sqrt(2.0), j, m, d), m, d);
}

FockOperator quadrature_p(int j, int m, int d) {
  check_mode(j, m, d);
  const CMat a = single_a(d);
  return wrap(embed(cplx(0, 1) * (a.adjoint() - a) / std::sqrt(2.0), j, m, d), m, d);
}

CMat compress(const CMat& big, int m, int d_big, int d) {
  if (d > d_big) throw ParameterError("compress: target cutoff exceeds source cutoff");
  const long n = fock_dim(m, d);
  std::vector<long> idx(n);
  for (long i = 0; i < n; ++i) {
    long rest = i, bi = 0, scale = 1;
    for (int k = 0; k < m; ++k) {
      bi += (rest % d) * scale;
      rest /= d;
      scale *= d_big;
    }
    idx[i] = bi;
  }
  CMat out(n, n);
  for (long r = 0; r < n; ++r)
    for (long c = 0; c < n; ++c) out(r, c) = big(idx[r], idx[c]);
  return out;
}

CMat hermitian_exp(const CMat& H, double t) {
  Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (H + H.adjoint()));
  CVec ph(H.rows());
  for (Eigen::Index i = 0; i < H.rows(); ++i) ph(i) = std::exp(cplx(0, -t * es.eigenvalues()(i)));
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

FockOperator displacement_operator(const Vec& z, int m, int cutoff, int padding) {
  if (z.size() != 2 * m) throw DimensionError("displacement_operator: z must have length 2m");
  if (padding < 0) throw ParameterError("displacement_operator: padding must be >= 0");
  const int D = cutoff + padding;
  const Vec c = omega(m).transpose() * z;  // z^T Ω R = Σ c_k R_k
  CMat G = CMat::Zero(fock_dim(m, D), fock_dim(m, D));
  for (int j = 0; j < m; ++j) {
    G += c(2 * j) * quadrature_x(j, m, D).entries;
    G += c(2 * j + 1) * quadrature_p(j, m, D).entries;
  }
  // exp(iG) = hermitian_exp(G, -1)
  return wrap(compress(hermitian_exp(G, -1.0), m, D, cutoff), m, cutoff);
}

QuadraticForm symplectic_to_quadratic(const SymplecticMatrix& S) {
  const int m = S.modes();
  if (!is_symplectic(S.entries(), 1e-8)) throw InvariantError("symplectic_to_quadratic: input is not symplectic");
  // H = ½ R^T A R generates S = exp(Ω A)
  const Mat A = -omega(m) * log_symplectic(S.entries());
  QuadraticForm q{CMat::Zero(m, m), CMat::Zero(m, m)};
  const cplx I(0, 1);
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k) {
      const double xx = A(2 * j, 2 * k), pp = A(2 * j + 1, 2 * k + 1);
      const double xp = A(2 * j, 2 * k + 1), px = A(2 * j + 1, 2 * k);
      q.X(j, k) = 0.5 * (xx + pp) + 0.5 * I * (px - xp);
      q.Y(j, k) = 0.25 * (xx - pp) - 0.25 * I * (xp + px);
    }
  return q;
}

FockOperator quadratic_hamiltonian(const CMat& X, const CMat& Y, int m, int d) {
  if (X.rows() != m || X.cols() != m || Y.rows() != m || Y.cols() != m)
    throw DimensionError("quadratic_hamiltonian: X, Y must be m×m");
  std::vector<CMat> a, ad;
  for (int j = 0; j < m; ++j) {
    a.push_back(annihilation(j, m, d).entries);
    ad.push_back(a.back().adjoint());
  }
  const long n = fock_dim(m, d);
  CMat H = CMat::Zero(n, n);
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k) {
      if (X(j, k) != cplx(0)) H += X(j, k) * ad[j] * a[k];
      if (Y(j, k) != cplx(0)) {
        H += Y(j, k) * a[j] * a[k];
        H += std::conj(Y(j, k)) * ad[j] * ad[k];
      }
    }
  return wrap(0.5 * (H + H.adjoint()), m, d);
}

FockOperator quadratic_unitary(const CMat& X, const CMat& Y, int m, int cutoff, int padding) {
  if (padding < 0) throw ParameterError("quadratic_unitary: padding must be >= 0");
  const int D = cutoff + padding;
  const CMat U = hermitian_exp(quadratic_hamiltonian(X, Y, m, D).entries, 1.0);
  return wrap(compress(U, m, D, cutoff), m, cutoff);
}

FockOperator gaussian_unitary(const SymplecticMatrix& S, int cutoff, int padding) {
  const QuadraticForm q = symplectic_to_quadratic(S);
  return quadratic_unitary(q.X, q.Y, S.modes(), cutoff, padding);
}

FockState squeezed_vacuum_state(const Vec& r, int d) {
  const int m = static_cast<int>(r.size());
  if (m < 1) throw DimensionError("squeezed_vacuum_state: need at least one mode");
  if (d < 2) throw ParameterError("squeezed_vacuum_state: cutoff must be >= 2");
  CVec psi = CVec::Ones(1);
  double kept = 1.0;
  for (int j = 0; j < m; ++j) {
    const double th = std::tanh(r(j));
    CVec c = CVec::Zero(d);
    double coef = 1.0 / std::sqrt(std::cosh(r(j)));
    double w = 0.0;
    for (int n = 0; 2 * n < d; ++n) {
      if (n > 0) coef *= -th * std::sqrt((2.0 * n - 1.0) / (2.0 * n));
      c(2 * n) = coef;
      w += coef * coef;
    }
    kept *= w;
    psi = Eigen::kroneckerProduct(psi, c).eval();
  }
  FockState s;
  s.tail_mass = std::max(0.0, 1.0 - kept);
  s.cutoff_warning = s.tail_mass > 1e-8;
  s.psi = psi / psi.norm();
  return s;
}

FockState geometric_state(double mu, int d) {
  if (!(mu >= 0 && mu < 1)) throw ParameterError("geometric_state: mu must lie in [0, 1)");
  if (d < 2) throw ParameterError("geometric_state: cutoff must be >= 2");
  CVec psi(d);
  for (int n = 0; n < d; ++n) psi(n) = std::sqrt(1.0 - mu) * std::pow(mu, 0.5 * n);
  FockState s;
  s.tail_mass = std::pow(mu, d);
  s.cutoff_warning = s.tail_mass > 1e-8;
  s.psi = psi / psi.norm();
  return s;
}

double expectation(const CMat& A, const CVec& psi) { return psi.dot(A * psi).real(); }

double evolve_and_distance(const FockOperator& H1, const FockOperator& H2, const CVec& psi, double t) {
  if (H1.dim() != H2.dim() || H1.dim() != psi.size()) throw DimensionError("evolve_and_distance: dimension mismatch");
  const CVec a = hermitian_exp(H1.entries, t) * psi;
  const CVec b = hermitian_exp(H2.entries, t) * psi;
  const double ov = std::norm(a.dot(b));
  return std::sqrt(std::max(0.0, 1.0 - ov));
}

}  // namespace gsk
