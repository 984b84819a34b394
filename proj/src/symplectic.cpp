#include "gsk/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "gsk/errors.hpp"

namespace gsk {

namespace {

void require_even_square(const Mat& M) {
  if (M.rows() != M.cols() || M.rows() % 2 != 0 || M.rows() == 0)
    throw DimensionError("expected a non-empty square matrix of even dimension, got " +
                         std::to_string(M.rows()) + "x" + std::to_string(M.cols()));
}

}  // namespace

SymplecticMatrix::SymplecticMatrix(Mat entries, double tol) {
  require_even_square(entries);
  const double defect = op_norm(entries * omega(entries.rows() / 2) * entries.transpose() -
                                omega(entries.rows() / 2));
  if (!(defect <= tol))
    throw InvariantError("matrix is not symplectic: ||SΩS^T - Ω|| = " + std::to_string(defect));
  const double det = entries.determinant();
  if (!(std::abs(det - 1.0) <= tolerances().determinant))
    throw InvariantError("symplectic matrix has determinant " + std::to_string(det));
  m_ = static_cast<int>(entries.rows() / 2);
  s_ = std::move(entries);
}

SymplecticMatrix SymplecticMatrix::trusted(Mat entries) {
  require_even_square(entries);
  SymplecticMatrix S;
  S.m_ = static_cast<int>(entries.rows() / 2);
  S.s_ = std::move(entries);
  return S;
}

SymplecticMatrix SymplecticMatrix::identity(int m) {
  if (m < 1) throw ParameterError("mode count must be positive");
  return trusted(Mat::Identity(2 * m, 2 * m));
}

SymplecticMatrix SymplecticMatrix::operator*(const SymplecticMatrix& o) const {
  if (m_ != o.m_) throw DimensionError("symplectic product of different mode counts");
  return trusted(s_ * o.s_);
}

Mat omega(int m) {
  if (m < 1) throw ParameterError("omega: m must be >= 1");
  Mat W = Mat::Zero(2 * m, 2 * m);
  for (int j = 0; j < m; ++j) {
    W(2 * j, 2 * j + 1) = 1.0;
    W(2 * j + 1, 2 * j) = -1.0;
  }
  return W;
}

bool is_symplectic(const Mat& M, double tol) {
  require_even_square(M);
  const Mat W = omega(static_cast<int>(M.rows() / 2));
  return op_norm(M * W * M.transpose() - W) <= tol;
}

bool is_orthogonal(const Mat& M, double tol) {
  return op_norm(M * M.transpose() - Mat::Identity(M.rows(), M.cols())) <= tol;
}

SymplecticMatrix symplectic_inverse(const SymplecticMatrix& S) {
  if (!is_symplectic(S.entries(), tolerances().symplectic))
    throw InvariantError("symplectic_inverse: input is not symplectic");
  const Mat W = omega(S.modes());
  return SymplecticMatrix::trusted(W.transpose() * S.entries().transpose() * W);
}

PolarParts polar_decompose(const SymplecticMatrix& S) {
  if (!is_symplectic(S.entries(), tolerances().symplectic))
    throw InvariantError("polar_decompose: input is not symplectic");
  Eigen::JacobiSVD<Mat> svd(S.entries(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Mat& U = svd.matrixU();
  const Mat& V = svd.matrixV();
  Mat O = U * V.transpose();
  Mat P = V * svd.singularValues().asDiagonal() * V.transpose();
  P = 0.5 * (P + P.transpose());
  return {SymplecticMatrix::trusted(std::move(O)), SymplecticMatrix::trusted(std::move(P))};
}

CMat unitary_of(const Mat& O) {
  require_even_square(O);
  const Eigen::Index m = O.rows() / 2;
  CMat U(m, m);
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index k = 0; k < m; ++k) U(j, k) = cplx(O(2 * j, 2 * k), O(2 * j, 2 * k + 1));
  return U;
}

Mat realify(const CMat& U) {
  const Eigen::Index m = U.rows();
  Mat O(2 * m, 2 * m);
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index k = 0; k < m; ++k) {
      const double a = U(j, k).real(), b = U(j, k).imag();
      O(2 * j, 2 * k) = a;
      O(2 * j, 2 * k + 1) = b;
      O(2 * j + 1, 2 * k) = -b;
      O(2 * j + 1, 2 * k + 1) = a;
    }
  return O;
}

OrthoBlockForm orth_block_diagonalize(const SymplecticMatrix& O) {
  const double tol = tolerances().recon;
  if (!is_symplectic(O.entries(), tol) || !is_orthogonal(O.entries(), tol))
    throw InvariantError("orth_block_diagonalize: input is not orthogonal symplectic");
  const CMat U = unitary_of(O.entries());
  Eigen::ComplexSchur<CMat> schur(U);
  const CMat& T = schur.matrixT();
  Vec angles(U.rows());
  for (Eigen::Index j = 0; j < U.rows(); ++j) angles(j) = std::arg(T(j, j));
  return {SymplecticMatrix::trusted(realify(schur.matrixU())), angles};
}

PositiveDiagForm williamson_positive(const SymplecticMatrix& P) {
  const Mat& A = P.entries();
  const double tol = tolerances().recon;
  if (op_norm(A - A.transpose()) > tol || !is_symplectic(A, tol))
    throw InvariantError("williamson_positive: input is not symmetric symplectic");
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (A + A.transpose()));
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw InvariantError("williamson_positive: input is not positive definite");
  const Eigen::Index n = A.rows(), m = n / 2;
  const Mat W = omega(static_cast<int>(m));
  // candidates in descending eigenvalue order; greedy symplectic completion
  Mat K = Mat::Zero(n, n);
  Vec lambdas(m);
  Eigen::Index picked = 0;
  for (Eigen::Index c = n - 1; c >= 0 && picked < m; --c) {
    Vec v = es.eigenvectors().col(c);
    for (Eigen::Index k = 0; k < 2 * picked; ++k) v -= K.col(k).dot(v) * K.col(k);
    const double nv = v.norm();
    if (nv < 0.5) continue;
    v /= nv;
    Vec w = W.transpose() * v;
    double lam = v.dot(A * v);
    if (lam < 1.0) {
      // swap roles so that the first column carries the expanding direction
      Vec t = w;
      w = -v;
      v = t;
      lam = v.dot(A * v);
    }
    K.col(2 * picked) = v;
    K.col(2 * picked + 1) = w;
    lambdas(picked) = std::max(lam, 1.0);
    ++picked;
  }
  if (picked != m) throw NumericError("williamson_positive: symplectic basis completion failed");
  // stable descending order by block index
  std::vector<Eigen::Index> order(m);
  for (Eigen::Index j = 0; j < m; ++j) order[j] = j;
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return lambdas(a) > lambdas(b); });
  Mat Ks(n, n);
  Vec ls(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    Ks.col(2 * j) = K.col(2 * order[j]);
    Ks.col(2 * j + 1) = K.col(2 * order[j] + 1);
    ls(j) = lambdas(order[j]);
  }
  return {SymplecticMatrix::trusted(std::move(Ks)), ls};
}

SymplecticMatrix group_commutator(const SymplecticMatrix& A, const SymplecticMatrix& B) {
  if (A.modes() != B.modes()) throw DimensionError("group_commutator: dimension mismatch");
  const Mat W = omega(A.modes());
  const Mat Ai = W.transpose() * A.entries().transpose() * W;
  const Mat Bi = W.transpose() * B.entries().transpose() * W;
  return SymplecticMatrix::trusted(A.entries() * B.entries() * Ai * Bi);
}

Mat log_positive_symplectic(const SymplecticMatrix& P) {
  const PositiveDiagForm f = williamson_positive(P);
  Vec d(P.dim());
  for (Eigen::Index j = 0; j < f.lambdas.size(); ++j) {
    d(2 * j) = std::log(f.lambdas(j));
    d(2 * j + 1) = -d(2 * j);
  }
  const Mat& K = f.conjugator.entries();
  Mat L = K * d.asDiagonal() * K.transpose();
  return 0.5 * (L + L.transpose());
}

Mat log_orthogonal_symplectic(const SymplecticMatrix& O) {
  const OrthoBlockForm f = orth_block_diagonalize(O);
  for (Eigen::Index j = 0; j < f.angles.size(); ++j)
    if (std::abs(f.angles(j)) >= std::numbers::pi - 1e-12)
      throw BranchError("log_orthogonal_symplectic: rotation angle pi has no principal logarithm");
  const Mat& K = f.conjugator.entries();
  Mat G = Mat::Zero(O.dim(), O.dim());
  for (Eigen::Index j = 0; j < f.angles.size(); ++j) {
    G(2 * j, 2 * j + 1) = f.angles(j);
    G(2 * j + 1, 2 * j) = -f.angles(j);
  }
  Mat L = K * G * K.transpose();
  return 0.5 * (L - L.transpose());
}

namespace {

// split into rotation-like and reflection-like parts; no cancellation when the singular values are close
double top_singular_2x2(double a, double b, double c, double d) {
  return 0.5 * (std::hypot(a + d, b - c) + std::hypot(a - d, b + c));
}

}  // namespace

double op_norm_real(const Mat& M) {
  if (M.size() == 0) return 0.0;
  if (M.rows() == 2 && M.cols() == 2) {
    return top_singular_2x2(M(0, 0), M(0, 1), M(1, 0), M(1, 1));
  }
  Eigen::JacobiSVD<Mat> svd(M);
  return svd.singularValues()(0);
}

double op_norm_complex(const CMat& M) {
  if (M.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMat> svd(M);
  return svd.singularValues()(0);
}


double op_distance(const Mat& A, const Mat& B) {
  if (A.rows() == 2 && A.cols() == 2) {
    return top_singular_2x2(A(0, 0) - B(0, 0), A(0, 1) - B(0, 1), A(1, 0) - B(1, 0), A(1, 1) - B(1, 1));
  }
  return op_norm(Mat(A - B));
}

Mat rotation_block(double t) {
  Mat R(2, 2);
  R << std::cos(t), std::sin(t), -std::sin(t), std::cos(t);
  return R;
}

Mat rotation_blocks(const Vec& angles) {
  std::vector<Mat> blocks;
  for (Eigen::Index j = 0; j < angles.size(); ++j) blocks.push_back(rotation_block(angles(j)));
  return direct_sum(blocks);
}

Mat squeezer(const Vec& r) {
  Vec d(2 * r.size());
  for (Eigen::Index j = 0; j < r.size(); ++j) {
    d(2 * j) = std::exp(r(j));
    d(2 * j + 1) = std::exp(-r(j));
  }
  return d.asDiagonal();
}

Mat direct_sum(const std::vector<Mat>& blocks) {
  Eigen::Index n = 0;
  for (const auto& b : blocks) n += b.rows();
  Mat out = Mat::Zero(n, n);
  Eigen::Index at = 0;
  for (const auto& b : blocks) {
    out.block(at, at, b.rows(), b.cols()) = b;
    at += b.rows();
  }
  return out;
}

}  // namespace gsk
