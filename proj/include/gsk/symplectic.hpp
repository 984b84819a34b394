#pragma once

#include <vector>

#include "gsk/config.hpp"

namespace gsk {

// Mode-interleaved ordering (x1, p1, x2, p2, ...).
class SymplecticMatrix {
 public:
  SymplecticMatrix() = default;
  // validates SΩS^T = Ω and det S = 1; throws InvariantError / DimensionError
  explicit SymplecticMatrix(Mat entries, double tol = tolerances().symplectic);
  // skips validation; for values produced by closed-form constructions
  static SymplecticMatrix trusted(Mat entries);
  static SymplecticMatrix identity(int m);

  const Mat& entries() const { return s_; }
  int modes() const { return m_; }
  int dim() const { return 2 * m_; }
  double operator()(int i, int j) const { return s_(i, j); }

  SymplecticMatrix operator*(const SymplecticMatrix& o) const;

 private:
  Mat s_;
  int m_ = 0;
};

struct PolarParts {
  SymplecticMatrix orthogonal;
  SymplecticMatrix positive;
};

struct OrthoBlockForm {
  SymplecticMatrix conjugator;  // K
  Vec angles;                   // theta_j in (-pi, pi]
};

struct PositiveDiagForm {
  SymplecticMatrix conjugator;
  Vec lambdas;  // >= 1, descending
};

Mat omega(int m);
bool is_symplectic(const Mat& M, double tol = tolerances().symplectic);
bool is_orthogonal(const Mat& M, double tol);

SymplecticMatrix symplectic_inverse(const SymplecticMatrix& S);
PolarParts polar_decompose(const SymplecticMatrix& S);
OrthoBlockForm orth_block_diagonalize(const SymplecticMatrix& O);
PositiveDiagForm williamson_positive(const SymplecticMatrix& P);
SymplecticMatrix group_commutator(const SymplecticMatrix& A, const SymplecticMatrix& B);

Mat log_positive_symplectic(const SymplecticMatrix& P);
Mat log_orthogonal_symplectic(const SymplecticMatrix& O);

double op_norm_real(const Mat& M);
double op_norm_complex(const CMat& M);

// largest singular value
template <class Derived>
double op_norm(const Eigen::MatrixBase<Derived>& M) {
  if constexpr (Eigen::NumTraits<typename Derived::Scalar>::IsComplex)
    return op_norm_complex(CMat(M));
  else
    return op_norm_real(Mat(M));
}

// Frobenius norm
template <class Derived>
double hs_norm(const Eigen::MatrixBase<Derived>& M) {
  return M.norm();
}
// ||A - B||_op without forming a temporary for the common 2x2 case
double op_distance(const Mat& A, const Mat& B);

// R(t) = [[cos t, sin t], [-sin t, cos t]] = exp(t Ω_1)
Mat rotation_block(double t);
Mat rotation_blocks(const Vec& angles);
Mat squeezer(const Vec& r);  // ⊕ diag(e^{r_j}, e^{-r_j})
Mat direct_sum(const std::vector<Mat>& blocks);

// m×m unitary <-> 2m×2m orthogonal symplectic, block [[a, b], [-b, a]] <-> a + ib
CMat unitary_of(const Mat& O);
Mat realify(const CMat& U);

}  // namespace gsk
