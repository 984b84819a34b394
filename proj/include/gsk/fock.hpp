#pragma once

#include "gsk/symplectic.hpp"

namespace gsk {

// operator on the truncated Fock space of m modes with d levels each; mode 0 is the
// most significant tensor factor
struct FockOperator {
  CMat entries;
  int cutoff = 0;
  int modes = 0;
  long dim() const { return entries.rows(); }
  // ||W†W - I||, meaningful for operators that should be unitary
  double unitarity_defect() const;
};

long fock_dim(int m, int d);

FockOperator annihilation(int mode_index, int m, int cutoff);
FockOperator creation(int mode_index, int m, int cutoff);
FockOperator number_operator(int m, int cutoff);
// x = (a + a†)/√2, p = i(a† − a)/√2
FockOperator quadrature_x(int mode_index, int m, int cutoff);
FockOperator quadrature_p(int mode_index, int m, int cutoff);

// restriction of an operator built with d_big levels per mode to the first d levels
CMat compress(const CMat& big, int m, int d_big, int d);
// exp(-i t H) for Hermitian H
CMat hermitian_exp(const CMat& H, double t);

// exp(i z^T Ω R), built with `padding` extra levels per mode and then compressed
FockOperator displacement_operator(const Vec& z, int m, int cutoff, int padding = 0);

struct QuadraticForm {
  CMat X;  // Hermitian
  CMat Y;  // symmetric
};

// (X, Y) with U_S = exp(-iH), H = Σ X_jk a_j†a_k + Y_jk a_j a_k + conj(Y_jk) a_j†a_k†,
// so that U_S† R U_S = S R
QuadraticForm symplectic_to_quadratic(const SymplecticMatrix& S);
FockOperator quadratic_hamiltonian(const CMat& X, const CMat& Y, int m, int cutoff);
FockOperator quadratic_unitary(const CMat& X, const CMat& Y, int m, int cutoff, int padding = 0);
FockOperator gaussian_unitary(const SymplecticMatrix& S, int cutoff, int padding = 0);

struct FockState {
  CVec psi;
  double tail_mass = 0.0;  // probability weight beyond the cutoff
  bool cutoff_warning = false;
};

FockState squeezed_vacuum_state(const Vec& r, int cutoff);
FockState geometric_state(double mu, int cutoff);

double expectation(const CMat& A, const CVec& psi);  // real part of <ψ|A|ψ>

// √(1 − |<ψ| e^{iH1 t} e^{−iH2 t} |ψ>|²), i.e. half the trace norm of the state difference
double evolve_and_distance(const FockOperator& H1, const FockOperator& H2, const CVec& psi, double t);

}  // namespace gsk
