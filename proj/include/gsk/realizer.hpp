#pragma once

#include <map>
#include <string>

#include "gsk/symplectic.hpp"
#include "gsk/word.hpp"

namespace gsk {

double realizer_zeta(double kappa, double theta);
// larger singular value of [[κ cos θ, -sin θ], [sin θ, cos θ / κ]]
double realizer_eta(double kappa, double theta);

struct Realization {
  GateWord word;                         // over the alphabet below
  std::map<std::string, Mat> alphabet;   // S, C, Kl, Kr, R
  Mat T;                                 // resolved product
  int n = 0;
  Vec kappas;                            // λ_j^{2n}
  Vec thetas;
  Vec lambdas;                           // singular values >= 1 of S'
};

// cyclic mode permutation, C_pq = 1 iff p = q + 2 (mod 2m)
Mat cyclic_mode_shift(int m);

// builds T = Λ^n (⊕ R(θ_j)) Λ^n with sv(T) ∩ [1, ∞) = mu from S' = (S C)^{m-1} S
Realization singular_value_realizer(const Vec& mu, const SymplecticMatrix& S_active, double tol = 1e-8);

}  // namespace gsk
