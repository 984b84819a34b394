#pragma once

#include <cstdint>
#include <vector>

#include "gsk/fock.hpp"

namespace gsk {

struct NuOptions {
  int restarts = 2000;
  std::uint64_t seed = 1;
  std::vector<CVec> seeds;  // deterministic starting states, tried first
  int max_iters = 3000;
  bool dual = true;         // compute the dual certificate and seed from it
  int dual_angles = 48;
  int threads = 1;
};

struct ConstrainedOptimum {
  double value = 1.0;        // best |<ψ|W|ψ>| found: an upper bound on ν_E
  CVec state;
  double energy = 0.0;
  int restarts_used = 0;
  bool converged = false;    // the best run ended at a stationary point
  double lower_bound = 0.0;  // dual certificate: ν_E >= lower_bound
  int best_restart = -1;     // index in (seeds, dual seed, random starts)
};

// ν_E(W) = inf { |<ψ|W|ψ>| : ||ψ|| = 1, <ψ|H|ψ> <= E }
ConstrainedOptimum nu_E(const CMat& W, const CMat& H, double E, const NuOptions& opt = {});
ConstrainedOptimum nu_E(const FockOperator& W, const FockOperator& H, double E, const NuOptions& opt = {});

// sup over φ, λ >= 0 of λ_min((e^{-iφ}W + e^{iφ}W†)/2 + λH) − λE, clipped at 0
double nu_dual_bound(const CMat& W, const CMat& H, double E, int angles = 48);

// 2 √(1 − ν_E(U†V)²), full diamond-norm scale
double ec_diamond_unitaries(const FockOperator& U, const FockOperator& V, const FockOperator& H, double E,
                            const NuOptions& opt = {});

struct ConstrainedMax {
  double value = 0.0;        // <ψ|A|ψ> of the returned feasible state
  double upper_bound = 0.0;  // dual value min_λ λ_max(A − λH) + λE
  CVec state;
  double energy = 0.0;
  double lambda = 0.0;
};

// max <ψ|A|ψ> subject to <ψ|H|ψ> <= E, A and H Hermitian
ConstrainedMax constrained_max(const CMat& A, const CMat& H, double E);

}  // namespace gsk
