#include "gsk/realizer.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/SVD>

#include "gsk/errors.hpp"

namespace gsk {

double realizer_zeta(double kappa, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return 0.5 * (kappa * kappa + 1.0 / (kappa * kappa)) * c * c + s * s;
}

double realizer_eta(double kappa, double theta) {
  const double z = realizer_zeta(kappa, theta);
  return std::sqrt(z + std::sqrt(std::max(0.0, z * z - 1.0)));
}

Mat cyclic_mode_shift(int m) {
  const int n = 2 * m;
  Mat C = Mat::Zero(n, n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      if (p == (q + 2) % n) C(p, q) = 1.0;
  return C;
}

namespace {

// counter-clockwise rotation [[c, -s], [s, c]]
Mat turn(double t) { return rotation_block(-t); }

double solve_theta(double kappa, double mu) {
  if (mu <= 1.0) return std::numbers::pi / 2;
  if (mu >= kappa) return 0.0;
  double lo = 0.0, hi = std::numbers::pi / 2;
  if (!(realizer_eta(kappa, lo) >= mu && realizer_eta(kappa, hi) <= mu))
    throw NumericError("singular_value_realizer: root is not bracketed");
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (realizer_eta(kappa, mid) > mu ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

Realization singular_value_realizer(const Vec& mu, const SymplecticMatrix& S_active, double tol) {
  const int m = S_active.modes();
  if (mu.size() != m) throw DimensionError("singular_value_realizer: mu must have one entry per mode");
  for (Eigen::Index j = 0; j < mu.size(); ++j)
    if (!(mu(j) >= 1.0)) throw ParameterError("singular_value_realizer: every mu_j must be >= 1");
  const Mat& S = S_active.entries();
  if (is_orthogonal(S, tol)) throw ParameterError("singular_value_realizer: active gate is orthogonal");

  Realization out;
  const Mat C = cyclic_mode_shift(m);
  out.alphabet["S"] = S;
  out.alphabet["C"] = C;
  GateWord sprime;
  Mat Sp = Mat::Identity(2 * m, 2 * m);
  for (int k = 0; k < m - 1; ++k) {
    sprime.tokens.push_back({"S", false});
    sprime.tokens.push_back({"C", false});
    Sp = Sp * S * C;
  }
  sprime.tokens.push_back({"S", false});
  Sp = Sp * S;

  // Euler form S' = (O K) Λ K^T
  const PolarParts pp = polar_decompose(SymplecticMatrix::trusted(Sp));
  const PositiveDiagForm wf = williamson_positive(pp.positive);
  const Mat& K = wf.conjugator.entries();
  out.alphabet["Kl"] = (pp.orthogonal.entries() * K).transpose();
  out.alphabet["Kr"] = K;
  out.lambdas = wf.lambdas;

  // smallest n >= 1 with λ_j^{2n} >= μ_j for every mode
  int n = 1;
  for (int j = 0; j < m; ++j) {
    const double lam = wf.lambdas(j);
    if (mu(j) > 1.0 + tol && lam <= 1.0 + tol)
      throw NumericError("singular_value_realizer: S' does not expand mode " + std::to_string(j));
    if (lam > 1.0 + tol) n = std::max(n, static_cast<int>(std::ceil(std::log(mu(j)) / (2.0 * std::log(lam)) - 1e-12)));
  }
  out.n = n;
  out.kappas.resize(m);
  out.thetas.resize(m);
  std::vector<Mat> blocks;
  for (int j = 0; j < m; ++j) {
    out.kappas(j) = std::pow(wf.lambdas(j), 2.0 * n);
    out.thetas(j) = solve_theta(out.kappas(j), mu(j));
    blocks.push_back(turn(out.thetas(j)));
  }
  out.alphabet["R"] = direct_sum(blocks);

  GateWord d;
  d.tokens.push_back({"Kl", false});
  d.tokens.insert(d.tokens.end(), sprime.tokens.begin(), sprime.tokens.end());
  d.tokens.push_back({"Kr", false});
  for (int k = 0; k < n; ++k) out.word = concat({&out.word, &d});
  out.word.tokens.push_back({"R", false});
  for (int k = 0; k < n; ++k) out.word = concat({&out.word, &d});

  out.T = resolve(out.word, [&](const std::string& l) { return out.alphabet.at(l); }, 2 * m);
  return out;
}

}  // namespace gsk
