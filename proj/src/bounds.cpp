#include "gsk/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "gsk/errors.hpp"

namespace gsk {

namespace {

constexpr double pi = std::numbers::pi;

void require_nonneg(double v, const char* what) {
  if (!(v >= 0)) throw ParameterError(std::string(what) + " must be >= 0");
}

// constant √6 + √10 + 5√2 m shared by the Gaussian bounds
double gaussian_constant(int m) { return std::sqrt(6.0) + std::sqrt(10.0) + 5.0 * std::sqrt(2.0) * m; }

}  // namespace

EnergyConstraint::EnergyConstraint(double e, Hamiltonian h) : E(e), hamiltonian(h) {
  require_nonneg(e, "energy");
}

nlohmann::json report_to_json(const BoundReport& r) {
  nlohmann::json j;
  j["name"] = r.name;
  j["lower"] = r.lower ? nlohmann::json(*r.lower) : nlohmann::json(nullptr);
  j["upper"] = r.upper ? nlohmann::json(*r.upper) : nlohmann::json(nullptr);
  j["params"] = r.params;
  j["formula_ref"] = r.formula_ref;
  j["scale"] = r.scale;
  if (!r.extra.empty()) j["extra"] = r.extra;
  return j;
}

double photon_energy_factor(double E) {
  require_nonneg(E, "E");
  return (std::sqrt(E) + std::sqrt(E + 1.0)) / std::sqrt(2.0);
}

BoundReport displacement_bounds(const Vec& z, const Vec& w, double E) {
  if (z.size() != w.size() || z.size() % 2 != 0 || z.size() == 0)
    throw DimensionError("displacement_bounds: vectors must share one even dimension");
  const double f = photon_energy_factor(E);
  const double u = (z - w).norm();
  BoundReport r;
  r.name = "displacement";
  r.lower = std::sqrt(-std::expm1(-f * f * u * u));
  r.upper = std::sin(std::min(f * u, pi / 2));
  r.params = {{"E", E}, {"m", static_cast<double>(z.size() / 2)}, {"norm_z_minus_w", u}, {"f_E", f}};
  r.formula_ref = "sqrt(1-exp(-f(E)^2 |z-w|^2)) <= 1/2 ||D_z - D_w||_diamond^{N,E} <= sin(min(f(E)|z-w|, pi/2)), "
                  "f(E) = (sqrt(E)+sqrt(E+1))/sqrt(2)";
  r.scale = kHalvedDiamond;
  return r;
}

BoundReport symplectic_pair_bound(const SymplecticMatrix& S, const SymplecticMatrix& S_prime, double E) {
  require_nonneg(E, "E");
  if (S.modes() != S_prime.modes()) throw DimensionError("symplectic_pair_bound: mode counts differ");
  if (!is_symplectic(S.entries(), 1e-8) || !is_symplectic(S_prime.entries(), 1e-8))
    throw InvariantError("symplectic_pair_bound: inputs must be symplectic");
  const int m = S.modes();
  const Mat T = symplectic_inverse(S_prime).entries() * S.entries();
  const double tn = op_norm(T);
  const double thd = hs_norm(Mat(T - Mat::Identity(2 * m, 2 * m)));
  BoundReport r;
  r.name = "symplectic";
  const double raw = 2.0 * std::sqrt(gaussian_constant(m) * (E + 1.0)) *
                    (std::sqrt(pi / (tn + 1.0)) + std::sqrt(2.0 * tn)) * std::sqrt(thd);
  r.upper = std::min(raw, 2.0);
  r.extra["formula_value"] = raw;
  r.params = {{"E", E}, {"m", static_cast<double>(m)}, {"op_norm_T", tn}, {"hs_norm_T_minus_I", thd}};
  r.formula_ref = "||U_S - U_S'||_diamond^{N,E} <= 2 sqrt((sqrt6+sqrt10+5 sqrt2 m)(E+1)) "
                  "(sqrt(pi/(||T||+1)) + sqrt(2||T||)) sqrt(||T-I||_2), T = S'^{-1} S";
  r.scale = kDiamond;
  return r;
}

double sk_F(int m) {
  if (m < 1) throw ParameterError("m must be >= 1");
  return 2.0 * std::sqrt(std::sqrt(2.0 * m) * gaussian_constant(m));
}

double sk_G(double r) {
  require_nonneg(r, "r");
  return (std::sqrt(pi) + std::sqrt(2.0) * (r + 2.0)) * std::sqrt(r + 2.0);
}

BoundReport sk_theorem_bound(int m, double r, double E, double delta) {
  require_nonneg(E, "E");
  require_nonneg(delta, "delta");
  BoundReport rep;
  rep.name = "sk";
  const double raw = sk_F(m) * sk_G(r) * std::sqrt(E + 1.0) * std::sqrt(delta);
  rep.upper = std::min(raw, 2.0);
  rep.extra["formula_value"] = raw;
  rep.params = {{"m", static_cast<double>(m)}, {"r", r}, {"E", E}, {"delta", delta},
                {"F_m", sk_F(m)}, {"G_r", sk_G(r)}};
  rep.formula_ref = "||U_S - U_S'||_diamond^{N,E} <= F(m) G(r) sqrt(E+1) sqrt(delta), "
                    "F(m) = 2 sqrt(sqrt(2m)(sqrt6+sqrt10+5 sqrt2 m)), G(r) = (sqrt(pi)+sqrt2 (r+2)) sqrt(r+2)";
  rep.scale = kDiamond;
  return rep;
}

namespace {

void check_drift(const DriftParams& dp, double E) {
  require_nonneg(dp.alpha, "alpha");
  require_nonneg(dp.beta, "beta");
  require_nonneg(dp.gamma, "gamma");
  require_nonneg(dp.delta_rb, "delta");
  require_nonneg(E, "E");
}

}  // namespace

double closed_drift_bound(const DriftParams& dp, double E, double t) {
  check_drift(dp, E);
  require_nonneg(t, "t");
  const double s2 = std::sqrt(2.0);
  return 2.0 * s2 * std::sqrt(dp.gamma * E + dp.delta_rb) * std::sqrt(dp.alpha * t) + s2 * dp.beta * t;
}

double closed_speed_limit_time(const DriftParams& dp, double E, double d) {
  check_drift(dp, E);
  if (!(d >= 0 && d <= 2)) throw ParameterError("closed_speed_limit_time: d must lie in [0, 2]");
  if (d == 0) return 0.0;
  const double nu = std::sqrt(dp.alpha * (dp.gamma * E + dp.delta_rb));
  if (dp.beta == 0 && nu == 0) throw NoFiniteBound("closed_speed_limit_time: drift vanishes, no finite time bound");
  // (√(dβ+ν²) − ν)/β written without the cancellation
  const double root = d / (std::sqrt(d * dp.beta + nu * nu) + nu);
  return root * root;
}

DriftParams quadratic_alpha_beta(const Vec& d_diag, const CMat& X, const CMat& Y) {
  const Eigen::Index m = d_diag.size();
  if (X.rows() != m || X.cols() != m || Y.rows() != m || Y.cols() != m)
    throw DimensionError("quadratic_alpha_beta: X, Y must be m×m");
  if (m == 0 || d_diag.minCoeff() <= 0) throw ParameterError("quadratic_alpha_beta: d_j must be positive");
  if ((X - X.adjoint()).norm() > tolerances().hermitian) throw InvariantError("quadratic_alpha_beta: X is not Hermitian");
  const double dinv = 1.0 / d_diag.minCoeff();
  const double xd = (X - CMat(d_diag.cast<cplx>().asDiagonal())).norm();
  const double y = Y.norm();
  const double c = std::sqrt(1.5);
  DriftParams dp;
  dp.alpha = dinv * (c * xd + (1.0 + c) * y);
  dp.beta = (static_cast<double>(m) - 1.0) / std::sqrt(2.0) * xd +
            std::sqrt(std::pow(2.0 * m + 1.0, 2) / 2.0 + 2.0 * m * m) * y;
  dp.gamma = 1.0;
  dp.delta_rb = 0.0;
  return dp;
}

double open_drift_bound(double alpha, double beta, double E, double t) {
  require_nonneg(alpha, "alpha");
  require_nonneg(beta, "beta");
  require_nonneg(E, "E");
  require_nonneg(t, "t");
  if (alpha >= 1) throw ParameterError("open_drift_bound: alpha must be < 1");
  return 4.0 * (std::pow(2.0, 0.25) * std::sqrt(alpha * E * t) + beta * t);
}

double open_speed_limit_time(double alpha, double beta, double E, double d) {
  require_nonneg(alpha, "alpha");
  require_nonneg(beta, "beta");
  require_nonneg(E, "E");
  if (alpha >= 1) throw ParameterError("open_speed_limit_time: alpha must be < 1");
  if (!(d >= 0 && d <= 2)) throw ParameterError("open_speed_limit_time: d must lie in [0, 2]");
  if (d == 0) return 0.0;
  const double b = std::pow(2.0, 0.25) * std::sqrt(alpha * E);
  if (beta == 0 && b == 0) throw NoFiniteBound("open_speed_limit_time: drift vanishes, no finite time bound");
  // (√(√2 αE + dβ) − 2^{1/4}√(αE))/β without the cancellation
  const double root = d / (std::sqrt(b * b + d * beta) + b);
  return root * root;
}

double bounded_lindblad_difference(const std::vector<std::array<double, 4>>& norm_pairs, double t) {
  require_nonneg(t, "t");
  double s = 0.0;
  for (const auto& p : norm_pairs) {
    for (double v : p) require_nonneg(v, "norm");
    s += p[0] + p[1] * (p[2] + p[3]);
  }
  return t * s;
}

DriftParams brownian_alpha_beta(std::complex<double> gamma1, std::complex<double> delta1,
                                std::complex<double> gamma2, std::complex<double> delta2) {
  const double g1 = std::abs(gamma1), d1 = std::abs(delta1), g2 = std::abs(gamma2), d2 = std::abs(delta2);
  DriftParams dp;
  dp.alpha = (g1 + d1) * (g1 + d1) + (g2 + d2) * (g2 + d2);
  if (dp.alpha >= 1) throw ParameterError("brownian_alpha_beta: alpha >= 1 violates the open-system hypothesis");
  dp.beta = g1 * d1 + g2 * d2 + kBrownianKappa;
  dp.gamma = 1.0;
  dp.delta_rb = 0.0;
  return dp;
}

double pfeifer_bound(double gamma, double delta, double E, double dt) {
  const double g = gamma * E + delta;
  if (!(g >= 0)) throw ParameterError("pfeifer_bound: gamma E + delta must be >= 0");
  return std::sin(std::min(std::abs(dt) * std::sqrt(g), pi / 2));
}

double optimal_p_variance(double E) {
  require_nonneg(E, "E");
  const double s = std::sqrt(E) + std::sqrt(E + 1.0);
  return 0.5 * s * s;
}

bool dominance_feasible(double alpha, double beta) {
  if (alpha < 2) return false;
  return 2.0 * beta >= alpha - std::sqrt(alpha * (alpha - 2.0));
}

double universal_phi_lower(double s) {
  require_nonneg(s, "s");
  double v = 2.0 * std::sqrt(s * (pi + 2.0 * s) / (pi * pi + 4.0 * pi * s + 8.0 * s * s));
  if (s <= pi / 2) v = std::max(v, 2.0 * std::sqrt((s / pi) * (1.0 - s / pi)));
  return v;
}

namespace {

// largest circular gap between sorted angles in [0, 2π)
double max_gap(std::vector<double> a) {
  std::sort(a.begin(), a.end());
  double g = a.front() + 2 * pi - a.back();
  for (std::size_t i = 1; i < a.size(); ++i) g = std::max(g, a[i] - a[i - 1]);
  return g;
}

double wrap(double x) {
  x = std::fmod(x, 2 * pi);
  return x < 0 ? x + 2 * pi : x;
}

std::vector<double> dedupe(std::vector<double> a) {
  std::sort(a.begin(), a.end());
  std::vector<double> out;
  for (double x : a)
    if (out.empty() || x - out.back() > 1e-12) out.push_back(x);
  if (out.size() > 1 && out.front() + 2 * pi - out.back() <= 1e-12) out.pop_back();
  return out;
}

}  // namespace

MultiCopy multi_copy_queries(const CMat& U, const CMat& V) {
  if (U.rows() != U.cols() || U.rows() != V.rows() || V.rows() != V.cols() || U.rows() == 0)
    throw DimensionError("multi_copy_queries: U, V must be square of equal size");
  const double tol = tolerances().unitarity;
  const Eigen::Index d = U.rows();
  const CMat I = CMat::Identity(d, d);
  if (op_norm(CMat(U.adjoint() * U - I)) > tol || op_norm(CMat(V.adjoint() * V - I)) > tol)
    throw InvariantError("multi_copy_queries: inputs must be unitary");
  Eigen::ComplexEigenSolver<CMat> es(U.adjoint() * V);
  std::vector<double> ph;
  for (Eigen::Index i = 0; i < d; ++i) ph.push_back(wrap(std::arg(es.eigenvalues()(i))));
  ph = dedupe(ph);
  MultiCopy out;
  const double gap = max_gap(ph);
  out.Theta = ph.size() < 2 ? 0.0 : 2 * pi - gap;
  if (out.Theta < 1e-12) throw NoFiniteBound("multi_copy_queries: U and V agree up to a global phase");
  // rotate so the smallest arc containing the phases starts at 0
  std::sort(ph.begin(), ph.end());
  double start = ph.front(), widest = ph.front() + 2 * pi - ph.back();
  for (std::size_t i = 1; i < ph.size(); ++i)
    if (ph[i] - ph[i - 1] > widest) {
      widest = ph[i] - ph[i - 1];
      start = ph[i];
    }
  for (double& x : ph) x = wrap(x - start);
  std::sort(ph.begin(), ph.end());
  out.phases = ph;
  out.n = static_cast<int>(std::floor(pi / out.Theta + 1e-9)) + 1;

  // phases of W^{⊗k} are k-fold sums; 0 is strictly inside their hull iff every gap is < π
  const double margin = tolerances().hull_margin;
  std::vector<double> acc{0.0};
  for (int k = 1; k <= out.n + 16; ++k) {
    std::vector<double> next;
    for (double a : acc)
      for (double p : ph) next.push_back(wrap(a + p));
    acc = dedupe(next);
    if (k < out.n) continue;
    const bool inside = acc.size() >= 3 && max_gap(acc) < pi - margin;
    if (k == out.n) out.interior = inside;
    if (inside) {
      out.n_verified = k;
      break;
    }
  }
  return out;
}

double qubit_example_energy_lower(double theta) {
  if (!(theta > 0 && theta < pi)) throw ParameterError("qubit_example_energy_lower: theta must lie in (0, pi)");
  return 1.0 / 12.0 + std::sqrt(6.0) / (9.0 * theta);
}

}  // namespace gsk
