#pragma once

#include <array>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gsk/symplectic.hpp"

namespace gsk {

// scale tags carried by reports
inline constexpr const char* kHalvedDiamond = "halved_diamond";
inline constexpr const char* kDiamond = "diamond";
inline constexpr const char* kVector = "vector_norm";
inline constexpr const char* kNone = "none";

// Brownian-motion drift constant
inline constexpr double kBrownianKappa = 0.2047;

struct EnergyConstraint {
  enum class Hamiltonian { total_photon_number, abs_H, custom };
  double E = 0.0;
  Hamiltonian hamiltonian = Hamiltonian::total_photon_number;
  explicit EnergyConstraint(double e, Hamiltonian h = Hamiltonian::total_photon_number);
};

struct BoundReport {
  std::string name;
  std::optional<double> lower;
  std::optional<double> upper;
  std::map<std::string, double> params;
  std::string formula_ref;
  std::string scale = kNone;
  nlohmann::json extra = nlohmann::json::object();
};

nlohmann::json report_to_json(const BoundReport& r);

struct DriftParams {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 1.0;
  double delta_rb = 0.0;
};

double photon_energy_factor(double E);
BoundReport displacement_bounds(const Vec& z, const Vec& w, double E);
BoundReport symplectic_pair_bound(const SymplecticMatrix& S, const SymplecticMatrix& S_prime, double E);

double sk_F(int m);
double sk_G(double r);
BoundReport sk_theorem_bound(int m, double r, double E, double delta);

double closed_drift_bound(const DriftParams& dp, double E, double t);
double closed_speed_limit_time(const DriftParams& dp, double E, double d);

DriftParams quadratic_alpha_beta(const Vec& d_diag, const CMat& X, const CMat& Y);

double open_drift_bound(double alpha, double beta, double E, double t);
double open_speed_limit_time(double alpha, double beta, double E, double d);

// each entry: (||L†L - L'†L'||, ||L - L'||, ||L||, ||L'||)
double bounded_lindblad_difference(const std::vector<std::array<double, 4>>& norm_pairs, double t);

DriftParams brownian_alpha_beta(std::complex<double> gamma1, std::complex<double> delta1,
                                std::complex<double> gamma2, std::complex<double> delta2);

double pfeifer_bound(double gamma, double delta, double E, double dt);

double optimal_p_variance(double E);
bool dominance_feasible(double alpha, double beta);

double universal_phi_lower(double s);

struct MultiCopy {
  int n = 0;                      // ⌊π/Θ⌋ + 1
  double Theta = 0.0;
  bool interior = false;          // 0 strictly inside the hull at n
  std::optional<int> n_verified;  // first n (>= the formula value) passing the interior test
  std::vector<double> phases;     // eigenphases of U†V after global alignment
};
MultiCopy multi_copy_queries(const CMat& U, const CMat& V);

double qubit_example_energy_lower(double theta);

}  // namespace gsk
