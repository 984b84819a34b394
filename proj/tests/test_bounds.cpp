#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"

#include "gsk/bounds.hpp"
#include "gsk/errors.hpp"
#include "gsk/random.hpp"

using namespace gsk;
using std::numbers::pi;

namespace {

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

CMat cdiag(std::initializer_list<cplx> d) {
  CMat M = CMat::Zero(d.size(), d.size());
  int i = 0;
  for (cplx x : d) M(i, i) = x, ++i;
  return M;
}

}  // namespace

TEST_CASE("photon_energy_factor") {
  CHECK(photon_energy_factor(0) == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(photon_energy_factor(1) == doctest::Approx(1.70711).epsilon(1e-5));
  CHECK(photon_energy_factor(2) > photon_energy_factor(1));
  CHECK_THROWS_AS(photon_energy_factor(-0.1), ParameterError);
}

TEST_CASE("displacement_bounds") {
  const BoundReport zero = displacement_bounds(vec2(0.3, -0.2), vec2(0.3, -0.2), 1.0);
  CHECK(*zero.lower == 0.0);
  CHECK(*zero.upper == 0.0);

  const BoundReport r = displacement_bounds(vec2(1, 0), vec2(0, 0), 0.0);
  CHECK(*r.lower == doctest::Approx(std::sqrt(1 - std::exp(-0.5))).epsilon(1e-14));
  CHECK(*r.lower == doctest::Approx(0.627271).epsilon(1e-6));
  CHECK(*r.upper == doctest::Approx(0.64964).epsilon(1e-5));
  CHECK(r.scale == std::string(kHalvedDiamond));

  CHECK(*displacement_bounds(vec2(10, 0), vec2(0, 0), 1.0).upper == 1.0);

  for (double E : {0.0, 0.3, 1.0, 4.0})
    for (double u = 0.01; u < 3; u += 0.01) {
      const BoundReport b = displacement_bounds(vec2(u, 0), vec2(0, 0), E);
      REQUIRE(*b.lower <= *b.upper);
      REQUIRE(*b.lower >= 0);
      REQUIRE(*b.upper <= 1);
      if (photon_energy_factor(E) * u < pi / 2) REQUIRE(*b.lower < *b.upper);
    }
  CHECK_THROWS_AS(displacement_bounds(vec2(0, 0), Vec::Zero(4), 1.0), DimensionError);
}

TEST_CASE("symplectic_pair_bound") {
  const SymplecticMatrix I = SymplecticMatrix::identity(1);
  CHECK(*symplectic_pair_bound(I, I, 1.0).upper == 0.0);
  Rng rng(2);
  const SymplecticMatrix S = random_symplectic(2, 0.3, rng);
  CHECK(*symplectic_pair_bound(S, S, 1.0).upper == doctest::Approx(0.0).epsilon(1e-6));

  Mat D = Mat::Zero(2, 2);
  D(0, 0) = std::exp(0.1);
  D(1, 1) = std::exp(-0.1);
  const double hs = std::hypot(std::exp(0.1) - 1, std::exp(-0.1) - 1);
  const double expect = 2 * std::sqrt((std::sqrt(6.0) + std::sqrt(10.0) + 5 * std::sqrt(2.0)) * 2) *
                        (std::sqrt(pi / (std::exp(0.1) + 1)) + std::sqrt(2 * std::exp(0.1))) * std::sqrt(hs);
  const BoundReport b = symplectic_pair_bound(SymplecticMatrix(D), I, 1.0);
  CHECK(b.extra.at("formula_value").get<double>() == doctest::Approx(expect).epsilon(1e-12));
  CHECK(*b.upper == 2.0);

  // √(E+1) scaling, on an instance small enough to stay below the clamp
  Mat small = Mat::Zero(2, 2);
  small(0, 0) = std::exp(1e-5);
  small(1, 1) = std::exp(-1e-5);
  const double b3 = *symplectic_pair_bound(SymplecticMatrix(small), I, 3.0).upper;
  const double b0 = *symplectic_pair_bound(SymplecticMatrix(small), I, 0.0).upper;
  CHECK(b3 / b0 == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("sk_theorem_bound") {
  CHECK(*sk_theorem_bound(1, 1, 1, 0).upper == 0.0);
  CHECK(sk_F(1) == doctest::Approx(8.47).epsilon(1e-3));
  CHECK(sk_G(0) == doctest::Approx(6.506).epsilon(1e-3));
  const BoundReport r = sk_theorem_bound(1, 1, 1, 1e-4);
  const double raw = sk_F(1) * sk_G(1) * std::sqrt(2.0) * 1e-2;
  CHECK(r.extra.at("formula_value").get<double>() == doctest::Approx(raw));
  CHECK(*r.upper == std::min(raw, 2.0));
  CHECK(*sk_theorem_bound(1, 1, 1, 1e-12).upper == doctest::Approx(sk_F(1) * sk_G(1) * std::sqrt(2.0) * 1e-6));
}

TEST_CASE("closed drift and speed limit") {
  const DriftParams dp{1.0, 0.0, 1.0, 0.0};
  CHECK(closed_drift_bound(dp, 1.0, 0.0) == 0.0);
  CHECK(closed_speed_limit_time(dp, 1.0, 0.0) == 0.0);
  for (double E : {0.1, 1.0, 3.0})
    for (double t : {0.01, 0.5, 2.0}) CHECK(closed_drift_bound(dp, E, t) == doctest::Approx(2 * std::sqrt(2 * E * t)));
  CHECK_THROWS_AS(closed_speed_limit_time(DriftParams{0.0, 0.0, 1.0, 0.0}, 1.0, 0.5), NoFiniteBound);
  CHECK_THROWS_AS(closed_speed_limit_time(dp, 1.0, 2.5), ParameterError);
  // pure beta: time d / beta
  CHECK(closed_speed_limit_time(DriftParams{0.0, 0.5, 1.0, 0.0}, 1.0, 0.4) == doctest::Approx(0.8));
}

TEST_CASE("open drift and speed limit") {
  CHECK(open_drift_bound(0.3, 0.2, 1.0, 0.0) == 0.0);
  CHECK(open_drift_bound(0.0, 0.2, 1.0, 1.5) == doctest::Approx(4 * 0.2 * 1.5));
  CHECK(open_speed_limit_time(0.0, 0.5, 1.0, 0.4) == doctest::Approx(0.4 / 0.5));
  for (double a : {0.1, 0.5, 0.9})
    for (double Et : {0.01, 1.0, 7.0})
      CHECK(std::pow(2.0, 0.25) * std::sqrt(a * Et) == doctest::Approx(std::sqrt(std::sqrt(2.0) * a * Et)).epsilon(1e-14));
  const double a = 0.3, b = 0.7, E = 2.0, d = 1.1;
  const double direct = std::pow((std::sqrt(std::sqrt(2.0) * a * E + d * b) - std::pow(2.0, 0.25) * std::sqrt(a * E)) / b, 2);
  CHECK(open_speed_limit_time(a, b, E, d) == doctest::Approx(direct).epsilon(1e-12));
  CHECK_THROWS_AS(open_drift_bound(1.0, 0.1, 1.0, 1.0), ParameterError);
  CHECK_THROWS_AS(open_speed_limit_time(1.2, 0.1, 1.0, 1.0), ParameterError);
  CHECK_THROWS_AS(open_speed_limit_time(0.0, 0.0, 1.0, 1.0), NoFiniteBound);
}

TEST_CASE("speed-limit round trip on random grids") {
  Rng rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    const DriftParams dp{3 * u(rng), 2 * u(rng) + 1e-3, 2 * u(rng), u(rng)};
    const double E = 5 * u(rng), d = 2 * u(rng);
    const double t = closed_speed_limit_time(dp, E, d);
    REQUIRE(closed_drift_bound(dp, E, t) >= d - 1e-9);
    const double a = 0.999 * u(rng), b = 2 * u(rng) + 1e-3;
    const double to = open_speed_limit_time(a, b, E, d);
    REQUIRE(open_drift_bound(a, b, E, to) >= d - 1e-9);
  }
}

TEST_CASE("quadratic_alpha_beta") {
  Vec d(1);
  d << 1.0;
  const DriftParams z = quadratic_alpha_beta(d, cdiag({1.0}), cdiag({0.0}));
  CHECK(z.alpha == 0.0);
  CHECK(z.beta == 0.0);
  const double y = 0.3;
  const DriftParams p = quadratic_alpha_beta(d, cdiag({1.0}), cdiag({cplx(0, y)}));
  CHECK(p.alpha == doctest::Approx((1 + std::sqrt(1.5)) * y));
  CHECK(p.beta == doctest::Approx(std::sqrt(6.5) * y));
  const DriftParams q = quadratic_alpha_beta(d, cdiag({1.0}), cdiag({cplx(0, 2 * y)}));
  CHECK(q.alpha == doctest::Approx(2 * p.alpha));
  CHECK(q.beta == doctest::Approx(2 * p.beta));

  Vec d2(2);
  d2 << 1.0, 2.0;
  CMat X = cdiag({1.1, 2.0});
  X(0, 1) = cplx(0.1, 0.2);
  X(1, 0) = std::conj(X(0, 1));
  const DriftParams two = quadratic_alpha_beta(d2, X, CMat::Zero(2, 2));
  const double xd = (X - cdiag({1.0, 2.0})).norm();
  CHECK(two.alpha == doctest::Approx(std::sqrt(1.5) * xd));
  CHECK(two.beta == doctest::Approx(xd / std::sqrt(2.0)));

  X(0, 1) = 1.0;
  CHECK_THROWS_AS(quadratic_alpha_beta(d2, X, CMat::Zero(2, 2)), InvariantError);
  d2(1) = 0.0;
  CHECK_THROWS_AS(quadratic_alpha_beta(d2, cdiag({1, 1}), CMat::Zero(2, 2)), ParameterError);
}

TEST_CASE("bounded_lindblad_difference") {
  CHECK(bounded_lindblad_difference({{0, 0, 1, 1}}, 3.0) == 0.0);
  CHECK(bounded_lindblad_difference({{0.1, 0.05, 1, 1}}, 2.0) == doctest::Approx(0.4));
  const std::vector<std::array<double, 4>> pairs{{0.1, 0.05, 1, 1}, {0.2, 0.01, 0.5, 3}};
  CHECK(bounded_lindblad_difference(pairs, 3.0) == doctest::Approx(3 * bounded_lindblad_difference(pairs, 1.0)));
}

TEST_CASE("brownian_alpha_beta") {
  const DriftParams z = brownian_alpha_beta(0, 0, 0, 0);
  CHECK(z.alpha == 0.0);
  CHECK(z.beta == 0.2047);
  const DriftParams p = brownian_alpha_beta(0.1, 0.1, 0, 0);
  CHECK(p.alpha == doctest::Approx(0.04));
  CHECK(p.beta == doctest::Approx(0.2147));
  const DriftParams a = brownian_alpha_beta(cplx(0.1, 0.05), 0.02, cplx(0, 0.2), 0.1);
  const DriftParams b = brownian_alpha_beta(cplx(0.2, 0.1), 0.04, cplx(0, 0.4), 0.2);
  CHECK(b.alpha == doctest::Approx(4 * a.alpha));
  CHECK_THROWS_AS(brownian_alpha_beta(0.6, 0.5, 0, 0), ParameterError);
}

TEST_CASE("pfeifer_bound") {
  CHECK(pfeifer_bound(2, 1, 0, 0) == 0.0);
  CHECK(pfeifer_bound(2, 1, 3, 100) == 1.0);
  CHECK(pfeifer_bound(2, 1, 0, 1) == doctest::Approx(0.8415).epsilon(1e-4));
  CHECK(pfeifer_bound(2, 1, 0, -1) == pfeifer_bound(2, 1, 0, 1));
  CHECK_THROWS_AS(pfeifer_bound(1, -2, 1, 1), ParameterError);
}

TEST_CASE("optimal variance and dominance") {
  CHECK(optimal_p_variance(0) == 0.5);
  CHECK(optimal_p_variance(1) == doctest::Approx(2.914).epsilon(1e-3));
  // squeezed vacuum with sinh² r = E has <p²> = e^{2r}/2
  for (double E : {0.25, 1.0, 5.0}) CHECK(optimal_p_variance(E) == doctest::Approx(std::exp(2 * std::asinh(std::sqrt(E))) / 2));
  CHECK(dominance_feasible(2, 1));
  CHECK_FALSE(dominance_feasible(2, 0.9));
  CHECK_FALSE(dominance_feasible(1.9, 100));
  CHECK(dominance_feasible(4, 0.6));
  CHECK_FALSE(dominance_feasible(4, 0.5));
}

TEST_CASE("universal_phi_lower") {
  CHECK(universal_phi_lower(0) == 0.0);
  CHECK(universal_phi_lower(pi / 2) == doctest::Approx(1.0));
  for (double s : {1e-6, 1e-5, 1e-4}) CHECK(universal_phi_lower(s) == doctest::Approx(2 * std::sqrt(s / pi)).epsilon(1e-2));
  const double s = 0.1;
  CHECK(universal_phi_lower(s) >= 2 * std::sqrt(s * (pi + 2 * s) / (pi * pi + 4 * pi * s + 8 * s * s)));
  for (double x = 0; x < 5; x += 0.01) REQUIRE(universal_phi_lower(x) <= 2.0);
}

TEST_CASE("multi_copy_queries examples") {
  const CMat I = CMat::Identity(2, 2);
  const MultiCopy q = multi_copy_queries(I, cdiag({1.0, cplx(0, 1)}));
  CHECK(q.Theta == doctest::Approx(pi / 2));
  CHECK(q.n == 3);
  CHECK(q.interior);
  CHECK(q.n_verified.value() == 3);

  CHECK_THROWS_AS(multi_copy_queries(I, -I), NoFiniteBound);
  CHECK_THROWS_AS(multi_copy_queries(I, std::polar(1.0, 0.7) * I), NoFiniteBound);

  const MultiCopy flip = multi_copy_queries(I, cdiag({1.0, -1.0}));
  CHECK(flip.Theta == doctest::Approx(pi));
  CHECK(flip.n == 2);
  CHECK_FALSE(flip.interior);
  CHECK_FALSE(flip.n_verified.has_value());

  // a global phase on V does not change the answer
  const MultiCopy ph = multi_copy_queries(I, std::polar(1.0, 2.1) * cdiag({1.0, cplx(0, 1)}));
  CHECK(ph.Theta == doctest::Approx(pi / 2));
  CHECK(ph.n == 3);

  CHECK_THROWS_AS(multi_copy_queries(I, cdiag({1.0, 2.0})), InvariantError);
}

TEST_CASE("multi_copy_queries properties") {
  const CMat I = CMat::Identity(2, 2);
  int prev_n = 0;
  for (int k = 400; k >= 1; --k) {
    const double th = pi * k / 401.0;
    const MultiCopy q = multi_copy_queries(I, cdiag({1.0, std::polar(1.0, th)}));
    REQUIRE(q.Theta == doctest::Approx(th));
    REQUIRE(q.n * q.Theta > pi);
    REQUIRE(q.n >= prev_n);
    REQUIRE(q.n_verified.has_value());
    prev_n = q.n;
  }
  Rng rng(6);
  for (int k = 0; k < 50; ++k) {
    const CMat U = random_unitary(3, rng), V = random_unitary(3, rng);
    const MultiCopy q = multi_copy_queries(U, V);
    CHECK(q.n * q.Theta > pi);
    CHECK(q.Theta <= 2 * pi);
  }
}

TEST_CASE("qubit_example_energy_lower") {
  CHECK(qubit_example_energy_lower(pi / 2) == doctest::Approx(0.2566).epsilon(1e-3));
  CHECK(qubit_example_energy_lower(1.0) > qubit_example_energy_lower(2.0));
  CHECK(qubit_example_energy_lower(pi - 1e-12) == doctest::Approx(1.0 / 12 + std::sqrt(6.0) / (9 * pi)));
  CHECK_THROWS_AS(qubit_example_energy_lower(0.0), ParameterError);
  CHECK_THROWS_AS(qubit_example_energy_lower(pi), ParameterError);
}

TEST_CASE("report JSON") {
  const BoundReport r = displacement_bounds(vec2(0.5, 0), vec2(0, 0), 1.0);
  const auto j = report_to_json(r);
  CHECK(j.at("name") == "displacement");
  CHECK(j.at("scale") == "halved_diamond");
  CHECK(j.at("lower").get<double>() <= j.at("upper").get<double>());
  CHECK(report_to_json(r).dump() == j.dump());
  CHECK(report_to_json(symplectic_pair_bound(SymplecticMatrix::identity(1), SymplecticMatrix::identity(1), 1)).at("lower").is_null());
}
