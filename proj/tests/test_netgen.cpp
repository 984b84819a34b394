#include <cmath>
#include <numbers>

#include "doctest.h"

#include "gsk/errors.hpp"
#include "gsk/net.hpp"
#include "gsk/random.hpp"
#include "gsk/realizer.hpp"

using namespace gsk;

namespace {

Mat diag2(double a, double b) {
  Mat D = Mat::Zero(2, 2);
  D(0, 0) = a;
  D(1, 1) = b;
  return D;
}

GateSet rotation_pair(double angle) {
  GateSet gs;
  gs.generators.emplace("r+", SymplecticMatrix(rotation_block(angle)));
  gs.generators.emplace("r-", SymplecticMatrix(rotation_block(-angle)));
  return gs;
}

// worst distance from a rotation R(phi) to the net, phi swept over the circle
double rotation_gap(const BaseNet& net, int steps) {
  double worst = 0.0;
  for (int k = 0; k < steps; ++k) {
    const double phi = 2 * std::numbers::pi * k / steps;
    worst = std::max(worst, net.nearest(rotation_block(phi)).distance);
  }
  return worst;
}

}  // namespace

TEST_CASE("build_net packing and cardinality") {
  const Net net = build_net(1, 1.0, 0.25, 3000, 7);
  CHECK(net.cardinality_bound() == doctest::Approx(20736.0));
  CHECK(static_cast<double>(net.size()) <= 20736.0);
  CHECK(net.elements().front().isApprox(Mat::Identity(2, 2)));
  for (std::size_t i = 0; i < net.size(); ++i) {
    REQUIRE(is_symplectic(net.elements()[i], 1e-8));
    REQUIRE(op_distance(net.elements()[i], Mat::Identity(2, 2)) <= 1.0 + 1e-9);
    for (std::size_t j = i + 1; j < net.size(); ++j)
      REQUIRE(op_distance(net.elements()[i], net.elements()[j]) >= 0.25);
  }
}

TEST_CASE("build_net is seeded and deterministic") {
  const Net a = build_net(1, 1.0, 0.4, 500, 3);
  const Net b = build_net(1, 1.0, 0.4, 500, 3);
  CHECK(a.to_json().dump() == b.to_json().dump());
}

TEST_CASE("build_net edge cases") {
  const Net one = build_net(1, 0.5, 0.5, 50, 1);
  CHECK(one.size() >= 1);
  CHECK(net_lookup(one, Mat::Identity(2, 2)).second == 0.0);
  CHECK_THROWS_AS(build_net(1, 0.5, 0.6, 10, 1), ParameterError);
  CHECK_THROWS_AS(build_net(1, 1.0, 0.5, 0, 1), ParameterError);
}

TEST_CASE("build_net m=2 stays in region") {
  const Net net = build_net(2, 0.5, 0.45, 200, 11);
  CHECK(static_cast<double>(net.size()) <= net.cardinality_bound());
  for (const Mat& S : net.elements()) CHECK(op_distance(S, Mat::Identity(4, 4)) <= 0.5 + 1e-9);
}

TEST_CASE("net_lookup") {
  Net net(1, 1.0, 0.2);
  net.add(diag2(1.1, 1 / 1.1));
  net.add(diag2(1 / 1.1, 1.1));
  auto [idx, d] = net_lookup(net, Mat::Identity(2, 2));
  CHECK(idx == 0);
  CHECK(d == doctest::Approx(0.1));

  net.add(Mat::Identity(2, 2));
  CHECK(net_lookup(net, Mat::Identity(2, 2)).first == 2);
  CHECK(net_lookup(net, Mat::Identity(2, 2)).second == 0.0);
  CHECK(net.nearest(Mat::Identity(2, 2)).label == "2");

  Net empty(1, 1.0, 0.2);
  CHECK_THROWS(net_lookup(empty, Mat::Identity(2, 2)));
}

TEST_CASE("a maximal packing covers sampled targets") {
  const Net net = build_net(1, 1.0, 0.35, 20000, 5);
  Rng rng(77);
  std::vector<Mat> probes;
  for (int k = 0; k < 2000; ++k) probes.push_back(sample_region(1, 1.0, rng));
  const CoverageReport cr = coverage_report(net, probes);
  CHECK(cr.probes == 2000);
  CHECK(cr.max_distance <= 0.35);
  CHECK(cr.covered);
}

TEST_CASE("net JSON round trip") {
  const Net net = build_net(1, 1.0, 0.5, 200, 2);
  const Net back = Net::from_json(net.to_json());
  REQUIRE(back.size() == net.size());
  for (std::size_t i = 0; i < net.size(); ++i) CHECK((back.elements()[i] - net.elements()[i]).norm() == 0.0);
  CHECK(back.epsilon() == net.epsilon());
  auto generic = net_from_json(net.to_json());
  CHECK(generic->modes() == 1);
}

TEST_CASE("sample_region respects radius") {
  Rng rng(4);
  for (int m = 1; m <= 2; ++m)
    for (int k = 0; k < 200; ++k) {
      const Mat S = sample_region(m, 0.7, rng);
      CHECK(is_symplectic(S, 1e-9));
      CHECK(op_distance(S, Mat::Identity(2 * m, 2 * m)) <= 0.7 + 1e-12);
    }
}

TEST_CASE("lattice net covers at its radius") {
  for (int m = 1; m <= 2; ++m) {
    const LatticeNet net(m, 1.0, 1e-3);
    Rng rng(10 + m);
    for (int k = 0; k < 300; ++k) {
      const Mat S = sample_region(m, 1.0, rng);
      const LookupResult lr = net.nearest(S);
      REQUIRE(lr.distance <= 1e-3);
      CHECK(is_symplectic(lr.element, 1e-9));
      CHECK((net.element(lr.label) - lr.element).norm() <= 1e-12);
    }
    auto back = net_from_json(net.to_json());
    CHECK(back->epsilon() == 1e-3);
  }
}

TEST_CASE("expand_generators: identity generator") {
  GateSet gs;
  gs.generators.emplace("I", SymplecticMatrix::identity(1));
  for (int depth : {1, 3, 6}) {
    const Expansion ex = expand_generators(gs, 0.1, depth, 1.0, 0);
    CHECK(ex.net.size() == 1);
  }
}

TEST_CASE("expand_generators: stored words reproduce elements") {
  GateSet gs = rotation_pair(1.0);
  gs.generators.emplace("s+", SymplecticMatrix(diag2(1.2, 1 / 1.2)));
  gs.generators.emplace("s-", SymplecticMatrix(diag2(1 / 1.2, 1.2)));
  REQUIRE(gs.closed_under_inverse());
  const Expansion ex = expand_generators(gs, 0.2, 5, 2.0, 200);
  CHECK(ex.net.size() > 10);
  const TokenResolver gen = [&](const std::string& l) { return gs.generators.at(l).entries(); };
  for (std::size_t i = 0; i < ex.net.size(); ++i) {
    const Mat W = resolve(ex.net.words()[i], gen, 2);
    REQUIRE((W - ex.net.elements()[i]).cwiseAbs().maxCoeff() <= 1e-10);
  }
  for (std::size_t i = 0; i < ex.net.size(); ++i)
    for (std::size_t j = i + 1; j < ex.net.size(); ++j)
      REQUIRE(op_distance(ex.net.elements()[i], ex.net.elements()[j]) >= 0.1);
}

TEST_CASE("expand_generators: rotation circle") {
  // an irrational multiple of pi generates a dense subgroup of SO(2)
  const Expansion dense = expand_generators(rotation_pair(1.0), 0.1, 200, 2.0, 0);
  CHECK(rotation_gap(dense.net, 4000) <= 2 * std::asin(0.05) + 1e-9);

  // pi/8 only reaches the 16 element cyclic group
  const Expansion cyclic = expand_generators(rotation_pair(std::numbers::pi / 8), 0.1, 40, 2.0, 500);
  CHECK(cyclic.net.size() == 16);
  CHECK(rotation_gap(cyclic.net, 4000) == doctest::Approx(2 * std::sin(std::numbers::pi / 32)).epsilon(1e-4));
  CHECK_FALSE(cyclic.coverage.covered);
  CHECK(cyclic.coverage.uncovered > 0);
}

TEST_CASE("expand_generators rejects sets not closed under inverse") {
  GateSet gs;
  gs.generators.emplace("s", SymplecticMatrix(diag2(2, 0.5)));
  CHECK_THROWS_AS(expand_generators(gs, 0.1, 2, 1.0), InvariantError);
}

TEST_CASE("eta is continuous and decreasing on [0, pi/2]") {
  for (double kappa : {1.01, 1.5, 4.0, 30.0}) {
    CHECK(realizer_eta(kappa, 0.0) == doctest::Approx(kappa));
    CHECK(realizer_eta(kappa, std::numbers::pi / 2) == doctest::Approx(1.0));
    double prev = realizer_eta(kappa, 0.0);
    for (int k = 1; k <= 400; ++k) {
      const double e = realizer_eta(kappa, std::numbers::pi / 2 * k / 400);
      REQUIRE(e <= prev + 1e-12);
      REQUIRE(prev - e < 0.05 * kappa);
      prev = e;
    }
  }
  // eta is the top singular value of the 2x2 block
  Mat B(2, 2);
  const double kappa = 2.5, th = 0.7;
  B << kappa * std::cos(th), -std::sin(th), std::sin(th), std::cos(th) / kappa;
  CHECK(realizer_eta(kappa, th) == doctest::Approx(op_norm(B)).epsilon(1e-12));
}

TEST_CASE("singular_value_realizer examples") {
  const SymplecticMatrix S(diag2(2, 0.5));
  const TokenResolver none;

  SUBCASE("mu = 3 gives singular values {3, 1/3}") {
    Vec mu(1);
    mu << 3.0;
    const Realization rz = singular_value_realizer(mu, S);
    CHECK(rz.n == 1);
    Eigen::JacobiSVD<Mat> svd(rz.T);
    CHECK(svd.singularValues()(0) == doctest::Approx(3.0).epsilon(1e-8));
    CHECK(svd.singularValues()(1) == doctest::Approx(1.0 / 3).epsilon(1e-8));
    const TokenResolver alpha = [&](const std::string& l) { return rz.alphabet.at(l); };
    CHECK((resolve(rz.word, alpha, 2) - rz.T).norm() <= 1e-12);
    CHECK(is_symplectic(rz.T, 1e-10));
  }
  SUBCASE("mu = 1 gives theta = pi/2 and orthogonal T") {
    Vec mu(1);
    mu << 1.0;
    const Realization rz = singular_value_realizer(mu, S);
    CHECK(rz.thetas(0) == doctest::Approx(std::numbers::pi / 2));
    CHECK(is_orthogonal(rz.T, 1e-10));
  }
  SUBCASE("mu = lambda^{2n} gives theta = 0") {
    Vec mu(1);
    mu << 16.0;
    const Realization rz = singular_value_realizer(mu, S);
    CHECK(rz.n == 2);
    CHECK(rz.thetas(0) == 0.0);
  }
  SUBCASE("orthogonal active gate is rejected") {
    Vec mu(1);
    mu << 2.0;
    CHECK_THROWS_AS(singular_value_realizer(mu, SymplecticMatrix(rotation_block(0.3))), ParameterError);
  }
}

TEST_CASE("singular_value_realizer two modes") {
  Rng rng(21);
  const SymplecticMatrix S = random_symplectic(2, 0.8, rng);
  Vec mu(2);
  mu << 2.5, 1.3;
  const Realization rz = singular_value_realizer(mu, S);
  CHECK(is_symplectic(rz.T, 1e-8));
  Eigen::JacobiSVD<Mat> svd(rz.T);
  std::vector<double> big;
  for (Eigen::Index i = 0; i < 4; ++i)
    if (svd.singularValues()(i) >= 1.0) big.push_back(svd.singularValues()(i));
  REQUIRE(big.size() == 2);
  CHECK(big[0] == doctest::Approx(2.5).epsilon(1e-8));
  CHECK(big[1] == doctest::Approx(1.3).epsilon(1e-8));
  const TokenResolver alpha = [&](const std::string& l) { return rz.alphabet.at(l); };
  CHECK((resolve(rz.word, alpha, 4) - rz.T).norm() <= 1e-9 * rz.T.norm());
}

TEST_CASE("singular_value_realizer is monotone in mu") {
  const SymplecticMatrix S(diag2(1.5, 1 / 1.5));
  int prev_n = 0;
  double prev_theta = 10.0;
  for (double mu = 1.0; mu <= 20.0; mu += 0.25) {
    Vec v(1);
    v << mu;
    const Realization rz = singular_value_realizer(v, S);
    CHECK((rz.n > prev_n || (rz.n == prev_n && rz.thetas(0) <= prev_theta + 1e-12)));
    prev_n = rz.n;
    prev_theta = rz.thetas(0);
    Eigen::JacobiSVD<Mat> svd(rz.T);
    CHECK(svd.singularValues()(0) == doctest::Approx(std::max(mu, 1.0)).epsilon(1e-8));
  }
}
