#include "gsk/net.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "gsk/errors.hpp"

namespace gsk {

// ---------- spatial index ----------

SpatialIndex::SpatialIndex(double cell, int n) : cell_(cell), n_(n), used_(std::min(4, n * n)) {}

std::size_t SpatialIndex::KeyHash::operator()(const Key& k) const {
  std::size_t h = 1469598103934665603ull;
  for (long v : k) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ull;
  return h;
}

SpatialIndex::Key SpatialIndex::key_of(const Mat& S) const {
  Key k{0, 0, 0, 0};
  for (int i = 0; i < used_; ++i) k[i] = static_cast<long>(std::floor(S(i / n_, i % n_) / cell_));
  return k;
}

void SpatialIndex::insert(const Mat& S, std::size_t id) { buckets_[key_of(S)].push_back(id); }

// ---------- Lie algebra helpers ----------

std::vector<Mat> symmetric_basis(int n) {
  std::vector<Mat> basis;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Mat B = Mat::Zero(n, n);
      if (i == j) {
        B(i, i) = 1.0;
      } else {
        B(i, j) = B(j, i) = 1.0 / std::sqrt(2.0);
      }
      basis.push_back(std::move(B));
    }
  return basis;
}

Mat exp_hamiltonian(const Mat& X) {
  if (X.rows() == 2) {
    const double q = -X.determinant();
    double c, s;
    if (std::abs(q) < 1e-8) {
      c = 1.0 + q / 2.0;
      s = 1.0 + q / 6.0;
    } else if (q > 0) {
      const double u = std::sqrt(q);
      c = std::cosh(u);
      s = std::sinh(u) / u;
    } else {
      const double u = std::sqrt(-q);
      c = std::cos(u);
      s = std::sin(u) / u;
    }
    return c * Mat::Identity(2, 2) + s * X;
  }
  return X.exp();
}

Mat log_symplectic(const Mat& S) {
  const int n = static_cast<int>(S.rows());
  const Mat W = omega(n / 2);
  Mat X;
  if (n == 2) {
    const double half = 0.5 * S.trace();
    const Mat N = S - half * Mat::Identity(2, 2);
    double f;
    if (std::abs(half - 1.0) < 1e-10) {
      f = 1.0 + (half - 1.0) / 3.0;
    } else if (half > 1.0) {
      const double u = std::acosh(half);
      f = u / std::sinh(u);
    } else if (half > -1.0) {
      const double t = std::acos(half);
      f = t / std::sin(t);
    } else {
      throw BranchError("log_symplectic: no real principal logarithm");
    }
    X = f * N;
  } else {
    X = S.log();
  }
  const Mat A = -W * X;
  return W * (0.5 * (A + A.transpose()));
}

// ---------- explicit net ----------

Net::Net(int m, double r, double epsilon) : m_(m), r_(r), epsilon_(epsilon) {
  if (m < 1) throw ParameterError("net: m must be >= 1");
  if (!(epsilon > 0)) throw ParameterError("net: epsilon must be positive");
}

void Net::add(Mat S, std::optional<GateWord> w) {
  if (S.rows() != 2 * m_ || S.cols() != 2 * m_) throw DimensionError("net: element has wrong dimension");
  if (w) {
    if (words_.size() != elements_.size()) throw InvariantError("net: mixing worded and unworded elements");
    words_.push_back(std::move(*w));
  } else if (!words_.empty()) {
    throw InvariantError("net: element without word in a worded net");
  }
  elements_.push_back(std::move(S));
}

double Net::cardinality_bound() const { return std::pow(3.0 * r_ / epsilon_, 4.0 * m_ * m_); }

std::pair<std::size_t, double> net_lookup(const Net& net, const Mat& S) {
  if (net.size() == 0) throw InvariantError("net_lookup: empty net");
  std::size_t best = 0;
  double bd = std::numeric_limits<double>::infinity();
  const auto& el = net.elements();
  for (std::size_t i = 0; i < el.size(); ++i) {
    if ((el[i] - S).cwiseAbs().maxCoeff() >= bd) continue;
    const double d = op_distance(el[i], S);
    if (d < bd) {
      bd = d;
      best = i;
    }
  }
  return {best, bd};
}

LookupResult Net::nearest(const Mat& S) const {
  const auto [i, d] = net_lookup(*this, S);
  return {std::to_string(i), elements_[i], d};
}

Mat Net::element(const std::string& label) const {
  std::size_t pos = 0;
  const unsigned long i = std::stoul(label, &pos);
  if (pos != label.size() || i >= elements_.size()) throw std::out_of_range("net: no element " + label);
  return elements_[i];
}

GateWord Net::expand(const std::string& label) const {
  if (words_.empty()) return BaseNet::expand(label);
  return words_.at(std::stoul(label));
}

nlohmann::json Net::to_json() const {
  nlohmann::json els = nlohmann::json::array(), ws = nlohmann::json::array();
  for (const auto& e : elements_) els.push_back(matrix_to_json(e));
  for (const auto& w : words_) ws.push_back(word_to_json(w));
  return {{"m", m_}, {"r", r_}, {"epsilon", epsilon_}, {"elements", els}, {"words", ws}};
}

Net Net::from_json(const nlohmann::json& j) {
  Net net(j.at("m").get<int>(), j.at("r").get<double>(), j.at("epsilon").get<double>());
  const auto& els = j.at("elements");
  const bool worded = j.contains("words") && !j.at("words").empty();
  if (worded && j.at("words").size() != els.size()) throw DimensionError("net JSON: words and elements differ in length");
  for (std::size_t i = 0; i < els.size(); ++i) {
    Mat S = matrix_from_json(els[i]);
    if (!is_symplectic(S, 1e-8)) throw InvariantError("net JSON: element " + std::to_string(i) + " is not symplectic");
    if (worded)
      net.add(std::move(S), word_from_json(j.at("words")[i]));
    else
      net.add(std::move(S));
  }
  return net;
}

// ---------- lattice net ----------

LatticeNet::LatticeNet(int m, double r, double epsilon) : m_(m), r_(r), epsilon_(epsilon) {
  if (m < 1) throw ParameterError("lattice net: m must be >= 1");
  if (!(epsilon > 0) || !(r > 0)) throw ParameterError("lattice net: epsilon and r must be positive");
  const double d = m * (2.0 * m + 1.0);
  // rounding moves the generator by at most (h/2)√d in Frobenius norm; exp is
  // Lipschitz with constant e^{L} near logs of norm L
  const double L = std::log1p(r) + r + epsilon;
  h_ = 2.0 * epsilon / (std::sqrt(d) * std::exp(L));
}

Mat LatticeNet::element_of(const std::vector<long>& k) const {
  const int n = 2 * m_;
  const auto basis = symmetric_basis(n);
  if (k.size() != basis.size()) throw DimensionError("lattice label has wrong length");
  Mat A = Mat::Zero(n, n);
  for (std::size_t i = 0; i < k.size(); ++i) A += (static_cast<double>(k[i]) * h_) * basis[i];
  return exp_hamiltonian(omega(m_) * A);
}

LookupResult LatticeNet::nearest(const Mat& S) const {
  const int n = 2 * m_;
  if (S.rows() != n || S.cols() != n) throw DimensionError("lattice lookup: dimension mismatch");
  const Mat A = -omega(m_) * log_symplectic(S);
  const auto basis = symmetric_basis(n);
  std::vector<long> k(basis.size());
  std::ostringstream label;
  label << "lat:";
  for (std::size_t i = 0; i < basis.size(); ++i) {
    k[i] = std::lround((A.cwiseProduct(basis[i])).sum() / h_);
    label << (i ? "," : "") << k[i];
  }
  Mat E = element_of(k);
  const double d = op_distance(E, S);
  return {label.str(), std::move(E), d};
}

Mat LatticeNet::element(const std::string& label) const {
  if (label.rfind("lat:", 0) != 0) throw std::out_of_range("lattice net: bad label " + label);
  std::vector<long> k;
  std::stringstream ss(label.substr(4));
  std::string part;
  while (std::getline(ss, part, ',')) k.push_back(std::stol(part));
  return element_of(k);
}

nlohmann::json LatticeNet::to_json() const {
  return {{"kind", "lattice"}, {"m", m_}, {"r", r_}, {"epsilon", epsilon_}, {"spacing", h_}};
}

std::unique_ptr<BaseNet> net_from_json(const nlohmann::json& j) {
  if (j.value("kind", std::string("explicit")) == "lattice")
    return std::make_unique<LatticeNet>(j.at("m").get<int>(), j.at("r").get<double>(), j.at("epsilon").get<double>());
  return std::make_unique<Net>(Net::from_json(j));
}

// ---------- gate sets ----------

int GateSet::modes() const {
  if (generators.empty()) throw InvariantError("gate set is empty");
  return generators.begin()->second.modes();
}

bool GateSet::closed_under_inverse() const {
  for (const auto& [label, g] : generators) {
    const Mat gi = symplectic_inverse(g).entries();
    bool found = false;
    for (const auto& [l2, h] : generators)
      if (h.modes() == g.modes() && op_norm(Mat(h.entries() - gi)) <= 1e-10) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

GateSet GateSet::from_json(const nlohmann::json& j) {
  GateSet gs;
  for (const auto& [label, mj] : j.at("generators").items())
    gs.generators.emplace(label, SymplecticMatrix(matrix_from_json(mj), 1e-8));
  if (gs.generators.empty()) throw InvariantError("gate set JSON has no generators");
  const int m = gs.modes();
  for (const auto& [label, g] : gs.generators)
    if (g.modes() != m) throw DimensionError("gate set mixes mode counts");
  return gs;
}

nlohmann::json GateSet::to_json() const {
  nlohmann::json g = nlohmann::json::object();
  for (const auto& [label, s] : generators) g[label] = matrix_to_json(s.entries());
  return {{"generators", g}};
}

// ---------- construction ----------

Mat sample_region(int m, double r, Rng& rng) {
  const int n = 2 * m;
  Mat X = omega(m) * random_symmetric(n, 1.5 * r, rng);
  const Mat I = Mat::Identity(n, n);
  Mat S = exp_hamiltonian(X);
  while (op_distance(S, I) > r) {
    X *= 0.9;
    S = exp_hamiltonian(X);
  }
  return S;
}

Net build_net(int m, double r, double epsilon, long sample_budget, std::uint64_t rng_seed) {
  if (!(epsilon > 0) || epsilon > r) throw ParameterError("build_net: need 0 < epsilon <= r");
  if (sample_budget < 1) throw ParameterError("build_net: sample_budget must be >= 1");
  Net net(m, r, epsilon);
  SpatialIndex index(epsilon, 2 * m);
  Rng rng(rng_seed);
  const Mat I = Mat::Identity(2 * m, 2 * m);
  net.add(I);
  index.insert(I, 0);
  long rejections = 0;
  while (rejections < sample_budget) {
    Mat S = sample_region(m, r, rng);
    bool close = false;
    index.for_neighbors(S, [&](std::size_t id) {
      close = op_distance(net.elements()[id], S) < epsilon;
      return !close;
    });
    if (close) {
      ++rejections;
      continue;
    }
    rejections = 0;
    index.insert(S, net.size());
    net.add(std::move(S));
  }
  if (static_cast<double>(net.size()) > net.cardinality_bound())
    throw InvariantError("build_net: packing exceeds the cardinality bound");
  return net;
}

CoverageReport coverage_report(const BaseNet& net, const std::vector<Mat>& probes) {
  CoverageReport rep;
  rep.probes = probes.size();
  for (const Mat& S : probes) {
    const double d = net.nearest(S).distance;
    rep.max_distance = std::max(rep.max_distance, d);
    if (d > net.epsilon()) ++rep.uncovered;
  }
  rep.covered = rep.uncovered == 0;
  return rep;
}

CoverageReport coverage_report(const BaseNet& net, std::size_t probes, std::uint64_t seed) {
  Rng rng(seed);
  CoverageReport rep;
  rep.probes = probes;
  for (std::size_t i = 0; i < probes; ++i) {
    const double d = net.nearest(sample_region(net.modes(), net.radius(), rng)).distance;
    rep.max_distance = std::max(rep.max_distance, d);
    if (d > net.epsilon()) ++rep.uncovered;
  }
  rep.covered = rep.uncovered == 0;
  return rep;
}

Expansion expand_generators(const GateSet& gs, double epsilon0, int max_depth, double r, std::size_t probes,
                            std::uint64_t seed) {
  if (!gs.closed_under_inverse()) throw InvariantError("expand_generators: gate set is not closed under inverses");
  if (!(epsilon0 > 0)) throw ParameterError("expand_generators: epsilon0 must be positive");
  const int m = gs.modes();
  const int n = 2 * m;
  const double res = epsilon0 / 2.0;
  Expansion ex{Net(m, r, epsilon0), {}, 0};
  SpatialIndex index(res, n);
  const Mat I = Mat::Identity(n, n);
  ex.net.add(I, GateWord{});
  index.insert(I, 0);
  std::vector<std::size_t> frontier{0};
  for (int depth = 1; depth <= max_depth && !frontier.empty(); ++depth) {
    std::vector<std::size_t> next;
    for (std::size_t id : frontier)
      for (const auto& [label, g] : gs.generators) {
        Mat S = ex.net.elements()[id] * g.entries();
        if (op_distance(S, I) > r + 1e-9) continue;
        bool dup = false;
        index.for_neighbors(S, [&](std::size_t j) {
          dup = op_distance(ex.net.elements()[j], S) < res;
          return !dup;
        });
        if (dup) continue;
        GateWord w = ex.net.words()[id];
        w.tokens.push_back({label, false});
        index.insert(S, ex.net.size());
        next.push_back(ex.net.size());
        ex.net.add(std::move(S), std::move(w));
      }
    frontier = std::move(next);
    ex.depth_reached = depth;
  }
  if (probes > 0) ex.coverage = coverage_report(ex.net, probes, seed);
  return ex;
}

}  // namespace gsk
