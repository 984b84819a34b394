#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gsk/matrix_io.hpp"
#include "gsk/random.hpp"
#include "gsk/symplectic.hpp"
#include "gsk/word.hpp"

namespace gsk {

struct LookupResult {
  std::string label;
  Mat element;
  double distance = 0.0;
};

// anything SK can use at level 0
class BaseNet {
 public:
  virtual ~BaseNet() = default;
  virtual int modes() const = 0;
  virtual double epsilon() const = 0;
  virtual double radius() const = 0;
  virtual LookupResult nearest(const Mat& S) const = 0;
  virtual Mat element(const std::string& label) const = 0;
  // generator word a label stands for; a single token when the net has no words
  virtual GateWord expand(const std::string& label) const { return GateWord{{{label, false}}}; }
  virtual nlohmann::json to_json() const = 0;
};

// bucket index on the leading matrix entries; a pair at operator distance < cell
// differs by < cell in every entry, so only adjacent buckets can hold it
class SpatialIndex {
 public:
  SpatialIndex(double cell, int n);
  void insert(const Mat& S, std::size_t id);
  template <class F>
  void for_neighbors(const Mat& S, F&& f) const;

 private:
  using Key = std::array<long, 4>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const;
  };
  Key key_of(const Mat& S) const;
  double cell_;
  int n_;
  int used_;
  std::unordered_map<Key, std::vector<std::size_t>, KeyHash> buckets_;
};

class Net : public BaseNet {
 public:
  Net(int m, double r, double epsilon);

  int modes() const override { return m_; }
  double epsilon() const override { return epsilon_; }
  double radius() const override { return r_; }
  LookupResult nearest(const Mat& S) const override;
  Mat element(const std::string& label) const override;
  GateWord expand(const std::string& label) const override;
  nlohmann::json to_json() const override;
  static Net from_json(const nlohmann::json& j);

  std::size_t size() const { return elements_.size(); }
  const std::vector<Mat>& elements() const { return elements_; }
  const std::vector<GateWord>& words() const { return words_; }
  bool has_words() const { return !words_.empty(); }
  void add(Mat S, std::optional<GateWord> w = std::nullopt);
  // (3r/epsilon)^{4m^2}
  double cardinality_bound() const;

 private:
  int m_;
  double r_, epsilon_;
  std::vector<Mat> elements_;
  std::vector<GateWord> words_;
};

// implicit net: a cubic grid in the Lie-algebra coordinates of log S
class LatticeNet : public BaseNet {
 public:
  LatticeNet(int m, double r, double epsilon);

  int modes() const override { return m_; }
  double epsilon() const override { return epsilon_; }
  double radius() const override { return r_; }
  LookupResult nearest(const Mat& S) const override;
  Mat element(const std::string& label) const override;
  nlohmann::json to_json() const override;
  double spacing() const { return h_; }

 private:
  Mat element_of(const std::vector<long>& k) const;
  int m_;
  double r_, epsilon_, h_;
};

std::unique_ptr<BaseNet> net_from_json(const nlohmann::json& j);

struct GateSet {
  std::map<std::string, SymplecticMatrix> generators;
  bool closed_under_inverse() const;
  int modes() const;
  static GateSet from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

// random element of {S : ||S - I|| <= r}
Mat sample_region(int m, double r, Rng& rng);

Net build_net(int m, double r, double epsilon, long sample_budget, std::uint64_t rng_seed);
std::pair<std::size_t, double> net_lookup(const Net& net, const Mat& S);

struct CoverageReport {
  std::size_t probes = 0;
  double max_distance = 0.0;
  std::size_t uncovered = 0;
  bool covered = true;
};
CoverageReport coverage_report(const BaseNet& net, const std::vector<Mat>& probes);
CoverageReport coverage_report(const BaseNet& net, std::size_t probes, std::uint64_t seed);

struct Expansion {
  Net net;
  CoverageReport coverage;
  int depth_reached = 0;
};
// breadth-first products of generators, deduplicated at epsilon0/2, kept inside radius r
Expansion expand_generators(const GateSet& gs, double epsilon0, int max_depth, double r,
                            std::size_t probes = 2000, std::uint64_t seed = 1);

// orthonormal Hilbert-Schmidt basis of real symmetric n×n matrices
std::vector<Mat> symmetric_basis(int n);
// real logarithm of a symplectic matrix near the identity, projected onto sp(2m)
Mat log_symplectic(const Mat& S);
// closed form for 2×2, Padé otherwise
Mat exp_hamiltonian(const Mat& X);

template <class F>
void SpatialIndex::for_neighbors(const Mat& S, F&& f) const {
  const Key base = key_of(S);
  Key k = base;
  const int total = [&] {
    int t = 1;
    for (int i = 0; i < used_; ++i) t *= 3;
    return t;
  }();
  for (int code = 0; code < total; ++code) {
    int c = code;
    for (int i = 0; i < used_; ++i) {
      k[i] = base[i] + (c % 3) - 1;
      c /= 3;
    }
    auto it = buckets_.find(k);
    if (it == buckets_.end()) continue;
    for (std::size_t id : it->second)
      if (!f(id)) return;
  }
}

}  // namespace gsk
