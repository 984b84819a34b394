#pragma once

#include <utility>
#include <vector>

#include "json.hpp"

#include "gsk/net.hpp"
#include "gsk/symplectic.hpp"
#include "gsk/word.hpp"

namespace gsk {

struct ErrorConstants {
  double C_r;           // 47r² + 104r + 156
  double c_r;           // ((2 + r) C_r)²
  double epsilon0_max;  // 1 / c_r
};

ErrorConstants error_constants(double r);
double predicted_epsilon(int n, double epsilon0, double c_r);

struct SKParams {
  int m = 1;
  double r = 1.0;
  double epsilon0 = 1e-3;
  double delta = 1e-6;
  int max_level = 5;
  double C_r() const { return error_constants(r).C_r; }
  double c_r() const { return error_constants(r).c_r; }
};

struct CompilationResult {
  GateWord word;            // over net labels
  GateWord generator_word;  // expanded through the net's stored words
  Mat matrix;               // resolved product
  double achieved_error = 0.0;
  int level = 0;
  std::vector<double> per_level_errors;
  std::vector<std::size_t> per_level_lengths;
  bool guaranteed = false;
};

using FactorPair = std::pair<SymplecticMatrix, SymplecticMatrix>;

FactorPair balanced_commutator_orthogonal(const SymplecticMatrix& O, double epsilon);
FactorPair balanced_commutator_positive(const SymplecticMatrix& P, double epsilon);

double commutator_perturbation_bound(double delta, double epsilon, double mu);

CompilationResult sk_compile(const SymplecticMatrix& S, const BaseNet& net, const SKParams& params);

nlohmann::json compilation_to_json(const CompilationResult& res, const SKParams& params);

}  // namespace gsk
