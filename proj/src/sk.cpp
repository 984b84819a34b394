#include "gsk/sk.hpp"

#include <cmath>
#include <sstream>

#include "gsk/errors.hpp"

namespace gsk {

ErrorConstants error_constants(double r) {
  if (!(r > 0)) throw ParameterError("error_constants: r must be positive");
  const double C = 47.0 * r * r + 104.0 * r + 156.0;
  const double c = std::pow((2.0 + r) * C, 2.0);
  return {C, c, 1.0 / c};
}

double predicted_epsilon(int n, double epsilon0, double c_r) {
  if (n == 0) return epsilon0;
  return std::pow(c_r * epsilon0, std::pow(1.5, n)) / c_r;
}

double commutator_perturbation_bound(double delta, double epsilon, double mu) {
  if (!(mu >= 0 && mu < 1) || delta < 0 || epsilon < 0 || delta + epsilon > mu)
    throw ParameterError("commutator_perturbation_bound: need delta, epsilon >= 0 and delta + epsilon <= mu < 1");
  const double q = 1.0 - mu;
  const double a = (16.0 - 12.0 * mu + 4.0 * mu * mu) / (q * q * q);
  const double b = (7.0 - 9.0 * mu + 13.0 * mu * mu - 3.0 * mu * mu * mu) / (q * q * q * q);
  return a * delta * epsilon + b * epsilon * epsilon;
}

namespace {

void check_lemma_range(const Mat& M, double epsilon, const char* who) {
  if (!(epsilon >= 0) || epsilon > 1.0) throw ParameterError(std::string(who) + ": epsilon outside (0, 1]");
  const double d = op_norm(Mat(M - Mat::Identity(M.rows(), M.cols())));
  if (d > epsilon + 1e-12)
    throw ParameterError(std::string(who) + ": ||M - I|| = " + std::to_string(d) + " exceeds epsilon");
}

Mat hyperbolic(double b) {
  Mat H(2, 2);
  H << std::cosh(b), std::sinh(b), std::sinh(b), std::cosh(b);
  return H;
}

FactorPair orthogonal_factors(const Mat& O) {
  const OrthoBlockForm f = orth_block_diagonalize(SymplecticMatrix::trusted(O));
  std::vector<Mat> b1, b2;
  for (Eigen::Index j = 0; j < f.angles.size(); ++j) {
    const double th = f.angles(j);
    const double a = std::sqrt(std::abs(th) / 2.0);
    const double b = th > 0 ? -a : a;
    Mat D(2, 2);
    D << std::exp(-a), 0.0, 0.0, std::exp(a);
    b1.push_back(D);
    b2.push_back(hyperbolic(b));
  }
  const Mat& K = f.conjugator.entries();
  return {SymplecticMatrix::trusted(K * direct_sum(b1) * K.transpose()),
          SymplecticMatrix::trusted(K * direct_sum(b2) * K.transpose())};
}

FactorPair positive_factors(const Mat& P) {
  const PositiveDiagForm f = williamson_positive(SymplecticMatrix::trusted(P));
  std::vector<Mat> b1, b2;
  for (Eigen::Index j = 0; j < f.lambdas.size(); ++j) {
    const double a = std::sqrt(std::log(f.lambdas(j)) / 2.0);
    b1.push_back(rotation_block(a));
    b2.push_back(hyperbolic(a));
  }
  const Mat& K = f.conjugator.entries();
  return {SymplecticMatrix::trusted(K * direct_sum(b1) * K.transpose()),
          SymplecticMatrix::trusted(K * direct_sum(b2) * K.transpose())};
}

Mat sinv(const Mat& S, const Mat& W) { return W.transpose() * S.transpose() * W; }

Mat commutator(const Mat& A, const Mat& B, const Mat& W) { return A * B * sinv(A, W) * sinv(B, W); }

struct Approx {
  GateWord word;
  Mat U;
};

class Compiler {
 public:
  Compiler(const BaseNet& net, const SKParams& p) : net_(net), p_(p), W_(omega(p.m)) {}

  Approx level0(const Mat& S) const {
    LookupResult lr = net_.nearest(S);
    if (lr.distance > p_.epsilon0) {
      std::ostringstream os;
      os << "base net does not cover target: lookup distance " << lr.distance << " > epsilon0 " << p_.epsilon0;
      throw CoverageError(os.str());
    }
    return {GateWord{{{lr.label, false}}}, std::move(lr.element)};
  }

  Approx compile(const Mat& S, int n) const {
    if (n == 0) return level0(S);
    return improve(S, compile(S, n - 1), n - 1);
  }

  // one SK step: factors of S·U^{-1} are compiled at level n
  Approx improve(const Mat& S, const Approx& prev, int n) const {
    const Mat delta = S * sinv(prev.U, W_);
    const PolarParts pp = polar_decompose(SymplecticMatrix::trusted(delta));
    const Mat& O = pp.orthogonal.entries();
    const Mat& P = pp.positive.entries();
    const Mat I = Mat::Identity(O.rows(), O.cols());
    const double eo = op_norm(Mat(O - I)), ep = op_norm(Mat(P - I));
    if (eo > 1.0 || ep > 1.0) {
      std::ostringstream os;
      os << "polar factors of the residual leave the commutator lemma range (||O-I|| = " << eo
         << ", ||P-I|| = " << ep << ")";
      throw DivergenceError(os.str());
    }
    const FactorPair of = orthogonal_factors(O);
    const FactorPair pf = positive_factors(P);
    const Approx a1 = compile(of.first.entries(), n), a2 = compile(of.second.entries(), n);
    const Approx b1 = compile(pf.first.entries(), n), b2 = compile(pf.second.entries(), n);
    const GateWord ia1 = inverse(a1.word), ia2 = inverse(a2.word);
    const GateWord ib1 = inverse(b1.word), ib2 = inverse(b2.word);
    Approx out;
    out.word = concat({&a1.word, &a2.word, &ia1, &ia2, &b1.word, &b2.word, &ib1, &ib2, &prev.word});
    out.U = commutator(a1.U, a2.U, W_) * commutator(b1.U, b2.U, W_) * prev.U;
    return out;
  }

 private:
  const BaseNet& net_;
  const SKParams& p_;
  Mat W_;
};

}  // namespace

FactorPair balanced_commutator_orthogonal(const SymplecticMatrix& O, double epsilon) {
  const double tol = tolerances().recon;
  if (!is_orthogonal(O.entries(), tol) || !is_symplectic(O.entries(), tol))
    throw InvariantError("balanced_commutator_orthogonal: input is not orthogonal symplectic");
  check_lemma_range(O.entries(), epsilon, "balanced_commutator_orthogonal");
  return orthogonal_factors(O.entries());
}

FactorPair balanced_commutator_positive(const SymplecticMatrix& P, double epsilon) {
  check_lemma_range(P.entries(), epsilon, "balanced_commutator_positive");
  return positive_factors(P.entries());
}

CompilationResult sk_compile(const SymplecticMatrix& S, const BaseNet& net, const SKParams& params) {
  if (S.modes() != params.m || net.modes() != params.m) throw DimensionError("sk_compile: mode count mismatch");
  if (!is_symplectic(S.entries(), 1e-8)) throw InvariantError("sk_compile: target is not symplectic");
  const Mat& T = S.entries();
  const int n = 2 * params.m;
  const double dist = op_norm(Mat(T - Mat::Identity(n, n)));
  if (dist > params.r + 1e-12) {
    std::ostringstream os;
    os << "target lies outside the region: ||S - I|| = " << dist << " > r = " << params.r;
    throw CoverageError(os.str());
  }
  const Compiler comp(net, params);
  const TokenResolver elem = [&](const std::string& l) { return net.element(l); };

  CompilationResult res;
  res.guaranteed = params.epsilon0 * params.c_r() < 1.0;
  Approx cur = comp.level0(T);
  auto record = [&](const Approx& a) {
    res.matrix = resolve(a.word, elem, n);
    res.per_level_errors.push_back(op_norm(Mat(res.matrix - T)));
    res.per_level_lengths.push_back(a.word.length());
  };
  record(cur);
  for (int level = 1; level <= params.max_level && res.per_level_errors.back() > params.delta; ++level) {
    Approx next = comp.improve(T, cur, level - 1);
    const double before = res.per_level_errors.back();
    record(next);
    const double after = res.per_level_errors.back();
    if (after > before) {
      const double cond = 1.5 * std::sqrt(before) + before;
      std::ostringstream os;
      os << "error increased from " << before << " to " << after << " at level " << level
         << "; precondition (3/2)sqrt(eps_n) + eps_n <= 1/5 " << (cond <= 0.2 ? "holds" : "is violated")
         << " (value " << cond << ")";
      throw DivergenceError(os.str());
    }
    cur = std::move(next);
    res.level = level;
  }
  res.achieved_error = res.per_level_errors.back();
  res.word = std::move(cur.word);
  for (const GateToken& t : res.word.tokens) {
    GateWord g = net.expand(t.label);
    if (t.inverted) g = inverse(g);
    res.generator_word.tokens.insert(res.generator_word.tokens.end(), g.tokens.begin(), g.tokens.end());
  }
  return res;
}

nlohmann::json compilation_to_json(const CompilationResult& res, const SKParams& params) {
  const auto ec = error_constants(params.r);
  return {{"word", word_to_json(res.word)},
          {"word_length", res.word.length()},
          {"generator_word", word_to_json(res.generator_word)},
          {"generator_word_length", res.generator_word.length()},
          {"achieved_error", res.achieved_error},
          {"level", res.level},
          {"per_level_errors", res.per_level_errors},
          {"per_level_lengths", res.per_level_lengths},
          {"guaranteed", res.guaranteed},
          {"matrix", matrix_to_json(res.matrix)},
          {"params",
           {{"m", params.m},
            {"r", params.r},
            {"epsilon0", params.epsilon0},
            {"delta", params.delta},
            {"max_level", params.max_level},
            {"C_r", ec.C_r},
            {"c_r", ec.c_r}}}};
}

}  // namespace gsk
