#include "gsk/verify.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "gsk/bounds.hpp"
#include "gsk/errors.hpp"
#include "gsk/net.hpp"
#include "gsk/nu.hpp"
#include "gsk/random.hpp"
#include "gsk/sk.hpp"

namespace gsk {

namespace {

constexpr double pi = std::numbers::pi;

std::string fmt(const std::string& head, std::initializer_list<std::pair<const char*, double>> kv) {
  std::ostringstream os;
  os << head;
  for (const auto& [k, v] : kv) os << ' ' << k << '=' << v;
  return os.str();
}

double unif(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

double dist_id(const Mat& S) { return op_distance(S, Mat::Identity(S.rows(), S.cols())); }

// a quarter of the draws sit on the boundary ||X - I|| = eps
double draw_radius(double eps, int k, Rng& rng) { return k % 4 == 0 ? eps : eps * unif(rng); }

NuOptions nu_options(const VerifyOptions& opt, std::vector<CVec> seeds = {}) {
  NuOptions o;
  o.restarts = opt.restarts;
  o.seed = opt.seed;
  o.threads = opt.threads;
  o.seeds = std::move(seeds);
  return o;
}

std::vector<double> energy_grid(const VerifyOptions& opt, std::vector<double> grid) {
  if (opt.E) return {*opt.E};
  return grid;
}

SuiteResult commutator_lemmas(const VerifyOptions& opt) {
  SuiteResult s{"commutator-lemmas", {}};
  Rng rng(opt.seed);
  for (const char* kind : {"orthogonal", "positive"}) {
    const bool orth = std::string(kind) == "orthogonal";
    const double cres = orth ? 1.9 : 1.8, cfac = orth ? 1.5 : 1.44;
    for (int m = 1; m <= 2; ++m)
      for (double eps : {0.01, 0.05, 0.1}) {
        double worst_res = 0.0, worst_fac = 0.0, worst_sym = 0.0;
        int viol = 0;
        for (int k = 0; k < 1000; ++k) {
          const double e = draw_radius(eps, k, rng);
          SymplecticMatrix X = orth ? random_orthogonal_symplectic(m, e, rng) : random_positive_symplectic(m, e, rng);
          const FactorPair f = orth ? balanced_commutator_orthogonal(X, eps) : balanced_commutator_positive(X, eps);
          const double res = op_distance(group_commutator(f.first, f.second).entries(), X.entries());
          const double fac = std::max(dist_id(f.first.entries()), dist_id(f.second.entries()));
          worst_res = std::max(worst_res, res);
          worst_fac = std::max(worst_fac, fac);
          const Mat W = omega(m);
          for (const Mat* F : {&f.first.entries(), &f.second.entries()})
            worst_sym = std::max(worst_sym, (*F * W * F->transpose() - W).cwiseAbs().maxCoeff());
          if (res > cres * std::pow(eps, 1.5) || fac > cfac * std::sqrt(eps)) ++viol;
        }
        CheckResult r = make_check(fmt(std::string(kind) + " residual", {{"m", m}, {"eps", eps}}), std::nullopt,
                                   worst_res, cres * std::pow(eps, 1.5), 0.0);
        r.detail = {{"instances", 1000}, {"violations", viol}, {"max_symplectic_defect", worst_sym}};
        s.checks.push_back(r);
        s.checks.push_back(make_check(fmt(std::string(kind) + " factor distance", {{"m", m}, {"eps", eps}}),
                                      std::nullopt, worst_fac, cfac * std::sqrt(eps), 0.0));
      }
  }
  return s;
}

SuiteResult product_commutator(const VerifyOptions& opt) {
  SuiteResult s{"product-commutator", {}};
  Rng rng(opt.seed + 1);
  // symplectic quadruples and unstructured matrices near I
  for (const char* kind : {"symplectic", "general"}) {
    const bool symp = std::string(kind) == "symplectic";
    double worst = 0.0, worst_general = 0.0;
    int viol = 0;
    for (int k = 0; k < 1000; ++k) {
      const int m = 1 + k % 2;
      const int n = 2 * m;
      const double d = 0.2 * unif(rng);
      const double e = (0.2 - d) * unif(rng);
      Mat V, W, Vt, Wt;
      if (symp) {
        V = random_symplectic(m, d, rng).entries();
        W = random_symplectic(m, d, rng).entries();
        Vt = V * random_symplectic(m, e / op_norm(V), rng).entries();
        Wt = W * random_symplectic(m, e / op_norm(W), rng).entries();
      } else {
        auto near = [&](const Mat& C, double rad) {
          const Mat X = Mat::Random(n, n);
          return Mat(C + rad * unif(rng) * X / op_norm(X));
        };
        V = near(Mat::Identity(n, n), d);
        W = near(Mat::Identity(n, n), d);
        Vt = near(V, e);
        Wt = near(W, e);
      }
      const Mat lhs1 = V * W * V.inverse() * W.inverse();
      const Mat lhs2 = Vt * Wt * Vt.inverse() * Wt.inverse();
      const double lhs = op_distance(lhs1, lhs2);
      const double bound = 27 * d * e + 14 * e * e;
      if (bound > 0) worst = std::max(worst, lhs / bound);
      worst_general = std::max(worst_general, lhs - commutator_perturbation_bound(d, e, 0.2));
      if (lhs > bound) ++viol;
    }
    CheckResult r = make_check(std::string("27 delta eps + 14 eps^2, ") + kind + " (ratio)", std::nullopt, worst, 1.0, 0.0);
    r.detail = {{"instances", 1000}, {"violations", viol}, {"max_excess_over_general_formula", worst_general}};
    s.checks.push_back(r);
  }
  return s;
}

SuiteResult sk_contraction(const VerifyOptions& opt) {
  SuiteResult s{"sk-contraction", {}};
  const double r = 1.0;
  const LatticeNet net(1, r, 1e-3);
  SKParams p;
  p.m = 1;
  p.r = r;
  p.epsilon0 = 1e-3;
  p.delta = 1e-6;
  p.max_level = 5;
  const double K = (2 + r) * error_constants(r).C_r;
  Rng rng(opt.seed + 2);
  double worst_ratio = 0.0, worst_final = 0.0, worst_growth = 0.0, worst_recompute = 0.0;
  int worst_level = 0, failures = 0;
  std::vector<double> level_max(p.max_level + 1, 0.0);
  for (int k = 0; k < 100; ++k) {
    const SymplecticMatrix S(sample_region(1, r, rng));
    try {
      const CompilationResult res = sk_compile(S, net, p);
      const auto& e = res.per_level_errors;
      for (std::size_t l = 0; l + 1 < e.size(); ++l) {
        worst_ratio = std::max(worst_ratio, e[l + 1] / (K * std::pow(e[l], 1.5)));
        worst_growth = std::max(worst_growth, double(res.per_level_lengths[l + 1]) / res.per_level_lengths[l]);
      }
      for (std::size_t l = 0; l < e.size(); ++l) level_max[l] = std::max(level_max[l], e[l]);
      worst_final = std::max(worst_final, res.achieved_error);
      worst_level = std::max(worst_level, res.level);
      const TokenResolver elem = [&](const std::string& l) { return net.element(l); };
      worst_recompute =
          std::max(worst_recompute, std::abs(op_distance(resolve(res.word, elem, 2), S.entries()) - res.achieved_error));
    } catch (const std::exception&) {
      ++failures;
    }
  }
  CheckResult c = make_check("eps_{n+1} / (921 eps_n^{3/2}), worst level", std::nullopt, worst_ratio, 1.0, 0.0);
  c.detail = {{"targets", 100}, {"failures", failures}, {"max_error_per_level", level_max}};
  s.checks.push_back(c);
  s.checks.push_back(make_check("final error (recomputed from words)", std::nullopt, worst_final, p.delta, 0.0));
  s.checks.push_back(make_check("levels used", std::nullopt, worst_level, p.max_level, 0.0));
  s.checks.push_back(make_check("word length growth per level", std::nullopt, worst_growth, 9.0, 0.0));
  s.checks.push_back(make_check("compilation failures", std::nullopt, failures, 0.0, 0.0));
  s.checks.push_back(make_check("achieved_error recomputation gap", std::nullopt, worst_recompute, 0.0, 1e-15));
  return s;
}

SuiteResult net_cardinality(const VerifyOptions& opt) {
  SuiteResult s{"net-cardinality", {}};
  const double r = 1.0, eps = 0.25;
  const Net net = build_net(1, r, eps, opt.net_sample_budget, opt.seed + 3);
  CheckResult card = make_check("cardinality", std::nullopt, double(net.size()), net.cardinality_bound(), 0.0);
  card.detail = {{"sample_budget", opt.net_sample_budget}};
  s.checks.push_back(card);
  const CoverageReport cr = coverage_report(net, opt.coverage_probes, opt.seed + 4);
  CheckResult cov = make_check("coverage: max probe distance", std::nullopt, cr.max_distance, eps, 0.0);
  cov.detail = {{"probes", cr.probes}, {"uncovered", cr.uncovered}};
  s.checks.push_back(cov);
  double min_pair = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < net.size(); ++i)
    for (std::size_t j = i + 1; j < net.size(); ++j)
      min_pair = std::min(min_pair, op_distance(net.elements()[i], net.elements()[j]));
  s.checks.push_back(make_check("packing: min pairwise distance", eps, min_pair, std::nullopt, 0.0));
  return s;
}

SuiteResult displacement_sandwich(const VerifyOptions& opt) {
  SuiteResult s{"displacement-sandwich", {}};
  const int d = 40, pad = 40;
  const CMat N = number_operator(1, d).entries;
  Vec offset(2);
  offset << 0.2, -0.1;
  for (double E : energy_grid(opt, {0.5, 1.0}))
    for (double u : {0.1, 0.3}) {
      Vec z(2);
      z << u, 0.0;
      z += offset;
      const Vec& w = offset;
      const BoundReport b = displacement_bounds(z, w, E);
      // D_z† D_w is D_{w−z} up to a phase
      const CMat W = displacement_operator(w - z, 1, d, pad).entries;
      Vec rv(1);
      rv << std::log(std::sqrt(E) + std::sqrt(E + 1));
      const FockState seed = squeezed_vacuum_state(rv, d);
      const ConstrainedOptimum o = nu_E(W, N, E, nu_options(opt, {seed.psi}));
      const double oracle = std::sqrt(std::max(0.0, 1 - o.value * o.value));
      const double certified = std::sqrt(std::max(0.0, 1 - o.lower_bound * o.lower_bound));
      const double nseed = std::abs(seed.psi.dot(W * seed.psi));
      const double seed_val = std::sqrt(std::max(0.0, 1 - nseed * nseed));
      CheckResult c = make_check(fmt("1/2 EC diamond distance", {{"E", E}, {"|z-w|", u}}), *b.lower, oracle, *b.upper, 5e-3);
      c.detail = {{"certified_upper", certified}, {"energy", o.energy}, {"restarts_used", o.restarts_used},
                  {"best_restart", o.best_restart}, {"seed_tail_mass", seed.tail_mass}};
      s.checks.push_back(c);
      s.checks.push_back(
          make_check(fmt("dual certificate", {{"E", E}, {"|z-w|", u}}), *b.lower, certified, *b.upper, 5e-3));
      s.checks.push_back(
          make_check(fmt("squeezed seed attains lower", {{"E", E}, {"|z-w|", u}}), *b.lower, seed_val, *b.lower, 2e-3));
    }
  return s;
}

SuiteResult speed_limit_tightness(const VerifyOptions&) {
  SuiteResult s{"speed-limit-tightness", {}};
  const int d = 200;
  const double sv = 0.1;
  const double mu = 2 * sv / (2 * sv + pi);
  const double E = mu / (1 - mu);  // mean photon number of the geometric state
  const double t = sv / E;
  const FockState g = geometric_state(mu, d);
  const FockOperator N = number_operator(1, d);
  const FockOperator Z{CMat::Zero(d, d), d, 1};
  const double trace_dist = evolve_and_distance(N, Z, g.psi, t);
  const double phi1 = 2 * std::sqrt(sv * (pi + 2 * sv) / (pi * pi + 4 * pi * sv + 8 * sv * sv));
  CheckResult lo = make_check("trace distance vs phi lower", phi1, trace_dist, std::nullopt, 1e-3);
  lo.detail = {{"s", sv}, {"mu", mu}, {"E", E}, {"t", t}, {"tail_mass", g.tail_mass},
               {"universal_phi_lower", universal_phi_lower(sv)}};
  s.checks.push_back(lo);
  const DriftParams dp{1.0, 0.0, 1.0, 0.0};
  const double drift = closed_drift_bound(dp, E, t);
  CheckResult hi = make_check("full-scale distance vs 2 sqrt(2Et)", std::nullopt, 2 * trace_dist, drift, 1e-9);
  hi.detail = {{"drift_formula", 2 * std::sqrt(2 * E * t)}};
  s.checks.push_back(hi);
  return s;
}

SuiteResult symplectic_pair(const VerifyOptions& opt) {
  SuiteResult s{"symplectic-pair", {}};
  const int d = 60, pad = 40;
  const double E = 1.0;
  const CMat N = number_operator(1, d).entries;
  auto squeeze = [](double r, double angle) {
    Vec v(1);
    v << r;
    const Mat R = rotation_block(angle);
    return SymplecticMatrix(Mat(R * squeezer(v) * R.transpose()));
  };
  const std::vector<std::array<double, 4>> cases{{0.3, 0, 0, 0},      {0.1, 0, -0.1, 0}, {0.3, 0, -0.3, 0},
                                                 {0.05, 0, 0, 0},     {0.2, 0, 0.2, pi / 4},
                                                 {0.3, pi / 3, -0.15, 0}, {0.01, 0, 0.0, 0}, {0.25, pi / 2, 0.25, 0}};
  for (const auto& c : cases) {
    const SymplecticMatrix S = squeeze(c[0], c[1]), Sp = squeeze(c[2], c[3]);
    const BoundReport b = symplectic_pair_bound(S, Sp, E);
    const SymplecticMatrix T = symplectic_inverse(Sp) * S;
    const FockOperator W = gaussian_unitary(T, d, pad);
    const ConstrainedOptimum o = nu_E(W.entries, N, E, nu_options(opt));
    const double oracle = 2 * std::sqrt(std::max(0.0, 1 - o.value * o.value));
    const double certified = 2 * std::sqrt(std::max(0.0, 1 - o.lower_bound * o.lower_bound));
    const std::string tag = fmt("", {{"r", c[0]}, {"angle", c[1]}, {"r'", c[2]}, {"angle'", c[3]}});
    CheckResult r = make_check("oracle <= bound," + tag, std::nullopt, oracle, *b.upper, 1e-2);
    r.detail = {{"certified_upper", certified}, {"formula_value", b.extra.at("formula_value")},
                {"energy", o.energy}, {"unitarity_defect_low_levels",
                                       op_norm(CMat(W.entries.topLeftCorner(20, 20).adjoint() * W.entries.topLeftCorner(20, 20) -
                                                    CMat::Identity(20, 20)))}};
    s.checks.push_back(r);
    s.checks.push_back(make_check("dual certificate <= bound," + tag, std::nullopt, certified, *b.upper, 1e-2));
  }
  return s;
}

SuiteResult multicopy(const VerifyOptions& opt) {
  SuiteResult s{"multicopy", {}};
  CMat U = CMat::Identity(2, 2), V = CMat::Identity(2, 2);
  V(1, 1) = cplx(0, 1);
  const MultiCopy q = multi_copy_queries(U, V);
  CheckResult nc = make_check("n = floor(pi/Theta) + 1", 3.0, q.n, 3.0, 0.0);
  nc.detail = {{"Theta", q.Theta}, {"interior", q.interior}};
  s.checks.push_back(nc);
  s.checks.push_back(make_check("0 strictly inside hull at n", 1.0, q.interior ? 1.0 : 0.0, std::nullopt, 0.0));

  const int n = q.n;
  const long dim = 1L << n;
  CMat W = CMat::Identity(dim, dim), H = CMat::Zero(dim, dim);
  for (long k = 0; k < dim; ++k) {
    const int ones = __builtin_popcountl(static_cast<unsigned long>(k));
    W(k, k) = std::pow(V(1, 1), ones);
    H(k, k) = ones;
  }
  const double E = 1.5;
  const ConstrainedOptimum o = nu_E(W, H, E, nu_options(opt));
  CheckResult nu = make_check("nu_E of V^{(x)n}", std::nullopt, o.value, 1e-6, 0.0);
  nu.detail = {{"E", E}, {"dimension", dim}};
  s.checks.push_back(nu);
  s.checks.push_back(make_check("EC diamond norm", 2.0, 2 * std::sqrt(std::max(0.0, 1 - o.value * o.value)), 2.0, 1e-5));
  s.checks.push_back(
      make_check("energy of discriminating state", qubit_example_energy_lower(q.Theta), o.energy, E, 1e-6));
  return s;
}

SuiteResult optimal_variance(const VerifyOptions& opt) {
  SuiteResult s{"optimal-variance", {}};
  const int d = 60;
  const CMat N = number_operator(1, d).entries;
  const CMat p = quadrature_p(0, 1, d).entries;
  const CMat p2 = p * p;
  for (double E : energy_grid(opt, {0.25, 1.0})) {
    const double target = optimal_p_variance(E);
    const ConstrainedMax cm = constrained_max(p2, N, E);
    CheckResult c = make_check(fmt("max <p^2> over <N> <= E", {{"E", E}}), target, cm.value, target, 2e-3);
    c.detail = {{"dual_upper", cm.upper_bound}, {"energy", cm.energy}};
    s.checks.push_back(c);
    Vec rv(1);
    rv << std::log(std::sqrt(E) + std::sqrt(E + 1));
    const FockState seed = squeezed_vacuum_state(rv, d);
    CheckResult sc = make_check(fmt("squeezed seed <p^2>", {{"E", E}}), target, expectation(p2, seed.psi), target, 1e-4);
    sc.detail = {{"seed_energy", expectation(N, seed.psi)}, {"tail_mass", seed.tail_mass}};
    s.checks.push_back(sc);
  }
  return s;
}

SuiteResult speed_limit_roundtrip(const VerifyOptions& opt) {
  SuiteResult s{"speed-limit-roundtrip", {}};
  Rng rng(opt.seed + 5);
  double closed_gap = std::numeric_limits<double>::infinity(), open_gap = closed_gap;
  for (int k = 0; k < 100; ++k) {
    const DriftParams dp{3 * unif(rng), 2 * unif(rng) + 1e-3, 2 * unif(rng), unif(rng)};
    const double E = 5 * unif(rng), dist = 2 * unif(rng);
    closed_gap = std::min(closed_gap, closed_drift_bound(dp, E, closed_speed_limit_time(dp, E, dist)) - dist);
    const double a = 0.999 * unif(rng), b = 2 * unif(rng) + 1e-3;
    open_gap = std::min(open_gap, open_drift_bound(a, b, E, open_speed_limit_time(a, b, E, dist)) - dist);
  }
  s.checks.push_back(make_check("closed: drift(t*) - d, worst of 100", 0.0, closed_gap, std::nullopt, 1e-9));
  s.checks.push_back(make_check("open: drift(t*) - d, worst of 100", 0.0, open_gap, std::nullopt, 1e-9));
  return s;
}

using SuiteFn = std::function<SuiteResult(const VerifyOptions&)>;

const std::map<std::string, SuiteFn>& registry() {
  static const std::map<std::string, SuiteFn> r{
      {"commutator-lemmas", commutator_lemmas},         {"product-commutator", product_commutator},
      {"sk-contraction", sk_contraction},               {"net-cardinality", net_cardinality},
      {"displacement-sandwich", displacement_sandwich}, {"speed-limit-tightness", speed_limit_tightness},
      {"symplectic-pair", symplectic_pair},             {"multicopy", multicopy},
      {"optimal-variance", optimal_variance},           {"speed-limit-roundtrip", speed_limit_roundtrip}};
  return r;
}

}  // namespace

bool SuiteResult::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return !checks.empty();
}

CheckResult make_check(std::string name, std::optional<double> lower, double value, std::optional<double> upper,
                       double slack) {
  CheckResult c;
  c.name = std::move(name);
  c.analytic_lower = lower;
  c.oracle_value = value;
  c.analytic_upper = upper;
  c.slack = slack;
  c.pass = std::isfinite(value) && (!lower || value >= *lower - slack) && (!upper || value <= *upper + slack);
  return c;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"commutator-lemmas",     "product-commutator", "sk-contraction",
                                              "net-cardinality",       "displacement-sandwich",
                                              "speed-limit-tightness", "symplectic-pair",    "multicopy",
                                              "optimal-variance",      "speed-limit-roundtrip"};
  return names;
}

std::vector<SuiteResult> run_suite(const std::string& name, const VerifyOptions& opt) {
  if (name == "all") {
    std::vector<SuiteResult> out;
    for (const auto& n : suite_names()) out.push_back(registry().at(n)(opt));
    return out;
  }
  auto it = registry().find(name);
  if (it == registry().end()) throw ParameterError("unknown verify suite: " + name);
  return {it->second(opt)};
}

nlohmann::json check_to_json(const CheckResult& c) {
  nlohmann::json j;
  j["name"] = c.name;
  j["analytic_lower"] = c.analytic_lower ? nlohmann::json(*c.analytic_lower) : nlohmann::json(nullptr);
  j["oracle_value"] = c.oracle_value;
  j["analytic_upper"] = c.analytic_upper ? nlohmann::json(*c.analytic_upper) : nlohmann::json(nullptr);
  j["slack"] = c.slack;
  j["pass"] = c.pass;
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

nlohmann::json suite_to_json(const SuiteResult& s) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : s.checks) checks.push_back(check_to_json(c));
  return {{"suite", s.suite}, {"pass", s.pass()}, {"checks", checks}};
}

}  // namespace gsk
