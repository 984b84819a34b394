// gsk: compile, bound, net, verify
#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gsk/bounds.hpp"
#include "gsk/errors.hpp"
#include "gsk/matrix_io.hpp"
#include "gsk/net.hpp"
#include "gsk/sk.hpp"
#include "gsk/symplectic.hpp"
#include "gsk/verify.hpp"

using namespace gsk;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kCoverage = 2, kDivergence = 3, kVerifyFail = 4 };

struct RunConfig {
  std::uint64_t seed = 1;
  int threads = 1;
  int restarts = 24;
  std::string config_path;
  json paths = json::object();

  json to_json() const {
    const Tolerances& t = tolerances();
    return {{"seed", seed},
            {"threads", threads},
            {"restarts", restarts},
            {"tolerances",
             {{"symplectic", t.symplectic},
              {"recon", t.recon},
              {"determinant", t.determinant},
              {"unitarity", t.unitarity},
              {"hermitian", t.hermitian},
              {"hull_margin", t.hull_margin}}},
            {"cutoffs", {{"single_mode", 40}, {"padding", 40}, {"symplectic_pair", 60}, {"speed_limit", 200}}},
            {"paths", paths},
            {"config_file", config_path}};
  }
};

json envelope(const std::string& command, const RunConfig& cfg, json result) {
  return {{"version", version_string()}, {"command", command}, {"config", cfg.to_json()}, {"result", std::move(result)}};
}

void emit(const json& j, const std::string& out_file) {
  if (!out_file.empty()) write_json_file(out_file, j);
  std::cout << j.dump(2) << "\n";
}

Vec parse_vec(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::size_t used = 0;
    v.push_back(std::stod(part, &used));
    if (used != part.size()) throw ParameterError("bad number in list: " + s);
  }
  if (v.empty()) throw ParameterError("empty list");
  return Eigen::Map<Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

// "re" or "re,im"
cplx parse_complex(const std::string& s) {
  const Vec v = parse_vec(s);
  if (v.size() > 2) throw ParameterError("complex value takes at most two components: " + s);
  return {v(0), v.size() > 1 ? v(1) : 0.0};
}

void load_config(RunConfig& cfg) {
  if (cfg.config_path.empty()) {
    if (const char* env = std::getenv("GSK_CONFIG")) cfg.config_path = env;
  }
  if (cfg.config_path.empty()) return;
  const json j = read_json_file(cfg.config_path);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.threads = j.value("threads", cfg.threads);
  cfg.restarts = j.value("restarts", cfg.restarts);
}

BoundReport scalar_report(std::string name, std::optional<double> lower, std::optional<double> upper,
                          std::string formula, const char* scale) {
  BoundReport r;
  r.name = std::move(name);
  r.lower = lower;
  r.upper = upper;
  r.formula_ref = std::move(formula);
  r.scale = scale;
  return r;
}

const char* kClosedDrift = "||U_t - V_t||_diamond^{E} <= 2 sqrt2 sqrt(gamma E + delta) sqrt(alpha t) + sqrt2 beta t";
const char* kClosedTime = "t >= ((sqrt(d beta + nu^2) - nu) / beta)^2, nu = sqrt(alpha (gamma E + delta))";
const char* kOpenDrift = "||T_t - S_t||_diamond^{E} <= 4 (2^{1/4} sqrt(alpha E t) + beta t)";
const char* kOpenTime = "t >= ((sqrt(sqrt2 alpha E + d beta) - 2^{1/4} sqrt(alpha E)) / beta)^2";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian Solovay-Kitaev compiler and energy-constrained bounds"};
  app.set_version_flag("--version", version_string());
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::optional<std::uint64_t> seed_flag;
  std::optional<int> threads_flag;
  app.add_option("--config", cfg.config_path, "JSON config file (default: $GSK_CONFIG)");
  app.add_option("--seed", seed_flag, "RNG seed");
  app.add_option("--threads", threads_flag, "worker cap")->check(CLI::PositiveNumber);

  std::string out_file;

  // compile
  auto* compile = app.add_subcommand("compile", "compile a symplectic target against a net");
  std::string target_file, net_file;
  double delta = 1e-6;
  int max_level = 5;
  std::optional<double> eps0_flag;
  compile->add_option("--target", target_file, "target matrix JSON")->required();
  compile->add_option("--net", net_file, "net JSON")->required();
  compile->add_option("--delta", delta, "target accuracy");
  compile->add_option("--max-level", max_level, "recursion depth cap");
  compile->add_option("--epsilon0", eps0_flag, "override the net's covering radius");
  compile->add_option("--out", out_file, "write the result JSON here too");

  // bound
  auto* bound = app.add_subcommand("bound", "evaluate an analytic bound");
  bound->require_subcommand(1);
  double E = 1.0, t = 0.0, d = 0.0, alpha = 0.0, beta = 0.0, gamma = 1.0, delta_rb = 0.0, r = 1.0, s = 0.0,
         theta = 0.0, dt = 0.0;
  std::optional<double> t_opt, d_opt, E_opt, theta_opt;
  int m = 1;
  std::string z_str, w_str, S_file, Sp_file, U_file, V_file, X_file, Y_file, dvec_str, g1 = "0", d1 = "0", g2 = "0",
                                                                                       d2 = "0";
  std::vector<std::string> pairs;

  auto* b_disp = bound->add_subcommand("displacement", "displacement pair bounds");
  b_disp->add_option("--z", z_str, "z as comma list")->required();
  b_disp->add_option("--w", w_str, "w as comma list")->required();
  b_disp->add_option("--E", E)->required();

  auto* b_symp = bound->add_subcommand("symplectic", "symplectic pair bound");
  b_symp->add_option("--S", S_file, "matrix JSON")->required();
  b_symp->add_option("--S-prime", Sp_file, "matrix JSON")->required();
  b_symp->add_option("--E", E)->required();

  auto* b_sk = bound->add_subcommand("sk", "compiled-unitary accuracy bound");
  b_sk->add_option("--m", m)->required();
  b_sk->add_option("--r", r)->required();
  b_sk->add_option("--E", E)->required();
  b_sk->add_option("--delta", delta)->required();

  auto add_drift = [&](CLI::App* c) {
    c->add_option("--alpha", alpha)->required();
    c->add_option("--beta", beta)->required();
    c->add_option("--gamma", gamma);
    c->add_option("--delta", delta_rb, "relative-bound offset");
    c->add_option("--E", E)->required();
  };
  auto* b_drift = bound->add_subcommand("drift", "closed-system drift bound");
  add_drift(b_drift);
  b_drift->add_option("--t", t)->required();

  auto* b_speed = bound->add_subcommand("speed-limit", "closed-system speed-limit time");
  add_drift(b_speed);
  b_speed->add_option("--d", d, "vector-norm distance")->required();

  auto* b_open = bound->add_subcommand("open", "open-system drift bound and speed-limit time");
  b_open->add_option("--alpha", alpha)->required();
  b_open->add_option("--beta", beta)->required();
  b_open->add_option("--E", E)->required();
  b_open->add_option("--t", t_opt);
  b_open->add_option("--d", d_opt);

  auto* b_pf = bound->add_subcommand("pfeifer", "short-time bound");
  b_pf->add_option("--gamma", gamma)->required();
  b_pf->add_option("--delta", delta_rb)->required();
  b_pf->add_option("--E", E)->required();
  b_pf->add_option("--dt", dt)->required();

  auto* b_var = bound->add_subcommand("variance", "optimal p variance at energy E");
  b_var->add_option("--E", E)->required();

  auto* b_phi = bound->add_subcommand("phi", "universal lower bound on the trace distance at s = Et");
  b_phi->add_option("--s", s)->required();

  auto* b_mc = bound->add_subcommand("multicopy", "copies for perfect discrimination");
  b_mc->add_option("--U", U_file, "complex matrix JSON");
  b_mc->add_option("--V", V_file, "complex matrix JSON");
  b_mc->add_option("--theta", theta_opt, "shortcut: U = I, V = diag(1, e^{i theta})");

  auto* b_ql = bound->add_subcommand("qubit-lower", "energy lower bound for the qubit example");
  b_ql->add_option("--theta", theta)->required();

  auto* b_ld = bound->add_subcommand("lindblad-diff", "bounded Lindblad generator difference");
  b_ld->add_option("--pair", pairs, "a,b,c,d norms; repeatable")->required();
  b_ld->add_option("--t", t)->required();

  auto* b_bm = bound->add_subcommand("brownian", "alpha, beta for the Brownian-motion model");
  b_bm->add_option("--gamma1", g1)->required();
  b_bm->add_option("--delta1", d1)->required();
  b_bm->add_option("--gamma2", g2)->required();
  b_bm->add_option("--delta2", d2)->required();
  b_bm->add_option("--E", E_opt);
  b_bm->add_option("--t", t_opt);

  auto* b_qab = bound->add_subcommand("quadratic-ab", "alpha, beta for a quadratic Hamiltonian perturbation");
  b_qab->add_option("--d", dvec_str, "diagonal frequencies d_j")->required();
  b_qab->add_option("--X", X_file, "complex matrix JSON")->required();
  b_qab->add_option("--Y", Y_file, "complex matrix JSON")->required();
  b_qab->add_option("--E", E_opt);
  b_qab->add_option("--t", t_opt);

  // net
  auto* netc = app.add_subcommand("net", "build or inspect nets");
  netc->require_subcommand(1);
  auto* n_build = netc->add_subcommand("build", "build an epsilon-net");
  double epsilon = 0.25;
  long budget = 20000;
  bool lattice = false;
  n_build->add_option("--m", m)->required();
  n_build->add_option("--r", r)->required();
  n_build->add_option("--epsilon", epsilon)->required();
  n_build->add_option("--budget", budget, "consecutive rejected samples before stopping");
  n_build->add_flag("--lattice", lattice, "write an implicit lattice net");
  n_build->add_option("--out", out_file);
  auto* n_info = netc->add_subcommand("info", "summarize a net file");
  std::size_t probes = 0;
  n_info->add_option("--net", net_file)->required();
  n_info->add_option("--probes", probes, "coverage probes (0 = skip)");

  // verify
  auto* verify = app.add_subcommand("verify", "run an oracle suite");
  std::string suite;
  std::optional<double> verify_E;
  std::optional<int> restarts_flag;
  verify->add_option("suite", suite, "suite name or 'all'")->required();
  verify->add_option("--E", verify_E);
  verify->add_option("--restarts", restarts_flag);
  verify->add_option("--out", out_file);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    load_config(cfg);
    if (seed_flag) cfg.seed = *seed_flag;
    if (threads_flag) cfg.threads = *threads_flag;
    if (restarts_flag) cfg.restarts = *restarts_flag;

    if (*compile) {
      cfg.paths = {{"target", target_file}, {"net", net_file}};
      const std::unique_ptr<BaseNet> net = net_from_json(read_json_file(net_file));
      const SymplecticMatrix S(matrix_from_json(read_json_file(target_file)));
      SKParams p;
      p.m = net->modes();
      p.r = net->radius();
      p.epsilon0 = eps0_flag.value_or(net->epsilon());
      p.delta = delta;
      p.max_level = max_level;
      const CompilationResult res = sk_compile(S, *net, p);
      emit(envelope("compile", cfg, compilation_to_json(res, p)), out_file);
      std::cerr << "compile: level " << res.level << ", error " << res.achieved_error << ", "
                << res.word.tokens.size() << " tokens\n";
      if (res.achieved_error > delta) {
        std::cerr << "compile: target accuracy not reached\n";
        return kDivergence;
      }
      return kOk;
    }

    if (*bound) {
      BoundReport rep;
      if (*b_disp) {
        rep = displacement_bounds(parse_vec(z_str), parse_vec(w_str), E);
      } else if (*b_symp) {
        cfg.paths = {{"S", S_file}, {"S_prime", Sp_file}};
        rep = symplectic_pair_bound(SymplecticMatrix(matrix_from_json(read_json_file(S_file))),
                                    SymplecticMatrix(matrix_from_json(read_json_file(Sp_file))), E);
      } else if (*b_sk) {
        rep = sk_theorem_bound(m, r, E, delta);
      } else if (*b_drift) {
        const DriftParams dp{alpha, beta, gamma, delta_rb};
        rep = scalar_report("drift", std::nullopt, closed_drift_bound(dp, E, t), kClosedDrift, kDiamond);
        rep.params = {{"alpha", alpha}, {"beta", beta}, {"gamma", gamma}, {"delta", delta_rb}, {"E", E}, {"t", t}};
      } else if (*b_speed) {
        const DriftParams dp{alpha, beta, gamma, delta_rb};
        rep.name = "speed-limit";
        rep.params = {{"alpha", alpha}, {"beta", beta}, {"gamma", gamma}, {"delta", delta_rb}, {"E", E}, {"d", d}};
        rep.formula_ref = kClosedTime;
        rep.scale = kVector;
        try {
          rep.lower = closed_speed_limit_time(dp, E, d);
        } catch (const NoFiniteBound& e) {
          rep.extra["no_finite_bound"] = true;
        }
      } else if (*b_open) {
        if (!t_opt && !d_opt) throw ParameterError("bound open: give --t, --d or both");
        rep.name = "open";
        rep.params = {{"alpha", alpha}, {"beta", beta}, {"E", E}};
        rep.scale = kDiamond;
        rep.formula_ref = std::string(kOpenDrift) + "; " + kOpenTime;
        if (t_opt) {
          rep.params["t"] = *t_opt;
          rep.upper = open_drift_bound(alpha, beta, E, *t_opt);
        }
        if (d_opt) {
          rep.params["d"] = *d_opt;
          try {
            rep.extra["speed_limit_time"] = open_speed_limit_time(alpha, beta, E, *d_opt);
          } catch (const NoFiniteBound& e) {
            rep.extra["no_finite_bound"] = true;
          }
        }
      } else if (*b_pf) {
        rep = scalar_report("pfeifer", std::nullopt, pfeifer_bound(gamma, delta_rb, E, dt),
                            "1/2 ||U_dt - V_dt||_diamond^{E} <= sin(min(|dt| sqrt(gamma E + delta), pi/2))",
                            kHalvedDiamond);
        rep.params = {{"gamma", gamma}, {"delta", delta_rb}, {"E", E}, {"dt", dt}};
      } else if (*b_var) {
        const double v = optimal_p_variance(E);
        rep = scalar_report("variance", v, v, "max <p^2> at <N> <= E equals (sqrt E + sqrt(E+1))^2 / 2", kNone);
        rep.params = {{"E", E}};
      } else if (*b_phi) {
        rep = scalar_report("phi", universal_phi_lower(s), std::nullopt,
                            "max(2 sqrt(s(pi+2s)/(pi^2+4 pi s+8s^2)), 2 sqrt((s/pi)(1-s/pi)) for s <= pi/2)",
                            kHalvedDiamond);
        rep.params = {{"s", s}};
      } else if (*b_mc) {
        CMat U, V;
        if (theta_opt) {
          U = CMat::Identity(2, 2);
          V = CMat::Identity(2, 2);
          V(1, 1) = std::polar(1.0, *theta_opt);
          rep.params["theta"] = *theta_opt;
        } else {
          if (U_file.empty() || V_file.empty()) throw ParameterError("bound multicopy: give --U and --V, or --theta");
          cfg.paths = {{"U", U_file}, {"V", V_file}};
          U = complex_matrix_from_json(read_json_file(U_file));
          V = complex_matrix_from_json(read_json_file(V_file));
        }
        rep.name = "multicopy";
        rep.formula_ref = "n = floor(pi / Theta) + 1, Theta = angular spread of spec(U^dag V) after phase alignment";
        rep.scale = kNone;
        try {
          const MultiCopy mc = multi_copy_queries(U, V);
          rep.upper = mc.n;
          rep.extra = {{"n", mc.n}, {"Theta", mc.Theta}, {"interior", mc.interior}, {"phases", mc.phases}};
          rep.extra["n_verified"] = mc.n_verified ? json(*mc.n_verified) : json(nullptr);
        } catch (const NoFiniteBound& e) {
          rep.extra["no_finite_bound"] = true;
        }
      } else if (*b_ql) {
        rep = scalar_report("qubit-lower", qubit_example_energy_lower(theta), std::nullopt,
                            "E >= 1/12 + sqrt6 / (9 theta)", kNone);
        rep.params = {{"theta", theta}};
      } else if (*b_ld) {
        std::vector<std::array<double, 4>> np;
        for (const auto& p : pairs) {
          const Vec v = parse_vec(p);
          if (v.size() != 4) throw ParameterError("--pair needs four norms: " + p);
          np.push_back({v(0), v(1), v(2), v(3)});
        }
        rep = scalar_report("lindblad-diff", std::nullopt, bounded_lindblad_difference(np, t),
                            "t sum_k (||L_k^dag L_k - L'_k^dag L'_k|| + ||L_k - L'_k|| (||L_k|| + ||L'_k||))",
                            kDiamond);
        rep.params = {{"t", t}, {"pairs", static_cast<double>(np.size())}};
      } else if (*b_bm || *b_qab) {
        DriftParams dp;
        if (*b_bm) {
          dp = brownian_alpha_beta(parse_complex(g1), parse_complex(d1), parse_complex(g2), parse_complex(d2));
          rep.name = "brownian";
          rep.formula_ref = "alpha = (|g1|+|d1|)^2 + (|g2|+|d2|)^2, beta = |g1||d1| + |g2||d2| + kappa";
          rep.extra["kappa"] = kBrownianKappa;
        } else {
          cfg.paths = {{"X", X_file}, {"Y", Y_file}};
          dp = quadratic_alpha_beta(parse_vec(dvec_str), complex_matrix_from_json(read_json_file(X_file)),
                                    complex_matrix_from_json(read_json_file(Y_file)));
          rep.name = "quadratic-ab";
          rep.formula_ref =
              "alpha = (sqrt(3/2) ||X-D||_2 + (1+sqrt(3/2)) ||Y||_2) / min d_j, "
              "beta = (m-1)/sqrt2 ||X-D||_2 + sqrt((2m+1)^2/2 + 2m^2) ||Y||_2";
        }
        rep.scale = kNone;
        rep.extra["alpha"] = dp.alpha;
        rep.extra["beta"] = dp.beta;
        if (E_opt && t_opt) {
          rep.params = {{"E", *E_opt}, {"t", *t_opt}};
          rep.scale = kDiamond;
          if (*b_bm) {
            rep.upper = open_drift_bound(dp.alpha, dp.beta, *E_opt, *t_opt);
            rep.formula_ref += "; " + std::string(kOpenDrift);
          } else {
            rep.upper = closed_drift_bound(dp, *E_opt, *t_opt);
            rep.formula_ref += "; " + std::string(kClosedDrift);
          }
        }
      }
      json j = report_to_json(rep);
      emit(envelope("bound " + rep.name, cfg, j), "");
      std::cerr << "bound " << rep.name << ": lower " << (rep.lower ? std::to_string(*rep.lower) : "-") << ", upper "
                << (rep.upper ? std::to_string(*rep.upper) : "-") << " (" << rep.scale << ")\n";
      return kOk;
    }

    if (*n_build) {
      json nj;
      if (lattice) {
        nj = LatticeNet(m, r, epsilon).to_json();
      } else {
        const Net net = build_net(m, r, epsilon, budget, cfg.seed);
        nj = net.to_json();
        std::cerr << "net build: " << net.size() << " elements (bound " << net.cardinality_bound() << ")\n";
      }
      nj["generated_by"] = {{"version", version_string()}, {"config", cfg.to_json()}, {"budget", budget}};
      emit(nj, out_file);
      return kOk;
    }

    if (*n_info) {
      cfg.paths = {{"net", net_file}};
      const json nj = read_json_file(net_file);
      const std::unique_ptr<BaseNet> net = net_from_json(nj);
      json info = {{"kind", nj.value("kind", std::string("explicit"))},
                   {"m", net->modes()},
                   {"r", net->radius()},
                   {"epsilon", net->epsilon()}};
      if (const auto* explicit_net = dynamic_cast<const Net*>(net.get())) {
        info["size"] = explicit_net->size();
        info["cardinality_bound"] = explicit_net->cardinality_bound();
        info["has_words"] = explicit_net->has_words();
      }
      if (probes > 0) {
        const CoverageReport cov = coverage_report(*net, probes, cfg.seed);
        info["coverage"] = {{"probes", probes}, {"uncovered", cov.uncovered}, {"max_distance", cov.max_distance}};
      }
      emit(envelope("net info", cfg, info), "");
      return kOk;
    }

    if (*verify) {
      VerifyOptions opt;
      opt.seed = cfg.seed;
      opt.threads = cfg.threads;
      opt.restarts = cfg.restarts;
      opt.E = verify_E;
      const std::vector<SuiteResult> results = run_suite(suite, opt);
      json arr = json::array();
      bool ok = true;
      for (const auto& sr : results) {
        arr.push_back(suite_to_json(sr));
        ok = ok && sr.pass();
        int failed = 0;
        for (const auto& c : sr.checks) failed += c.pass ? 0 : 1;
        std::cerr << (sr.pass() ? "PASS " : "FAIL ") << sr.suite << ": " << sr.checks.size() << " checks, " << failed
                  << " failing\n";
      }
      emit(envelope("verify " + suite, cfg, {{"pass", ok}, {"suites", arr}}), out_file);
      return ok ? kOk : kVerifyFail;
    }
  } catch (const CoverageError& e) {
    std::cerr << "coverage error: " << e.what() << "\n";
    return kCoverage;
  } catch (const DivergenceError& e) {
    std::cerr << "divergence: " << e.what() << "\n";
    return kDivergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
