#include "gsk/nu.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include <Eigen/Eigenvalues>

#include "gsk/errors.hpp"
#include "gsk/random.hpp"

namespace gsk {

namespace {

constexpr double pi = std::numbers::pi;

struct Problem {
  const CMat& W;
  const CMat& H;
  double E;
  CVec ground;  // lowest eigenvector of H
  double e0;
  Eigen::SelfAdjointEigenSolver<CMat> hs;
};

double energy(const Problem& P, const CVec& psi) { return psi.dot(P.H * psi).real(); }

double objective(const Problem& P, const CVec& psi) { return std::norm(psi.dot(P.W * psi)); }

// pull ψ back into {<H> <= E} by mixing with the ground state of H
CVec make_feasible(const Problem& P, CVec a) {
  a.normalize();
  const CVec Ha = P.H * a;
  const double ea = a.dot(Ha).real();
  const double slack = 1e-12 * std::max(1.0, P.E);
  if (ea <= P.E - slack) return a;
  const cplx ov = P.ground.dot(a);
  const cplx ph = std::abs(ov) > 0 ? ov / std::abs(ov) : cplx(1, 0);
  const CVec b = ph * P.ground;
  const double eb = P.e0;
  const double cross_h = a.dot(P.H * b).real();
  const double cross_n = a.dot(b).real();
  auto e_of = [&](double th) {
    const double c = std::cos(th), s = std::sin(th);
    return (c * c * ea + s * s * eb + 2 * c * s * cross_h) / (c * c + s * s + 2 * c * s * cross_n);
  };
  double lo = 0.0, hi = pi / 2;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    (e_of(mid) > P.E - slack ? lo : hi) = mid;
  }
  CVec out = std::cos(hi) * a + std::sin(hi) * b;
  return out / out.norm();
}

struct RunResult {
  double f;
  CVec psi;
  bool stationary;
};

RunResult descend(const Problem& P, CVec psi, int max_iters) {
  psi = make_feasible(P, std::move(psi));
  double f = objective(P, psi);
  double t = 1.0;
  bool stationary = false;
  const double active = 1e-9 * std::max(1.0, P.E);
  for (int it = 0; it < max_iters; ++it) {
    if (f < 1e-30) {
      stationary = true;
      break;
    }
    const CVec Wp = P.W * psi;
    const CVec Wdp = P.W.adjoint() * psi;
    const cplx w = psi.dot(Wp);
    CVec g = std::conj(w) * Wp + w * Wdp;
    g -= psi.dot(g) * psi;
    const CVec Hp = P.H * psi;
    const double e = psi.dot(Hp).real();
    if (e > P.E - active) {
      const CVec h = Hp - e * psi;
      const double hh = h.squaredNorm();
      const double gh = h.dot(g).real();
      if (hh > 0 && gh < 0) g -= (gh / hh) * h;
    }
    const double gn = g.norm();
    if (gn < 1e-300) {
      stationary = true;
      break;
    }
    bool moved = false;
    while (t * gn > 1e-18) {
      CVec cand = make_feasible(P, psi - t * g);
      const double fc = objective(P, cand);
      if (fc < f) {
        psi = std::move(cand);
        f = fc;
        t = std::min(t * 2.0, 1e6);
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved) {
      stationary = true;
      break;
    }
  }
  return {f, std::move(psi), stationary};
}

struct DualResult {
  double bound = 0.0;
  double phi = 0.0;
  double lambda = 0.0;
  CVec state;
};

// best λ for a fixed direction φ; returns (value, λ, minimizing eigenvector)
std::tuple<double, double, CVec> dual_direction(const Problem& P, double phi) {
  const cplx e = std::exp(cplx(0, -phi));
  const CMat A = 0.5 * (e * P.W + std::conj(e) * P.W.adjoint());
  auto eval = [&](double lam) {
    Eigen::SelfAdjointEigenSolver<CMat> es(A + lam * P.H);
    const CVec v = es.eigenvectors().col(0);
    return std::make_tuple(es.eigenvalues()(0) - lam * P.E, v.dot(P.H * v).real(), v);
  };
  auto [g0, h0, v0] = eval(0.0);
  if (h0 <= P.E) return {g0, 0.0, v0};
  double lo = 0.0, hi = 1.0;
  for (int k = 0; k < 60; ++k) {
    if (std::get<1>(eval(hi)) <= P.E) break;
    lo = hi;
    hi *= 2.0;
  }
  double best = g0, best_l = 0.0;
  CVec best_v = v0;
  for (int it = 0; it < 40; ++it) {
    const double mid = 0.5 * (lo + hi);
    auto [g, h, v] = eval(mid);
    if (g > best) {
      best = g;
      best_l = mid;
      best_v = v;
    }
    (h > P.E ? lo : hi) = mid;
  }
  return {best, best_l, best_v};
}

DualResult dual_search(const Problem& P, int angles) {
  DualResult d;
  d.bound = -std::numeric_limits<double>::infinity();
  angles = std::max(angles, 4);
  int best_k = 0;
  for (int k = 0; k < angles; ++k) {
    const double phi = 2 * pi * k / angles;
    auto [g, l, v] = dual_direction(P, phi);
    if (g > d.bound) {
      d = {g, phi, l, v};
      best_k = k;
    }
  }
  // golden-section refinement around the best grid angle
  double a = 2 * pi * (best_k - 1) / angles, b = 2 * pi * (best_k + 1) / angles;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 30; ++it) {
    const double c = b - gr * (b - a), e = a + gr * (b - a);
    auto rc = dual_direction(P, c);
    auto re = dual_direction(P, e);
    if (std::get<0>(rc) > d.bound) d = {std::get<0>(rc), c, std::get<1>(rc), std::get<2>(rc)};
    if (std::get<0>(re) > d.bound) d = {std::get<0>(re), e, std::get<1>(re), std::get<2>(re)};
    if (std::get<0>(rc) > std::get<0>(re))
      b = e;
    else
      a = c;
  }
  d.bound = std::max(0.0, d.bound);
  return d;
}

CVec random_start(const Problem& P, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Eigen::Index n = P.H.rows();
  const auto& ev = P.hs.eigenvalues();
  // weight eigenvectors of H up to a random energy window above E
  const double window = P.E * (1.0 + 3.0 * u(rng)) + 1.0;
  CVec c = CVec::Zero(n);
  for (Eigen::Index k = 0; k < n; ++k)
    if (ev(k) - P.e0 <= window || k == 0) c(k) = cplx(g(rng), g(rng));
  return P.hs.eigenvectors() * c;
}

}  // namespace

double nu_dual_bound(const CMat& W, const CMat& H, double E, int angles) {
  Eigen::SelfAdjointEigenSolver<CMat> hs(0.5 * (H + H.adjoint()));
  Problem P{W, H, E, hs.eigenvectors().col(0), hs.eigenvalues()(0), hs};
  return dual_search(P, angles).bound;
}

ConstrainedOptimum nu_E(const CMat& W, const CMat& H, double E, const NuOptions& opt) {
  if (W.rows() != W.cols() || H.rows() != H.cols() || W.rows() != H.rows() || W.rows() == 0)
    throw DimensionError("nu_E: W and H must be square of equal size");
  if (!(E > 0)) throw ParameterError("nu_E: E must be positive");
  if ((H - H.adjoint()).norm() > 1e-9 * std::max(1.0, H.norm())) throw InvariantError("nu_E: H is not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMat> hs(0.5 * (H + H.adjoint()));
  const double e0 = hs.eigenvalues()(0);
  if (e0 > E) throw InfeasibleError("nu_E: the lowest energy exceeds E");
  Problem P{W, H, E, hs.eigenvectors().col(0), e0, hs};

  ConstrainedOptimum best;
  std::vector<CVec> starts = opt.seeds;
  for (const auto& s : starts)
    if (s.size() != W.rows()) throw DimensionError("nu_E: seed state has the wrong dimension");
  if (opt.dual) {
    DualResult d = dual_search(P, opt.dual_angles);
    best.lower_bound = d.bound;
    starts.push_back(d.state);
  }
  const int total = static_cast<int>(starts.size()) + std::max(0, opt.restarts);
  const double stop_at = best.lower_bound + 1e-12;

  auto run = [&](int idx) {
    CVec s;
    if (idx < static_cast<int>(starts.size())) {
      s = starts[idx];
    } else {
      Rng rng(opt.seed * 0x9E3779B97F4A7C15ull + static_cast<std::uint64_t>(idx));
      s = random_start(P, rng);
    }
    return descend(P, std::move(s), opt.max_iters);
  };

  // restarts run in batches of `threads`; the reduction is by (value, index)
  const int threads = std::max(1, opt.threads);
  double best_f = std::numeric_limits<double>::infinity();
  int used = 0;
  for (int base = 0; base < total; base += threads) {
    const int count = std::min(threads, total - base);
    std::vector<RunResult> res(count);
    if (count == 1) {
      res[0] = run(base);
    } else {
      std::vector<std::thread> pool;
      for (int k = 0; k < count; ++k) pool.emplace_back([&, k] { res[k] = run(base + k); });
      for (auto& th : pool) th.join();
    }
    for (int k = 0; k < count; ++k) {
      if (res[k].f < best_f) {
        best_f = res[k].f;
        best.state = res[k].psi;
        best.converged = res[k].stationary;
        best.best_restart = base + k;
      }
    }
    used = base + count;
    if (std::sqrt(best_f) <= stop_at || best_f < 1e-30) break;
  }
  best.restarts_used = used;
  best.value = std::min(1.0, std::sqrt(best_f));
  best.energy = energy(P, best.state);
  best.lower_bound = std::min(best.lower_bound, best.value);
  return best;
}

ConstrainedOptimum nu_E(const FockOperator& W, const FockOperator& H, double E, const NuOptions& opt) {
  return nu_E(W.entries, H.entries, E, opt);
}

double ec_diamond_unitaries(const FockOperator& U, const FockOperator& V, const FockOperator& H, double E,
                            const NuOptions& opt) {
  if (U.dim() != V.dim()) throw DimensionError("ec_diamond_unitaries: dimension mismatch");
  const CMat W = U.entries.adjoint() * V.entries;
  const double nu = nu_E(W, H.entries, E, opt).value;
  return 2.0 * std::sqrt(std::max(0.0, 1.0 - nu * nu));
}

ConstrainedMax constrained_max(const CMat& A, const CMat& H, double E) {
  if (A.rows() != A.cols() || H.rows() != H.cols() || A.rows() != H.rows())
    throw DimensionError("constrained_max: A and H must be square of equal size");
  Eigen::SelfAdjointEigenSolver<CMat> hs(0.5 * (H + H.adjoint()));
  if (hs.eigenvalues()(0) > E) throw InfeasibleError("constrained_max: the lowest energy exceeds E");
  auto top = [&](double lam) {
    Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (A + A.adjoint()) - lam * H);
    const Eigen::Index k = A.rows() - 1;
    const CVec v = es.eigenvectors().col(k);
    return std::make_tuple(es.eigenvalues()(k) + lam * E, v.dot(H * v).real(), v);
  };
  ConstrainedMax out;
  auto [d0, h0, v0] = top(0.0);
  out.upper_bound = d0;
  if (h0 <= E) {
    out.state = v0;
    out.energy = h0;
    out.value = expectation(A, v0);
    return out;
  }
  double lo = 0.0, hi = 1.0;
  for (int k = 0; k < 60 && std::get<1>(top(hi)) > E; ++k) {
    lo = hi;
    hi *= 2.0;
  }
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    auto [d, h, v] = top(mid);
    out.upper_bound = std::min(out.upper_bound, d);
    (h > E ? lo : hi) = mid;
  }
  auto [dh, hh, vh] = top(hi);
  out.upper_bound = std::min(out.upper_bound, dh);
  out.state = vh;
  out.energy = hh;
  out.value = expectation(A, vh);
  out.lambda = hi;
  return out;
}

}  // namespace gsk
