#pragma once

#include <string>
#include <utility>

#include "dcrates/oracle.hpp"

namespace dcr {

// F = f1 - f2.
struct DCInstance {
  FunctionOracle f1;
  FunctionOracle f2;

  DCInstance(FunctionOracle f1_, FunctionOracle f2_) : f1(std::move(f1_)), f2(std::move(f2_)) {
    const double mu1 = f1.bounds().mu, mu2 = f2.bounds().mu;
    if (mu1 < 0.0) throw DomainError("DCInstance: mu1 >= 0 required");
    if (!(mu1 + mu2 > 0.0 || (mu1 == 0.0 && mu2 == 0.0)))
      throw DomainError("DCInstance: mu1 + mu2 > 0 or mu1 = mu2 = 0 required");
  }

  double objective(const Vec& x) const { return f1.eval(x) - f2.eval(x); }
};

// Recorded run. points has length N+2 (x^0..x^{N+1}); g1/g2/fvals align with
// points. The DCA identity g1[k+1] == g2[k] holds bit-exactly by construction.
struct Trajectory {
  std::vector<Vec> points;
  std::vector<Vec> g1, g2;
  std::vector<double> fvals;
  int N = 0;
  SubgradientPolicy policy = SubgradientPolicy::Canonical;
  std::vector<double> gammas;  // nonempty only for PGD runs
  std::string instance_id;

  Vec delta_x(std::size_t k) const { return sub(points[k], points[k + 1]); }
  Vec G(std::size_t k) const { return sub(g1[k], g2[k]); }
  double delta_F(std::size_t k) const { return fvals[k] - fvals[k + 1]; }
  double initial_gap() const { return fvals.front() - fvals.back(); }
};

inline Trajectory dca_run(const DCInstance& inst, const Vec& x0, int N,
                          SubgradientPolicy policy = SubgradientPolicy::Canonical) {
  if (N < 1) throw DomainError("dca_run: N >= 1 required");
  Trajectory t;
  t.N = N;
  t.policy = policy;
  t.points.reserve(N + 2);
  t.points.push_back(x0);
  t.g1.push_back(inst.f1.subgradient(x0, policy));
  for (int k = 0; k <= N; ++k) {
    t.g2.push_back(inst.f2.subgradient(t.points.back(), policy));
    t.points.push_back(inst.f1.tilt_argmin(t.g2.back()));
    t.g1.push_back(t.g2.back());  // g1^{k+1} = g2^k
  }
  t.g2.push_back(inst.f2.subgradient(t.points.back(), policy));
  for (const auto& x : t.points) t.fvals.push_back(inst.objective(x));
  return t;
}

struct DCBoundsPair {
  CurvatureBounds b1, b2;  // (mu1, L1), (mu2, L2)
};

// Curvature mapping of the PGD <-> DCA equivalence:
// mu1 = 1/gamma + mu_h, L1 = 1/gamma + L_h, mu2 = 1/gamma - L_phi, L2 = 1/gamma - mu_phi.
inline DCBoundsPair map_pgd_to_dc(const CurvatureBounds& phi, const CurvatureBounds& h,
                                  double gamma) {
  if (!(gamma > 0.0)) throw StepsizeError("map_pgd_to_dc: gamma > 0 required");
  const double gi = 1.0 / gamma;
  return {CurvatureBounds(gi + h.mu, std::isinf(h.L) ? kInf : gi + h.L),
          CurvatureBounds(gi - phi.L, gi - phi.mu)};
}

// f1 = h + |.|^2/(2 gamma), f2 = |.|^2/(2 gamma) - phi.
inline DCInstance dc_split_of_pgd(const FunctionOracle& phi, const FunctionOracle& h,
                                  double gamma) {
  const double gi = 1.0 / gamma;
  FunctionOracle f1 = h.add_isotropic(gi);
  // f2 = gi*|.|^2/2 - phi
  CurvatureBounds b2(gi - phi.bounds().L, gi - phi.bounds().mu);
  if (auto* q = std::get_if<Quadratic>(&phi.family())) {
    const std::size_t d = q->dim();
    std::vector<double> A(d * d);
    Vec b(d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) A[i * d + j] = -q->A[i * d + j];
      A[i * d + i] += gi;
      b[i] = -q->b[i];
    }
    return DCInstance(std::move(f1), FunctionOracle::quadratic(std::move(A), std::move(b),
                                                               -q->c, b2));
  }
  const auto& p = std::get<PiecewiseQuadratic1D>(phi.family());
  std::vector<Pw1DPiece> pieces;
  pieces.reserve(p.pieces.size());
  for (const auto& pc : p.pieces) pieces.push_back({gi - pc.a, -pc.b, -pc.c});
  return DCInstance(std::move(f1), FunctionOracle::pw1d(p.breaks, std::move(pieces), b2));
}

inline void validate_stepsize(double gamma, const CurvatureBounds& phi,
                              const CurvatureBounds& h) {
  if (!std::isfinite(phi.L)) throw StepsizeError("pgd_run: phi must be smooth (finite L)");
  if (!(gamma > 0.0) || !(gamma < 2.0 / (phi.L - h.mu)))
    throw StepsizeError("pgd_run: gamma must lie strictly in (0, 2/(L_phi - mu_h))");
}

// Proximal gradient descent; accepts a per-iteration stepsize schedule
// (broadcast when a single value is given). Records the DCA-mapped
// subgradients of the per-step splitting.
inline Trajectory pgd_run(const FunctionOracle& phi, const FunctionOracle& h,
                          std::vector<double> gammas, const Vec& x0, int N) {
  if (N < 1) throw DomainError("pgd_run: N >= 1 required");
  if (gammas.empty()) throw StepsizeError("pgd_run: empty stepsize schedule");
  if (gammas.size() == 1) gammas.assign(static_cast<std::size_t>(N) + 1, gammas[0]);
  if (gammas.size() != static_cast<std::size_t>(N) + 1)
    throw StepsizeError("pgd_run: schedule must have N+1 entries");
  for (double g : gammas) validate_stepsize(g, phi.bounds(), h.bounds());

  Trajectory t;
  t.N = N;
  t.gammas = gammas;
  FunctionOracle f1_first = h.add_isotropic(1.0 / gammas[0]);
  t.points.push_back(x0);
  t.g1.push_back(f1_first.subgradient(x0));
  for (int k = 0; k <= N; ++k) {
    const double gi = 1.0 / gammas[static_cast<std::size_t>(k)];
    const Vec& x = t.points.back();
    Vec gphi = phi.subgradient(x);
    Vec g2(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) g2[i] = gi * x[i] - gphi[i];  // subgrad of f2
    t.g2.push_back(g2);
    FunctionOracle f1 = h.add_isotropic(gi);
    t.points.push_back(f1.tilt_argmin(g2));
    t.g1.push_back(g2);
  }
  {
    const double gi = 1.0 / gammas.back();
    const Vec& x = t.points.back();
    Vec gphi = phi.subgradient(x);
    Vec g2(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) g2[i] = gi * x[i] - gphi[i];
    t.g2.push_back(g2);
  }
  for (const auto& x : t.points) t.fvals.push_back(phi.eval(x) + h.eval(x));
  return t;
}

inline Trajectory pgd_run(const FunctionOracle& phi, const FunctionOracle& h, double gamma,
                          const Vec& x0, int N) {
  return pgd_run(phi, h, std::vector<double>{gamma}, x0, N);
}

// argmin_k ||x^k - x^{k+1}||^2, first index on ties.
inline std::pair<std::size_t, double> best_gradient_mapping(const Trajectory& t) {
  if (t.points.size() < 2) throw DomainError("best_gradient_mapping: need >= 2 points");
  std::size_t best = 0;
  double bestv = norm2(t.delta_x(0));
  for (std::size_t k = 1; k + 1 < t.points.size(); ++k) {
    double v = norm2(t.delta_x(k));
    if (v < bestv) {
      bestv = v;
      best = k;
    }
  }
  return {best, bestv};
}

// min_k ||g1^k - g2^k||, first index on ties.
inline std::pair<std::size_t, double> gradient_residual(const Trajectory& t) {
  std::size_t best = 0;
  double bestv = norm(t.G(0));
  for (std::size_t k = 1; k < t.points.size(); ++k) {
    double v = norm(t.G(k));
    if (v < bestv) {
      bestv = v;
      best = k;
    }
  }
  return {best, bestv};
}

// Curvature splitting schedule {lambda^k} = mu1 - 1/gamma^k for the PGD
// standard setting L_phi = mu1 - mu2, mu_h = 0.
inline std::vector<double> schedule_curvature_shift(double mu1, double L2, double mu2,
                                                    const std::vector<double>& gammas) {
  if (!(mu1 > 0.0)) throw ScheduleError("schedule_curvature_shift: mu1 > 0 required");
  (void)L2;
  const double limit = 2.0 / (mu1 - mu2);
  std::vector<double> lambdas;
  lambdas.reserve(gammas.size());
  for (double g : gammas) {
    if (!(g > 0.0) || !(g < limit))
      throw ScheduleError("schedule_curvature_shift: gamma outside (0, 2/(L_phi - mu_h))");
    double lam = mu1 - 1.0 / g;
    if (!(mu1 - lam > 0.0))
      throw ScheduleError("schedule_curvature_shift: shifted mu1 nonpositive");
    lambdas.push_back(lam);
  }
  return lambdas;
}

}  // namespace dcr
