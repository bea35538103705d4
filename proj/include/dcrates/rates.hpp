#pragma once

#include <string>

#include "dcrates/core.hpp"
#include "dcrates/curvature.hpp"

namespace dcr {

enum class Regime { P1, P2, P3, P4, P5, P6 };

enum class RateStatus { TightAllN, TightNLe1, ProvenLinear, Conjectured };

inline const char* regime_name(Regime r) {
  switch (r) {
    case Regime::P1: return "p1";
    case Regime::P2: return "p2";
    case Regime::P3: return "p3";
    case Regime::P4: return "p4";
    case Regime::P5: return "p5";
    case Regime::P6: return "p6";
  }
  return "?";
}

inline const char* status_name(RateStatus s) {
  switch (s) {
    case RateStatus::TightAllN: return "tight_all_N";
    case RateStatus::TightNLe1: return "tight_N_le_1";
    case RateStatus::ProvenLinear: return "proven_linear";
    case RateStatus::Conjectured: return "conjectured";
  }
  return "?";
}

struct RegimeReport {
  Regime regime;
  double p_value;
  RateStatus status;
  std::string description;
  double mu_sum;  // mu1 + mu2

  double denominator(int N) const { return mu_sum + p_value * N; }
};

struct RateValue {
  double bound;
  std::string formula_id;
  bool proven;
};

namespace detail {

inline void check_assumption(double mu1, double L1, double mu2, double L2) {
  if (!std::isfinite(mu1) || !std::isfinite(mu2) || std::isnan(L1) || std::isnan(L2))
    throw DomainError("curvatures must be finite (L may be +inf)");
  if (!(mu1 >= 0.0)) throw DomainError("Assumption: mu1 >= 0");
  if (!(mu1 < L1)) throw DomainError("Assumption: mu1 < L1");
  if (!(mu2 < L2)) throw DomainError("Assumption: mu2 < L2");
}

// -L2*mu1/(L2+mu1), the p3/p4 vs p5 threshold; -mu1 when L2 = inf.
inline double p5_threshold(double mu1, double L2) {
  return std::isinf(L2) ? -mu1 : -L2 * mu1 / (L2 + mu1);
}

}  // namespace detail

inline RegimeReport classify_regime(double mu1, double L1, double mu2, double L2) {
  detail::check_assumption(mu1, L1, mu2, L2);
  if (!(mu1 + mu2 > 0.0)) throw DomainError("classify_regime: mu1 + mu2 > 0 required");
  const double s = mu1 + mu2;
  const double tau = detail::p5_threshold(mu1, L2);
  // Table-1 domains checked in index order; boundaries agree in value.
  if (mu1 >= mu2 && mu2 >= 0.0 && L2 > mu1) {
    double p = std::isinf(L2) ? s : s + (mu1 - mu2) * (mu1 - mu2) / (L2 - mu2);
    return {Regime::P1, p, RateStatus::TightAllN, "f1, f2 convex; F nonconvex-nonconcave", s};
  }
  if (mu2 >= mu1 && L1 > mu2) {
    double p = std::isinf(L1) ? s : s + (mu1 - mu2) * (mu1 - mu2) / (L1 - mu1);
    return {Regime::P2, p, RateStatus::TightAllN, "f1, f2 convex; F nonconvex-nonconcave", s};
  }
  if (mu2 < 0.0 && mu2 >= tau && L2 > mu1 && mu1 > 0.0) {
    double p = std::isinf(L2) ? s : s * (L2 + mu1) / (L2 + mu2);
    return {Regime::P3, p, RateStatus::TightAllN,
            "f1 strongly convex, f2 nonconvex; F nonconvex-nonconcave", s};
  }
  if (std::isfinite(L2) && L2 <= mu1 && mu2 >= tau && mu2 < L2) {
    double p = mu1 * mu1 * (L2 + mu1) / (L2 * L2);
    return {Regime::P4, p, RateStatus::ProvenLinear,
            "f1 strongly convex, f2 nonconvex; F convex", s};
  }
  if (mu2 < 0.0 && mu2 > -mu1 && mu2 <= tau) {
    double p = mu1 * mu1 * s / (mu2 * mu2);
    RateStatus st = (std::isfinite(L2) && L2 + mu2 <= 0.0) ? RateStatus::ProvenLinear
                                                           : RateStatus::Conjectured;
    return {Regime::P5, p, st, "f1 strongly convex, f2 nonconvex; F nonconcave", s};
  }
  if (mu2 >= mu1 && std::isfinite(L1) && L1 <= mu2) {
    double p = mu2 * mu2 * (L1 + mu2) / (L1 * L1);
    return {Regime::P6, p, RateStatus::Conjectured, "f1 convex, f2 strongly convex; F concave", s};
  }
  throw DomainError("classify_regime: parameters outside all Table-1 domains");
}

// Theorem 2.1 bound on (1/2) min_k ||x^k - x^{k+1}||^2.
inline RateValue sublinear_rate_bound(double mu1, double L1, double mu2, double L2, int N,
                                      double delta) {
  if (N < 1) throw DomainError("sublinear_rate_bound: N >= 1 required");
  if (delta < 0.0) throw DomainError("sublinear_rate_bound: delta >= 0 required");
  RegimeReport r = classify_regime(mu1, L1, mu2, L2);
  return {delta / r.denominator(N), std::string("thm2.1/") + regime_name(r.regime), true};
}

// E_k(z) = sum_{j=1}^{2k} z^{-j}; 0 when z = +-inf, 2k when z = 1.
inline double e_sum(int k, double z) {
  if (k < 0) throw DomainError("e_sum: k >= 0 required");
  if (k == 0) return 0.0;
  if (std::isinf(z)) return 0.0;
  if (z == 1.0) return 2.0 * k;
  if (z == 0.0) throw DomainError("e_sum: z != 0 required");
  return (-1.0 + std::pow(z, -2.0 * k)) / (1.0 - z);
}

// P_N(eta, rho) from the conjectured nonconvex-nonconcave rate.
inline double p_n(double eta, double rho, int N) {
  if (N < 0) throw DomainError("p_n: N >= 0 required");
  if (eta == rho || eta + rho == 0.0) throw DomainError("p_n: singular at eta = rho or eta = -rho");
  double pos_sum = 0.0;
  for (int k = 0; k <= N; ++k) pos_sum += std::max(0.0, e_sum(k, eta) - e_sum(k, rho));
  const double lead = (1.0 + eta) * (1.0 + rho) / (eta + rho);
  return lead * (N + (1.0 - eta) * (1.0 - rho) / (eta - rho) * pos_sum);
}

// Exact-rate denominators: Theorems 3.1/3.2 where proven, the conjectured
// expressions elsewhere. Bounds (1/2) min_k ||x^k - x^{k+1}||^2 given delta.
inline RateValue tight_rate_bound(double mu1, double L1, double mu2, double L2, int N,
                                  double delta) {
  detail::check_assumption(mu1, L1, mu2, L2);
  if (!(mu1 + mu2 > 0.0)) throw DomainError("tight_rate_bound: mu1 + mu2 > 0 required");
  if (N < 1) throw DomainError("tight_rate_bound: N >= 1 required");
  const double tau = detail::p5_threshold(mu1, L2);
  const bool proven = (std::isfinite(L2) && L2 <= mu1 && mu2 >= tau) ||
                      (std::isfinite(L2) && L2 + mu2 <= 0.0);
  if (mu2 < 0.0 && mu1 > 0.0 && L2 > mu1) {
    // F nonconvex-nonconcave, Eq. (3.2)
    double m = std::min(p_n(L2 / mu1, mu2 / mu1, N), e_sum(N, mu2 / mu1));
    return {delta / (mu1 + mu2 + mu1 * m), "eq3.2", proven};
  }
  if (L2 <= mu1 && mu1 > 0.0) {
    // F (strongly) convex, Eq. (3.3)
    double m = std::min(e_sum(N, L2 / mu1), e_sum(N, mu2 / mu1));
    return {delta / (mu1 + mu2 + mu1 * m), "eq3.3", proven};
  }
  if (std::isfinite(L1) && L1 <= mu2) {
    // F (strongly) concave, Eq. (3.4)
    double m = std::min(e_sum(N, L1 / mu2), e_sum(N, mu1 / mu2));
    return {delta / (mu2 + mu1 + mu2 * m), "eq3.4", false};
  }
  throw DomainError("tight_rate_bound: no exact-rate case applies (use the Theorem 2.1 path)");
}

// Sign of T1 = mu1 ((L2+mu1)/L2^2 - (mu1+mu2)/mu2^2); defined for mu2 < 0.
inline int t1_sign(double mu1, double mu2, double L2) {
  if (!(mu2 < 0.0)) throw DomainError("t1_sign: mu2 < 0 required");
  double a = std::isinf(L2) ? 0.0 : (L2 + mu1) / (L2 * L2);
  double t1 = mu1 * (a - (mu1 + mu2) / (mu2 * mu2));
  double scale = std::max(1e-300, mu1 * std::max(std::abs(a), std::abs((mu1 + mu2) / (mu2 * mu2))));
  if (std::abs(t1) <= 1e-12 * scale) return 0;
  return t1 > 0.0 ? 1 : -1;
}

// Threshold stepsize separating regimes p3/p4 from p5 under the PGD mapping:
// the root of mu2 (L2 + mu1) + L2 mu1 = 0 in gamma, located by bisection in
// s = 1/gamma over (max((L_phi - mu_h)/2, 0), L_phi).
inline double pgd_threshold_stepsize(double L_phi, double mu_phi, double mu_h) {
  if (!(L_phi > 0.0) || !(mu_phi < L_phi) || !(mu_h >= 0.0))
    throw DomainError("pgd_threshold_stepsize: need L_phi > 0, mu_phi < L_phi, mu_h >= 0");
  auto psi = [&](double s) {
    double m1 = s + mu_h, m2 = s - L_phi, l2 = s - mu_phi;
    return m2 * (l2 + m1) + l2 * m1;
  };
  double lo = (L_phi - mu_h) / 2.0, hi = L_phi;
  if (!(lo < hi)) lo = hi / 2.0;
  double flo = psi(lo), fhi = psi(hi);
  if (flo == 0.0) return 1.0 / lo;
  if (fhi == 0.0) return 1.0 / hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw NoRootError("pgd_threshold_stepsize: no sign change in (1/L_phi, 2/(L_phi - mu_h))");
  for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, hi); ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = psi(mid);
    if (fm == 0.0) return 1.0 / mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 2.0 / (lo + hi);
}

}  // namespace dcr
