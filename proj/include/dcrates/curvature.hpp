#pragma once

#include "dcrates/core.hpp"

namespace dcr {

// Curvature interval [mu, L] of the class F_{mu,L}: f - mu|.|^2/2 convex and
// L|.|^2/2 - f convex. mu is always finite; L = +inf marks a nonsmooth upper bound.
struct CurvatureBounds {
  double mu;
  double L;

  CurvatureBounds(double mu_, double L_) : mu(mu_), L(L_) {
    if (!std::isfinite(mu)) throw DomainError("CurvatureBounds: mu must be finite");
    if (std::isnan(L)) throw DomainError("CurvatureBounds: L is NaN");
    if (L == -kInf) throw DomainError("CurvatureBounds: L must be > mu");
    if (!(mu < L)) throw DomainError("CurvatureBounds: mu < L required");
  }

  bool smooth() const { return std::isfinite(L); }

  CurvatureBounds shifted(double lambda) const {
    return CurvatureBounds(mu - lambda, std::isinf(L) ? L : L - lambda);
  }

  bool contains(double a, double tol = kTol) const {
    return a >= mu - tol && (std::isinf(L) || a <= L + tol);
  }
};

}  // namespace dcr
