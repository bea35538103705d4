#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <variant>

#include "dcrates/core.hpp"
#include "dcrates/curvature.hpp"

namespace dcr {

enum class SubgradientPolicy { Canonical, LeftExtreme, RightExtreme };

// f(x) = x'Ax/2 + b'x + c with A symmetric (row-major, d*d).
struct Quadratic {
  std::vector<double> A;
  Vec b;
  double c = 0.0;

  std::size_t dim() const { return b.size(); }
};

// One piece a*x^2/2 + b*x + c.
struct Pw1DPiece {
  double a, b, c;
};

// Continuous piecewise quadratic on R. pieces[i] is active on
// [breaks[i-1], breaks[i]] with breaks[-1] = -inf and breaks[m-1] = +inf.
struct PiecewiseQuadratic1D {
  std::vector<double> breaks;
  std::vector<Pw1DPiece> pieces;
};

namespace detail {

// Eigenvalue range of a symmetric matrix by cyclic Jacobi rotations.
inline std::pair<double, double> sym_eig_range(std::vector<double> A, std::size_t d) {
  if (d == 1) return {A[0], A[0]};
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t q = p + 1; q < d; ++q) off += A[p * d + q] * A[p * d + q];
    if (off < 1e-28) break;
    for (std::size_t p = 0; p < d; ++p) {
      for (std::size_t q = p + 1; q < d; ++q) {
        double apq = A[p * d + q];
        if (std::abs(apq) < 1e-300) continue;
        double theta = (A[q * d + q] - A[p * d + p]) / (2.0 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double cth = 1.0 / std::sqrt(t * t + 1.0), sth = t * cth;
        for (std::size_t k = 0; k < d; ++k) {
          double akp = A[k * d + p], akq = A[k * d + q];
          A[k * d + p] = cth * akp - sth * akq;
          A[k * d + q] = sth * akp + cth * akq;
        }
        for (std::size_t k = 0; k < d; ++k) {
          double apk = A[p * d + k], aqk = A[q * d + k];
          A[p * d + k] = cth * apk - sth * aqk;
          A[q * d + k] = sth * apk + cth * aqk;
        }
      }
    }
  }
  double lo = A[0], hi = A[0];
  for (std::size_t i = 1; i < d; ++i) {
    lo = std::min(lo, A[i * d + i]);
    hi = std::max(hi, A[i * d + i]);
  }
  return {lo, hi};
}

// Solve A w = rhs (A symmetric, small). Returns nullopt if singular and
// inconsistent; a particular solution if singular but consistent.
inline std::optional<Vec> solve_linear(std::vector<double> A, Vec rhs) {
  const std::size_t d = rhs.size();
  double scale = 1e-300;
  for (double v : A) scale = std::max(scale, std::abs(v));
  std::vector<std::size_t> col(d);
  for (std::size_t i = 0; i < d; ++i) col[i] = i;
  std::size_t rank = 0;
  for (std::size_t r = 0; r < d; ++r) {
    // pivot search over remaining submatrix
    std::size_t pr = r, pc = r;
    double best = 0.0;
    for (std::size_t i = r; i < d; ++i)
      for (std::size_t j = r; j < d; ++j)
        if (std::abs(A[i * d + col[j]]) > best) {
          best = std::abs(A[i * d + col[j]]);
          pr = i;
          pc = j;
        }
    if (best <= 1e-12 * scale) break;
    std::swap(col[r], col[pc]);
    if (pr != r) {
      for (std::size_t j = 0; j < d; ++j) std::swap(A[r * d + j], A[pr * d + j]);
      std::swap(rhs[r], rhs[pr]);
    }
    double piv = A[r * d + col[r]];
    for (std::size_t i = r + 1; i < d; ++i) {
      double f = A[i * d + col[r]] / piv;
      if (f == 0.0) continue;
      for (std::size_t j = r; j < d; ++j) A[i * d + col[j]] -= f * A[r * d + col[j]];
      rhs[i] -= f * rhs[r];
    }
    ++rank;
  }
  for (std::size_t i = rank; i < d; ++i)
    if (std::abs(rhs[i]) > 1e-9 * std::max(1.0, scale)) return std::nullopt;
  Vec w(d, 0.0);  // free variables pinned to 0
  for (std::size_t r = rank; r-- > 0;) {
    double s = rhs[r];
    for (std::size_t j = r + 1; j < d; ++j) s -= A[r * d + col[j]] * w[col[j]];
    w[col[r]] = s / A[r * d + col[r]];
  }
  return w;
}

}  // namespace detail

class FunctionOracle {
 public:
  using Family = std::variant<Quadratic, PiecewiseQuadratic1D>;

  static FunctionOracle quadratic(std::vector<double> A, Vec b, double c,
                                  CurvatureBounds bounds) {
    FunctionOracle f(Quadratic{std::move(A), std::move(b), c}, bounds);
    f.validate();
    return f;
  }

  static FunctionOracle quadratic1d(double a, double b, double c, CurvatureBounds bounds) {
    return quadratic({a}, {b}, c, bounds);
  }

  static FunctionOracle pw1d(std::vector<double> breaks, std::vector<Pw1DPiece> pieces,
                             CurvatureBounds bounds) {
    FunctionOracle f(PiecewiseQuadratic1D{std::move(breaks), std::move(pieces)}, bounds);
    f.validate();
    return f;
  }

  // |x| scaled: kink of weight w at the origin plus a*x^2/2.
  static FunctionOracle abs_plus_quad(double w, double a, CurvatureBounds bounds) {
    return pw1d({0.0}, {{a, -w, 0.0}, {a, w, 0.0}}, bounds);
  }

  const CurvatureBounds& bounds() const { return bounds_; }
  const Family& family() const { return fam_; }
  bool is_quadratic() const { return std::holds_alternative<Quadratic>(fam_); }

  std::size_t dim() const {
    if (auto* q = std::get_if<Quadratic>(&fam_)) return q->dim();
    return 1;
  }

  double eval(const Vec& x) const {
    if (auto* q = std::get_if<Quadratic>(&fam_)) {
      const std::size_t d = q->dim();
      double v = q->c;
      for (std::size_t i = 0; i < d; ++i) {
        double Axi = 0.0;
        for (std::size_t j = 0; j < d; ++j) Axi += q->A[i * d + j] * x[j];
        v += 0.5 * x[i] * Axi + q->b[i] * x[i];
      }
      return v;
    }
    const auto& p = std::get<PiecewiseQuadratic1D>(fam_);
    const auto& pc = p.pieces[piece_index(p, x[0])];
    return 0.5 * pc.a * x[0] * x[0] + pc.b * x[0] + pc.c;
  }

  Vec subgradient(const Vec& x, SubgradientPolicy policy = SubgradientPolicy::Canonical) const {
    if (auto* q = std::get_if<Quadratic>(&fam_)) {
      const std::size_t d = q->dim();
      Vec g(d);
      for (std::size_t i = 0; i < d; ++i) {
        double s = q->b[i];
        for (std::size_t j = 0; j < d; ++j) s += q->A[i * d + j] * x[j];
        g[i] = s;
      }
      return g;
    }
    const auto& p = std::get<PiecewiseQuadratic1D>(fam_);
    const double t = x[0];
    for (std::size_t j = 0; j < p.breaks.size(); ++j) {
      if (t == p.breaks[j]) {
        double dm = p.pieces[j].a * t + p.pieces[j].b;
        double dp = p.pieces[j + 1].a * t + p.pieces[j + 1].b;
        switch (policy) {
          case SubgradientPolicy::LeftExtreme: return {dm};
          case SubgradientPolicy::RightExtreme: return {dp};
          case SubgradientPolicy::Canonical: return {0.5 * (dm + dp)};
        }
      }
    }
    const auto& pc = p.pieces[piece_index(p, t)];
    return {pc.a * t + pc.b};
  }

  // argmin_w { f(w) - <g, w> }, i.e. a point with g in the subdifferential
  // for convex f. Exact per family.
  Vec tilt_argmin(const Vec& g) const {
    if (auto* q = std::get_if<Quadratic>(&fam_)) {
      Vec rhs(q->dim());
      for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = g[i] - q->b[i];
      auto w = detail::solve_linear(q->A, rhs);
      if (!w) throw SingularError("tilt_argmin: singular quadratic, no solution for tilt");
      return *w;
    }
    const auto& p = std::get<PiecewiseQuadratic1D>(fam_);
    const double gv = g[0];
    // unboundedness of f(w) - g w toward either infinity
    {
      const auto& first = p.pieces.front();
      const auto& last = p.pieces.back();
      if (first.a < 0.0 || (first.a == 0.0 && first.b - gv > 0.0) || last.a < 0.0 ||
          (last.a == 0.0 && last.b - gv < 0.0))
        throw RangeError("tilt_argmin: tilted objective unbounded (g outside range of subdifferential)");
    }
    double bestw = 0.0, bestv = kInf;
    bool found = false;
    auto consider = [&](double w) {
      double v = 0.5 * piece_at(p, w).a * w * w + piece_at(p, w).b * w + piece_at(p, w).c - gv * w;
      if (!found || v < bestv - 1e-15 * std::max(1.0, std::abs(bestv))) {
        bestv = v;
        bestw = w;
        found = true;
      }
    };
    const std::size_t m = p.pieces.size();
    for (std::size_t i = 0; i < m; ++i) {
      double lo = (i == 0) ? -kInf : p.breaks[i - 1];
      double hi = (i == m - 1) ? kInf : p.breaks[i];
      const auto& pc = p.pieces[i];
      if (pc.a != 0.0) {
        double w = (gv - pc.b) / pc.a;
        if (w >= lo && w <= hi) consider(w);
      } else if (pc.b == gv) {
        consider(std::isfinite(lo) ? lo : hi);  // flat tilted piece: any point
      }
    }
    for (std::size_t j = 0; j < p.breaks.size(); ++j) {
      double t = p.breaks[j];
      double dm = p.pieces[j].a * t + p.pieces[j].b;
      double dp = p.pieces[j + 1].a * t + p.pieces[j + 1].b;
      if (gv >= std::min(dm, dp) && gv <= std::max(dm, dp)) consider(t);
    }
    if (!found) throw RangeError("tilt_argmin: g not attained by any subdifferential");
    return {bestw};
  }

  // f - lambda*|.|^2/2 with bounds shifted accordingly.
  FunctionOracle shift_curvature(double lambda) const {
    FunctionOracle out = *this;
    out.bounds_ = bounds_.shifted(lambda);
    if (auto* q = std::get_if<Quadratic>(&out.fam_)) {
      const std::size_t d = q->dim();
      for (std::size_t i = 0; i < d; ++i) q->A[i * d + i] -= lambda;
    } else {
      for (auto& pc : std::get<PiecewiseQuadratic1D>(out.fam_).pieces) pc.a -= lambda;
    }
    return out;
  }

  // f + s*|.|^2/2 (re-declared bounds must be supplied by the caller's context).
  FunctionOracle add_isotropic(double s) const { return shift_curvature(-s); }

 private:
  FunctionOracle(Family fam, CurvatureBounds bounds) : fam_(std::move(fam)), bounds_(bounds) {}

  static std::size_t piece_index(const PiecewiseQuadratic1D& p, double x) {
    return static_cast<std::size_t>(
        std::upper_bound(p.breaks.begin(), p.breaks.end(), x) - p.breaks.begin());
  }
  static const Pw1DPiece& piece_at(const PiecewiseQuadratic1D& p, double x) {
    return p.pieces[piece_index(p, x)];
  }

  void validate() const {
    if (auto* q = std::get_if<Quadratic>(&fam_)) {
      const std::size_t d = q->dim();
      if (q->A.size() != d * d) throw DomainError("quadratic: A must be d*d");
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
          if (std::abs(q->A[i * d + j] - q->A[j * d + i]) > 1e-12)
            throw DomainError("quadratic: A must be symmetric");
      auto [lo, hi] = detail::sym_eig_range(q->A, d);
      if (!bounds_.contains(lo) || !bounds_.contains(hi))
        throw DomainError("quadratic: Hessian eigenvalues outside declared bounds");
      return;
    }
    const auto& p = std::get<PiecewiseQuadratic1D>(fam_);
    if (p.pieces.size() != p.breaks.size() + 1) throw DomainError("pw1d: pieces = breaks+1");
    if (!std::is_sorted(p.breaks.begin(), p.breaks.end()))
      throw DomainError("pw1d: breakpoints must be sorted");
    for (const auto& pc : p.pieces)
      if (!bounds_.contains(pc.a)) throw DomainError("pw1d: piece curvature outside bounds");
    for (std::size_t j = 0; j < p.breaks.size(); ++j) {
      double t = p.breaks[j];
      const auto& a = p.pieces[j];
      const auto& b = p.pieces[j + 1];
      double va = 0.5 * a.a * t * t + a.b * t + a.c;
      double vb = 0.5 * b.a * t * t + b.b * t + b.c;
      double scale = std::max({1.0, std::abs(va), std::abs(vb)});
      if (std::abs(va - vb) > kTol * scale) throw DomainError("pw1d: discontinuous at breakpoint");
      double jump = (b.a * t + b.b) - (a.a * t + a.b);
      if (jump < -kTol) throw DomainError("pw1d: concave kink violates mu-convexity");
      if (bounds_.smooth() && jump > kTol)
        throw DomainError("pw1d: kink incompatible with finite L");
    }
  }

  Family fam_;
  CurvatureBounds bounds_;
};

// One first-order sample (x, g in subdiff f(x), f(x)).
struct InterpolationSample {
  Vec x;
  Vec g;
  double f;
};

struct InterpolationViolation {
  std::size_t i, j;  // inequality evaluated with (x,g,f) at i and base point at j
  double slack;      // negative means violated
};

// Pairwise interpolation conditions of F_{mu,L}; empty result means the
// samples are consistent with the class.
inline std::vector<InterpolationViolation> check_interpolation(
    const CurvatureBounds& b, const std::vector<InterpolationSample>& s, double tol = kTol) {
  std::vector<InterpolationViolation> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (i == j) continue;
      Vec dxy = sub(s[i].x, s[j].x);
      Vec dg = sub(s[i].g, s[j].g);
      Vec q = axpy(-b.mu, dxy, dg);  // g_x - g_y - mu (x - y)
      double slack = s[i].f - s[j].f - dot(s[j].g, dxy) - 0.5 * b.mu * norm2(dxy) -
                     inv2diff(b.L, b.mu) * norm2(q);
      if (slack < -tol) out.push_back({i, j, slack});
    }
  }
  return out;
}

inline std::vector<InterpolationSample> sample_oracle(
    const FunctionOracle& f, const std::vector<Vec>& xs,
    SubgradientPolicy policy = SubgradientPolicy::Canonical) {
  std::vector<InterpolationSample> s;
  s.reserve(xs.size());
  for (const auto& x : xs) s.push_back({x, f.subgradient(x, policy), f.eval(x)});
  return s;
}

}  // namespace dcr
