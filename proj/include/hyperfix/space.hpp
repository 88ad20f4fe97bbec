#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "point.hpp"
#include "rng.hpp"

namespace hyperfix {

/// Metric space equipped with a geodesic convex-combination operator W.
///
/// Two charts are shipped: Euclidean n-space and the Poincare upper
/// half-plane (one flat, one negatively curved). Both expose the same
/// interface: the metric `distance` and `combine(x, y, a)`, the point on the
/// geodesic from y to x with
///
///     d(x, combine(x,y,a)) = (1-a) d(x,y),
///     d(y, combine(x,y,a)) =  a    d(x,y).
///
/// The weight applies to the first argument, so combine(x, y, 1) == x.
class SpaceModel {
 public:
  static SpaceModel euclidean(int dim, double tolerance = 1e-12) {
    if (dim < 1) throw std::invalid_argument("euclidean space: dimension must be positive");
    if (!(tolerance >= 0.0)) throw std::invalid_argument("space tolerance must be nonnegative");
    return SpaceModel(Model::euclidean, dim, tolerance);
  }

  static SpaceModel halfplane(double tolerance = 1e-12) {
    if (!(tolerance >= 0.0)) throw std::invalid_argument("space tolerance must be nonnegative");
    return SpaceModel(Model::halfplane, 2, tolerance);
  }

  Model model() const { return model_; }
  int dim() const { return dim_; }
  double tolerance() const { return tol_; }

  friend bool operator==(const SpaceModel&, const SpaceModel&) = default;

  /// Throws std::invalid_argument unless p is a valid point of this space.
  void require_point(const Point& p) const {
    if (p.model != model_)
      throw std::invalid_argument("point chart does not match the space");
    if (p.coords.size() != static_cast<std::size_t>(dim_))
      throw std::invalid_argument("point dimension does not match the space");
    if (!all_finite(p))
      throw std::invalid_argument("point has a non-finite coordinate");
    if (model_ == Model::halfplane && !(p.coords[1] > 0.0))
      throw std::invalid_argument("halfplane point requires y > 0");
  }

  double distance(const Point& a, const Point& b) const {
    require_point(a);
    require_point(b);
    if (model_ == Model::euclidean) {
      double sq = 0.0;
      for (std::size_t i = 0; i < a.coords.size(); ++i) {
        double d = a.coords[i] - b.coords[i];
        sq += d * d;
      }
      return std::sqrt(sq);
    }
    // cosh d = 1 + |a-b|^2 / (2 y1 y2), rewritten through asinh so that
    // nearby points do not lose precision to the cancellation in acosh(1+u).
    double dx = a.coords[0] - b.coords[0];
    double dy = a.coords[1] - b.coords[1];
    double rho = std::hypot(dx, dy);
    return 2.0 * std::asinh(rho / (2.0 * std::sqrt(a.coords[1] * b.coords[1])));
  }

  /// Geodesic convex combination W(x, y, alpha). Endpoints are returned
  /// exactly for alpha in {0, 1} and for coincident inputs.
  Point combine(const Point& x, const Point& y, double alpha) const {
    require_point(x);
    require_point(y);
    if (!(alpha >= 0.0 && alpha <= 1.0))
      throw std::invalid_argument("combine: alpha must lie in [0,1]");
    if (x.coords == y.coords) return x;
    if (alpha == 1.0) return x;
    if (alpha == 0.0) return y;
    if (model_ == Model::euclidean) {
      Point r = x;
      for (std::size_t i = 0; i < r.coords.size(); ++i)
        r.coords[i] = alpha * x.coords[i] + (1.0 - alpha) * y.coords[i];
      return r;
    }
    return halfplane_combine(x, y, alpha);
  }

 private:
  SpaceModel(Model m, int dim, double tol) : model_(m), dim_(dim), tol_(tol) {}

  // Vertical-geodesic cutoff for the half-plane chart.
  static constexpr double kVerticalTol = 1e-12;

  Point halfplane_combine(const Point& a, const Point& b, double alpha) const {
    const double ax = a.coords[0], ay = a.coords[1];
    const double bx = b.coords[0], by = b.coords[1];

    if (std::abs(bx - ax) <= kVerticalTol) {
      // Vertical ray: arc length is ln y, so interpolation is a weighted
      // geometric mean of the heights.
      double sx = 0.5 * (ax + bx);
      double sy = std::exp(alpha * std::log(ay) + (1.0 - alpha) * std::log(by));
      Point out = halfplane_point(sx, sy);
      if (!all_finite(out) || !(out.coords[1] > 0.0))
        throw std::domain_error("halfplane geodesic evaluation failed");
      return out;
    }

    // Semicircle centered on the real axis. Solving in coordinates centered
    // at the endpoint midpoint keeps the center solve conditioned for
    // nearly-vertical pairs with comparable heights.
    const double m = 0.5 * (ax + bx);
    const double ux = ax - m, vx = bx - m;
    const double c = (vx * vx + by * by - ux * ux - ay * ay) / (2.0 * (vx - ux));
    const double r = 0.5 * (std::hypot(ux - c, ay) + std::hypot(vx - c, by));

    // Arc length along the semicircle is ln tan(theta/2), which turns the
    // interpolation into the same affine form as the vertical case.
    const double ta = std::atan2(ay, ux - c);
    const double tb = std::atan2(by, vx - c);
    const double sa = std::log(std::tan(0.5 * ta));
    const double sb = std::log(std::tan(0.5 * tb));
    const double s = alpha * sa + (1.0 - alpha) * sb;
    const double th = 2.0 * std::atan(std::exp(s));

    Point out = halfplane_point(m + (c + r * std::cos(th)), r * std::sin(th));
    if (!all_finite(out) || !(out.coords[1] > 0.0))
      throw std::domain_error("halfplane geodesic evaluation failed");
    return out;
  }

  Model model_;
  int dim_;
  double tol_;
};

/// Residuals of the four convexity axioms for one sampled tuple. All are
/// clamped so that 0 means "satisfied"; W2 and W3 are equalities and report
/// the absolute defect.
struct ConvexityResiduals {
  double w1 = 0, w2 = 0, w3 = 0, w4 = 0;
};

inline ConvexityResiduals convexity_residuals(const SpaceModel& s, const Point& u,
                                              const Point& x, const Point& y,
                                              const Point& z, const Point& w,
                                              double alpha, double beta) {
  const Point wa = s.combine(x, y, alpha);
  const Point wb = s.combine(x, y, beta);
  ConvexityResiduals r;
  r.w1 = std::max(0.0, s.distance(u, wa) -
                           (alpha * s.distance(u, x) + (1.0 - alpha) * s.distance(u, y)));
  r.w2 = std::abs(s.distance(wa, wb) - std::abs(alpha - beta) * s.distance(x, y));
  r.w3 = s.distance(wa, s.combine(y, x, 1.0 - alpha));
  r.w4 = std::max(0.0, s.distance(s.combine(x, z, alpha), s.combine(y, w, alpha)) -
                           (alpha * s.distance(x, y) + (1.0 - alpha) * s.distance(z, w)));
  return r;
}

struct AxiomReport {
  std::array<double, 4> max_residual{};  // W1..W4
  double tol = 0.0;
  std::size_t samples = 0;
  bool pass = false;
};

/// Draws a point from the well-conditioned sampling region of the chart:
/// the box [-10,10]^n for Euclidean space, x in [-10,10], y in [0.1,10] for
/// the half-plane.
inline Point sample_point(const SpaceModel& s, SplitMix64& gen) {
  if (s.model() == Model::euclidean) {
    std::vector<double> c(static_cast<std::size_t>(s.dim()));
    for (double& v : c) v = gen.uniform(-10.0, 10.0);
    return euclidean_point(std::move(c));
  }
  double px = gen.uniform(-10.0, 10.0);
  double py = gen.uniform(0.1, 10.0);
  return halfplane_point(px, py);
}

/// Seeded sampling check of the axioms (W1)-(W4). Reports the worst residual
/// seen per axiom; passes when all stay within tol. Deterministic for a
/// fixed seed.
inline AxiomReport verify_convexity_axioms(const SpaceModel& s, std::size_t sample_count,
                                           std::uint64_t seed, double tol) {
  if (sample_count < 1)
    throw std::invalid_argument("verify_convexity_axioms: sample_count must be >= 1");
  if (!(tol > 0.0))
    throw std::invalid_argument("verify_convexity_axioms: tol must be positive");
  SplitMix64 gen(seed);
  AxiomReport rep;
  rep.tol = tol;
  rep.samples = sample_count;
  for (std::size_t i = 0; i < sample_count; ++i) {
    Point u = sample_point(s, gen);
    Point x = sample_point(s, gen);
    Point y = sample_point(s, gen);
    Point z = sample_point(s, gen);
    Point w = sample_point(s, gen);
    double alpha = gen.uniform01();
    double beta = gen.uniform01();
    ConvexityResiduals r = convexity_residuals(s, u, x, y, z, w, alpha, beta);
    rep.max_residual[0] = std::max(rep.max_residual[0], r.w1);
    rep.max_residual[1] = std::max(rep.max_residual[1], r.w2);
    rep.max_residual[2] = std::max(rep.max_residual[2], r.w3);
    rep.max_residual[3] = std::max(rep.max_residual[3], r.w4);
  }
  rep.pass = true;
  for (double v : rep.max_residual)
    if (!(v <= tol)) rep.pass = false;
  return rep;
}

/// Pointwise uniform-convexity witness: for a center u and points x, y with
/// d(x,u) <= r, d(y,u) <= r and d(x,y) >= r*eps, the midpoint must land
/// strictly inside radius (1-delta) r for some delta in (0,1].
struct UniformConvexityProbe {
  double radius = 0;
  double separation = 0;
  double delta = 0;
};

inline std::optional<UniformConvexityProbe> uniform_convexity_probe(
    const SpaceModel& s, const Point& u, const Point& x, const Point& y, double r,
    double eps) {
  if (!(r > 0.0)) throw std::invalid_argument("uniform convexity probe: r must be positive");
  if (!(eps > 0.0 && eps <= 2.0))
    throw std::invalid_argument("uniform convexity probe: eps must lie in (0,2]");
  if (s.distance(x, u) > r || s.distance(y, u) > r || s.distance(x, y) < r * eps)
    return std::nullopt;  // hypotheses not met by this triple
  double delta = 1.0 - s.distance(s.combine(x, y, 0.5), u) / r;
  if (!(delta > 0.0)) return std::nullopt;
  return UniformConvexityProbe{r, eps, std::min(delta, 1.0)};
}

}  // namespace hyperfix
