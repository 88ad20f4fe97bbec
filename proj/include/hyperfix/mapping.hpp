#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "point.hpp"
#include "space.hpp"

namespace hyperfix {

/// Contractive-condition families, ordered from narrowest to widest. The
/// plain contraction row is kept in reports as a baseline even though it is
/// not a declarable class of its own.
enum class MappingClass {
  contraction,
  zamfirescu,
  cq,
  generalized_contractive,
  generalized_cq,
  unclassified,
};

inline std::string_view mapping_class_name(MappingClass c) {
  switch (c) {
    case MappingClass::contraction: return "contraction";
    case MappingClass::zamfirescu: return "zamfirescu";
    case MappingClass::cq: return "cq";
    case MappingClass::generalized_contractive: return "generalized-contractive";
    case MappingClass::generalized_cq: return "generalized-cq";
    case MappingClass::unclassified: return "unclassified";
  }
  return "?";
}

/// Branch coefficients of the three-way contractive disjunction:
/// a for the distance branch, b for own displacements, c for the cross
/// displacements. Ranges: a in (0,1), b and c in (0,1/2).
struct ZamfirescuParams {
  double a = 0, b = 0, c = 0;
};

/// Convex region a mapping is closed over. Intervals serve the 1-D Euclidean
/// chart; geodesic balls serve the half-plane (coordinate boxes are not
/// geodesically convex there, balls are).
struct Domain {
  enum class Kind { interval, ball };

  Kind kind = Kind::interval;
  double lo = 0.0, hi = 1.0;  // interval
  Point center;               // ball
  double radius = 1.0;

  static Domain interval(double lo, double hi) {
    if (!(lo < hi)) throw std::invalid_argument("domain interval needs lo < hi");
    Domain d;
    d.kind = Kind::interval;
    d.lo = lo;
    d.hi = hi;
    return d;
  }

  static Domain ball(Point center, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("domain ball needs radius > 0");
    Domain d;
    d.kind = Kind::ball;
    d.center = std::move(center);
    d.radius = radius;
    return d;
  }

  bool contains(const SpaceModel& s, const Point& p, double slack = 1e-9) const {
    s.require_point(p);
    if (kind == Kind::interval)
      return p.coords[0] >= lo - slack && p.coords[0] <= hi + slack;
    return s.distance(center, p) <= radius + slack;
  }

  /// Deterministic lattice covering the region. Intervals get `per_axis`
  /// evenly spaced points. Balls get concentric geodesic rings: per_axis
  /// directions times per_axis/2 radii plus the center.
  std::vector<Point> grid(const SpaceModel& s, int per_axis) const {
    if (per_axis < 2) throw std::invalid_argument("grid needs at least 2 points per axis");
    std::vector<Point> pts;
    if (kind == Kind::interval) {
      pts.reserve(static_cast<std::size_t>(per_axis));
      for (int i = 0; i < per_axis; ++i) {
        double t = static_cast<double>(i) / static_cast<double>(per_axis - 1);
        pts.push_back(scalar_point(lo + (hi - lo) * t));
      }
      return pts;
    }
    int rings = std::max(2, per_axis / 2);
    pts.push_back(center);
    for (int j = 1; j <= rings; ++j) {
      double rho = radius * static_cast<double>(j) / static_cast<double>(rings);
      for (int i = 0; i < per_axis; ++i) {
        double theta = 2.0 * std::acos(-1.0) * static_cast<double>(i) /
                       static_cast<double>(per_axis);
        pts.push_back(geodesic_polar(s, rho, theta));
      }
    }
    return pts;
  }

 private:
  /// Point of the half-plane at geodesic distance rho from the ball center in
  /// direction theta, via the Poincare disk: distance rho corresponds to disk
  /// radius tanh(rho/2) around the origin, and z = i(1+w)/(1-w) maps back.
  /// Horizontal translation and scaling then move the base point to center.
  Point geodesic_polar(const SpaceModel& s, double rho, double theta) const {
    if (s.model() != Model::halfplane)
      throw std::invalid_argument("ball domains are supported on the halfplane chart only");
    std::complex<double> w = std::polar(std::tanh(0.5 * rho), theta);
    std::complex<double> i(0.0, 1.0);
    std::complex<double> z = i * (1.0 + w) / (1.0 - w);
    double cx = center.coords[0], cy = center.coords[1];
    return halfplane_point(cx + cy * z.real(), cy * z.imag());
  }
};

/// A self-map of a convex subset K, with class metadata and an optional
/// known fixed point.
class ContractiveMapping {
 public:
  using Rule = std::function<Point(const Point&)>;

  ContractiveMapping(std::string name, SpaceModel space, Domain domain, Rule rule,
                     MappingClass declared, std::optional<double> h,
                     std::optional<ZamfirescuParams> zam, std::optional<Point> fixed_point)
      : name_(std::move(name)),
        space_(std::move(space)),
        domain_(std::move(domain)),
        rule_(std::move(rule)),
        declared_(declared),
        h_(h),
        zam_(zam),
        fixed_point_(std::move(fixed_point)) {
    if (h_ && !(*h_ >= 0.0 && *h_ < 1.0))
      throw std::invalid_argument("mapping parameter h must lie in [0,1)");
    if (zam_) {
      if (!(zam_->a > 0.0 && zam_->a < 1.0))
        throw std::invalid_argument("zamfirescu parameter a must lie in (0,1)");
      if (!(zam_->b > 0.0 && zam_->b < 0.5) || !(zam_->c > 0.0 && zam_->c < 0.5))
        throw std::invalid_argument("zamfirescu parameters b, c must lie in (0,1/2)");
    }
    if (fixed_point_) {
      double resid = space_.distance(apply(*fixed_point_), *fixed_point_);
      if (!(resid <= 1e-12))
        throw std::invalid_argument("declared fixed point moves by more than 1e-12");
    }
    // Spot-check that the rule is a self-map of K.
    for (const Point& p : domain_.grid(space_, 9)) {
      if (!domain_.contains(space_, rule_(p)))
        throw std::invalid_argument("mapping rule leaves its domain");
    }
  }

  const std::string& name() const { return name_; }
  const SpaceModel& space() const { return space_; }
  const Domain& domain() const { return domain_; }
  MappingClass declared_class() const { return declared_; }
  std::optional<double> declared_h() const { return h_; }
  std::optional<ZamfirescuParams> zamfirescu_params() const { return zam_; }
  const std::optional<Point>& fixed_point() const { return fixed_point_; }

  Point apply(const Point& x) const {
    if (!domain_.contains(space_, x))
      throw std::invalid_argument("mapping applied outside its domain");
    return rule_(x);
  }

 private:
  std::string name_;
  SpaceModel space_;
  Domain domain_;
  Rule rule_;
  MappingClass declared_;
  std::optional<double> h_;
  std::optional<ZamfirescuParams> zam_;
  std::optional<Point> fixed_point_;
};

/// Working contraction factor max{h, h/(1-h)}. Values >= 1 (i.e. h >= 1/2)
/// cannot certify convergence; callers that need a certificate must check
/// `usable`.
struct Lambda {
  double value = 0.0;
  bool usable = false;
};

inline Lambda lambda_of(double h) {
  if (!(h >= 0.0 && h < 1.0)) throw std::invalid_argument("lambda_of: h must lie in [0,1)");
  double v = std::max(h, h / (1.0 - h));
  return Lambda{v, v < 1.0};
}

namespace detail {

/// All distances a contractive-condition check needs for one ordered pair.
struct PairTerms {
  double d_tt;    // d(Tx, Ty)
  double d_xy;    // d(x, y)
  double d_xtx;   // d(x, Tx)
  double d_yty;   // d(y, Ty)
  double d_xty;   // d(x, Ty)
  double d_ytx;   // d(y, Tx)
};

inline double class_denominator(MappingClass c, const PairTerms& t) {
  switch (c) {
    case MappingClass::contraction:
      return t.d_xy;
    case MappingClass::cq:
      return std::max({t.d_xy, t.d_xtx, t.d_yty, t.d_xty, t.d_ytx});
    case MappingClass::generalized_contractive:
      return std::max({t.d_xy, t.d_xtx, t.d_yty, t.d_xty + t.d_ytx});
    case MappingClass::generalized_cq:
      return std::max({t.d_xy, t.d_xtx + t.d_yty, t.d_xty + t.d_ytx});
    default:
      throw std::invalid_argument("class has no single-parameter denominator");
  }
}

/// Required-ratio convention: 0/0 pairs impose nothing (0), a positive
/// numerator over a zero denominator can never be satisfied (infinity).
inline double required_ratio(double num, double den) {
  if (den > 0.0) return num / den;
  return num > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

template <typename Fn>
void for_each_ordered_pair(const SpaceModel& s, const ContractiveMapping& m,
                           const std::vector<Point>& grid, Fn&& fn) {
  std::vector<Point> images;
  images.reserve(grid.size());
  for (const Point& p : grid) images.push_back(m.apply(p));
  std::vector<double> own(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) own[i] = s.distance(grid[i], images[i]);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = 0; j < grid.size(); ++j) {
      PairTerms t;
      t.d_tt = s.distance(images[i], images[j]);
      t.d_xy = s.distance(grid[i], grid[j]);
      t.d_xtx = own[i];
      t.d_yty = own[j];
      t.d_xty = s.distance(grid[i], images[j]);
      t.d_ytx = s.distance(grid[j], images[i]);
      fn(i, j, t);
    }
  }
}

}  // namespace detail

/// Outcome of checking one class over the sampled grid. `holds` is present
/// only when a parameter was supplied to check against. Estimates are grid
/// suprema, never certificates.
struct ClassResult {
  std::optional<bool> holds;
  double min_h_estimate = 0.0;
  std::size_t violating_pairs = 0;
  std::pair<Point, Point> worst_pair;
  double worst_excess = -std::numeric_limits<double>::infinity();
};

struct ClassificationReport {
  std::size_t pair_count = 0;
  ClassResult contraction;
  ClassResult cq;
  ClassResult generalized_contractive;
  ClassResult generalized_cq;
  /// Exact three-branch disjunction with the supplied (a,b,c); its
  /// min_h_estimate is the common-parameter surrogate (per pair the best
  /// branch ratio, then the supremum over pairs).
  ClassResult zamfirescu;

  ClassResult& for_class(MappingClass c) {
    switch (c) {
      case MappingClass::contraction: return contraction;
      case MappingClass::zamfirescu: return zamfirescu;
      case MappingClass::cq: return cq;
      case MappingClass::generalized_contractive: return generalized_contractive;
      case MappingClass::generalized_cq: return generalized_cq;
      default: throw std::invalid_argument("unclassified mappings have no report row");
    }
  }
  const ClassResult& for_class(MappingClass c) const {
    return const_cast<ClassificationReport*>(this)->for_class(c);
  }
};

struct ClassifyParams {
  std::optional<double> h;
  std::optional<ZamfirescuParams> zam;
  double tol = 1e-12;
};

/// Brute-force check of every contractive condition over all ordered grid
/// pairs. The quantifier over all of K is sampled, so "holds" means "no
/// violating pair on this grid".
inline ClassificationReport classify_mapping(const ContractiveMapping& m, int grid_per_axis,
                                             const ClassifyParams& params) {
  const SpaceModel& s = m.space();
  std::vector<Point> grid = m.domain().grid(s, grid_per_axis);

  ClassificationReport rep;
  const MappingClass singles[] = {MappingClass::contraction, MappingClass::cq,
                                  MappingClass::generalized_contractive,
                                  MappingClass::generalized_cq};

  detail::for_each_ordered_pair(s, m, grid, [&](std::size_t i, std::size_t j,
                                                const detail::PairTerms& t) {
    ++rep.pair_count;
    for (MappingClass c : singles) {
      ClassResult& r = rep.for_class(c);
      double den = detail::class_denominator(c, t);
      r.min_h_estimate = std::max(r.min_h_estimate, detail::required_ratio(t.d_tt, den));
      if (params.h) {
        double excess = t.d_tt - *params.h * den;
        if (excess > r.worst_excess) {
          r.worst_excess = excess;
          r.worst_pair = {grid[i], grid[j]};
        }
        if (excess > params.tol) ++r.violating_pairs;
      }
    }
    // Zamfirescu: the pair passes if any branch does.
    double b1 = detail::required_ratio(t.d_tt, t.d_xy);
    double b2 = detail::required_ratio(t.d_tt, t.d_xtx + t.d_yty);
    double b3 = detail::required_ratio(t.d_tt, t.d_xty + t.d_ytx);
    rep.zamfirescu.min_h_estimate =
        std::max(rep.zamfirescu.min_h_estimate, std::min({b1, b2, b3}));
    if (params.zam) {
      double e1 = t.d_tt - params.zam->a * t.d_xy;
      double e2 = t.d_tt - params.zam->b * (t.d_xtx + t.d_yty);
      double e3 = t.d_tt - params.zam->c * (t.d_xty + t.d_ytx);
      double excess = std::min({e1, e2, e3});
      if (excess > rep.zamfirescu.worst_excess) {
        rep.zamfirescu.worst_excess = excess;
        rep.zamfirescu.worst_pair = {grid[i], grid[j]};
      }
      if (excess > params.tol) ++rep.zamfirescu.violating_pairs;
    }
  });

  if (params.h) {
    for (MappingClass c : singles) {
      ClassResult& r = rep.for_class(c);
      r.holds = r.violating_pairs == 0;
    }
  }
  if (params.zam) rep.zamfirescu.holds = rep.zamfirescu.violating_pairs == 0;
  return rep;
}

/// Grid supremum of the ratio a class inequality demands of its parameter.
inline double estimate_min_h(const ContractiveMapping& m, MappingClass c, int grid_per_axis) {
  const SpaceModel& s = m.space();
  std::vector<Point> grid = m.domain().grid(s, grid_per_axis);
  double sup = 0.0;
  detail::for_each_ordered_pair(
      s, m, grid, [&](std::size_t, std::size_t, const detail::PairTerms& t) {
        if (c == MappingClass::zamfirescu) {
          double b1 = detail::required_ratio(t.d_tt, t.d_xy);
          double b2 = detail::required_ratio(t.d_tt, t.d_xtx + t.d_yty);
          double b3 = detail::required_ratio(t.d_tt, t.d_xty + t.d_ytx);
          sup = std::max(sup, std::min({b1, b2, b3}));
        } else {
          sup = std::max(sup,
                         detail::required_ratio(t.d_tt, detail::class_denominator(c, t)));
        }
      });
  return sup;
}

/// Max positive defect, over all ordered grid pairs, of the two lambda
/// estimates every widest-class mapping must satisfy:
///   d(Tx,Ty) <= lambda d(x,y) + 2 lambda d(x,Tx)   (self displacement)
///   d(Tx,Ty) <= lambda d(x,y) + 2 lambda d(y,Tx)   (cross displacement)
struct KeyEstimateResiduals {
  double self_displacement = 0.0;
  double cross_displacement = 0.0;
};

inline KeyEstimateResiduals verify_key_estimates(const ContractiveMapping& m, double lambda,
                                                 int grid_per_axis) {
  if (!(lambda >= 0.0 && lambda < 1.0))
    throw std::invalid_argument("verify_key_estimates: lambda must lie in [0,1)");
  const SpaceModel& s = m.space();
  std::vector<Point> grid = m.domain().grid(s, grid_per_axis);
  KeyEstimateResiduals res;
  detail::for_each_ordered_pair(
      s, m, grid, [&](std::size_t, std::size_t, const detail::PairTerms& t) {
        res.self_displacement =
            std::max(res.self_displacement,
                     t.d_tt - lambda * t.d_xy - 2.0 * lambda * t.d_xtx);
        res.cross_displacement =
            std::max(res.cross_displacement,
                     t.d_tt - lambda * t.d_xy - 2.0 * lambda * t.d_ytx);
      });
  res.self_displacement = std::max(res.self_displacement, 0.0);
  res.cross_displacement = std::max(res.cross_displacement, 0.0);
  return res;
}

/// Default classification grid: 257 points on intervals, 33 per axis on
/// ball domains (whose lattices grow quadratically).
inline int default_grid(const ContractiveMapping& m) {
  return m.domain().kind == Domain::Kind::interval ? 257 : 33;
}

}  // namespace hyperfix
