#pragma once

#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "format.hpp"
#include "mapping.hpp"

namespace hyperfix {

/// Affine pull toward p on [lo, hi]: T(x) = q x + (1-q) p. A plain
/// contraction with factor q; usable rate certificates need q < 1/2.
inline ContractiveMapping make_linear(double q, double p, double lo = -1.0, double hi = 1.0) {
  if (!(q >= 0.0 && q < 1.0)) throw std::invalid_argument("linear: q must lie in [0,1)");
  Domain dom = Domain::interval(lo, hi);
  if (!(p >= lo && p <= hi)) throw std::invalid_argument("linear: p must lie in [lo,hi]");
  SpaceModel space = SpaceModel::euclidean(1);
  std::string name = "linear:q=" + format_double(q) + ",p=" + format_double(p) +
                     ",lo=" + format_double(lo) + ",hi=" + format_double(hi);
  double a = q > 0.0 ? q : 0.25;  // distance branch covers every pair
  return ContractiveMapping(
      std::move(name), space, dom,
      [q, p](const Point& x) { return scalar_point(q * x.coords[0] + (1.0 - q) * p); },
      MappingClass::cq, q, ZamfirescuParams{a, 0.25, 0.25}, scalar_point(p));
}

/// Piecewise jump map on [0,1]: x/2 below 1/2, 0 from 1/2 on. Discontinuous
/// at 1/2, so no Lipschitz constant below 1 exists, yet the widest-class
/// inequality holds; the working parameter is produced by the classifier
/// rather than declared.
inline ContractiveMapping make_qc1() {
  SpaceModel space = SpaceModel::euclidean(1);
  return ContractiveMapping(
      "qc1", space, Domain::interval(0.0, 1.0),
      [](const Point& x) { return scalar_point(x.coords[0] < 0.5 ? 0.5 * x.coords[0] : 0.0); },
      MappingClass::generalized_cq, std::nullopt, ZamfirescuParams{0.5, 0.4, 0.4},
      scalar_point(0.0));
}

inline ContractiveMapping make_constant(double c, double lo = 0.0, double hi = 1.0) {
  Domain dom = Domain::interval(lo, hi);
  if (!(c >= lo && c <= hi)) throw std::invalid_argument("constant: c must lie in [lo,hi]");
  SpaceModel space = SpaceModel::euclidean(1);
  std::string name = "constant:c=" + format_double(c) + ",lo=" + format_double(lo) +
                     ",hi=" + format_double(hi);
  return ContractiveMapping(
      std::move(name), space, dom, [c](const Point&) { return scalar_point(c); },
      MappingClass::zamfirescu, 0.0, ZamfirescuParams{0.25, 0.25, 0.25}, scalar_point(c));
}

/// Identity on [lo, hi]. Kept in the catalog as the canonical negative
/// example: no contraction factor below 1 exists and the lambda gate must
/// reject it.
inline ContractiveMapping make_identity(double lo = 0.0, double hi = 1.0) {
  SpaceModel space = SpaceModel::euclidean(1);
  std::string name = "identity:lo=" + format_double(lo) + ",hi=" + format_double(hi);
  return ContractiveMapping(
      std::move(name), space, Domain::interval(lo, hi),
      [](const Point& x) { return x; }, MappingClass::unclassified, std::nullopt,
      std::nullopt, std::nullopt);
}

/// Geodesic pull toward a half-plane base point: T(x) = W(p, x, q) with
/// q in (1/2, 1), so d(Tx, Ty) <= (1-q) d(x, y) by joint nonexpansiveness.
/// The domain is the geodesic ball around the base.
inline ContractiveMapping make_halfplane_pull(double q, double base_x = 0.0,
                                              double base_y = 1.0, double radius = 2.0) {
  if (!(q > 0.5 && q < 1.0))
    throw std::invalid_argument("halfplane-pull: q must lie in (1/2,1)");
  SpaceModel space = SpaceModel::halfplane();
  Point base = halfplane_point(base_x, base_y);
  space.require_point(base);
  std::string name = "halfplane-pull:q=" + format_double(q) + ",px=" + format_double(base_x) +
                     ",py=" + format_double(base_y) + ",r=" + format_double(radius);
  return ContractiveMapping(
      std::move(name), space, Domain::ball(base, radius),
      [space, base, q](const Point& x) { return space.combine(base, x, q); },
      MappingClass::cq, 1.0 - q, ZamfirescuParams{1.0 - q, 0.25, 0.25}, base);
}

namespace detail {

inline std::map<std::string, double, std::less<>> parse_params(std::string_view text,
                                                               std::string_view mapping) {
  std::map<std::string, double, std::less<>> out;
  while (!text.empty()) {
    auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0)
      throw std::invalid_argument("mapping '" + std::string(mapping) +
                                  "': parameters must look like key=value");
    std::string key(item.substr(0, eq));
    std::string_view val = item.substr(eq + 1);
    double v = 0.0;
    auto res = std::from_chars(val.data(), val.data() + val.size(), v);
    if (res.ec != std::errc{} || res.ptr != val.data() + val.size())
      throw std::invalid_argument("mapping '" + std::string(mapping) +
                                  "': parameter '" + key + "' is not a number");
    if (!out.emplace(std::move(key), v).second)
      throw std::invalid_argument("mapping '" + std::string(mapping) +
                                  "': duplicate parameter");
  }
  return out;
}

inline double take(std::map<std::string, double, std::less<>>& m, std::string_view key,
                   std::optional<double> fallback, std::string_view mapping) {
  auto it = m.find(key);
  if (it == m.end()) {
    if (fallback) return *fallback;
    throw std::invalid_argument("mapping '" + std::string(mapping) + "' requires parameter '" +
                                std::string(key) + "'");
  }
  double v = it->second;
  m.erase(it);
  return v;
}

}  // namespace detail

/// Resolves a catalog name string such as "linear:q=0.25,p=0", "qc1",
/// "constant:c=0.5", "identity" or "halfplane-pull:q=0.75". Unlisted
/// parameters take their documented defaults; unknown names or parameters
/// are errors.
inline ContractiveMapping parse_mapping(std::string_view text) {
  auto colon = text.find(':');
  std::string_view name = text.substr(0, colon);
  auto params = detail::parse_params(
      colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1), name);

  auto finish = [&](ContractiveMapping m) {
    if (!params.empty())
      throw std::invalid_argument("mapping '" + std::string(name) + "': unknown parameter '" +
                                  params.begin()->first + "'");
    return m;
  };

  if (name == "linear") {
    double q = detail::take(params, "q", std::nullopt, name);
    double p = detail::take(params, "p", std::nullopt, name);
    double lo = detail::take(params, "lo", -1.0, name);
    double hi = detail::take(params, "hi", 1.0, name);
    return finish(make_linear(q, p, lo, hi));
  }
  if (name == "qc1") return finish(make_qc1());
  if (name == "constant") {
    double c = detail::take(params, "c", std::nullopt, name);
    double lo = detail::take(params, "lo", 0.0, name);
    double hi = detail::take(params, "hi", 1.0, name);
    return finish(make_constant(c, lo, hi));
  }
  if (name == "identity") {
    double lo = detail::take(params, "lo", 0.0, name);
    double hi = detail::take(params, "hi", 1.0, name);
    return finish(make_identity(lo, hi));
  }
  if (name == "halfplane-pull") {
    double q = detail::take(params, "q", std::nullopt, name);
    double px = detail::take(params, "px", 0.0, name);
    double py = detail::take(params, "py", 1.0, name);
    double r = detail::take(params, "r", 2.0, name);
    return finish(make_halfplane_pull(q, px, py, r));
  }
  throw std::invalid_argument("unknown mapping '" + std::string(name) + "'");
}

}  // namespace hyperfix
