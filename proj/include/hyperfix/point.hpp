#pragma once

#include <cmath>
#include <string_view>
#include <vector>

namespace hyperfix {

/// Geometry charts supported by the library.
enum class Model { euclidean, halfplane };

inline std::string_view model_name(Model m) {
  switch (m) {
    case Model::euclidean: return "euclidean";
    case Model::halfplane: return "halfplane";
  }
  return "?";
}

/// A point tagged with the chart it lives in. Halfplane points are pairs
/// (x, y) with y strictly positive.
struct Point {
  Model model = Model::euclidean;
  std::vector<double> coords;

  friend bool operator==(const Point&, const Point&) = default;
};

inline Point euclidean_point(std::vector<double> coords) {
  return Point{Model::euclidean, std::move(coords)};
}

inline Point scalar_point(double x) { return Point{Model::euclidean, {x}}; }

inline Point halfplane_point(double x, double y) {
  return Point{Model::halfplane, {x, y}};
}

inline bool all_finite(const Point& p) {
  for (double c : p.coords)
    if (!std::isfinite(c)) return false;
  return true;
}

}  // namespace hyperfix
