#pragma once

#include <cmath>
#include <ostream>
#include <span>

#include "format.hpp"
#include "rate.hpp"

namespace hyperfix {

/// Schema: n,distance,bound,certifying. Row n is certifying while every
/// bound factor up to n stayed inside [0,1]. Line-feed endings, shortest
/// round-trip floats, no locale anywhere.
inline void write_run_csv(std::ostream& os, const Trajectory& traj,
                          const BoundSequence& bound) {
  os << "n,distance,bound,certifying\n";
  for (std::size_t n = 0; n < traj.distances.size(); ++n) {
    os << format_size(n) << ',' << format_double(traj.distances[n]) << ','
       << format_double(bound.values[n]) << ','
       << (bound.certifying_at(n) ? "true" : "false") << '\n';
  }
}

/// Schema: n,a,b,ratio with ratio = |a_n - a*| / |b_n - b*|.
inline void write_compare_csv(std::ostream& os, std::span<const double> a,
                              std::span<const double> b, double a_limit, double b_limit) {
  os << "n,a,b,ratio\n";
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    double ratio = std::abs(a[i] - a_limit) / std::abs(b[i] - b_limit);
    os << format_size(i) << ',' << format_double(a[i]) << ',' << format_double(b[i]) << ','
       << format_double(ratio) << '\n';
  }
}

/// Schema: n,bound,certifying for a bare envelope.
inline void write_bound_csv(std::ostream& os, const BoundSequence& bound) {
  os << "n,bound,certifying\n";
  for (std::size_t n = 0; n < bound.values.size(); ++n) {
    os << format_size(n) << ',' << format_double(bound.values[n]) << ','
       << (bound.certifying_at(n) ? "true" : "false") << '\n';
  }
}

}  // namespace hyperfix
