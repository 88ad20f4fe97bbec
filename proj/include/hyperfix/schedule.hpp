#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "format.hpp"

namespace hyperfix {

/// Weight sequence for the iterative algorithms. Two families are shipped,
/// both satisfying the admissibility conditions the convergence estimates
/// assume:
///   (C1) every emitted term lies in [0,1),
///   (C2) the partial sums diverge.
///
/// constant: value c in [0,1) at every index.
/// harmonic: 1/2, 1/3, 1/4, ... (value(n) = 1/(n+2)); the classical harmonic
/// tail, started at 1/2 so that the first term also satisfies (C1).
class Schedule {
 public:
  enum class Kind { constant, harmonic };

  static Schedule constant(double c) {
    if (!(c >= 0.0 && c < 1.0))
      throw std::invalid_argument("constant schedule value must lie in [0,1)");
    return Schedule(Kind::constant, c);
  }

  static Schedule harmonic() { return Schedule(Kind::harmonic, 0.0); }

  Kind kind() const { return kind_; }
  double constant_value() const { return value_; }

  double value(std::size_t n) const {
    if (kind_ == Kind::constant) return value_;
    return 1.0 / static_cast<double>(n + 2);
  }

  double partial_sum(std::size_t n_terms) const {
    double s = 0.0;
    for (std::size_t n = 0; n < n_terms; ++n) s += value(n);
    return s;
  }

  std::string spec_string() const {
    return kind_ == Kind::constant ? "const:" + format_double(value_) : "harmonic";
  }

  friend bool operator==(const Schedule&, const Schedule&) = default;

 private:
  Schedule(Kind k, double v) : kind_(k), value_(v) {}

  Kind kind_;
  double value_;
};

/// Parses the schedule literals "const:<float>" and "harmonic".
inline Schedule parse_schedule(std::string_view text) {
  if (text == "harmonic") return Schedule::harmonic();
  constexpr std::string_view prefix = "const:";
  if (text.substr(0, prefix.size()) == prefix) {
    std::string_view rest = text.substr(prefix.size());
    double v = 0.0;
    auto res = std::from_chars(rest.data(), rest.data() + rest.size(), v);
    if (res.ec != std::errc{} || res.ptr != rest.data() + rest.size())
      throw std::invalid_argument("schedule 'const:' needs a numeric value");
    if (!(v >= 0.0 && v < 1.0))
      throw std::invalid_argument("(C1) requires every schedule term in [0,1)");
    return Schedule::constant(v);
  }
  throw std::invalid_argument("unknown schedule '" + std::string(text) +
                              "' (use const:<float> or harmonic)");
}

}  // namespace hyperfix
