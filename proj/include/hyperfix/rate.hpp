#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "iteration.hpp"
#include "schedule.hpp"

namespace hyperfix {

/// Theoretical per-step envelopes on d(x_n, p) for each scheme. The three
/// xunoor variants come from different stages of the same derivation:
///   contraction : factor 1 - a_n (1 - lambda)        (one-step contraction)
///   simple      : factor 1 - a_n (1 - 3 lambda)      (loose displayed form)
///   full        : factor 1 - a_n (1 - 3 lambda) (1 + 9 lambda^2 b_n g_n + 3 lambda b_n)
/// For lambda > 1/3 the simple and full factors exceed 1 and the sequence is
/// flagged non-certifying rather than rejected.
enum class BoundKind { picard, mann, ishikawa, xunoor_contraction, xunoor_simple, xunoor_full };

inline std::string_view bound_kind_name(BoundKind k) {
  switch (k) {
    case BoundKind::picard: return "picard";
    case BoundKind::mann: return "mann";
    case BoundKind::ishikawa: return "ishikawa";
    case BoundKind::xunoor_contraction: return "xunoor-contraction";
    case BoundKind::xunoor_simple: return "xunoor-simple";
    case BoundKind::xunoor_full: return "xunoor-full";
  }
  return "?";
}

inline BoundKind default_bound_for(Algorithm a) {
  switch (a) {
    case Algorithm::picard: return BoundKind::picard;
    case Algorithm::mann: return BoundKind::mann;
    case Algorithm::ishikawa: return BoundKind::ishikawa;
    case Algorithm::xunoor: return BoundKind::xunoor_contraction;
  }
  return BoundKind::picard;
}

struct BoundSequence {
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  BoundKind kind = BoundKind::picard;
  double lambda = 0.0;
  double d0 = 0.0;
  std::vector<double> values;          // b_0 .. b_N
  std::size_t first_bad_factor = npos;  // first step whose factor left [0,1]
  bool certifying = true;

  /// True when every factor up to step n stayed within [0,1], i.e. b_n is
  /// still a usable upper envelope.
  bool certifying_at(std::size_t n) const { return n < first_bad_factor; }
};

namespace detail {

inline double bound_factor(BoundKind k, double lambda, const Schedules& s,
                           std::size_t step) {
  // Step i of the bound multiplies in the schedule entry the iteration used
  // to produce x_i, i.e. index i-1.
  std::size_t n = step - 1;
  switch (k) {
    case BoundKind::picard:
      return lambda;
    case BoundKind::mann:
      return 1.0 - (1.0 - lambda) * s.alpha->value(n);
    case BoundKind::ishikawa:
      return 1.0 - s.alpha->value(n) * (1.0 - lambda) * (1.0 - lambda);
    case BoundKind::xunoor_contraction:
      return 1.0 - s.alpha->value(n) * (1.0 - lambda);
    case BoundKind::xunoor_simple:
      return 1.0 - s.alpha->value(n) * (1.0 - 3.0 * lambda);
    case BoundKind::xunoor_full: {
      double b = s.beta->value(n);
      double g = s.gamma->value(n);
      return 1.0 - s.alpha->value(n) * (1.0 - 3.0 * lambda) *
                       (1.0 + 9.0 * lambda * lambda * b * g + 3.0 * lambda * b);
    }
  }
  return 1.0;
}

inline void require_bound_schedules(BoundKind k, const Schedules& s) {
  auto need = [&](const std::optional<Schedule>& sched, const char* which) {
    if (!sched)
      throw std::invalid_argument(std::string(bound_kind_name(k)) + " bound requires the " +
                                  which + " schedule");
  };
  switch (k) {
    case BoundKind::picard:
      break;
    case BoundKind::mann:
    case BoundKind::ishikawa:
    case BoundKind::xunoor_contraction:
    case BoundKind::xunoor_simple:
      need(s.alpha, "alpha");
      break;
    case BoundKind::xunoor_full:
      need(s.alpha, "alpha");
      need(s.beta, "beta");
      need(s.gamma, "gamma");
      break;
  }
}

}  // namespace detail

/// Computes b_0 = d0 and b_n = b_{n-1} * factor_n (one multiplication per
/// step, no re-accumulation). Factors outside [0,1] are kept as computed and
/// flagged.
inline BoundSequence bound_sequence(BoundKind kind, double lambda, double d0,
                                    const Schedules& s, std::size_t n) {
  if (!(lambda >= 0.0 && lambda < 1.0))
    throw std::invalid_argument("bound_sequence: lambda must lie in [0,1)");
  if (!(d0 >= 0.0)) throw std::invalid_argument("bound_sequence: d0 must be nonnegative");
  detail::require_bound_schedules(kind, s);

  BoundSequence out;
  out.kind = kind;
  out.lambda = lambda;
  out.d0 = d0;
  out.values.reserve(n + 1);
  out.values.push_back(d0);
  double b = d0;
  for (std::size_t i = 1; i <= n; ++i) {
    double f = detail::bound_factor(kind, lambda, s, i);
    if (!(f >= 0.0 && f <= 1.0) && out.first_bad_factor == BoundSequence::npos)
      out.first_bad_factor = i;
    b *= f;
    out.values.push_back(b);
  }
  out.certifying = out.first_bad_factor == BoundSequence::npos;
  return out;
}

enum class RateOutcome { faster, same_rate, slower, inconclusive };

inline std::string_view rate_outcome_name(RateOutcome o) {
  switch (o) {
    case RateOutcome::faster: return "faster";
    case RateOutcome::same_rate: return "same-rate";
    case RateOutcome::slower: return "slower";
    case RateOutcome::inconclusive: return "inconclusive";
  }
  return "?";
}

struct RateVerdict {
  RateOutcome outcome = RateOutcome::inconclusive;
  double limit_estimate = 0.0;  // may be infinity
  std::size_t tail_begin = 0;
  std::size_t tail_end = 0;
};

struct CompareOptions {
  std::size_t tail_start = 0;
  double faster_threshold = 1e-6;
  double band_low = 1e-3;
  double band_high = 1e3;
  /// Below this magnitude an error term counts as exactly zero and the
  /// comparison falls back to first-zero indices.
  double zero_cutoff = 1e-300;
};

/// Numerical stand-in for the limit l = lim |a_n - a| / |b_n - b|:
/// the ratio is examined on the tail [tail_start, N].
///   faster       : last ratio <= faster_threshold and the tail is nonincreasing
///   slower       : mirror criterion for the inverse ratio
///   same-rate    : every tail ratio stays inside [band_low, band_high]
///   inconclusive : anything else
/// When both error sequences vanish (underflow or exact convergence) the
/// earlier first-zero index wins; a vanishing denominator against a positive
/// numerator is reported as slower with l = infinity.
inline RateVerdict berinde_compare(std::span<const double> a, std::span<const double> b,
                                   double a_limit, double b_limit,
                                   const CompareOptions& opt) {
  const std::size_t n = std::min(a.size(), b.size());
  if (n == 0 || opt.tail_start >= n)
    throw std::invalid_argument("berinde_compare: sequences must be longer than tail_start");

  const double inf = std::numeric_limits<double>::infinity();
  auto ea = [&](std::size_t i) { return std::abs(a[i] - a_limit); };
  auto eb = [&](std::size_t i) { return std::abs(b[i] - b_limit); };

  RateVerdict v;
  v.tail_begin = opt.tail_start;
  v.tail_end = n - 1;

  // First indices at which each error term is effectively zero.
  std::size_t za = BoundSequence::npos, zb = BoundSequence::npos;
  for (std::size_t i = 0; i < n; ++i) {
    if (za == BoundSequence::npos && ea(i) <= opt.zero_cutoff) za = i;
    if (zb == BoundSequence::npos && eb(i) <= opt.zero_cutoff) zb = i;
  }
  if (za != BoundSequence::npos && zb != BoundSequence::npos) {
    if (za < zb) {
      v.outcome = RateOutcome::faster;
      v.limit_estimate = 0.0;
    } else if (za > zb) {
      v.outcome = RateOutcome::slower;
      v.limit_estimate = inf;
    } else {
      v.outcome = RateOutcome::same_rate;
      v.limit_estimate = 1.0;
    }
    return v;
  }
  for (std::size_t i = opt.tail_start; i < n; ++i) {
    if (eb(i) <= opt.zero_cutoff && ea(i) > opt.zero_cutoff) {
      // Denominator vanishes on the tail while the numerator stays positive.
      v.outcome = RateOutcome::slower;
      v.limit_estimate = inf;
      return v;
    }
  }

  bool nonincreasing = true, nondecreasing = true, in_band = true;
  double prev = -1.0;
  double last = 0.0;
  for (std::size_t i = opt.tail_start; i < n; ++i) {
    double r = ea(i) / eb(i);
    if (prev >= 0.0) {
      if (r > prev * (1.0 + 1e-12) + opt.zero_cutoff) nonincreasing = false;
      if (r < prev * (1.0 - 1e-12) - opt.zero_cutoff) nondecreasing = false;
    }
    if (!(r >= opt.band_low && r <= opt.band_high)) in_band = false;
    prev = r;
    last = r;
  }
  v.limit_estimate = last;

  if (last <= opt.faster_threshold && nonincreasing)
    v.outcome = RateOutcome::faster;
  else if (last >= 1.0 / opt.faster_threshold && nondecreasing)
    v.outcome = RateOutcome::slower;
  else if (in_band)
    v.outcome = RateOutcome::same_rate;
  else
    v.outcome = RateOutcome::inconclusive;
  return v;
}

/// Max over n of (d_n - b_n). A verified mapping run against its matching
/// certifying bound must keep this at or below 1e-10 * d0. Non-certifying
/// bounds are refused outright.
inline double check_bound_dominance(const Trajectory& traj, const BoundSequence& bound) {
  if (!bound.certifying)
    throw std::domain_error("check_bound_dominance: non-certifying bound refused");
  if (traj.distances.size() != bound.values.size())
    throw std::invalid_argument("check_bound_dominance: length mismatch");
  if (traj.distances.empty() || traj.distances.front() != bound.d0)
    throw std::invalid_argument("check_bound_dominance: bound was built for a different d0");
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < traj.distances.size(); ++i)
    worst = std::max(worst, traj.distances[i] - bound.values[i]);
  return worst;
}

}  // namespace hyperfix
