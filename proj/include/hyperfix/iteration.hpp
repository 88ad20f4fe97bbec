#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mapping.hpp"
#include "point.hpp"
#include "schedule.hpp"
#include "space.hpp"

namespace hyperfix {

/// The four iteration schemes, from the one-step classic to the three-stage
/// scheme. Each stage blends a mapped point with the current iterate through
/// W; the stage weight multiplies the mapped point.
enum class Algorithm { picard, mann, ishikawa, xunoor };

inline std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::picard: return "picard";
    case Algorithm::mann: return "mann";
    case Algorithm::ishikawa: return "ishikawa";
    case Algorithm::xunoor: return "xunoor";
  }
  return "?";
}

inline std::optional<Algorithm> parse_algorithm(std::string_view name) {
  if (name == "picard") return Algorithm::picard;
  if (name == "mann") return Algorithm::mann;
  if (name == "ishikawa") return Algorithm::ishikawa;
  if (name == "xunoor") return Algorithm::xunoor;
  return std::nullopt;
}

struct Schedules {
  std::optional<Schedule> alpha;
  std::optional<Schedule> beta;
  std::optional<Schedule> gamma;
};

/// Throws listing the first missing schedule the scheme needs.
inline void require_schedules(Algorithm a, const Schedules& s) {
  auto need = [&](const std::optional<Schedule>& sched, const char* which) {
    if (!sched)
      throw std::invalid_argument(std::string(algorithm_name(a)) + " requires [algorithm] " +
                                  which);
  };
  switch (a) {
    case Algorithm::picard: break;
    case Algorithm::mann: need(s.alpha, "alpha"); break;
    case Algorithm::ishikawa:
      need(s.alpha, "alpha");
      need(s.beta, "beta");
      break;
    case Algorithm::xunoor:
      need(s.alpha, "alpha");
      need(s.beta, "beta");
      need(s.gamma, "gamma");
      break;
  }
}

struct StepResult {
  Point next;
  std::optional<Point> stage_y;  // inner iterate of the 2- and 3-stage schemes
  std::optional<Point> stage_z;  // innermost iterate of the 3-stage scheme
};

inline StepResult algorithm_step_traced(Algorithm kind, const SpaceModel& space,
                                        const ContractiveMapping& m, const Point& x,
                                        std::size_t n, const Schedules& s) {
  require_schedules(kind, s);
  StepResult out;
  switch (kind) {
    case Algorithm::picard:
      out.next = m.apply(x);
      break;
    case Algorithm::mann:
      out.next = space.combine(m.apply(x), x, s.alpha->value(n));
      break;
    case Algorithm::ishikawa: {
      Point y = space.combine(m.apply(x), x, s.beta->value(n));
      out.next = space.combine(m.apply(y), x, s.alpha->value(n));
      out.stage_y = std::move(y);
      break;
    }
    case Algorithm::xunoor: {
      Point z = space.combine(m.apply(x), x, s.gamma->value(n));
      Point y = space.combine(m.apply(z), x, s.beta->value(n));
      out.next = space.combine(m.apply(y), x, s.alpha->value(n));
      out.stage_y = std::move(y);
      out.stage_z = std::move(z);
      break;
    }
  }
  return out;
}

inline Point algorithm_step(Algorithm kind, const SpaceModel& space,
                            const ContractiveMapping& m, const Point& x, std::size_t n,
                            const Schedules& s) {
  return algorithm_step_traced(kind, space, m, x, n, s).next;
}

enum class Termination { tolerance_reached, max_iterations };

/// Per-run record: the iterates, their distances to the fixed point, and
/// (when requested) the transient stage iterates.
struct Trajectory {
  Algorithm algorithm = Algorithm::picard;
  std::vector<Point> iterates;
  std::vector<double> distances;
  std::vector<Point> stage_y;
  std::vector<Point> stage_z;
  Termination reason = Termination::max_iterations;

  std::size_t steps() const { return distances.empty() ? 0 : distances.size() - 1; }
};

/// Runs the scheme from x0, recording d(x_n, p) each step. Stops as soon as
/// the distance drops to tol or after max_iter steps. p must already be a
/// fixed point to 1e-12; the stopping rule is on distance-to-p because every
/// rate statement is about that quantity.
inline Trajectory run_algorithm(Algorithm kind, const SpaceModel& space,
                                const ContractiveMapping& m, const Point& x0,
                                const Schedules& s, const Point& p, std::size_t max_iter,
                                double tol, bool record_transients = false) {
  require_schedules(kind, s);
  if (max_iter < 1) throw std::invalid_argument("run_algorithm: max_iter must be positive");
  if (!(tol >= 0.0)) throw std::invalid_argument("run_algorithm: tol must be nonnegative");
  if (!(space.distance(m.apply(p), p) <= 1e-12))
    throw std::invalid_argument("run_algorithm: p is not a fixed point to 1e-12");
  if (!m.domain().contains(space, x0))
    throw std::invalid_argument("run_algorithm: x0 lies outside the mapping domain");

  Trajectory traj;
  traj.algorithm = kind;
  traj.iterates.push_back(x0);
  traj.distances.push_back(space.distance(x0, p));

  std::size_t n = 0;
  while (true) {
    if (traj.distances.back() <= tol) {
      traj.reason = Termination::tolerance_reached;
      break;
    }
    if (n == max_iter) {
      traj.reason = Termination::max_iterations;
      break;
    }
    StepResult step = algorithm_step_traced(kind, space, m, traj.iterates.back(), n, s);
    if (!all_finite(step.next))
      throw std::runtime_error("run_algorithm: non-finite iterate at step " +
                               std::to_string(n + 1));
    if (record_transients) {
      if (step.stage_y) traj.stage_y.push_back(*step.stage_y);
      if (step.stage_z) traj.stage_z.push_back(*step.stage_z);
    }
    traj.iterates.push_back(std::move(step.next));
    traj.distances.push_back(space.distance(traj.iterates.back(), p));
    ++n;
  }
  return traj;
}

}  // namespace hyperfix
