#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "catalog.hpp"
#include "config.hpp"
#include "iteration.hpp"
#include "mapping.hpp"
#include "rate.hpp"
#include "space.hpp"

namespace hyperfix {

/// Raised when the configured mapping admits no usable contraction factor
/// (lambda >= 1, i.e. h >= 1/2); the CLI maps it to its own exit code.
class LambdaGateError : public std::runtime_error {
 public:
  explicit LambdaGateError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A config resolved against the catalog: concrete space, mapping, fixed
/// point, schedules, and the working contraction factor. The parameter h is
/// the mapping's declared one when present, otherwise the classifier's grid
/// estimate for the widest class.
struct PreparedExperiment {
  ExperimentConfig config;
  SpaceModel space = SpaceModel::euclidean(1);
  std::optional<ContractiveMapping> mapping;
  Point x0;
  Point fixed_point;
  Schedules schedules;
  double h = 0.0;
  Lambda lambda;
};

inline PreparedExperiment prepare_experiment(const ExperimentConfig& cfg) {
  PreparedExperiment prep;
  prep.config = cfg;
  prep.space = cfg.space.model == Model::halfplane
                   ? SpaceModel::halfplane(cfg.space.tolerance)
                   : SpaceModel::euclidean(cfg.space.dim, cfg.space.tolerance);

  ContractiveMapping mapping = parse_mapping(cfg.mapping.name);
  if (mapping.space().model() != prep.space.model() ||
      mapping.space().dim() != prep.space.dim())
    throw std::invalid_argument("mapping '" + cfg.mapping.name +
                                "' does not live in the configured space");

  prep.x0 = Point{cfg.space.model, cfg.run.x0};
  prep.space.require_point(prep.x0);
  if (!mapping.domain().contains(prep.space, prep.x0))
    throw std::invalid_argument("x0 lies outside the mapping domain");

  if (cfg.mapping.fixed_point) {
    Point p{cfg.space.model, *cfg.mapping.fixed_point};
    prep.space.require_point(p);
    if (!(prep.space.distance(mapping.apply(p), p) <= 1e-12))
      throw std::invalid_argument("declared fixed point moves by more than 1e-12");
    prep.fixed_point = std::move(p);
  } else if (mapping.fixed_point()) {
    prep.fixed_point = *mapping.fixed_point();
  } else {
    throw std::invalid_argument("mapping '" + cfg.mapping.name +
                                "' has no usable fixed point");
  }

  prep.schedules = Schedules{cfg.algorithm.alpha, cfg.algorithm.beta, cfg.algorithm.gamma};

  if (mapping.declared_h()) {
    prep.h = *mapping.declared_h();
  } else {
    prep.h = estimate_min_h(mapping, MappingClass::generalized_cq, default_grid(mapping));
  }
  if (prep.h >= 0.0 && prep.h < 1.0) {
    prep.lambda = lambda_of(prep.h);
  } else {
    prep.lambda = Lambda{std::numeric_limits<double>::infinity(), false};
  }
  prep.mapping = std::move(mapping);
  return prep;
}

inline void require_usable_lambda(const PreparedExperiment& prep) {
  if (!prep.lambda.usable)
    throw LambdaGateError("rate machinery requires h < 1/2 (mapping '" +
                          prep.config.mapping.name + "' has h = " + format_double(prep.h) +
                          ", lambda = " + format_double(prep.lambda.value) + ")");
}

struct RunArtifacts {
  Trajectory trajectory;
  BoundSequence bound;
  bool dominance_checked = false;
  double dominance_violation = 0.0;
};

/// Runs the configured scheme and computes the matching bound envelope.
/// Dominance is checked only against certifying bounds; a non-certifying
/// envelope is reported, never enforced.
inline RunArtifacts run_pipeline(const PreparedExperiment& prep, BoundKind bound_kind) {
  require_usable_lambda(prep);
  const ExperimentConfig& cfg = prep.config;
  RunArtifacts art;
  art.trajectory = run_algorithm(cfg.algorithm.kind, prep.space, *prep.mapping, prep.x0,
                                 prep.schedules, prep.fixed_point, cfg.run.max_iter,
                                 cfg.run.tol, cfg.run.verbosity > 0);
  art.bound = bound_sequence(bound_kind, prep.lambda.value, art.trajectory.distances.front(),
                             prep.schedules, art.trajectory.steps());
  if (art.bound.certifying) {
    art.dominance_checked = true;
    art.dominance_violation = check_bound_dominance(art.trajectory, art.bound);
  }
  return art;
}

/// The rate theorems only compare runs that share everything but the scheme.
inline void require_comparable(const PreparedExperiment& a, const PreparedExperiment& b) {
  if (!(a.space == b.space) || a.mapping->name() != b.mapping->name() ||
      a.x0.coords != b.x0.coords)
    throw std::invalid_argument(
        "theorem hypotheses require same initial guess, mapping and space in both configs");
}

}  // namespace hyperfix
