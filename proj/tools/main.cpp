// Command-line front end for the fixed-point iteration laboratory.
//
// Subcommands:
//   verify-space   sampling check of the convexity axioms of a chart
//   classify       brute-force contractive-class report for a catalog mapping
//   run            run one configured scheme, write n,distance,bound,certifying CSV
//   compare        rate comparison of two configured schemes, write n,a,b,ratio CSV
//   bounds         print a bound envelope as CSV without running anything
//
// Exit codes are part of the contract: 0 ok, 2 usage/config error,
// 3 dominance violation, 4 unusable contraction factor (h >= 1/2),
// 5 mismatched comparison hypotheses.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hyperfix/hyperfix.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitDominance = 3;
constexpr int kExitLambdaGate = 4;
constexpr int kExitMismatch = 5;

using namespace hyperfix;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

std::optional<BoundKind> parse_xunoor_bound(const std::string& name) {
  if (name == "contraction") return BoundKind::xunoor_contraction;
  if (name == "simple") return BoundKind::xunoor_simple;
  if (name == "full") return BoundKind::xunoor_full;
  return std::nullopt;
}

std::optional<BoundKind> parse_bound_kind(const std::string& name) {
  if (name == "picard") return BoundKind::picard;
  if (name == "mann") return BoundKind::mann;
  if (name == "ishikawa") return BoundKind::ishikawa;
  if (name == "xunoor-contraction") return BoundKind::xunoor_contraction;
  if (name == "xunoor-simple") return BoundKind::xunoor_simple;
  if (name == "xunoor-full") return BoundKind::xunoor_full;
  return std::nullopt;
}

BoundKind bound_for(Algorithm a, const std::string& xunoor_bound) {
  if (a != Algorithm::xunoor) return default_bound_for(a);
  auto k = parse_xunoor_bound(xunoor_bound);
  if (!k)
    throw std::runtime_error("unknown --xunoor-bound '" + xunoor_bound +
                             "' (use contraction, simple or full)");
  return *k;
}

// ---------------------------------------------------------------------------

struct VerifySpaceArgs {
  std::string model = "euclidean";
  int dim = 2;
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  double tol = 0.0;  // 0 = per-model default
};

int cmd_verify_space(const VerifySpaceArgs& a) {
  SpaceModel space = SpaceModel::euclidean(1);
  double tol = a.tol;
  if (a.model == "euclidean") {
    space = SpaceModel::euclidean(a.dim);
    if (tol <= 0.0) tol = 1e-9;
  } else if (a.model == "halfplane") {
    space = SpaceModel::halfplane();
    if (tol <= 0.0) tol = 1e-7;
  } else {
    std::cerr << "unknown model '" << a.model << "' (use euclidean or halfplane)\n";
    return kExitUsage;
  }

  AxiomReport rep = verify_convexity_axioms(space, a.samples, a.seed, tol);
  std::cout << "model=" << a.model << " dim=" << space.dim() << " samples=" << a.samples
            << " seed=" << a.seed << " tol=" << format_double(tol) << "\n";
  const char* names[4] = {"W1", "W2", "W3", "W4"};
  for (int i = 0; i < 4; ++i)
    std::cout << names[i] << " max residual = " << format_double(rep.max_residual[i])
              << "\n";
  std::cout << "result: " << (rep.pass ? "pass" : "fail") << "\n";
  return rep.pass ? kExitOk : 1;
}

// ---------------------------------------------------------------------------

struct ClassifyArgs {
  std::string mapping;
  int grid = 0;  // 0 = per-domain default
  std::optional<double> h;
  std::optional<double> za, zb, zc;
};

void print_class_row(const std::string& label, const ClassResult& r) {
  std::cout << label << ": ";
  if (r.holds.has_value())
    std::cout << (*r.holds ? "holds" : "fails") << " (violations=" << r.violating_pairs
              << ")";
  else
    std::cout << "n/a";
  std::cout << "  min-h=" << format_double(r.min_h_estimate) << "\n";
}

void print_worst_pair(const ClassResult& r) {
  auto point_str = [](const Point& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.coords.size(); ++i) {
      if (i) s += ", ";
      s += format_double(p.coords[i]);
    }
    return s + ")";
  };
  std::cout << "worst pair: x=" << point_str(r.worst_pair.first)
            << " y=" << point_str(r.worst_pair.second)
            << " excess=" << format_double(r.worst_excess) << "\n";
}

int cmd_classify(const ClassifyArgs& a) {
  ContractiveMapping m = parse_mapping(a.mapping);
  int grid = a.grid > 0 ? a.grid : default_grid(m);

  ClassifyParams params;
  params.h = a.h ? a.h : m.declared_h();
  if (a.za && a.zb && a.zc)
    params.zam = ZamfirescuParams{*a.za, *a.zb, *a.zc};
  else if (a.za || a.zb || a.zc)
    throw std::runtime_error("--a, --b and --c must be given together");
  else
    params.zam = m.zamfirescu_params();

  ClassificationReport rep = classify_mapping(m, grid, params);
  std::cout << "mapping=" << m.name() << " grid=" << grid << " pairs=" << rep.pair_count
            << "\n";
  if (params.h) std::cout << "checked h=" << format_double(*params.h) << "\n";
  if (params.zam)
    std::cout << "checked (a,b,c)=(" << format_double(params.zam->a) << ","
              << format_double(params.zam->b) << "," << format_double(params.zam->c)
              << ")\n";
  print_class_row("contraction", rep.contraction);
  print_class_row("zamfirescu", rep.zamfirescu);
  print_class_row("cq", rep.cq);
  print_class_row("generalized-contractive", rep.generalized_contractive);
  print_class_row("generalized-cq", rep.generalized_cq);

  MappingClass declared = m.declared_class();
  if (declared == MappingClass::unclassified) {
    std::cout << "declared class: unclassified\n";
    return kExitOk;
  }
  const ClassResult& d = rep.for_class(declared);
  bool holds;
  std::string detail;
  if (d.holds.has_value()) {
    holds = *d.holds;
  } else {
    // No parameter declared or supplied; membership asks for the existence
    // of an admissible one, which the grid estimate answers.
    holds = d.min_h_estimate < 1.0;
    detail = " with estimated h=" + format_double(d.min_h_estimate);
  }
  std::cout << "declared class: " << mapping_class_name(declared) << " -> "
            << (holds ? "holds" : "fails") << detail << "\n";
  if (!holds) {
    if (d.holds.has_value()) print_worst_pair(d);
    return 1;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct RunArgs {
  std::string config_path;
  std::string out_path;
  std::string xunoor_bound = "contraction";
};

int cmd_run(const RunArgs& a) {
  ExperimentConfig cfg = parse_config(read_file(a.config_path));
  PreparedExperiment prep = prepare_experiment(cfg);
  BoundKind kind = bound_for(cfg.algorithm.kind, a.xunoor_bound);
  RunArtifacts art = run_pipeline(prep, kind);

  std::ostringstream csv;
  write_run_csv(csv, art.trajectory, art.bound);
  write_file(a.out_path, csv.str());

  std::cout << "algorithm=" << algorithm_name(cfg.algorithm.kind)
            << " bound=" << bound_kind_name(kind) << " h=" << format_double(prep.h)
            << " lambda=" << format_double(prep.lambda.value)
            << " steps=" << art.trajectory.steps() << "\n";
  double gate = 1e-10 * art.trajectory.distances.front();
  if (!art.dominance_checked) {
    std::cout << "bound is non-certifying (a factor left [0,1]); dominance not checked\n";
    return kExitOk;
  }
  std::cout << "dominance max(d_n - b_n) = " << format_double(art.dominance_violation)
            << "\n";
  if (art.dominance_violation > gate) {
    std::cerr << "dominance violated beyond tolerance " << format_double(gate) << "\n";
    return kExitDominance;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct CompareArgs {
  std::string config_a, config_b;
  std::string mode = "bounds";
  std::string out_path;
  std::size_t n = 200;
  double faster_threshold = 1e-6;
  std::string xunoor_bound = "contraction";
};

int cmd_compare(const CompareArgs& a) {
  ExperimentConfig cfg_a = parse_config(read_file(a.config_a));
  ExperimentConfig cfg_b = parse_config(read_file(a.config_b));
  PreparedExperiment pa = prepare_experiment(cfg_a);
  PreparedExperiment pb = prepare_experiment(cfg_b);
  try {
    require_comparable(pa, pb);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitMismatch;
  }

  std::vector<double> seq_a, seq_b;
  if (a.mode == "bounds") {
    require_usable_lambda(pa);  // envelopes need a working factor below 1
    BoundSequence ba = bound_sequence(bound_for(cfg_a.algorithm.kind, a.xunoor_bound),
                                      pa.lambda.value, pa.space.distance(pa.x0, pa.fixed_point),
                                      pa.schedules, a.n);
    BoundSequence bb = bound_sequence(bound_for(cfg_b.algorithm.kind, a.xunoor_bound),
                                      pb.lambda.value, pb.space.distance(pb.x0, pb.fixed_point),
                                      pb.schedules, a.n);
    seq_a = ba.values;
    seq_b = bb.values;
    if (!ba.certifying)
      std::cout << "note: " << bound_kind_name(ba.kind) << " sequence a is non-certifying\n";
    if (!bb.certifying)
      std::cout << "note: " << bound_kind_name(bb.kind) << " sequence b is non-certifying\n";
  } else if (a.mode == "empirical") {
    auto run_side = [&](const PreparedExperiment& p) {
      Trajectory t = run_algorithm(p.config.algorithm.kind, p.space, *p.mapping, p.x0,
                                   p.schedules, p.fixed_point, a.n, 0.0);
      std::vector<double> d = t.distances;
      d.resize(a.n + 1, d.back());  // exact convergence keeps the iterate fixed
      return d;
    };
    seq_a = run_side(pa);
    seq_b = run_side(pb);
  } else {
    std::cerr << "unknown --mode '" << a.mode << "' (use bounds or empirical)\n";
    return kExitUsage;
  }

  std::ostringstream csv;
  write_compare_csv(csv, seq_a, seq_b, 0.0, 0.0);
  write_file(a.out_path, csv.str());

  CompareOptions opt;
  opt.tail_start = a.n / 2;
  opt.faster_threshold = a.faster_threshold;
  RateVerdict v = berinde_compare(seq_a, seq_b, 0.0, 0.0, opt);
  std::cout << "verdict=" << rate_outcome_name(v.outcome)
            << " l_estimate=" << format_double(v.limit_estimate) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct BoundsArgs {
  std::string kind = "picard";
  double lambda = 0.0;
  double d0 = 1.0;
  std::size_t n = 200;
  std::string alpha, beta, gamma;
  std::string out_path;
};

int cmd_bounds(const BoundsArgs& a) {
  auto kind = parse_bound_kind(a.kind);
  if (!kind) {
    std::cerr << "unknown bound kind '" << a.kind << "'\n";
    return kExitUsage;
  }
  Schedules s;
  if (!a.alpha.empty()) s.alpha = parse_schedule(a.alpha);
  if (!a.beta.empty()) s.beta = parse_schedule(a.beta);
  if (!a.gamma.empty()) s.gamma = parse_schedule(a.gamma);
  BoundSequence b = bound_sequence(*kind, a.lambda, a.d0, s, a.n);

  std::ostringstream csv;
  write_bound_csv(csv, b);
  if (a.out_path.empty())
    std::cout << csv.str();
  else
    write_file(a.out_path, csv.str());
  if (!b.certifying)
    std::cout << "note: sequence is non-certifying from step " << b.first_bad_factor << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for fixed-point iteration schemes"};
  app.require_subcommand(1);

  VerifySpaceArgs vs;
  auto* verify = app.add_subcommand("verify-space", "check the convexity axioms by sampling");
  verify->add_option("--model", vs.model, "euclidean or halfplane");
  verify->add_option("--dim", vs.dim, "dimension (euclidean only)");
  verify->add_option("--samples", vs.samples, "number of sampled tuples");
  verify->add_option("--seed", vs.seed, "sampler seed");
  verify->add_option("--tol", vs.tol, "residual tolerance (default per model)");

  ClassifyArgs cl;
  double cl_h = -1, cl_a = -1, cl_b = -1, cl_c = -1;
  auto* classify = app.add_subcommand("classify", "contractive-class report for a mapping");
  classify->set_help_flag("--help", "print help");  // frees -h for the parameter below
  classify->add_option("--mapping", cl.mapping, "catalog mapping name")->required();
  classify->add_option("--grid", cl.grid, "grid points per axis (0 = default)");
  auto* opt_h = classify->add_option("--h", cl_h, "parameter for the single-h classes");
  auto* opt_a = classify->add_option("--a", cl_a, "zamfirescu distance-branch parameter");
  auto* opt_b = classify->add_option("--b", cl_b, "zamfirescu own-displacement parameter");
  auto* opt_c = classify->add_option("--c", cl_c, "zamfirescu cross-displacement parameter");

  RunArgs ra;
  auto* run = app.add_subcommand("run", "run one configured experiment");
  run->add_option("config", ra.config_path, "experiment config file")->required();
  run->add_option("--out", ra.out_path, "output CSV path")->required();
  run->add_option("--xunoor-bound", ra.xunoor_bound,
                  "xunoor bound flavor: contraction (default), simple, full");

  CompareArgs ca;
  auto* compare = app.add_subcommand("compare", "compare rates of two experiments");
  compare->add_option("config_a", ca.config_a, "first experiment config")->required();
  compare->add_option("config_b", ca.config_b, "second experiment config")->required();
  compare->add_option("--mode", ca.mode, "bounds (default) or empirical");
  compare->add_option("--out", ca.out_path, "output CSV path")->required();
  compare->add_option("--n", ca.n, "sequence length (default 200)");
  compare->add_option("--threshold", ca.faster_threshold, "faster-verdict threshold");
  compare->add_option("--xunoor-bound", ca.xunoor_bound,
                      "xunoor bound flavor: contraction (default), simple, full");

  BoundsArgs ba;
  auto* bounds = app.add_subcommand("bounds", "print a bound envelope as CSV");
  bounds->add_option("--kind", ba.kind,
                     "picard, mann, ishikawa, xunoor-contraction, xunoor-simple, xunoor-full")
      ->required();
  bounds->add_option("--lambda", ba.lambda, "working contraction factor")->required();
  bounds->add_option("--d0", ba.d0, "initial distance (default 1)");
  bounds->add_option("--n", ba.n, "sequence length (default 200)");
  bounds->add_option("--alpha", ba.alpha, "alpha schedule (const:<v> or harmonic)");
  bounds->add_option("--beta", ba.beta, "beta schedule");
  bounds->add_option("--gamma", ba.gamma, "gamma schedule");
  bounds->add_option("--out", ba.out_path, "output CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*verify) return cmd_verify_space(vs);
    if (*classify) {
      if (opt_h->count()) cl.h = cl_h;
      if (opt_a->count()) cl.za = cl_a;
      if (opt_b->count()) cl.zb = cl_b;
      if (opt_c->count()) cl.zc = cl_c;
      return cmd_classify(cl);
    }
    if (*run) return cmd_run(ra);
    if (*compare) return cmd_compare(ca);
    if (*bounds) return cmd_bounds(ba);
  } catch (const LambdaGateError& e) {
    std::cerr << e.what() << "\n";
    return kExitLambdaGate;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
