#pragma once

#include <charconv>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "format.hpp"
#include "iteration.hpp"
#include "point.hpp"
#include "schedule.hpp"
#include "space.hpp"

namespace hyperfix {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& msg)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

struct SpaceSection {
  Model model = Model::euclidean;
  int dim = 1;
  double tolerance = 1e-12;

  friend bool operator==(const SpaceSection&, const SpaceSection&) = default;
};

struct MappingSection {
  std::string name;
  std::optional<std::vector<double>> fixed_point;

  friend bool operator==(const MappingSection&, const MappingSection&) = default;
};

struct AlgorithmSection {
  Algorithm kind = Algorithm::picard;
  std::optional<Schedule> alpha;
  std::optional<Schedule> beta;
  std::optional<Schedule> gamma;

  friend bool operator==(const AlgorithmSection&, const AlgorithmSection&) = default;
};

struct RunSection {
  std::vector<double> x0;
  std::size_t max_iter = 0;
  double tol = 0.0;
  std::uint64_t seed = 0;
  int verbosity = 0;

  friend bool operator==(const RunSection&, const RunSection&) = default;
};

/// One experiment: which space, which catalog mapping, which scheme with
/// which schedules, and how to run it. Unknown keys are hard errors.
struct ExperimentConfig {
  SpaceSection space;
  MappingSection mapping;
  AlgorithmSection algorithm;
  RunSection run;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

inline double parse_number(std::string_view v, int line, std::string_view key) {
  double out = 0.0;
  auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
    throw ConfigError(line, "key '" + std::string(key) + "' expects a number, got '" +
                                std::string(v) + "'");
  return out;
}

inline std::vector<double> parse_numbers(std::string_view v, int line, std::string_view key) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < v.size()) {
    while (pos < v.size() && (v[pos] == ' ' || v[pos] == '\t')) ++pos;
    if (pos >= v.size()) break;
    std::size_t end = pos;
    while (end < v.size() && v[end] != ' ' && v[end] != '\t') ++end;
    out.push_back(parse_number(v.substr(pos, end - pos), line, key));
    pos = end;
  }
  if (out.empty())
    throw ConfigError(line, "key '" + std::string(key) + "' expects at least one number");
  return out;
}

inline std::int64_t parse_integer(std::string_view v, int line, std::string_view key) {
  std::int64_t out = 0;
  auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
    throw ConfigError(line, "key '" + std::string(key) + "' expects an integer, got '" +
                                std::string(v) + "'");
  return out;
}

inline std::uint64_t parse_unsigned(std::string_view v, int line, std::string_view key) {
  std::uint64_t out = 0;
  auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
    throw ConfigError(line, "key '" + std::string(key) +
                                "' expects a nonnegative integer, got '" + std::string(v) +
                                "'");
  return out;
}

}  // namespace detail

/// Parses the INI experiment grammar:
///
///   [space]            [mapping]        [algorithm]       [run]
///   model = euclidean  name = qc1       kind = mann       x0 = 1
///   dim = 1            fixed_point = 0  alpha = const:0.5 max_iter = 200
///   tolerance = 1e-12                   beta = harmonic   tol = 1e-12
///                                       gamma = ...       seed = 0
///                                                         verbosity = 0
///
/// '#' and ';' start comments. Every unknown section or key is an error, as
/// is a missing required key. Schedule values are validated against (C1).
inline ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  std::set<std::string> seen_keys;
  std::set<std::string> seen_sections;
  std::string section;

  bool saw_dim = false;
  std::optional<int> mapping_line;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view raw =
        text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    std::string_view line = detail::trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(line_no, "unterminated section header");
      std::string name(detail::trim(line.substr(1, line.size() - 2)));
      if (name != "space" && name != "mapping" && name != "algorithm" && name != "run")
        throw ConfigError(line_no, "unknown section [" + name + "]");
      if (!seen_sections.insert(name).second)
        throw ConfigError(line_no, "duplicate section [" + name + "]");
      section = name;
      continue;
    }

    auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(line_no, "expected 'key = value'");
    std::string key(detail::trim(line.substr(0, eq)));
    std::string_view value = detail::trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(line_no, "empty key");
    if (section.empty()) throw ConfigError(line_no, "key before any [section]");
    if (!seen_keys.insert(section + "." + key).second)
      throw ConfigError(line_no, "duplicate key '" + key + "' in [" + section + "]");

    try {
      if (section == "space") {
        if (key == "model") {
          if (value == "euclidean") cfg.space.model = Model::euclidean;
          else if (value == "halfplane") cfg.space.model = Model::halfplane;
          else throw ConfigError(line_no, "unknown model '" + std::string(value) + "'");
        } else if (key == "dim") {
          auto d = detail::parse_integer(value, line_no, key);
          if (d < 1) throw ConfigError(line_no, "dim must be positive");
          cfg.space.dim = static_cast<int>(d);
          saw_dim = true;
        } else if (key == "tolerance") {
          cfg.space.tolerance = detail::parse_number(value, line_no, key);
          if (!(cfg.space.tolerance >= 0.0))
            throw ConfigError(line_no, "tolerance must be nonnegative");
        } else {
          throw ConfigError(line_no, "unknown key '" + key + "' in [space]");
        }
      } else if (section == "mapping") {
        if (key == "name") {
          cfg.mapping.name = std::string(value);
          mapping_line = line_no;
        } else if (key == "fixed_point") {
          cfg.mapping.fixed_point = detail::parse_numbers(value, line_no, key);
        } else {
          throw ConfigError(line_no, "unknown key '" + key + "' in [mapping]");
        }
      } else if (section == "algorithm") {
        if (key == "kind") {
          auto a = parse_algorithm(value);
          if (!a) throw ConfigError(line_no, "unknown algorithm '" + std::string(value) + "'");
          cfg.algorithm.kind = *a;
        } else if (key == "alpha" || key == "beta" || key == "gamma") {
          Schedule s = parse_schedule(value);
          if (key == "alpha") cfg.algorithm.alpha = s;
          else if (key == "beta") cfg.algorithm.beta = s;
          else cfg.algorithm.gamma = s;
        } else {
          throw ConfigError(line_no, "unknown key '" + key + "' in [algorithm]");
        }
      } else {  // run
        if (key == "x0") {
          cfg.run.x0 = detail::parse_numbers(value, line_no, key);
        } else if (key == "max_iter") {
          auto v = detail::parse_integer(value, line_no, key);
          if (v < 1) throw ConfigError(line_no, "max_iter must be positive");
          cfg.run.max_iter = static_cast<std::size_t>(v);
        } else if (key == "tol") {
          cfg.run.tol = detail::parse_number(value, line_no, key);
          if (!(cfg.run.tol > 0.0)) throw ConfigError(line_no, "tol must be positive");
        } else if (key == "seed") {
          cfg.run.seed = detail::parse_unsigned(value, line_no, key);
        } else if (key == "verbosity") {
          auto v = detail::parse_integer(value, line_no, key);
          if (v < 0) throw ConfigError(line_no, "verbosity must be nonnegative");
          cfg.run.verbosity = static_cast<int>(v);
        } else {
          throw ConfigError(line_no, "unknown key '" + key + "' in [run]");
        }
      }
    } catch (const std::invalid_argument& e) {
      // Range and grammar violations from the value parsers, e.g. (C1).
      throw ConfigError(line_no, e.what());
    }
  }

  // Cross-key validation.
  auto require = [&](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(0, msg);
  };
  require(seen_sections.count("space") == 1, "missing [space] section");
  require(seen_sections.count("mapping") == 1, "missing [mapping] section");
  require(seen_sections.count("algorithm") == 1, "missing [algorithm] section");
  require(seen_sections.count("run") == 1, "missing [run] section");
  require(seen_keys.count("space.model") == 1, "[space] requires model");
  require(!cfg.mapping.name.empty(), "[mapping] requires name");
  require(seen_keys.count("algorithm.kind") == 1, "[algorithm] requires kind");
  require(!cfg.run.x0.empty(), "[run] requires x0");
  require(cfg.run.max_iter >= 1, "[run] requires max_iter");
  require(cfg.run.tol > 0.0, "[run] requires tol");

  if (cfg.space.model == Model::halfplane) {
    if (saw_dim && cfg.space.dim != 2)
      throw ConfigError(0, "halfplane space is fixed at dim 2");
    cfg.space.dim = 2;
  } else {
    require(saw_dim, "[space] requires dim for the euclidean model");
  }

  Schedules scheds{cfg.algorithm.alpha, cfg.algorithm.beta, cfg.algorithm.gamma};
  try {
    require_schedules(cfg.algorithm.kind, scheds);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(0, e.what());
  }

  SpaceModel space = cfg.space.model == Model::halfplane
                         ? SpaceModel::halfplane(cfg.space.tolerance)
                         : SpaceModel::euclidean(cfg.space.dim, cfg.space.tolerance);
  try {
    space.require_point(Point{cfg.space.model, cfg.run.x0});
    if (cfg.mapping.fixed_point)
      space.require_point(Point{cfg.space.model, *cfg.mapping.fixed_point});
  } catch (const std::invalid_argument& e) {
    throw ConfigError(0, std::string("x0/fixed_point: ") + e.what());
  }

  return cfg;
}

/// Canonical text form; parse_config(serialize_config(c)) == c for every
/// valid config.
inline std::string serialize_config(const ExperimentConfig& cfg) {
  std::string out;
  auto numbers = [](const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ' ';
      s += format_double(v[i]);
    }
    return s;
  };
  out += "[space]\n";
  out += "model = " + std::string(model_name(cfg.space.model)) + "\n";
  out += "dim = " + std::to_string(cfg.space.dim) + "\n";
  out += "tolerance = " + format_double(cfg.space.tolerance) + "\n";
  out += "[mapping]\n";
  out += "name = " + cfg.mapping.name + "\n";
  if (cfg.mapping.fixed_point) out += "fixed_point = " + numbers(*cfg.mapping.fixed_point) + "\n";
  out += "[algorithm]\n";
  out += "kind = " + std::string(algorithm_name(cfg.algorithm.kind)) + "\n";
  if (cfg.algorithm.alpha) out += "alpha = " + cfg.algorithm.alpha->spec_string() + "\n";
  if (cfg.algorithm.beta) out += "beta = " + cfg.algorithm.beta->spec_string() + "\n";
  if (cfg.algorithm.gamma) out += "gamma = " + cfg.algorithm.gamma->spec_string() + "\n";
  out += "[run]\n";
  out += "x0 = " + numbers(cfg.run.x0) + "\n";
  out += "max_iter = " + format_size(cfg.run.max_iter) + "\n";
  out += "tol = " + format_double(cfg.run.tol) + "\n";
  out += "seed = " + format_size(cfg.run.seed) + "\n";
  out += "verbosity = " + std::to_string(cfg.run.verbosity) + "\n";
  return out;
}

}  // namespace hyperfix
