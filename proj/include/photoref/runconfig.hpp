#pragma once

#include <array>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "photoref/common.hpp"
#include "photoref/grid.hpp"
#include "photoref/nls.hpp"

// Run configuration: a single JSON document that pins every knob of a CLI
// invocation.  Parsing is strict (unknown keys rejected) and collects every
// violation before failing; serialization is canonical (alphabetical keys,
// shortest round-trip float form) so configs and manifests are reproducible
// byte for byte.

namespace photoref {

struct ConfigError : std::runtime_error {
  std::vector<std::string> violations;
  explicit ConfigError(std::vector<std::string> v)
      : std::runtime_error(join(v)), violations(std::move(v)) {}

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string s = "invalid config:";
    for (const auto& e : v) s += "\n  - " + e;
    return s;
  }
};

struct NumericsConfig {
  double dt = 1e-3;
  double T = 1.0;
  double tol = 1e-10;
  std::uint64_t max_iter = 0;  // 0: solver default
  double eps_reg = 0.0;
  bool operator==(const NumericsConfig&) const = default;
};

struct IoConfig {
  std::string input;
  std::string output;
  std::string report;
  std::uint64_t report_every = 0;  // 0: first and last only
  bool operator==(const IoConfig&) const = default;
};

inline const std::array<std::string, 5> kCommands = {
    "propagate-nls", "propagate-za", "solve-potential", "soliton", "verify"};

struct RunConfig {
  std::string command = "propagate-nls";
  GridSpec grid = make_grid(1, {256}, {40.0});
  ModelParams model{};
  NumericsConfig numerics{};
  IoConfig io{};
  std::uint64_t seed = 0;
  bool operator==(const RunConfig&) const = default;
};

inline nlohmann::json config_to_json(const RunConfig& c) {
  nlohmann::json j;
  j["command"] = c.command;
  j["grid"]["dim"] = c.grid.dim;
  {
    std::vector<std::uint64_t> pts;
    std::vector<double> lens;
    for (int ax = 0; ax < c.grid.dim; ++ax) {
      pts.push_back(c.grid.points[static_cast<std::size_t>(ax)]);
      lens.push_back(c.grid.lengths[static_cast<std::size_t>(ax)]);
    }
    j["grid"]["points"] = pts;
    j["grid"]["lengths"] = lens;
  }
  j["io"]["input"] = c.io.input;
  j["io"]["output"] = c.io.output;
  j["io"]["report"] = c.io.report;
  j["io"]["report_every"] = c.io.report_every;
  j["model"]["a"] = c.model.a;
  j["model"]["background_intensity"] = c.model.background_intensity;
  j["model"]["boundary_constant"] = c.model.boundary_constant;
  j["model"]["saturation"] = c.model.saturation;
  j["numerics"]["T"] = c.numerics.T;
  j["numerics"]["dt"] = c.numerics.dt;
  j["numerics"]["eps_reg"] = c.numerics.eps_reg;
  j["numerics"]["max_iter"] = c.numerics.max_iter;
  j["numerics"]["tol"] = c.numerics.tol;
  j["seed"] = c.seed;
  return j;
}

inline std::string serialize_config(const RunConfig& c) {
  return config_to_json(c).dump(2) + "\n";
}

namespace detail {

struct ConfigReader {
  std::vector<std::string> violations;

  void unknown_keys(const nlohmann::json& obj, const std::string& scope,
                    std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      bool known = false;
      for (const char* k : allowed)
        if (it.key() == k) known = true;
      if (!known)
        violations.push_back("unknown key: " + scope + it.key());
    }
  }

  template <typename T>
  void get(const nlohmann::json& obj, const std::string& scope,
           const char* key, T& out) {
    if (!obj.contains(key)) return;  // keep default
    try {
      out = obj.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
      violations.push_back("wrong type for " + scope + key);
    }
  }

  void check(bool ok, const std::string& message) {
    if (!ok) violations.push_back(message);
  }
};

}  // namespace detail

// Parses and validates a config document.  Missing keys fall back to
// defaults; every violated constraint is reported, not just the first.
inline RunConfig parse_config(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError({std::string("not valid JSON: ") + e.what()});
  }
  detail::ConfigReader rd;
  RunConfig c;
  if (!j.is_object()) {
    throw ConfigError({"top level must be a JSON object"});
  }
  rd.unknown_keys(j, "", {"command", "grid", "io", "model", "numerics", "seed"});

  rd.get(j, "", "command", c.command);
  bool cmd_ok = false;
  for (const auto& k : kCommands)
    if (c.command == k) cmd_ok = true;
  rd.check(cmd_ok, "command must be one of propagate-nls, propagate-za, "
                   "solve-potential, soliton, verify");

  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    if (!g.is_object()) {
      rd.violations.push_back("grid must be an object");
    } else {
      rd.unknown_keys(g, "grid.", {"dim", "points", "lengths"});
      int dim = c.grid.dim;
      std::vector<std::uint64_t> pts;
      std::vector<double> lens;
      for (int ax = 0; ax < c.grid.dim; ++ax) {
        pts.push_back(c.grid.points[static_cast<std::size_t>(ax)]);
        lens.push_back(c.grid.lengths[static_cast<std::size_t>(ax)]);
      }
      rd.get(g, "grid.", "dim", dim);
      rd.get(g, "grid.", "points", pts);
      rd.get(g, "grid.", "lengths", lens);
      try {
        c.grid = make_grid(dim, std::vector<std::size_t>(pts.begin(), pts.end()),
                           lens);
      } catch (const std::invalid_argument& e) {
        rd.violations.push_back(e.what());
      }
    }
  }

  if (j.contains("model")) {
    const auto& m = j.at("model");
    if (!m.is_object()) {
      rd.violations.push_back("model must be an object");
    } else {
      rd.unknown_keys(m, "model.",
                      {"a", "saturation", "background_intensity",
                       "boundary_constant"});
      rd.get(m, "model.", "a", c.model.a);
      rd.get(m, "model.", "saturation", c.model.saturation);
      rd.get(m, "model.", "background_intensity",
             c.model.background_intensity);
      rd.get(m, "model.", "boundary_constant", c.model.boundary_constant);
    }
  }
  rd.check(c.model.a == 1 || c.model.a == -1, "model.a must be +1 or -1");
  rd.check(c.model.saturation > 0.0, "model.saturation must be > 0");
  rd.check(c.model.background_intensity >= 0.0,
           "model.background_intensity must be >= 0");
  rd.check(c.model.boundary_constant >= 0.0,
           "model.boundary_constant must be >= 0");

  if (j.contains("numerics")) {
    const auto& n = j.at("numerics");
    if (!n.is_object()) {
      rd.violations.push_back("numerics must be an object");
    } else {
      rd.unknown_keys(n, "numerics.", {"dt", "T", "tol", "max_iter", "eps_reg"});
      rd.get(n, "numerics.", "dt", c.numerics.dt);
      rd.get(n, "numerics.", "T", c.numerics.T);
      rd.get(n, "numerics.", "tol", c.numerics.tol);
      rd.get(n, "numerics.", "max_iter", c.numerics.max_iter);
      rd.get(n, "numerics.", "eps_reg", c.numerics.eps_reg);
    }
  }
  rd.check(c.numerics.dt > 0.0, "numerics.dt must be > 0");
  rd.check(c.numerics.T > 0.0, "numerics.T must be > 0");
  rd.check(c.numerics.dt <= c.numerics.T, "numerics.dt must be <= numerics.T");
  rd.check(c.numerics.tol > 0.0, "numerics.tol must be > 0");
  rd.check(c.numerics.eps_reg >= 0.0, "numerics.eps_reg must be >= 0");

  if (j.contains("io")) {
    const auto& io = j.at("io");
    if (!io.is_object()) {
      rd.violations.push_back("io must be an object");
    } else {
      rd.unknown_keys(io, "io.", {"input", "output", "report", "report_every"});
      rd.get(io, "io.", "input", c.io.input);
      rd.get(io, "io.", "output", c.io.output);
      rd.get(io, "io.", "report", c.io.report);
      rd.get(io, "io.", "report_every", c.io.report_every);
    }
  }

  rd.get(j, "", "seed", c.seed);

  if (!rd.violations.empty()) throw ConfigError(std::move(rd.violations));
  return c;
}

inline RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError({"cannot open config file: " + path});
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

// Manifest: everything needed to reproduce a run byte for byte.  No
// timestamps or host details on purpose.
inline void write_manifest(const std::string& path, const RunConfig& c) {
  nlohmann::json j;
  j["config"] = config_to_json(c);
  j["seed"] = c.seed;
  j["version"] = kVersion;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write manifest: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace photoref
