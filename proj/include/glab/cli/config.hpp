#pragma once

#include "glab/exact/dynamics.hpp"
#include "glab/io/json_util.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace glab::cli {

struct Bounds {
  std::uint64_t isotropy = 20;
  std::uint64_t samples = 500;
  std::uint64_t density_depth = 64;
  std::uint64_t witness_cap = 4096;
  std::uint64_t axiom_trials = 1000;
};

struct ModelConfig {
  std::string z_backend = "odometer";  // golden-rotation | odometer | finite-cyclic
  std::uint64_t z_order = 3;           // finite-cyclic only
  std::string x_backend = "point";     // point | finite(n) | cantor | circle
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  Bounds bounds;

  MinimalSystem system() const {
    if (z_backend == "golden-rotation") return MinimalSystem::golden_rotation();
    if (z_backend == "odometer") return MinimalSystem::odometer();
    if (z_backend == "finite-cyclic") return MinimalSystem::cyclic(z_order);
    throw ParseError("z_backend: unknown backend '" + z_backend + "'");
  }

  Space x_space() const {
    if (x_backend == "point") return Space::point();
    if (x_backend == "cantor") return Space::cantor();
    if (x_backend == "circle") return Space::circle();
    if (x_backend.rfind("finite(", 0) == 0 && x_backend.back() == ')') {
      const std::string n = x_backend.substr(7, x_backend.size() - 8);
      if (n.empty() || n.find_first_not_of("0123456789") != std::string::npos || std::stoull(n) == 0)
        throw ParseError("x_backend: expected finite(n) with n >= 1");
      return Space::finite(std::stoull(n));
    }
    throw ParseError("x_backend: unknown backend '" + x_backend + "'");
  }

  io::Json to_json() const {
    return {{"z_backend", z_backend},
            {"z_order", z_order},
            {"x_backend", x_backend},
            {"seeds", seeds},
            {"bounds",
             {{"isotropy", bounds.isotropy},
              {"samples", bounds.samples},
              {"density_depth", bounds.density_depth},
              {"witness_cap", bounds.witness_cap},
              {"axiom_trials", bounds.axiom_trials}}}};
  }
};

/// Parses and validates a config document; errors name the offending field.
inline ModelConfig config_from_json(const io::Json& doc, const std::string& where = "config") {
  io::only_keys(doc, {"z_backend", "z_order", "x_backend", "seeds", "bounds"}, where);
  ModelConfig c;
  if (doc.contains("z_backend")) c.z_backend = io::as_string(doc["z_backend"], where + ".z_backend");
  if (doc.contains("z_order")) c.z_order = io::as_positive(doc["z_order"], where + ".z_order");
  if (doc.contains("x_backend")) c.x_backend = io::as_string(doc["x_backend"], where + ".x_backend");
  if (doc.contains("seeds")) {
    const auto& s = io::as_array(doc["seeds"], where + ".seeds");
    if (s.empty()) throw ParseError(where + ".seeds: at least one seed is required");
    c.seeds.clear();
    for (std::size_t i = 0; i < s.size(); ++i) {
      const std::string w = where + ".seeds[" + std::to_string(i) + "]";
      const auto v = io::as_int(s[i], w);
      if (v < 0) throw ParseError(w + ": expected a non-negative integer");
      c.seeds.push_back(static_cast<std::uint64_t>(v));
    }
  }
  if (doc.contains("bounds")) {
    const auto& b = doc["bounds"];
    const std::string w = where + ".bounds";
    io::only_keys(b, {"isotropy", "samples", "density_depth", "witness_cap", "axiom_trials"}, w);
    auto read = [&](const char* key, std::uint64_t& out) {
      if (b.contains(key)) out = io::as_positive(b[key], w + "." + key);
    };
    read("isotropy", c.bounds.isotropy);
    read("samples", c.bounds.samples);
    read("density_depth", c.bounds.density_depth);
    read("witness_cap", c.bounds.witness_cap);
    read("axiom_trials", c.bounds.axiom_trials);
  }
  // surface backend errors as field errors now rather than mid-run
  try {
    (void)c.system();
  } catch (const Error& e) {
    throw ParseError(where + "." + e.what());
  }
  try {
    (void)c.x_space();
  } catch (const Error& e) {
    throw ParseError(where + "." + e.what());
  }
  return c;
}

inline ModelConfig load_config(const std::string& path) { return config_from_json(io::load_json(path), path); }

}  // namespace glab::cli
