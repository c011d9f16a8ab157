#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "lfd/carve.hpp"

namespace lfd {

// Run description.  JSON keys and defaults:
//   signature        [p1, p2, p3]     required, hyperbolic
//   k                level            2
//   u_vertex         0, 1 or 2        0
//   q                order of Gamma2  3
//   tolerances       {eps_geom 1e-7, eps_match 1e-6, eps_orb 1e-9}
//   orbit            {r0 0.7, growth 1.15, cap 12, margin 0.2, max_word_length 40}
//   sampling         {tiling 10000, boundary 1000, prism_bound 1000, spot 100, tiling_radius 0.3}
//   seed             1
//   output_dir       "out"
struct RunConfig {
  std::array<int, 3> signature{0, 0, 0};
  int k = 2;
  int u_vertex = 0;
  int q = 3;
  double eps_geom = 1e-7;
  double eps_match = 1e-6;
  double eps_orb = 1e-9;
  double r0 = 0.7;
  double growth = 1.15;
  int cap = 12;
  double margin = 0.2;
  int max_word_length = 40;
  int tiling_samples = 10000;
  int boundary_samples = 1000;
  int prism_bound_samples = 1000;
  int spot_samples = 100;
  double tiling_radius = 0.3;
  std::uint64_t seed = 1;
  std::string output_dir = "out";

  BuildConfig build_config() const;
  std::string label() const;  // e.g. "533_k2_u0_q3"
};

// Throws Error("config", ...) on malformed input, unknown keys or invalid values.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);
void validate(const RunConfig& config);

// Canonical JSON text with every field spelled out.
std::string config_json(const RunConfig& config, int indent = 2);

}  // namespace lfd
