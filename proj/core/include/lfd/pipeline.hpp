#pragma once

#include <string>
#include <vector>

#include "lfd/carve.hpp"
#include "lfd/config.hpp"
#include "lfd/figures.hpp"
#include "lfd/identify.hpp"

namespace lfd {

struct RunResult {
  RunConfig config;
  StarSetup setup;
  Domain domain;
  Polyhedron poly;  // domain polyhedron with edges refined for the face pairing
  FacePairing pairing;
  QuotientComplex quotient;
  SymmetryReport symmetry;
  int symmetry_defects = 0;
  StarPolygon star;
};

StarSetup setup_from_config(const RunConfig& config);

// star_setup -> build_fundamental_domain -> pair_faces -> quotient_complex -> detect_symmetry.
RunResult run_pipeline(const RunConfig& config);

// Writes domain.obj, domain.json, xu_strip.svg, star_polygon.svg and report.txt.
void write_artifacts(const RunResult& result, const std::string& dir);
void write_figures(const RunConfig& config, const std::string& dir);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Invariant suites of all modules plus the tiling and boundary sampling tests.
std::vector<CheckResult> verify_run(const RunResult& result);

// Individual sampling checks, shared with the acceptance driver.
struct TilingStats {
  int samples = 0;
  int exactly_one = 0;
  int boundary_excluded = 0;
  int zero = 0;
  int several = 0;
};
TilingStats tiling_test(const RunResult& result, int samples, double radius, std::uint64_t seed);

struct BoundaryStats {
  int emitted = 0;
  int on_sheet = 0;
  int inside = 0;
  double worst_distance = 0.0;
};
BoundaryStats boundary_cross_validation(const RunResult& result, int samples, std::uint64_t seed);

// Largest value of |w - conj(x) z| - f(|x|) over sampled prism points.
double prism_bound_excess(const StarSetup& setup, const std::vector<Prism>& prisms, int samples,
                          std::uint64_t seed);

}  // namespace lfd
