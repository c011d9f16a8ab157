#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "lfd/cover.hpp"
#include "lfd/geometry.hpp"
#include "lfd/groups.hpp"

namespace lfd {

// Periodic section with phi = 1/cos on [-theta/2, theta/2].
double phi(double alpha, double theta);
double section_su(const ConePoint& a, double theta);

struct Prism {
  DiscPoint x;
  UElement rep;  // rep(u) = x
  UElement rep_inv;
};

std::vector<Prism> prisms_from_orbit(const std::vector<OrbitPoint>& orbit);

enum class Side { Interior, Boundary, Exterior };

// phi(alpha_b) - r_b for b = rep^{-1} a; positive inside the prism.
double prism_margin(const ConePoint& a, const Prism& prism, double theta);
Side prism_classify(const ConePoint& a, const Prism& prism, const StarSetup& setup,
                    double eps = 1e-7);

// Affine chart on E_e: z = x1 + i x2, w = 1 + i x3, sheet |alpha| < pi/2.
ConePoint chart_to_cone(const Vec3& y);
Vec3 cone_to_chart(const ConePoint& a);  // radial projection onto the chart sheet
bool in_light_cone(const Vec3& y, double margin = 0.0);

// Chart equation of <pi(h), a> = -1; the side with eval < 0 is <pi(h), a> < -1.
Plane chart_plane(const UElement& h);

// Is the chart point a in I_h, i.e. h^{-1} a lies on the principal sheet beyond E_e.
bool in_I(const ConePoint& a, const UElement& h_inv);

struct Constraint {
  UElement h;
  UElement h_inv;
  Plane plane;
  int orbit_index = 0;
  int m = 0;
  int plane_index = 0;  // index into ConstraintSet::planes
};

struct ConstraintSet {
  std::vector<Constraint> constraints;   // every (orbit point, m) in the window
  std::vector<Plane> planes;             // distinct planes
  std::vector<int> plane_first;          // first constraint carrying each plane
  std::vector<std::vector<int>> by_prism;
};

ConstraintSet candidate_constraints(const std::vector<OrbitPoint>& orbit, const StarSetup& setup,
                                    double margin, double eps_geom = 1e-7);

struct FacetTag {
  int orbit_index = 0;
  int m = 0;
};

struct Facet {
  std::vector<int> vertices;  // counter-clockwise seen from outside
  Plane plane;                // outward unit normal
  int constraint = -1;
  FacetTag tag;
  UElement h;
};

struct Polyhedron {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 2>> edges;
  std::vector<Facet> facets;
  std::vector<std::vector<int>> vertex_facets;
  std::vector<std::array<int, 2>> edge_facets;
  std::vector<std::vector<Plane>> cells;  // kept convex pieces as outward half-spaces
  bool compact = false;
  double mu = 0.0;        // min over vertices of |w| - |z|
  double mu_bound = 0.0;  // lower bound of |w| - |z| over the whole solid
  double volume = 0.0;
  double max_residual = 0.0;
  long euler = 2;      // V - E + F of the boundary surface
  int components = 1;  // connected components of the boundary surface
};

enum class Location { Inside, Boundary, Outside };
Location locate(const Polyhedron& poly, const Vec3& p, double tol);

struct CarveOptions {
  double eps_geom = 1e-7;
  double box_pad = 1e-3;
  double split_tol = 1e-10;
  std::size_t max_cells = 4'000'000;
};

struct CarveStats {
  std::size_t cells_visited = 0;
  std::size_t kept_cells = 0;
};

// Classification of a chart point against the full prism set (slab + cone + prisms).
bool chart_point_kept(const Vec3& y, const std::vector<Prism>& prisms, const StarSetup& setup,
                      double eps);

Polyhedron carve_domain(const ConstraintSet& constraints, const std::vector<Prism>& prisms,
                        const StarSetup& setup, const CarveOptions& options = {},
                        CarveStats* stats = nullptr);

struct Certificate {
  bool pass = false;
  double radius = 0.0;
  double r_star = 1.0;
  double mu = 0.0;
};

Certificate relevance_certificate(const Polyhedron& poly, double radius, const StarSetup& setup);

struct BuildConfig {
  double r0 = 0.7;
  double growth = 1.15;  // applied to the hyperbolic radius 2 atanh(R)
  int cap = 12;
  double margin = 0.2;
  CarveOptions carve;
  OrbitOptions orbit;
  bool verify_stability = true;
};

struct Domain {
  Polyhedron poly;
  std::vector<OrbitPoint> orbit;
  std::vector<Prism> prisms;
  ConstraintSet constraints;
  Certificate certificate;
  int iterations = 0;
  double stability_shift = 0.0;  // max vertex displacement in the extra iteration
};

double radius_schedule(const BuildConfig& config, int iteration);
Domain build_fundamental_domain(const StarSetup& setup, const BuildConfig& config = {});

double section_sP(const UElement& a, const std::vector<Prism>& prisms, double theta);
double section_sP(const ConePoint& a, const std::vector<Prism>& prisms, double theta);

struct TranslateHit {
  UElement gamma1;
  UElement gamma2;
  UElement product;  // gamma1 gamma2^{-1}
  Location location;
};

std::vector<TranslateHit> membership_translate(const UElement& a, const Domain& domain,
                                               const StarSetup& setup, double eps_geom = 1e-7);

// Random source for sampling routines; deterministic for a given seed.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  Complex disc(double radius) {
    return std::polar(radius * std::sqrt(uniform()), uniform(-kPi, kPi));
  }

 private:
  std::mt19937_64 engine_;
};

std::vector<ConePoint> sample_boundary(const StarSetup& setup, const std::vector<Prism>& prisms,
                                       std::size_t n, Sampler& sampler, double z_radius);

// Solve a (p/p_u) + b (p/q) = m with |a| minimal.
std::pair<long, long> pairing_exponents(const StarSetup& setup, long m);

}  // namespace lfd
