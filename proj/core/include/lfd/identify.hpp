#pragma once

#include <array>
#include <string>
#include <vector>

#include "lfd/carve.hpp"

namespace lfd {

struct Flag {
  int facet = 0;
  int edge = 0;
  int vertex = 0;
};

struct FacePair {
  int facet = 0;
  int partner = 0;
  UElement gamma1;  // the facet is carried onto the partner by a -> gamma1^{-1} a gamma2
  UElement gamma2;
  long a = 0, b = 0;                 // exponents of d1 and d2 (zero for inverse pairs)
  int stabilizer_shift = 0;          // j in (gamma1 delta^j, gamma2 delta^j)
  std::vector<int> vertex_map;       // facet vertex slot -> partner vertex id
  std::vector<std::array<Flag, 2>> flags;
  double max_vertex_error = 0.0;
  bool tag_matches = false;          // partner tag element equals gamma1^{-1} gamma2
};

struct StabilizerElement {
  UElement delta;
  long exponent = 0;          // delta = d^exponent
  bool central = false;       // acts trivially on G~
  double chart_rotation = 0;  // rotation angle of the induced conjugation, in [0, 2 pi)
};

struct Stabilizer {
  long J = 1;
  std::vector<StabilizerElement> elements;  // identity first, then the generator
  int rotation_order = 1;                   // order of the induced rotation group on the chart
};

Stabilizer setwise_stabilizer(const StarSetup& setup);

struct FacePairing {
  std::vector<FacePair> pairs;  // indexed by facet
  Stabilizer stabilizer;
  int tag_mismatches = 0;
};

// Splits facet edges at the images of vertices under the face pairings until every
// pairing carries vertices to vertices.  The boundary surface is unchanged.
Polyhedron refine_for_pairing(const Polyhedron& poly, const StarSetup& setup, double eps_match = 1e-6,
                              int max_rounds = 50);

// Expects a polyhedron produced by refine_for_pairing (or one that needs no refinement).
FacePairing pair_faces(const Polyhedron& poly, const StarSetup& setup, double eps_match = 1e-6);

struct QuotientComplex {
  int vertices = 0;
  int edges = 0;
  int faces = 0;
  int axis_points = 0;  // boundary points fixed by a nontrivial stabilizer rotation
  long cell_term = 1;   // contribution of the open solid, 1 for a ball with trivial stabilizer
  long chi = 0;         // V - E + F - cell_term
};

QuotientComplex quotient_complex(const FacePairing& pairing, const Polyhedron& poly);

struct ChartSymmetry {
  bool flip = false;  // x3 -> -x3 composed with z -> conj(z) e^{i angle}
  double angle = 0.0;
  Vec3 apply(const Vec3& v) const;
};

struct SymmetryReport {
  std::vector<ChartSymmetry> elements;  // all detected isometries, identity first
  int rotation_order = 1;
  bool has_flip = false;
  bool axial = false;
  int order() const { return static_cast<int>(elements.size()); }
  std::string name() const;
};

SymmetryReport detect_symmetry(const Polyhedron& poly, int max_rotation_order, double tol = 1e-6);

// Image of each facet under a chart isometry, or -1 when no facet matches.
std::vector<int> facet_permutation(const Polyhedron& poly, const ChartSymmetry& s, double tol = 1e-6);

// Number of (symmetry, pair) combinations where the symmetry image of a paired
// facet is not paired with the image of its partner.
int equivariance_defects(const Polyhedron& poly, const FacePairing& pairing,
                         const SymmetryReport& symmetry, double tol = 1e-6);

// Sorted multiset of pairwise vertex separations of a facet.  Euclidean distances,
// or with `lorentz` the chart interval x1^2 + x2^2 - x3^2 preserved by the pairings.
std::vector<double> distance_profile(const Polyhedron& poly, int facet, bool lorentz = false);

// Largest profile difference over all pairs.
double congruence_defect(const Polyhedron& poly, const FacePairing& pairing, bool lorentz);

}  // namespace lfd
