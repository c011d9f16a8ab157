#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "lfd/error.hpp"
#include "lfd/pipeline.hpp"

namespace lfd {
namespace {

const RunResult& run_533() {
  static const RunResult r = [] {
    RunConfig c;
    c.signature = {5, 3, 3};
    return run_pipeline(c);
  }();
  return r;
}

Vec3 facet_point(const Polyhedron& poly, const Facet& f) {
  // Weighted toward the first triangle of the fan so the point is strictly inside.
  const Vec3 a = poly.vertices[f.vertices[0]], b = poly.vertices[f.vertices[1]], c = poly.vertices[f.vertices[2]];
  return a * 0.4 + b * 0.3 + c * 0.3;
}

bool on_facet_interior(const Polyhedron& poly, const Facet& f, const Vec3& p) {
  std::vector<Vec3> pv;
  for (int v : f.vertices) pv.push_back(poly.vertices[v]);
  if (point_polygon_distance(p, pv, f.plane.n) > 1e-12) return false;
  for (std::size_t i = 0; i < pv.size(); ++i) {
    const Vec3 a = pv[i], b = pv[(i + 1) % pv.size()];
    if (norm(cross(b - a, p - a)) / norm(b - a) < 1e-6) return false;
  }
  return true;
}

TEST(Domain533, CompactCertifiedAndStable) {
  const RunResult& r = run_533();
  const Polyhedron& poly = r.domain.poly;
  EXPECT_TRUE(poly.compact);
  EXPECT_GT(poly.volume, 0.0);
  EXPECT_TRUE(r.domain.certificate.pass);
  EXPECT_GE(r.domain.certificate.radius, r.domain.certificate.r_star);
  EXPECT_LE(poly.max_residual, 1e-7);
  EXPECT_LE(r.domain.stability_shift, 1e-7);
  EXPECT_GT(poly.mu_bound, 0.0);
  EXPECT_LE(poly.mu_bound, poly.mu + 1e-12);
  EXPECT_EQ(static_cast<long>(poly.vertices.size()) - static_cast<long>(poly.edges.size()) +
                static_cast<long>(poly.facets.size()),
            2);
  for (const auto& v : poly.vertices) EXPECT_LT(v.x * v.x + v.y * v.y, 1.0 + v.z * v.z);
}

TEST(Domain533, FacetsLieOnTheirPlanesAndPrisms) {
  const RunResult& r = run_533();
  const Polyhedron& poly = r.domain.poly;
  for (const auto& f : poly.facets) {
    for (int v : f.vertices) EXPECT_LE(std::abs(f.plane.eval(poly.vertices[v])), 1e-7);
    const ConePoint a = chart_to_cone(facet_point(poly, f));
    EXPECT_EQ(prism_classify(a, r.domain.prisms[f.tag.orbit_index], r.setup), Side::Boundary);
    for (const auto& prism : r.domain.prisms) EXPECT_NE(prism_classify(a, prism, r.setup), Side::Interior);
  }
}

TEST(Domain533, SlabFacetsAreExactlyTheTaggedOnes) {
  const RunResult& r = run_533();
  const double t = std::tan(r.setup.theta / 2);
  int slab = 0;
  for (const auto& f : r.domain.poly.facets) {
    auto at_level = [&](double level) {
      return std::all_of(f.vertices.begin(), f.vertices.end(),
                         [&](int v) { return std::abs(r.domain.poly.vertices[v].z - level) < 1e-9; });
    };
    EXPECT_EQ(at_level(-t), f.tag.orbit_index == 0 && f.tag.m == 1);
    EXPECT_EQ(at_level(t), f.tag.orbit_index == 0 && f.tag.m == -1);
    slab += at_level(-t) || at_level(t);
  }
  EXPECT_EQ(slab, 2);
}

TEST(Domain533, OrientationIsOutward) {
  const RunResult& r = run_533();
  const Polyhedron& poly = r.domain.poly;
  double six_v = 0.0;
  for (const auto& f : poly.facets) {
    const Vec3 o = poly.vertices[f.vertices[0]];
    for (std::size_t i = 1; i + 1 < f.vertices.size(); ++i) {
      six_v += dot(o, cross(poly.vertices[f.vertices[i]], poly.vertices[f.vertices[i + 1]]));
    }
  }
  EXPECT_NEAR(six_v / 6.0, poly.volume, 1e-9);
}

TEST(Domain533, CertificateIsSound) {
  const RunResult& r = run_533();
  const double radius = r.domain.certificate.radius;
  const auto far = enumerate_orbit(r.setup.group, r.setup.u_index, std::min(0.985, 1 - (1 - radius) / 3));
  int fresh = 0;
  for (const auto& o : far) {
    if (o.x.modulus() <= radius) continue;
    ++fresh;
    const Prism prism{o.x, o.rep, inv(o.rep)};
    for (const auto& v : r.domain.poly.vertices) {
      EXPECT_EQ(prism_classify(chart_to_cone(v), prism, r.setup), Side::Exterior);
    }
  }
  EXPECT_GT(fresh, 0);
}

TEST(Domain533, ConditionStarCheckedBeforeCarving) {
  StarSetup s = run_533().setup;
  s.p = s.k;
  EXPECT_THROW(build_fundamental_domain(s), Error);
}

TEST(SectionP, DominatesSectionUAndTransportsUnderTheGroup) {
  const RunResult& r = run_533();
  const auto& prisms = r.domain.prisms;
  const double th = r.setup.theta;
  Sampler rnd(9);
  for (int i = 0; i < 100; ++i) {
    const UElement a(rnd.disc(0.3), rnd.uniform(-0.3, 0.3));
    const double sp = section_sP(a, prisms, th);
    EXPECT_GE(sp, section_su(ConePoint::from(a), th) * (1 - 1e-14));
    EXPECT_NEAR(section_sP(mul(r.setup.d1, a), prisms, th), sp, 1e-12);
    EXPECT_NEAR(section_sP(mul(a, inv(r.setup.d2)), prisms, th), sp, 1e-12);
  }
  if (locate(r.domain.poly, Vec3{}, 1e-9) != Location::Outside) {
    EXPECT_NEAR(section_sP(identity(), prisms, th), 1.0, 1e-12);
  }
}

TEST(SampleBoundary, PointsLieOnTheBoundaryOfTheUnion) {
  const RunResult& r = run_533();
  Sampler rnd(10);
  const auto pts = sample_boundary(r.setup, r.domain.prisms, 200, rnd, 0.6);
  ASSERT_EQ(pts.size(), 200u);
  for (const auto& a : pts) {
    bool some_boundary = false;
    for (const auto& prism : r.domain.prisms) {
      const Side side = prism_classify(a, prism, r.setup);
      EXPECT_NE(side, Side::Interior);
      some_boundary = some_boundary || side == Side::Boundary;
    }
    EXPECT_TRUE(some_boundary);
  }
}

TEST(Membership, InteriorPointRoundTripsToIdentityClass) {
  const RunResult& r = run_533();
  const Polyhedron& poly = r.domain.poly;
  // Barycentre of the vertices is interior for this star-shaped domain.
  Vec3 c;
  for (const auto& v : poly.vertices) c += v;
  c = c / static_cast<double>(poly.vertices.size());
  ASSERT_EQ(locate(poly, c, 1e-9), Location::Inside);
  const UElement a = project_theta(chart_to_cone(c));
  const auto hits = membership_translate(a, r.domain, r.setup);
  ASSERT_FALSE(hits.empty());
  for (const auto& h : hits) {
    EXPECT_LT(element_distance(h.product, identity()), 1e-6);
    EXPECT_EQ(h.location, Location::Inside);
  }
}

TEST(Membership, FacetPointLiesInTwoClasses) {
  const RunResult& r = run_533();
  const Polyhedron& poly = r.domain.poly;
  for (const auto& f : poly.facets) {
    const Vec3 p = facet_point(poly, f);
    if (!on_facet_interior(poly, f, p)) continue;
    const auto hits = membership_translate(project_theta(chart_to_cone(p)), r.domain, r.setup);
    std::vector<UElement> classes;
    for (const auto& h : hits) {
      if (std::none_of(classes.begin(), classes.end(),
                       [&](const UElement& c) { return element_distance(c, h.product) < 1e-6; })) {
        classes.push_back(h.product);
      }
    }
    EXPECT_EQ(classes.size(), 2u) << "facet tag (" << f.tag.orbit_index << ", " << f.tag.m << ")";
  }
}

TEST(Tiling533, SmallSampleCoversExactlyOnce) {
  const RunResult& r = run_533();
  const TilingStats t = tiling_test(r, 300, 0.3, 77);
  EXPECT_EQ(t.zero, 0);
  EXPECT_EQ(t.several, 0);
  EXPECT_EQ(t.exactly_one + t.boundary_excluded, t.samples);
}

// ---------------------------------------------------------------------------
// Face pairing on the (5,3,3) domain

TEST(Pairing533, FixedPointFreeInvolution) {
  const RunResult& r = run_533();
  const auto& pairs = r.pairing.pairs;
  ASSERT_EQ(pairs.size(), r.poly.facets.size());
  for (const auto& fp : pairs) {
    EXPECT_NE(fp.partner, fp.facet);
    EXPECT_EQ(pairs[fp.partner].partner, fp.facet);
    EXPECT_LE(fp.max_vertex_error, 1e-6);
  }
  EXPECT_EQ(r.pairing.tag_mismatches, 0);
}

TEST(Pairing533, BottomSlabPairsWithTop) {
  const RunResult& r = run_533();
  int bottom = -1, top = -1;
  for (std::size_t i = 0; i < r.poly.facets.size(); ++i) {
    const auto& tag = r.poly.facets[i].tag;
    if (tag.orbit_index != 0) continue;
    if (tag.m == 1) bottom = static_cast<int>(i);
    if (tag.m == -1) top = static_cast<int>(i);
  }
  ASSERT_GE(bottom, 0);
  ASSERT_GE(top, 0);
  EXPECT_EQ(r.pairing.pairs[bottom].partner, top);
  const auto& fp = r.pairing.pairs[bottom];
  EXPECT_EQ(fp.a * (r.setup.p / r.setup.p_u) + fp.b * (r.setup.p / r.setup.q), 1);
}

TEST(Pairing533, GroupPairReproducesTheFacetElement) {
  const RunResult& r = run_533();
  for (const auto& fp : r.pairing.pairs) {
    const UElement h = mul(fp.gamma1, inv(fp.gamma2));
    const UElement& tagged = r.poly.facets[fp.facet].h;
    bool matched = false;
    for (const auto& st : r.pairing.stabilizer.elements) {
      matched = matched || element_distance(mul(h, inv(st.delta)), tagged) < 1e-9 ||
                element_distance(h, tagged) < 1e-9;
    }
    EXPECT_TRUE(matched) << "facet " << fp.facet;
  }
}

TEST(Pairing533, PairedFacetsAreCongruent) {
  const RunResult& r = run_533();
  EXPECT_LE(congruence_defect(r.poly, r.pairing, true), 1e-6);
  EXPECT_LE(congruence_defect(r.poly, r.pairing, false), 1e-6);
}

TEST(Pairing533, FlagsPreserveIncidence) {
  const RunResult& r = run_533();
  std::set<std::pair<int, int>> edges;
  for (const auto& e : r.poly.edges) edges.insert({std::min(e[0], e[1]), std::max(e[0], e[1])});
  for (const auto& fp : r.pairing.pairs) {
    const auto& f = r.poly.facets[fp.facet];
    ASSERT_EQ(fp.vertex_map.size(), f.vertices.size());
    const auto& g = r.poly.facets[fp.partner];
    const std::set<int> partner_vertices(g.vertices.begin(), g.vertices.end());
    for (std::size_t i = 0; i < f.vertices.size(); ++i) {
      const int a = fp.vertex_map[i], b = fp.vertex_map[(i + 1) % f.vertices.size()];
      EXPECT_TRUE(partner_vertices.count(a));
      EXPECT_TRUE(edges.count({std::min(a, b), std::max(a, b)}));
    }
    for (const auto& fl : fp.flags) {
      EXPECT_EQ(fl[0].facet, fp.facet);
      EXPECT_EQ(fl[1].facet, fp.partner);
    }
  }
}

TEST(Quotient533, EulerCharacteristicZero) {
  const RunResult& r = run_533();
  EXPECT_EQ(r.quotient.chi, 0);
  EXPECT_EQ(r.quotient.cell_term, 1);
  EXPECT_EQ(r.quotient.faces * 2, static_cast<int>(r.poly.facets.size()));
}

TEST(Symmetry533, NontrivialDihedralAndEquivariant) {
  const RunResult& r = run_533();
  EXPECT_GT(r.symmetry.order(), 1);
  EXPECT_TRUE(r.symmetry.has_flip);
  EXPECT_EQ(r.symmetry.name().front(), 'D');
  EXPECT_FALSE(r.symmetry.elements.front().flip);
  EXPECT_EQ(r.symmetry.elements.front().angle, 0.0);
  EXPECT_EQ(r.symmetry_defects, 0);
}

// ---------------------------------------------------------------------------

TEST(Stabilizer, CentralForFiveThreeTwo) {
  const StarSetup s = star_setup(with_level(build_triangle_group(5, 3, 3), 2), 0, 3, 2);
  const Stabilizer st = setwise_stabilizer(s);
  EXPECT_EQ(st.J, 15);
  ASSERT_EQ(st.elements.size(), 2u);
  EXPECT_EQ(st.elements[0].exponent, 0);
  EXPECT_TRUE(st.elements[1].central);
  EXPECT_LT(element_distance(st.elements[1].delta, central(2)), 1e-10);
  EXPECT_EQ(st.rotation_order, 1);
}

TEST(Stabilizer, ThreeThreeTwoRotatesByThirds) {
  const StarSetup s = star_setup(with_level(build_triangle_group(9, 3, 3), 2), 1, 3, 2);
  const Stabilizer st = setwise_stabilizer(s);
  EXPECT_EQ(st.J, 1);
  EXPECT_FALSE(st.elements[1].central);
  EXPECT_EQ(st.rotation_order, 3);
  const double rot = st.elements[1].chart_rotation;
  EXPECT_NEAR(std::min(rot, 2 * kPi - rot), 2 * kPi / 3, 1e-12);
  // Conjugation by delta rotates the z coordinate by the reported angle.
  const ConePoint a{Complex(0.3, 0.1), 0.05, 1.2};
  const ConePoint b = act(st.elements[1].delta, st.elements[1].delta, a);
  EXPECT_NEAR(std::abs(b.z - a.z * std::polar(1.0, rot)), 0.0, 1e-12);
  EXPECT_NEAR(b.alpha, a.alpha, 1e-12);
}

TEST(Stabilizer, NineThreeAtOrderNineVertex) {
  const StarSetup s = star_setup(with_level(build_triangle_group(9, 3, 3), 2), 0, 3, 2);
  const Stabilizer st = setwise_stabilizer(s);
  EXPECT_EQ(st.J, 3);
  EXPECT_EQ(st.rotation_order, 3);
}

TEST(Symmetry, AxialAndPrismExamples) {
  Polyhedron axis;
  axis.vertices = {{0, 0, -0.2}, {0, 0, 0.2}};
  const SymmetryReport ax = detect_symmetry(axis, 12);
  EXPECT_TRUE(ax.axial);
  EXPECT_EQ(ax.name(), "axial");

  Polyhedron hex;
  for (int j = 0; j < 6; ++j) {
    const double t = kPi / 3 * j + 0.1;
    hex.vertices.push_back({0.5 * std::cos(t), 0.5 * std::sin(t), -0.1});
    hex.vertices.push_back({0.5 * std::cos(t), 0.5 * std::sin(t), 0.1});
  }
  const SymmetryReport h = detect_symmetry(hex, 12);
  EXPECT_EQ(h.rotation_order, 6);
  EXPECT_TRUE(h.has_flip);
  EXPECT_EQ(h.order(), 12);
  EXPECT_EQ(h.name(), "D6");

  Polyhedron none;
  none.vertices = {{0.3, 0.0, 0.1}, {0.0, 0.2, -0.05}, {-0.1, -0.25, 0.0}};
  const SymmetryReport n = detect_symmetry(none, 12);
  EXPECT_EQ(n.order(), 1);
  EXPECT_EQ(n.name(), "trivial");
}

}  // namespace
}  // namespace lfd
