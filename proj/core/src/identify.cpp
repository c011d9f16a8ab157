#include "lfd/identify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "lfd/error.hpp"

namespace lfd {

namespace {

std::map<std::pair<int, int>, int> edge_index(const Polyhedron& poly) {
  std::map<std::pair<int, int>, int> out;
  for (int e = 0; e < static_cast<int>(poly.edges.size()); ++e) {
    out[{poly.edges[e][0], poly.edges[e][1]}] = e;
  }
  return out;
}

int find_edge(const std::map<std::pair<int, int>, int>& edges, int a, int b) {
  auto it = edges.find({std::min(a, b), std::max(a, b)});
  if (it == edges.end()) throw Error("identify", "flag edge missing from the edge list");
  return it->second;
}

// Facet whose vertex set equals `ids` (as a set), or -1.
int facet_with_vertices(const Polyhedron& poly, std::vector<int> ids) {
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) return -1;
  int found = -1;
  for (int fi = 0; fi < static_cast<int>(poly.facets.size()); ++fi) {
    std::vector<int> own = poly.facets[fi].vertices;
    if (own.size() != ids.size()) continue;
    std::sort(own.begin(), own.end());
    if (own != ids) continue;
    if (found >= 0) throw Error("identify", "ambiguous facet match");
    found = fi;
  }
  return found;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
  int classes() {
    int n = 0;
    for (int i = 0; i < static_cast<int>(parent.size()); ++i) n += find(i) == i;
    return n;
  }
};

double wrap_angle(double a) {
  a = std::fmod(a, 2 * kPi);
  if (a < 0) a += 2 * kPi;
  if (a > 2 * kPi - 1e-12) a = 0.0;
  return a;
}

}  // namespace

Stabilizer setwise_stabilizer(const StarSetup& setup) {
  Stabilizer s;
  s.J = lcm(setup.p / setup.p_u, setup.p / setup.q);
  s.elements.push_back({identity(), 0, true, 0.0});
  // d^J = r_u(2 pi k J / p) is central exactly when k J / p is an integer.
  const long num = setup.k * s.J;
  StabilizerElement gen;
  gen.exponent = s.J;
  gen.delta = power(setup.d, s.J);
  gen.central = num % setup.p == 0;
  gen.chart_rotation = wrap_angle(2 * kPi * static_cast<double>(num % setup.p) / setup.p);
  s.rotation_order = static_cast<int>(setup.p / gcd(num % setup.p == 0 ? setup.p : num % setup.p, setup.p));
  if (gen.central) s.rotation_order = 1;
  s.elements.push_back(gen);
  return s;
}

namespace {

// Face-pairing transforms.  For facet f tagged h = rep d^m the canonical pair is
// gamma1 = rep d1^a, gamma2 = d2^{-b}; since d1^a d2^b = d^m, gamma1 gamma2^{-1} = h.
// Variant j composes both with delta^j for the stabilizer generator delta.
class PairMaps {
 public:
  PairMaps(const Polyhedron& poly, const StarSetup& setup, const Stabilizer& stab) {
    const StabilizerElement& gen = stab.elements.back();
    variants_ = gen.central ? 1 : stab.rotation_order;
    for (int j = 0; j < variants_; ++j) deltas_.push_back(power(gen.delta, j));
    for (const auto& f : poly.facets) {
      if (f.constraint < 0) throw Error("identify", "facet without constraint tag");
      const auto [ea, eb] = pairing_exponents(setup, f.tag.m);
      const UElement rep = mul(f.h, power(setup.d, -f.tag.m));
      canon_.push_back({mul(rep, power(setup.d1, ea)), power(setup.d2, -eb), ea, eb});
    }
  }
  int variants() const { return variants_; }
  long a(int f) const { return canon_[f].a; }
  long b(int f) const { return canon_[f].b; }
  UElement gamma1(int f, int j) const { return mul(canon_[f].g1, deltas_[j]); }
  UElement gamma2(int f, int j) const { return mul(canon_[f].g2, deltas_[j]); }
  Vec3 apply(int f, int j, const Vec3& y) const {
    return cone_to_chart(act(inv(gamma1(f, j)), inv(gamma2(f, j)), chart_to_cone(y)));
  }

 private:
  struct Canon {
    UElement g1, g2;
    long a = 0, b = 0;
  };
  std::vector<Canon> canon_;
  std::vector<UElement> deltas_;
  int variants_ = 1;
};

int nearest_in(const std::vector<Vec3>& pts, const Vec3& p, double tol) {
  int best = -1;
  double best_d = tol;
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
    const double d = distance(pts[i], p);
    if (d <= best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

void rebuild_incidence(Polyhedron& poly) {
  poly.vertex_facets.assign(poly.vertices.size(), {});
  std::map<std::pair<int, int>, std::vector<int>> edge_map;
  for (int fi = 0; fi < static_cast<int>(poly.facets.size()); ++fi) {
    const auto& ids = poly.facets[fi].vertices;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      poly.vertex_facets[ids[i]].push_back(fi);
      const int a = ids[i], b = ids[(i + 1) % ids.size()];
      edge_map[{std::min(a, b), std::max(a, b)}].push_back(fi);
    }
  }
  poly.edges.clear();
  poly.edge_facets.clear();
  for (const auto& [e, fs] : edge_map) {
    if (fs.size() != 2) throw Error("identify", "refined boundary is not a closed manifold surface");
    poly.edges.push_back({e.first, e.second});
    poly.edge_facets.push_back({fs[0], fs[1]});
  }
}

// Inserts p into every facet edge whose interior contains it; returns true on change.
bool insert_point(Polyhedron& poly, const Vec3& p, double tol) {
  int id = -1;
  for (auto& f : poly.facets) {
    auto& ids = f.vertices;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const Vec3& a = poly.vertices[ids[i]];
      const Vec3& b = poly.vertices[ids[(i + 1) % ids.size()]];
      const Vec3 ab = b - a;
      const double len = norm(ab);
      const double t = dot(p - a, ab) / (len * len);
      if (t * len <= tol || (1.0 - t) * len <= tol) continue;
      if (distance(a + ab * t, p) > tol) continue;
      if (id < 0) {
        id = static_cast<int>(poly.vertices.size());
        poly.vertices.push_back(a + ab * t);
      }
      ids.insert(ids.begin() + static_cast<std::ptrdiff_t>(i) + 1, id);
      break;
    }
  }
  return id >= 0;
}

}  // namespace

Polyhedron refine_for_pairing(const Polyhedron& input, const StarSetup& setup, double eps_match,
                              int max_rounds) {
  Polyhedron poly = input;
  const Stabilizer stab = setwise_stabilizer(setup);
  const PairMaps maps(poly, setup, stab);
  for (int round = 0; round < max_rounds; ++round) {
    bool changed = false;
    for (int fi = 0; fi < static_cast<int>(poly.facets.size()); ++fi) {
      for (int j = 0; j < maps.variants(); ++j) {
        const std::vector<int> ids = poly.facets[fi].vertices;
        for (int v : ids) {
          const Vec3 img = maps.apply(fi, j, poly.vertices[v]);
          if (nearest_in(poly.vertices, img, eps_match) >= 0) continue;
          changed |= insert_point(poly, img, eps_match);
        }
      }
    }
    if (!changed) {
      rebuild_incidence(poly);
      return poly;
    }
  }
  throw Error("identify", "edge refinement for the face pairing did not close");
}

FacePairing pair_faces(const Polyhedron& poly, const StarSetup& setup, double eps_match) {
  FacePairing out;
  out.stabilizer = setwise_stabilizer(setup);
  const PairMaps maps(poly, setup, out.stabilizer);
  const int nf = static_cast<int>(poly.facets.size());
  out.pairs.assign(nf, {});
  std::vector<bool> done(nf, false);
  const auto edges = edge_index(poly);

  auto image = [&](int fi, int j, double* worst) -> std::vector<int> {
    std::vector<int> ids;
    for (int v : poly.facets[fi].vertices) {
      const Vec3 img = maps.apply(fi, j, poly.vertices[v]);
      const int id = nearest_in(poly.vertices, img, eps_match);
      if (id < 0) return {};
      *worst = std::max(*worst, distance(img, poly.vertices[id]));
      ids.push_back(id);
    }
    return ids;
  };
  auto build_flags = [&](FacePair& fp) {
    const auto& src = poly.facets[fp.facet].vertices;
    const std::size_t n = src.size();
    for (std::size_t i = 0; i < n; ++i) {
      const int a = src[i], b = src[(i + 1) % n];
      const int ia = fp.vertex_map[i], ib = fp.vertex_map[(i + 1) % n];
      fp.flags.push_back({Flag{fp.facet, find_edge(edges, a, b), a},
                          Flag{fp.partner, find_edge(edges, ia, ib), ia}});
    }
  };

  for (int fi = 0; fi < nf; ++fi) {
    if (done[fi]) continue;
    int partner = -1, shift = 0;
    std::vector<int> image_ids;
    double worst = 0.0;
    bool any_image = false;
    // Variants differ by the setwise stabilizer; the first one reaching an unpaired
    // facet other than fi is taken.
    for (int j = 0; j < maps.variants() && partner < 0; ++j) {
      double err = 0.0;
      auto ids = image(fi, j, &err);
      if (ids.empty()) continue;
      const int g = facet_with_vertices(poly, ids);
      if (g < 0) continue;
      any_image = true;
      if (g == fi || done[g]) continue;
      partner = g;
      shift = j;
      image_ids = std::move(ids);
      worst = err;
    }
    if (partner < 0) {
      if (!any_image) throw Error("identify", "no matching facet for facet " + std::to_string(fi));
      throw Error("identify", "pairing is not a fixed-point-free involution at facet " + std::to_string(fi));
    }
    const UElement g1 = maps.gamma1(fi, shift), g2 = maps.gamma2(fi, shift);
    const UElement g1i = inv(g1), g2i = inv(g2);

    FacePair& fwd = out.pairs[fi];
    fwd.facet = fi;
    fwd.partner = partner;
    fwd.gamma1 = g1;
    fwd.gamma2 = g2;
    fwd.a = maps.a(fi);
    fwd.b = maps.b(fi);
    fwd.stabilizer_shift = shift;
    fwd.vertex_map = image_ids;
    fwd.max_vertex_error = worst;

    // The partner is carried back by the inverse pair.
    FacePair& back = out.pairs[partner];
    back.facet = partner;
    back.partner = fi;
    back.gamma1 = g1i;
    back.gamma2 = g2i;
    back.max_vertex_error = worst;
    const auto& src = poly.facets[fi].vertices;
    const auto& pv = poly.facets[partner].vertices;
    back.vertex_map.assign(pv.size(), -1);
    for (std::size_t i = 0; i < src.size(); ++i) {
      const auto slot = std::find(pv.begin(), pv.end(), image_ids[i]) - pv.begin();
      back.vertex_map[slot] = src[i];
    }

    // The partner lies on E_{gamma1^{-1} gamma2}; compare with its own tag.
    fwd.tag_matches = element_distance(mul(g1i, g2), poly.facets[partner].h) < 1e-6;
    back.tag_matches = fwd.tag_matches;
    if (!fwd.tag_matches) ++out.tag_mismatches;

    build_flags(fwd);
    build_flags(back);
    done[fi] = done[partner] = true;
  }
  return out;
}

namespace {

ChartSymmetry stabilizer_rotation(const Stabilizer& stab) {
  return {false, stab.elements.back().chart_rotation};
}

// Points where the x3-axis meets the boundary surface.
int axis_crossings(const Polyhedron& poly, double tol) {
  std::vector<double> hits;
  for (const auto& f : poly.facets) {
    if (std::abs(f.plane.n.z) < 1e-12) continue;
    const Vec3 p{0.0, 0.0, f.plane.c / f.plane.n.z};
    std::vector<Vec3> pv;
    for (int v : f.vertices) pv.push_back(poly.vertices[v]);
    if (point_polygon_distance(p, pv, f.plane.n) > tol) continue;
    if (std::none_of(hits.begin(), hits.end(), [&](double z) { return std::abs(z - p.z) < tol; })) {
      hits.push_back(p.z);
    }
  }
  return static_cast<int>(hits.size());
}

}  // namespace

QuotientComplex quotient_complex(const FacePairing& pairing, const Polyhedron& poly) {
  const int nf = static_cast<int>(poly.facets.size());
  if (static_cast<int>(pairing.pairs.size()) != nf) throw Error("identify", "incomplete pairing");
  UnionFind verts(poly.vertices.size());
  UnionFind edges(poly.edges.size());
  UnionFind faces(poly.facets.size());
  for (const auto& fp : pairing.pairs) {
    if (fp.vertex_map.size() != poly.facets[fp.facet].vertices.size()) {
      throw Error("identify", "incomplete pairing");
    }
    const auto& src = poly.facets[fp.facet].vertices;
    for (std::size_t i = 0; i < src.size(); ++i) verts.unite(src[i], fp.vertex_map[i]);
    for (const auto& fl : fp.flags) edges.unite(fl[0].edge, fl[1].edge);
    faces.unite(fp.facet, fp.partner);
  }

  QuotientComplex q;
  const Stabilizer& stab = pairing.stabilizer;
  const int n = stab.elements.back().central ? 1 : stab.rotation_order;
  if (n > 1) {
    // (delta, delta) acts on the chart as a rotation about the x3-axis and is
    // part of the identification.
    const ChartSymmetry rot = stabilizer_rotation(stab);
    const auto eidx = edge_index(poly);
    for (int v = 0; v < static_cast<int>(poly.vertices.size()); ++v) {
      const int w = nearest_in(poly.vertices, rot.apply(poly.vertices[v]), 1e-6);
      if (w < 0) throw Error("identify", "stabilizer rotation does not preserve the vertex set");
      verts.unite(v, w);
    }
    for (int e = 0; e < static_cast<int>(poly.edges.size()); ++e) {
      const int a = nearest_in(poly.vertices, rot.apply(poly.vertices[poly.edges[e][0]]), 1e-6);
      const int b = nearest_in(poly.vertices, rot.apply(poly.vertices[poly.edges[e][1]]), 1e-6);
      edges.unite(e, find_edge(eidx, a, b));
    }
    const auto perm = facet_permutation(poly, rot);
    for (int f = 0; f < nf; ++f) {
      if (perm[f] < 0) throw Error("identify", "stabilizer rotation does not preserve the facets");
      faces.unite(f, perm[f]);
    }
    q.axis_points = axis_crossings(poly, 1e-9);
  }
  q.vertices = verts.classes();
  q.edges = edges.classes();
  q.faces = faces.classes();
  // The open solid contributes chi(X/S) - chi(dX/S).  With chi(X) = chi(dX)/2, the axis
  // meeting dX in b points and X in b/2 segments, Riemann-Hurwitz for the order-n
  // rotation gives (chi(dX)/2 + (n-1) b/2) / n.
  const long numer = poly.euler / 2 + static_cast<long>(n - 1) * (q.axis_points / 2);
  if (numer % n != 0) throw Error("identify", "stabilizer quotient has non-integral Euler characteristic");
  q.cell_term = numer / n;
  q.chi = static_cast<long>(q.vertices) - q.edges + q.faces - q.cell_term;
  return q;
}

Vec3 ChartSymmetry::apply(const Vec3& v) const {
  const Complex z(v.x, v.y);
  const Complex img = (flip ? std::conj(z) : z) * std::polar(1.0, angle);
  return {img.real(), img.imag(), flip ? -v.z : v.z};
}

std::string SymmetryReport::name() const {
  if (axial) return "axial";
  const std::string n = std::to_string(rotation_order);
  if (has_flip) return rotation_order == 1 ? "C2 (flip)" : "D" + n;
  return rotation_order == 1 ? "trivial" : "C" + n;
}

namespace {

bool preserves_vertices(const Polyhedron& poly, const ChartSymmetry& s, double tol) {
  for (const auto& v : poly.vertices) {
    if (nearest_in(poly.vertices, s.apply(v), tol) < 0) return false;
  }
  return true;
}

}  // namespace

SymmetryReport detect_symmetry(const Polyhedron& poly, int max_rotation_order, double tol) {
  SymmetryReport rep;
  rep.elements.push_back({});
  rep.axial = std::all_of(poly.vertices.begin(), poly.vertices.end(),
                          [&](const Vec3& v) { return std::hypot(v.x, v.y) < tol; });
  if (rep.axial) return rep;

  for (int n = max_rotation_order; n >= 2; --n) {
    if (preserves_vertices(poly, {false, 2 * kPi / n}, tol)) {
      rep.rotation_order = n;
      break;
    }
  }
  const int r = rep.rotation_order;
  for (int j = 1; j < r; ++j) rep.elements.push_back({false, 2 * kPi * j / r});

  // Flip angles come from matching a reference vertex off the axis.
  const Vec3* ref = nullptr;
  for (const auto& v : poly.vertices) {
    if (std::hypot(v.x, v.y) > 1e-3 && (!ref || std::hypot(v.x, v.y) > std::hypot(ref->x, ref->y))) ref = &v;
  }
  if (ref) {
    const double r0 = std::hypot(ref->x, ref->y);
    const double a0 = std::atan2(ref->y, ref->x);
    std::vector<double> found;
    for (const auto& w : poly.vertices) {
      if (std::abs(w.z + ref->z) > tol || std::abs(std::hypot(w.x, w.y) - r0) > tol) continue;
      const double phi = wrap_angle(std::atan2(w.y, w.x) + a0);
      const ChartSymmetry cand{true, phi};
      if (!preserves_vertices(poly, cand, tol)) continue;
      if (std::any_of(found.begin(), found.end(), [&](double x) {
            return std::abs(wrap_angle(x - phi + 1e-9) - 1e-9) < 1e-6;
          })) {
        continue;
      }
      found.push_back(phi);
    }
    if (!found.empty()) {
      rep.has_flip = true;
      std::sort(found.begin(), found.end());
      // With a flip present the flips are the coset of the rotation group.
      for (int j = 0; j < r; ++j) rep.elements.push_back({true, wrap_angle(found.front() + 2 * kPi * j / r)});
    }
  }
  return rep;
}

std::vector<int> facet_permutation(const Polyhedron& poly, const ChartSymmetry& s, double tol) {
  std::vector<int> out;
  for (const auto& f : poly.facets) {
    std::vector<int> ids;
    for (int v : f.vertices) {
      const int id = nearest_in(poly.vertices, s.apply(poly.vertices[v]), tol);
      if (id < 0) {
        ids.clear();
        break;
      }
      ids.push_back(id);
    }
    out.push_back(ids.empty() ? -1 : facet_with_vertices(poly, ids));
  }
  return out;
}

int equivariance_defects(const Polyhedron& poly, const FacePairing& pairing,
                         const SymmetryReport& symmetry, double tol) {
  // With a nontrivial stabilizer the partner is defined up to its rotation, so
  // partners are compared as rotation orbits.
  const Stabilizer& stab = pairing.stabilizer;
  const int n = stab.elements.back().central ? 1 : stab.rotation_order;
  std::vector<int> rot;
  if (n > 1) rot = facet_permutation(poly, stabilizer_rotation(stab), tol);
  auto same_orbit = [&](int a, int b) {
    for (int j = 0; j < n; ++j) {
      if (a == b) return true;
      if (a < 0) return false;
      a = rot[a];
    }
    return false;
  };
  int defects = 0;
  for (const auto& s : symmetry.elements) {
    const auto perm = facet_permutation(poly, s, tol);
    for (const auto& fp : pairing.pairs) {
      const int a = perm[fp.facet], b = perm[fp.partner];
      if (a < 0 || b < 0 || !same_orbit(pairing.pairs[a].partner, b)) ++defects;
    }
  }
  return defects;
}

std::vector<double> distance_profile(const Polyhedron& poly, int facet, bool lorentz) {
  const auto& ids = poly.facets[facet].vertices;
  std::vector<double> out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      const Vec3 d = poly.vertices[ids[i]] - poly.vertices[ids[j]];
      out.push_back(lorentz ? d.x * d.x + d.y * d.y - d.z * d.z : norm(d));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

double congruence_defect(const Polyhedron& poly, const FacePairing& pairing, bool lorentz) {
  double worst = 0.0;
  for (const auto& fp : pairing.pairs) {
    const auto a = distance_profile(poly, fp.facet, lorentz);
    const auto b = distance_profile(poly, fp.partner, lorentz);
    if (a.size() != b.size()) return INFINITY;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

}  // namespace lfd
