#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "internal.hpp"
#include "lfd/error.hpp"
#include "spatial_hash.hpp"

namespace lfd::detail {

namespace {

struct Piece {
  std::vector<Vec3> polygon;
  int plane = -1;
  int sign = 1;
  Vec3 inside;   // centroid of the piece
  Vec3 outside;  // just across the face
  double area = 0.0;
};

struct Loop {
  std::vector<int> ids;
  int plane = -1;
  int sign = 1;
  Vec3 inside, outside;
};

class Welder {
 public:
  explicit Welder(double tol) : tol_(tol), hash_(tol * 4.0) {}

  int add(const Vec3& p) {
    const std::array<double, 3> key{p.x, p.y, p.z};
    const int hit = hash_.find(key, tol_, [&](int i) { return distance(points[i], p); });
    if (hit >= 0) return hit;
    const int id = static_cast<int>(points.size());
    points.push_back(p);
    hash_.insert(key, id);
    return id;
  }

  std::vector<Vec3> points;

 private:
  double tol_;
  SpatialHash hash_;
};

double segment_param(const Vec3& a, const Vec3& b, const Vec3& p, double tol, bool* on) {
  const Vec3 ab = b - a;
  const double len2 = dot(ab, ab);
  const double t = dot(p - a, ab) / len2;
  const double d = distance(a + ab * t, p);
  *on = d <= tol && t * std::sqrt(len2) > tol && (1.0 - t) * std::sqrt(len2) > tol;
  return t;
}

// Insert every point of `candidates` lying strictly inside an edge of the cycle.
std::vector<int> insert_on_edges(const std::vector<int>& cycle, const std::vector<int>& candidates,
                                 const std::vector<Vec3>& pts, double tol) {
  std::vector<int> out;
  const std::size_t n = cycle.size();
  for (std::size_t i = 0; i < n; ++i) {
    const int a = cycle[i], b = cycle[(i + 1) % n];
    out.push_back(a);
    std::vector<std::pair<double, int>> mids;
    for (int c : candidates) {
      if (c == a || c == b) continue;
      bool on = false;
      const double t = segment_param(pts[a], pts[b], pts[c], tol, &on);
      if (on) mids.emplace_back(t, c);
    }
    std::sort(mids.begin(), mids.end());
    for (auto& m : mids) out.push_back(m.second);
  }
  return out;
}

// Splits a closed walk that revisits vertices into simple cycles.
std::vector<std::vector<int>> split_at_repeats(const std::vector<int>& walk) {
  std::vector<std::vector<int>> out;
  std::vector<int> path;
  for (int v : walk) {
    auto it = std::find(path.begin(), path.end(), v);
    if (it != path.end()) {
      out.emplace_back(it, path.end());
      path.erase(it + 1, path.end());
    } else {
      path.push_back(v);
    }
  }
  out.push_back(std::move(path));
  return out;
}

std::vector<int> drop_collinear(std::vector<int> cycle, const std::vector<Vec3>& pts, double tol) {
  bool changed = true;
  while (changed && cycle.size() > 3) {
    changed = false;
    for (std::size_t i = 0; i < cycle.size() && cycle.size() > 3; ++i) {
      const Vec3& a = pts[cycle[(i + cycle.size() - 1) % cycle.size()]];
      const Vec3& b = pts[cycle[i]];
      const Vec3& c = pts[cycle[(i + 1) % cycle.size()]];
      const Vec3 ac = c - a;
      const double len = norm(ac);
      if (len <= tol || norm(cross(b - a, ac)) / len <= tol) {
        if (dot(b - a, ac) > 0 && dot(c - b, ac) > 0) {
          cycle.erase(cycle.begin() + static_cast<long>(i));
          changed = true;
        }
      }
    }
  }
  return cycle;
}

// Sutherland-Hodgman clip of a planar polygon against both sides of `cut`.
std::pair<std::vector<Vec3>, std::vector<Vec3>> split_polygon(const std::vector<Vec3>& poly,
                                                              const Plane& cut, double tol) {
  std::vector<Vec3> lo, hi;
  const std::size_t n = poly.size();
  std::vector<double> d(n);
  bool any_lo = false, any_hi = false;
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = cut.eval(poly[i]);
    if (std::abs(d[i]) <= tol) d[i] = 0.0;
    any_lo |= d[i] < 0.0;
    any_hi |= d[i] > 0.0;
  }
  if (!any_hi) return {poly, {}};
  if (!any_lo) return {{}, poly};
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3& a = poly[i];
    const Vec3& b = poly[(i + 1) % n];
    const double da = d[i], db = d[(i + 1) % n];
    if (da <= 0.0) lo.push_back(a);
    if (da >= 0.0) hi.push_back(a);
    if ((da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0)) {
      const Vec3 x = a + (b - a) * (da / (da - db));
      lo.push_back(x);
      hi.push_back(x);
    }
  }
  return {std::move(lo), std::move(hi)};
}

// Is p inside the convex polygon whose vertices run counter-clockwise about n?
bool inside_convex(const std::vector<Vec3>& poly, const Vec3& n, const Vec3& p, double tol) {
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec3& a = poly[i];
    const Vec3& b = poly[(i + 1) % poly.size()];
    if (dot(cross(b - a, p - a), n) < -tol) return false;
  }
  return true;
}

Vec3 face_normal(const std::vector<Vec3>& poly) {
  const Vec3 a = area_vector(poly);
  return a / norm(a);
}

// Lower bound of g = sqrt(1 + x3^2) - |z| over a convex cell.  |z| is convex, so
// its maximum sits at a vertex.  Cells are halved in x3 while their bound is
// more than `slack` below `best`, the smallest value of g seen at any vertex.
double cone_gap_lower_bound(const ConvexCell& cell, double& best, double slack, int depth) {
  double zmax = 0.0, lo = INFINITY, hi = -INFINITY;
  for (const auto& v : cell.vertices()) {
    zmax = std::max(zmax, std::hypot(v.x, v.y));
    lo = std::min(lo, v.z);
    hi = std::max(hi, v.z);
    best = std::min(best, std::sqrt(1.0 + v.z * v.z) - std::hypot(v.x, v.y));
  }
  const double x3 = (lo <= 0.0 && hi >= 0.0) ? 0.0 : std::min(std::abs(lo), std::abs(hi));
  const double bound = std::sqrt(1.0 + x3 * x3) - zmax;
  if (bound >= best - slack || depth == 0 || hi - lo < 1e-9) return bound;
  const auto [below, above] = split(cell, Plane{{0.0, 0.0, 1.0}, 0.5 * (lo + hi)}, -100, 0.0);
  double out = INFINITY;
  if (below) out = std::min(out, cone_gap_lower_bound(*below, best, slack, depth - 1));
  if (above) out = std::min(out, cone_gap_lower_bound(*above, best, slack, depth - 1));
  return std::isfinite(out) ? out : bound;
}

int surface_components(const Polyhedron& poly) {
  std::vector<int> parent(poly.facets.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (const auto& ef : poly.edge_facets) parent[find(ef[0])] = find(ef[1]);
  int count = 0;
  for (std::size_t i = 0; i < parent.size(); ++i) count += find(static_cast<int>(i)) == static_cast<int>(i);
  return count;
}

}  // namespace

Polyhedron assemble_polyhedron(std::vector<ConvexCell> cells, const ConstraintSet& set,
                               const std::vector<Prism>& prisms, const StarSetup& setup,
                               const CarveOptions& options) {
  const double tol = options.eps_geom;
  const double weld_tol = options.eps_geom;

  // 1. Boundary pieces.  A cell face can border several cells on the far side
  // of its plane, so each face is cut along the edges of the opposite coplanar
  // faces of kept cells and only the uncovered parts are retained.
  struct FaceRef {
    const CellFace* face;
    Vec3 lo, hi;
  };
  std::map<int, std::vector<FaceRef>> by_plane;
  for (const auto& cell : cells) {
    for (const auto& face : cell.faces) {
      if (face.plane < 0) {
        throw Error("domain-carver", "kept region reaches the bounding box");
      }
      FaceRef ref{&face, face.polygon.front(), face.polygon.front()};
      for (const auto& p : face.polygon) {
        ref.lo = {std::min(ref.lo.x, p.x), std::min(ref.lo.y, p.y), std::min(ref.lo.z, p.z)};
        ref.hi = {std::max(ref.hi.x, p.x), std::max(ref.hi.y, p.y), std::max(ref.hi.z, p.z)};
      }
      by_plane[face.plane].push_back(ref);
    }
  }
  auto overlaps = [&](const FaceRef& a, const FaceRef& b) {
    const double t = 1e-9;
    return a.lo.x <= b.hi.x + t && b.lo.x <= a.hi.x + t && a.lo.y <= b.hi.y + t &&
           b.lo.y <= a.hi.y + t && a.lo.z <= b.hi.z + t && b.lo.z <= a.hi.z + t;
  };
  std::vector<Piece> pieces;
  for (const auto& [plane_id, refs] : by_plane) {
    const Vec3 n = set.planes[plane_id].n;
    for (const auto& f : refs) {
      std::vector<const CellFace*> opposite;
      for (const auto& g : refs) {
        if (g.face->outward_sign != f.face->outward_sign && overlaps(f, g)) opposite.push_back(g.face);
      }
      std::vector<std::vector<Vec3>> parts{f.face->polygon};
      for (const CellFace* o : opposite) {
        const auto& op = o->polygon;
        for (std::size_t i = 0; i < op.size(); ++i) {
          const Vec3& a = op[i];
          const Vec3& b = op[(i + 1) % op.size()];
          const Vec3 m = cross(b - a, n);
          const double len = norm(m);
          if (len < 1e-14) continue;
          const Plane cut{m / len, dot(m / len, a)};
          std::vector<std::vector<Vec3>> next;
          for (auto& part : parts) {
            auto [lo, hi] = split_polygon(part, cut, 1e-12);
            if (lo.size() >= 3) next.push_back(std::move(lo));
            if (hi.size() >= 3) next.push_back(std::move(hi));
          }
          parts = std::move(next);
        }
      }
      const Vec3 outward = n * static_cast<double>(f.face->outward_sign);
      for (auto& part : parts) {
        const Vec3 area = area_vector(part);
        const double a = norm(area);
        if (a <= 1e-20) continue;
        Vec3 c;
        for (const auto& p : part) c += p;
        c = c / static_cast<double>(part.size());
        bool covered = false;
        for (const CellFace* o : opposite) {
          if (inside_convex(o->polygon, -outward, c, 1e-12)) {
            covered = true;
            break;
          }
        }
        if (covered) continue;
        const double eta = std::clamp(0.01 * std::sqrt(a), 1e-10, 1e-6);
        pieces.push_back({std::move(part), plane_id, f.face->outward_sign, c - outward * eta,
                          c + outward * eta, a});
      }
    }
  }
  if (pieces.empty()) throw Error("domain-carver", "no boundary facets found");

  // 2. Weld and group by oriented plane.
  Welder weld(weld_tol);
  std::map<std::pair<int, int>, std::vector<std::vector<int>>> groups;
  std::map<std::pair<int, int>, const Piece*> largest;
  for (const auto& pc : pieces) {
    std::vector<int> ids;
    for (const auto& p : pc.polygon) {
      const int id = weld.add(p);
      if (ids.empty() || ids.back() != id) ids.push_back(id);
    }
    while (ids.size() > 1 && ids.front() == ids.back()) ids.pop_back();
    if (ids.size() < 3) continue;
    const auto key = std::make_pair(pc.plane, pc.sign);
    groups[key].push_back(std::move(ids));
    auto& best = largest[key];
    if (!best || pc.area > best->area) best = &pc;
  }
  const auto& pts = weld.points;

  // 3. Merge the pieces of each group into boundary loops.
  std::vector<Loop> loops;
  for (auto& [key, polys] : groups) {
    std::vector<int> members;
    for (const auto& poly : polys) members.insert(members.end(), poly.begin(), poly.end());
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());

    std::map<std::pair<int, int>, int> directed;
    for (const auto& poly : polys) {
      const auto full = insert_on_edges(poly, members, pts, tol);
      for (std::size_t i = 0; i < full.size(); ++i) {
        const int a = full[i], b = full[(i + 1) % full.size()];
        if (a == b) continue;
        auto rev = directed.find({b, a});
        if (rev != directed.end()) {
          if (--rev->second == 0) directed.erase(rev);
        } else {
          ++directed[{a, b}];
        }
      }
    }
    std::multimap<int, int> next;
    for (const auto& [e, count] : directed) {
      for (int i = 0; i < count; ++i) next.emplace(e.first, e.second);
    }
    const Piece* ref = largest[key];
    while (!next.empty()) {
      auto it = next.begin();
      const int start = it->first;
      std::vector<int> cycle{start};
      int cur = it->second;
      next.erase(it);
      std::size_t guard = 0;
      while (cur != start) {
        cycle.push_back(cur);
        auto nit = next.find(cur);
        if (nit == next.end() || ++guard > 100000) {
          throw Error("domain-carver", "open boundary loop while merging facets");
        }
        cur = nit->second;
        next.erase(nit);
      }
      for (auto& simple : split_at_repeats(cycle)) {
        if (simple.size() < 3) continue;
        loops.push_back({std::move(simple), key.first, key.second, ref->inside, ref->outside});
      }
    }
  }

  // 4. Remove collinear vertices, then restore corners lying on edges.
  for (auto& loop : loops) loop.ids = drop_collinear(loop.ids, pts, tol);
  std::vector<int> corners;
  for (const auto& loop : loops) corners.insert(corners.end(), loop.ids.begin(), loop.ids.end());
  std::sort(corners.begin(), corners.end());
  corners.erase(std::unique(corners.begin(), corners.end()), corners.end());
  for (auto& loop : loops) loop.ids = insert_on_edges(loop.ids, corners, pts, tol);

  // 5. Reindex vertices in order of first use.
  Polyhedron poly;
  std::map<int, int> remap;
  for (auto& loop : loops) {
    for (int& id : loop.ids) {
      auto [it, fresh] = remap.emplace(id, static_cast<int>(poly.vertices.size()));
      if (fresh) poly.vertices.push_back(pts[id]);
      id = it->second;
    }
  }

  // 6. Facets with tags.
  for (const auto& loop : loops) {
    Facet f;
    f.vertices = loop.ids;
    const Plane& base = set.planes[loop.plane];
    f.plane = {base.n * loop.sign, base.c * loop.sign};
    std::vector<Vec3> polyv;
    for (int id : loop.ids) polyv.push_back(poly.vertices[id]);
    if (dot(area_vector(polyv), f.plane.n) <= 0.0) {
      throw Error("domain-carver", "facet with a hole or reversed loop");
    }
    const ConePoint in_a = chart_to_cone(loop.inside);
    const ConePoint out_a = chart_to_cone(loop.outside);
    for (int ci = 0; ci < static_cast<int>(set.constraints.size()); ++ci) {
      const Constraint& con = set.constraints[ci];
      if (con.plane_index != loop.plane) continue;
      const ConePoint b = mul(con.h_inv, in_a);
      if (std::abs(b.alpha) >= kPi / 2) continue;
      const bool slab = prisms[con.orbit_index].x.modulus() < 1e-12;
      if (!slab && prism_margin(out_a, prisms[con.orbit_index], setup.theta) <= 0.0) continue;
      f.constraint = ci;
      break;
    }
    if (f.constraint < 0) throw Error("domain-carver", "facet without a matching constraint");
    const Constraint& con = set.constraints[f.constraint];
    f.tag = {con.orbit_index, con.m};
    f.h = con.h;
    poly.facets.push_back(std::move(f));
  }

  // 7. Snap vertices onto the exact intersection of their supporting planes.
  poly.vertex_facets.assign(poly.vertices.size(), {});
  for (int fi = 0; fi < static_cast<int>(poly.facets.size()); ++fi) {
    for (int v : poly.facets[fi].vertices) poly.vertex_facets[v].push_back(fi);
  }
  for (std::size_t v = 0; v < poly.vertices.size(); ++v) {
    std::vector<Plane> planes;
    for (int fi : poly.vertex_facets[v]) planes.push_back(poly.facets[fi].plane);
    if (auto p = intersect_planes(planes); p && distance(*p, poly.vertices[v]) < 1e-6) {
      poly.vertices[v] = *p;
    }
  }

  // 8. Edges and incidence.
  std::map<std::pair<int, int>, std::vector<int>> edge_map;
  for (int fi = 0; fi < static_cast<int>(poly.facets.size()); ++fi) {
    const auto& ids = poly.facets[fi].vertices;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const int a = ids[i], b = ids[(i + 1) % ids.size()];
      edge_map[{std::min(a, b), std::max(a, b)}].push_back(fi);
    }
  }
  for (const auto& [e, fs] : edge_map) {
    if (fs.size() != 2) {
      throw Error("domain-carver", "boundary is not a closed manifold surface");
    }
    poly.edges.push_back({e.first, e.second});
    poly.edge_facets.push_back({fs[0], fs[1]});
  }
  const long euler = static_cast<long>(poly.vertices.size()) - static_cast<long>(poly.edges.size()) +
                     static_cast<long>(poly.facets.size());
  poly.euler = euler;
  poly.components = surface_components(poly);
  if (euler != 2L * poly.components) {
    throw Error("domain-carver", "boundary Euler characteristic " + std::to_string(euler) + " over " +
                                     std::to_string(poly.components) + " component(s) is not that of spheres");
  }

  // 9. Measurements.
  poly.mu = INFINITY;
  for (const auto& v : poly.vertices) {
    if (!in_light_cone(v, 1e-9)) throw Error("domain-carver", "vertex outside the light cone");
    poly.mu = std::min(poly.mu, std::sqrt(1.0 + v.z * v.z) - std::hypot(v.x, v.y));
  }
  poly.max_residual = 0.0;
  poly.volume = 0.0;
  for (const auto& f : poly.facets) {
    std::vector<Vec3> polyv;
    for (int id : f.vertices) {
      polyv.push_back(poly.vertices[id]);
      poly.max_residual = std::max(poly.max_residual, std::abs(f.plane.eval(poly.vertices[id])));
    }
    poly.volume += dot(polyv.front(), area_vector(polyv)) / 3.0;
  }
  if (poly.max_residual > options.eps_geom) {
    throw Error("domain-carver", "facet planarity residual above tolerance");
  }
  poly.mu_bound = INFINITY;
  double gap_seen = poly.mu;
  for (const auto& cell : cells) {
    poly.mu_bound = std::min(poly.mu_bound, cone_gap_lower_bound(cell, gap_seen, 1e-3, 12));
    std::vector<Plane> halfspaces;
    for (const auto& face : cell.faces) {
      const Vec3 n = face_normal(face.polygon);
      halfspaces.push_back({n, dot(n, face.polygon.front())});
    }
    poly.cells.push_back(std::move(halfspaces));
  }
  poly.compact = true;
  return poly;
}

}  // namespace lfd::detail

namespace lfd {

Location locate(const Polyhedron& poly, const Vec3& p, double tol) {
  for (const auto& f : poly.facets) {
    if (std::abs(f.plane.eval(p)) > tol) continue;
    std::vector<Vec3> polyv;
    for (int id : f.vertices) polyv.push_back(poly.vertices[id]);
    if (point_polygon_distance(p, polyv, f.plane.n) <= tol) return Location::Boundary;
  }
  for (const auto& cell : poly.cells) {
    bool inside = true;
    for (const auto& h : cell) {
      if (h.eval(p) > 0.0) {
        inside = false;
        break;
      }
    }
    if (inside) return Location::Inside;
  }
  return Location::Outside;
}

}  // namespace lfd
