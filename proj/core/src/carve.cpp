#include "lfd/carve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lfd/error.hpp"
#include "internal.hpp"
#include "spatial_hash.hpp"

namespace lfd {

double phi(double alpha, double theta) {
  const double m = std::nearbyint(alpha / theta);
  return 1.0 / std::cos(alpha - m * theta);
}

double section_su(const ConePoint& a, double theta) { return phi(a.alpha, theta) / a.r; }

std::vector<Prism> prisms_from_orbit(const std::vector<OrbitPoint>& orbit) {
  std::vector<Prism> out;
  out.reserve(orbit.size());
  for (const auto& o : orbit) out.push_back({o.x, o.rep, inv(o.rep)});
  return out;
}

double prism_margin(const ConePoint& a, const Prism& prism, double theta) {
  const ConePoint b = mul(prism.rep_inv, a);
  return phi(b.alpha, theta) - b.r;
}

Side prism_classify(const ConePoint& a, const Prism& prism, const StarSetup& setup, double eps) {
  const ConePoint b = mul(prism.rep_inv, a);
  const double gap = phi(b.alpha, setup.theta) - b.r;
  const double tol = eps * b.r;
  if (gap > tol) return Side::Interior;
  if (gap < -tol) return Side::Exterior;
  return Side::Boundary;
}

ConePoint chart_to_cone(const Vec3& y) {
  return {Complex(y.x, y.y), std::atan(y.z), std::sqrt(1.0 + y.z * y.z)};
}

Vec3 cone_to_chart(const ConePoint& a) {
  const double re_w = a.r * std::cos(a.alpha);
  const Complex z = a.z / re_w;
  return {z.real(), z.imag(), std::tan(a.alpha)};
}

bool in_light_cone(const Vec3& y, double margin) {
  return y.x * y.x + y.y * y.y < 1.0 + y.z * y.z - margin;
}

Plane chart_plane(const UElement& h) {
  const Complex z = h.z();
  const Complex w = h.v();
  const Vec3 n{z.real(), z.imag(), -w.imag()};
  if (norm(n) < 1e-12) throw Error("domain-carver", "constraint plane is the chart itself");
  return normalized(n, w.real() - 1.0);
}

bool in_I(const ConePoint& a, const UElement& h_inv) {
  const ConePoint b = mul(h_inv, a);
  return std::abs(b.alpha) < kPi / 2 && b.r * std::cos(b.alpha) >= 1.0;
}

ConstraintSet candidate_constraints(const std::vector<OrbitPoint>& orbit, const StarSetup& setup,
                                    double margin, double eps_geom) {
  ConstraintSet set;
  set.by_prism.resize(orbit.size());
  const double window = kPi / 2 + setup.theta / 2 + margin;
  detail::SpatialHash hash(eps_geom * 4.0);

  auto emit = [&](int index, long m) {
    const UElement h = mul(orbit[index].rep, power(setup.d, m));
    Constraint c{h, inv(h), chart_plane(h), index, static_cast<int>(m), 0};
    // A plane and its negation describe the same arrangement plane.
    auto lookup = [&](const Plane& q) {
      const std::array<double, 3> key{q.n.x, q.n.y, q.n.z};
      return hash.find(key, eps_geom, [&](int i) {
        const Plane& p = set.planes[i];
        return std::max(distance(p.n, q.n), std::abs(p.c - q.c));
      });
    };
    int hit = lookup(c.plane);
    if (hit < 0) hit = lookup(Plane{-c.plane.n, -c.plane.c});
    const std::array<double, 3> key{c.plane.n.x, c.plane.n.y, c.plane.n.z};
    if (hit >= 0) {
      c.plane_index = hit;
    } else {
      c.plane_index = static_cast<int>(set.planes.size());
      hash.insert(key, c.plane_index);
      set.planes.push_back(c.plane);
      set.plane_first.push_back(static_cast<int>(set.constraints.size()));
    }
    set.by_prism[index].push_back(static_cast<int>(set.constraints.size()));
    set.constraints.push_back(c);
  };

  for (int i = 0; i < static_cast<int>(orbit.size()); ++i) {
    if (orbit[i].x.modulus() < 1e-12) {
      // At u itself only the two slab walls meet the chart sheet.
      emit(i, 1);
      emit(i, -1);
      continue;
    }
    // alpha(rep d^m) = alpha(rep) - m theta exactly, since d is a rotation about 0.
    const double a = orbit[i].rep.alpha();
    const long lo = static_cast<long>(std::ceil((a - window) / setup.theta));
    const long hi = static_cast<long>(std::floor((a + window) / setup.theta));
    for (long m = lo; m <= hi; ++m) emit(i, m);
  }
  return set;
}

bool chart_point_kept(const Vec3& y, const std::vector<Prism>& prisms, const StarSetup& setup,
                      double eps) {
  if (std::abs(y.z) > std::tan(setup.theta / 2) + eps) return false;
  if (!in_light_cone(y)) return false;
  const ConePoint a = chart_to_cone(y);
  const double zabs = std::abs(a.z);
  const double cos_half = std::cos(setup.theta / 2);
  for (const auto& prism : prisms) {
    const double t = prism.x.modulus();
    if (t < 1e-12) continue;
    if (a.r - t * zabs > std::sqrt(1.0 - t * t) / cos_half + 1e-9) continue;
    const ConePoint b = mul(prism.rep_inv, a);
    if (phi(b.alpha, setup.theta) - b.r > eps * b.r) return false;
  }
  return true;
}

namespace {

struct PrismData {
  double t;      // |x|
  double f;      // sqrt(1 - |x|^2) / cos(theta / 2)
  std::vector<int> constraints;
};

struct WorkItem {
  ConvexCell cell;
  std::vector<int> active;
  std::vector<int> used_planes;
};

// Interior point of the cell inside the light cone, if one is found.
std::optional<Vec3> reference_point(const ConvexCell& cell, const std::vector<Vec3>& verts) {
  const Vec3 c = cell.centroid();
  if (in_light_cone(c, 1e-12)) return c;
  for (double s : {0.5, 0.1}) {
    for (const auto& v : verts) {
      const Vec3 p = c + (v - c) * (1.0 - s);
      if (in_light_cone(p, 1e-12)) return p;
    }
  }
  return std::nullopt;
}

}  // namespace

namespace detail {

std::vector<ConvexCell> carve_cells(const ConstraintSet& set, const std::vector<Prism>& prisms,
                                    const StarSetup& setup, const CarveOptions& options,
                                    CarveStats* stats, bool* touches_cone) {
  const double half = std::tan(setup.theta / 2);
  const double cos_half = std::cos(setup.theta / 2);
  const double reach = (1.0 / cos_half) * (1.0 + options.box_pad);
  const double zpad = half + options.box_pad;
  const double tol = options.split_tol;

  std::vector<PrismData> data(prisms.size());
  std::vector<int> slab;
  std::vector<int> initial;
  for (std::size_t i = 0; i < prisms.size(); ++i) {
    const double t = prisms[i].x.modulus();
    data[i] = {t, std::sqrt(1.0 - t * t) / cos_half, set.by_prism[i]};
    if (t < 1e-12) {
      for (int c : set.by_prism[i]) slab.push_back(c);
    } else {
      initial.push_back(static_cast<int>(i));
    }
  }
  if (slab.size() != 2) throw Error("domain-carver", "constraint list lacks the two slab planes");

  ConvexCell root = make_box({-reach, -reach, -zpad}, {reach, reach, zpad});
  std::vector<int> used;
  for (int c : slab) {
    const Constraint& con = set.constraints[c];
    // Keep the H side (eval >= 0) of each slab wall.
    auto parts = split(root, con.plane, con.plane_index, tol);
    if (!parts.second) throw Error("domain-carver", "kept region empty");
    root = std::move(*parts.second);
    used.push_back(con.plane_index);
  }

  std::vector<ConvexCell> kept;
  std::vector<WorkItem> stack;
  stack.push_back({std::move(root), initial, used});
  std::size_t visited = 0;
  *touches_cone = false;

  while (!stack.empty()) {
    WorkItem item = std::move(stack.back());
    stack.pop_back();
    if (++visited > options.max_cells) throw Error("domain-carver", "cell budget exhausted");

    const auto verts = item.cell.vertices();
    const auto ref_opt = reference_point(item.cell, verts);
    if (!ref_opt) continue;  // entirely outside the light cone
    const Vec3 ref = *ref_opt;
    const ConePoint ref_a = chart_to_cone(ref);

    double zmax = 0.0, x3lo = INFINITY, x3hi = -INFINITY;
    for (const auto& v : verts) {
      zmax = std::max(zmax, std::hypot(v.x, v.y));
      x3lo = std::min(x3lo, v.z);
      x3hi = std::max(x3hi, v.z);
    }
    const double x3min = (x3lo <= 0.0 && x3hi >= 0.0) ? 0.0 : std::min(std::abs(x3lo), std::abs(x3hi));
    const double wmin = std::sqrt(1.0 + x3min * x3min);

    std::vector<int> next;
    int split_plane = -1;
    bool discard = false;
    for (int pi : item.active) {
      const PrismData& pd = data[pi];
      if (wmin - pd.t * zmax > pd.f + 1e-9) continue;
      int crossing = -1;
      bool excluded = false;
      for (int ci : pd.constraints) {
        const Constraint& con = set.constraints[ci];
        if (std::find(item.used_planes.begin(), item.used_planes.end(), con.plane_index) !=
            item.used_planes.end()) {
          double lo = INFINITY;
          for (const auto& v : verts) lo = std::min(lo, con.plane.eval(v));
          if (lo < 0.0 && std::abs(lo) > tol) {
            // Cell on the I side of an already used plane.
            if (in_I(ref_a, con.h_inv)) {
              excluded = true;
              break;
            }
          }
          continue;
        }
        double lo = INFINITY, hi = -INFINITY;
        for (const auto& v : verts) {
          const double e = con.plane.eval(v);
          lo = std::min(lo, e);
          hi = std::max(hi, e);
        }
        if (hi < -tol) {
          if (in_I(ref_a, con.h_inv)) {
            excluded = true;
            break;
          }
        } else if (lo < -tol && hi > tol && crossing < 0) {
          crossing = con.plane_index;
        }
      }
      if (excluded) continue;
      if (crossing >= 0) {
        next.push_back(pi);
        if (split_plane < 0) split_plane = crossing;
        continue;
      }
      const ConePoint b = mul(prisms[pi].rep_inv, ref_a);
      if (phi(b.alpha, setup.theta) - b.r > options.eps_geom * 1e-3 * b.r) {
        discard = true;
        break;
      }
    }
    if (discard) continue;
    if (next.empty()) {
      for (const auto& v : verts) {
        if (!in_light_cone(v, 1e-9)) *touches_cone = true;
      }
      kept.push_back(std::move(item.cell));
      continue;
    }
    auto parts = split(item.cell, set.planes[split_plane], split_plane, tol);
    auto used_next = item.used_planes;
    used_next.push_back(split_plane);
    if (parts.second) stack.push_back({std::move(*parts.second), next, used_next});
    if (parts.first) stack.push_back({std::move(*parts.first), std::move(next), std::move(used_next)});
  }
  if (stats) {
    stats->cells_visited = visited;
    stats->kept_cells = kept.size();
  }
  return kept;
}

}  // namespace detail

Polyhedron carve_domain(const ConstraintSet& constraints, const std::vector<Prism>& prisms,
                        const StarSetup& setup, const CarveOptions& options, CarveStats* stats) {
  bool touches = false;
  auto cells = detail::carve_cells(constraints, prisms, setup, options, stats, &touches);
  if (cells.empty()) throw Error("domain-carver", "kept region empty");
  if (touches) throw Error("domain-carver", "kept region touches the light cone (non-compact)");
  return detail::assemble_polyhedron(std::move(cells), constraints, prisms, setup, options);
}

}  // namespace lfd
