#include "lfd/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace lfd {

namespace {

bool lex_less(const Vec3& a, const Vec3& b) { return std::tie(a.x, a.y, a.z) < std::tie(b.x, b.y, b.z); }

// Both faces sharing an edge must produce bit-identical cut points.
Vec3 cut_point(const Vec3& a, double da, const Vec3& b, double db) {
  if (lex_less(b, a)) return cut_point(b, db, a, da);
  const double t = da / (da - db);
  return a + (b - a) * t;
}

std::pair<Vec3, Vec3> basis_for(const Vec3& n) {
  const Vec3 helper = std::abs(n.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  Vec3 u = cross(n, helper);
  u = u / norm(u);
  return {u, cross(n, u)};
}

void drop_repeats(std::vector<Vec3>& poly, double tol) {
  std::vector<Vec3> out;
  for (const auto& p : poly) {
    if (out.empty() || distance(out.back(), p) > tol) out.push_back(p);
  }
  while (out.size() > 1 && distance(out.front(), out.back()) <= tol) out.pop_back();
  poly = std::move(out);
}

std::vector<Vec3> order_cap(std::vector<Vec3> pts, const Vec3& outward, double tol) {
  std::vector<Vec3> uniq;
  for (const auto& p : pts) {
    bool dup = false;
    for (const auto& q : uniq) {
      if (distance(p, q) <= tol) {
        dup = true;
        break;
      }
    }
    if (!dup) uniq.push_back(p);
  }
  if (uniq.size() < 3) return {};
  Vec3 c;
  for (const auto& p : uniq) c += p;
  c = c / static_cast<double>(uniq.size());
  const auto [u, v] = basis_for(outward);
  std::vector<std::pair<double, Vec3>> keyed;
  keyed.reserve(uniq.size());
  for (const auto& p : uniq) keyed.emplace_back(std::atan2(dot(p - c, v), dot(p - c, u)), p);
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Vec3> out;
  out.reserve(keyed.size());
  for (auto& kp : keyed) out.push_back(kp.second);
  return out;
}

bool usable(const ConvexCell& cell) {
  return cell.faces.size() >= 4 && cell.volume() > 1e-18;
}

}  // namespace

Plane normalized(const Vec3& n, double c) {
  const double s = norm(n);
  return {n / s, c / s};
}

std::vector<Vec3> ConvexCell::vertices(double tol) const {
  std::vector<Vec3> out;
  for (const auto& f : faces) {
    for (const auto& p : f.polygon) {
      bool dup = false;
      for (const auto& q : out) {
        if (distance(p, q) <= tol) {
          dup = true;
          break;
        }
      }
      if (!dup) out.push_back(p);
    }
  }
  return out;
}

Vec3 ConvexCell::centroid() const {
  const auto vs = vertices();
  Vec3 c;
  for (const auto& p : vs) c += p;
  return c / static_cast<double>(vs.size());
}

double ConvexCell::volume() const {
  double v = 0.0;
  for (const auto& f : faces) {
    if (f.polygon.empty()) continue;
    v += dot(f.polygon.front(), area_vector(f.polygon));
  }
  return v / 3.0;
}

ConvexCell make_box(const Vec3& lo, const Vec3& hi) {
  const Vec3 p[8] = {{lo.x, lo.y, lo.z}, {hi.x, lo.y, lo.z}, {hi.x, hi.y, lo.z}, {lo.x, hi.y, lo.z},
                     {lo.x, lo.y, hi.z}, {hi.x, lo.y, hi.z}, {hi.x, hi.y, hi.z}, {lo.x, hi.y, hi.z}};
  ConvexCell cell;
  cell.faces = {
      {{p[0], p[3], p[2], p[1]}, -1, 1},  // z = lo
      {{p[4], p[5], p[6], p[7]}, -2, 1},  // z = hi
      {{p[0], p[1], p[5], p[4]}, -3, 1},  // y = lo
      {{p[2], p[3], p[7], p[6]}, -4, 1},  // y = hi
      {{p[0], p[4], p[7], p[3]}, -5, 1},  // x = lo
      {{p[1], p[2], p[6], p[5]}, -6, 1},  // x = hi
  };
  return cell;
}

std::pair<std::optional<ConvexCell>, std::optional<ConvexCell>> split(const ConvexCell& cell,
                                                                      const Plane& plane,
                                                                      int plane_id, double tol) {
  bool any_neg = false, any_pos = false;
  for (const auto& f : cell.faces) {
    for (const auto& p : f.polygon) {
      const double d = plane.eval(p);
      if (d < -tol) any_neg = true;
      if (d > tol) any_pos = true;
    }
  }
  if (!any_pos) return {cell, std::nullopt};
  if (!any_neg) return {std::nullopt, cell};

  ConvexCell neg, pos;
  std::vector<Vec3> cap;
  for (const auto& f : cell.faces) {
    const std::size_t n = f.polygon.size();
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) {
      d[i] = plane.eval(f.polygon[i]);
      if (std::abs(d[i]) <= tol) d[i] = 0.0;
    }
    CellFace fn{{}, f.plane, f.outward_sign}, fp{{}, f.plane, f.outward_sign};
    for (std::size_t i = 0; i < n; ++i) {
      const Vec3& a = f.polygon[i];
      const Vec3& b = f.polygon[(i + 1) % n];
      const double da = d[i], db = d[(i + 1) % n];
      if (da <= 0.0) fn.polygon.push_back(a);
      if (da >= 0.0) fp.polygon.push_back(a);
      if (da == 0.0) cap.push_back(a);
      if ((da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0)) {
        const Vec3 x = cut_point(a, da, b, db);
        fn.polygon.push_back(x);
        fp.polygon.push_back(x);
        cap.push_back(x);
      }
    }
    drop_repeats(fn.polygon, 0.0);
    drop_repeats(fp.polygon, 0.0);
    if (fn.polygon.size() >= 3 && norm(area_vector(fn.polygon)) > tol * tol) neg.faces.push_back(std::move(fn));
    if (fp.polygon.size() >= 3 && norm(area_vector(fp.polygon)) > tol * tol) pos.faces.push_back(std::move(fp));
  }
  auto neg_cap = order_cap(cap, plane.n, tol);
  if (!neg_cap.empty()) {
    std::vector<Vec3> pos_cap(neg_cap.rbegin(), neg_cap.rend());
    neg.faces.push_back({std::move(neg_cap), plane_id, 1});
    pos.faces.push_back({std::move(pos_cap), plane_id, -1});
  }
  std::optional<ConvexCell> a, b;
  if (usable(neg)) a = std::move(neg);
  if (usable(pos)) b = std::move(pos);
  return {std::move(a), std::move(b)};
}

Vec3 area_vector(const std::vector<Vec3>& poly) {
  Vec3 s;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) s += cross(poly[i], poly[(i + 1) % n]);
  return s * 0.5;
}

double point_polygon_distance(const Vec3& p, const std::vector<Vec3>& poly, const Vec3& n) {
  const double h = dot(p - poly.front(), n);
  const Vec3 q = p - n * h;
  const auto [u, v] = basis_for(n);
  bool inside = false;
  const std::size_t m = poly.size();
  const double qx = dot(q, u), qy = dot(q, v);
  for (std::size_t i = 0, j = m - 1; i < m; j = i++) {
    const double xi = dot(poly[i], u), yi = dot(poly[i], v);
    const double xj = dot(poly[j], u), yj = dot(poly[j], v);
    if ((yi > qy) != (yj > qy) && qx < (xj - xi) * (qy - yi) / (yj - yi) + xi) inside = !inside;
  }
  if (inside) return std::abs(h);
  double best = INFINITY;
  for (std::size_t i = 0; i < m; ++i) {
    const Vec3& a = poly[i];
    const Vec3& b = poly[(i + 1) % m];
    const Vec3 ab = b - a;
    const double t = std::clamp(dot(p - a, ab) / dot(ab, ab), 0.0, 1.0);
    best = std::min(best, distance(p, a + ab * t));
  }
  return best;
}

std::optional<Vec3> intersect_planes(const std::vector<Plane>& planes) {
  double a[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
  double b[3] = {0, 0, 0};
  for (const auto& pl : planes) {
    const double n[3] = {pl.n.x, pl.n.y, pl.n.z};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) a[i][j] += n[i] * n[j];
      b[i] += n[i] * pl.c;
    }
  }
  const double det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                     a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                     a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  if (std::abs(det) < 1e-12) return std::nullopt;
  auto col_det = [&](int col) {
    double m[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m[i][j] = j == col ? b[i] : a[i][j];
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  return Vec3{col_det(0) / det, col_det(1) / det, col_det(2) / det};
}

}  // namespace lfd
