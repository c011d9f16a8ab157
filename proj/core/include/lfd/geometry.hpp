#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

namespace lfd {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  bool operator==(const Vec3&) const = default;
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline double distance(const Vec3& a, const Vec3& b) { return norm(a - b); }

// Plane n.y = c with |n| = 1.
struct Plane {
  Vec3 n;
  double c = 0.0;

  double eval(const Vec3& p) const { return dot(n, p) - c; }
};

Plane normalized(const Vec3& n, double c);

// Face of a convex cell: polygon ordered counter-clockwise when viewed from
// outside.  `plane` identifies the supporting plane; `outward_sign` is +1 when
// the outward normal equals the plane normal.
struct CellFace {
  std::vector<Vec3> polygon;
  int plane = -1;
  int outward_sign = 1;
};

struct ConvexCell {
  std::vector<CellFace> faces;

  std::vector<Vec3> vertices(double tol = 0.0) const;
  Vec3 centroid() const;  // vertex average, an interior point
  double volume() const;
};

// Axis-aligned box; box faces receive plane ids -1 .. -6.
ConvexCell make_box(const Vec3& lo, const Vec3& hi);

// Split by `plane` (tolerance `tol` snaps near vertices onto the plane).
// Returns {part with eval <= 0, part with eval >= 0}; either may be empty.
std::pair<std::optional<ConvexCell>, std::optional<ConvexCell>> split(const ConvexCell& cell,
                                                                      const Plane& plane,
                                                                      int plane_id, double tol);

// Signed area vector of a planar polygon (half the sum of edge cross products).
Vec3 area_vector(const std::vector<Vec3>& poly);

// Distance from p to the planar polygon `poly` with unit normal `n`.
double point_polygon_distance(const Vec3& p, const std::vector<Vec3>& poly, const Vec3& n);

// Least-squares point closest to a set of planes (needs three independent normals).
std::optional<Vec3> intersect_planes(const std::vector<Plane>& planes);

}  // namespace lfd
