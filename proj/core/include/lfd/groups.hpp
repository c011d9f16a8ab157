#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "lfd/cover.hpp"

namespace lfd {

struct TriangleGroup {
  std::array<int, 3> signature{};
  std::array<DiscPoint, 3> vertices{};
  std::array<UElement, 3> generators{};
  int central_exponent = 0;  // r1 r2 r3 = z_c^m
  int level = 1;
  std::array<int, 3> weights{0, 0, 0};

  // A point with trivial stabiliser inside the triangle, and the corners of the
  // fundamental quadrilateral (triangle plus its mirror image across v1 v2).
  DiscPoint interior_point{};
  std::array<DiscPoint, 4> tile{};
};

// 1/p1 + 1/p2 + 1/p3 < 1, decided in integer arithmetic.
bool is_hyperbolic(int p1, int p2, int p3);

TriangleGroup build_triangle_group(int p1, int p2, int p3);

// Solve p_i b_i = 1 (mod k) with b_1 + b_2 + b_3 = m (mod k); throws when no lift exists.
std::array<int, 3> level_weights(int p1, int p2, int p3, int k, int m);

TriangleGroup with_level(TriangleGroup tg, int k);

// Conjugate the whole configuration so that vertex `index` sits at the origin.
TriangleGroup recentered(const TriangleGroup& tg, int index);

struct Letter {
  int generator = 0;
  int exponent = 0;
};

struct LiftedWord {
  std::vector<Letter> letters;
  UElement element;
  int weight = 0;  // in [0, k)
};

LiftedWord append(const LiftedWord& w, const TriangleGroup& tg, int generator, int exponent);
UElement canonical_rep(const LiftedWord& w, int k);

struct OrbitPoint {
  DiscPoint x;
  UElement rep;
  int word_length = 0;
};

struct OrbitOptions {
  double dedup_tol = 1e-9;
  int max_word_length = 40;
};

// Orbit of vertex u_index under the level-k subgroup, restricted to |x| <= radius.
std::vector<OrbitPoint> enumerate_orbit(const TriangleGroup& tg, int u_index, double radius,
                                        const OrbitOptions& options = {});

UElement cyclic_factor(int q, int k, const DiscPoint& u);

struct StarSetup {
  TriangleGroup group;  // recentred so that u = 0
  int u_index = 0;
  DiscPoint u{};
  int p_u = 0;
  int q = 0;
  int k = 1;
  int p = 0;
  double theta = 0.0;
  UElement d, d1, d2;
};

StarSetup star_setup(const TriangleGroup& tg, int u_index, int q, int k);

std::optional<int> group_level(std::span<const UElement> elements, std::size_t max_n);

// Canonical representatives of all positive words of length <= max_length; used
// as the input stream for the level audit.
std::vector<UElement> positive_word_stream(const TriangleGroup& tg, int max_length);

long gcd(long a, long b);
long lcm(long a, long b);
long mod(long a, long n);

}  // namespace lfd
