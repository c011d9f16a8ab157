#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <map>
#include <vector>

#include "lfd/error.hpp"
#include "lfd/groups.hpp"

namespace lfd {
namespace {

void expect_close(const UElement& a, const UElement& b, double tol) {
  EXPECT_NEAR(std::abs(a.z() - b.z()), 0.0, tol);
  EXPECT_NEAR(a.alpha(), b.alpha(), tol);
}

TEST(TriangleGroup, VertexDistanceMatchesLawOfCosines) {
  const TriangleGroup tg = build_triangle_group(5, 3, 3);
  const double c = (std::cos(kPi / 5) * std::cos(kPi / 3) + std::cos(kPi / 3)) / (std::sin(kPi / 5) * std::sin(kPi / 3));
  // Independent double-precision evaluation of the same expression.
  EXPECT_NEAR(c, 1.7769014186686127, 1e-12);
  EXPECT_NEAR(std::cosh(hyperbolic_distance(tg.vertices[0], tg.vertices[1])), c, 1e-12);
  // Disc metric oracle with v1 at the origin.
  EXPECT_NEAR(tg.vertices[0].modulus(), 0.0, 1e-15);
  EXPECT_NEAR(std::cosh(2 * std::atanh(tg.vertices[1].modulus())), c, 1e-12);
}

TEST(TriangleGroup, GeneratorPowersAreCentral) {
  for (const auto& s : std::vector<std::array<int, 3>>{{5, 3, 3}, {7, 3, 3}, {9, 3, 3}, {2, 3, 7}, {4, 4, 5}}) {
    const TriangleGroup tg = build_triangle_group(s[0], s[1], s[2]);
    for (int i = 0; i < 3; ++i) expect_close(power(tg.generators[i], s[i]), central(1), 1e-9);
    const UElement prod = mul(mul(tg.generators[0], tg.generators[1]), tg.generators[2]);
    EXPECT_LT(std::abs(prod.z()), 1e-9);
    EXPECT_NEAR(prod.alpha(), -kPi * tg.central_exponent, 1e-9);
  }
}

TEST(TriangleGroup, RejectsEuclideanAndSpherical) {
  EXPECT_TRUE(is_hyperbolic(2, 3, 7));
  EXPECT_FALSE(is_hyperbolic(2, 3, 6));
  EXPECT_FALSE(is_hyperbolic(3, 3, 3));
  EXPECT_FALSE(is_hyperbolic(2, 4, 4));
  EXPECT_THROW(build_triangle_group(2, 3, 6), Error);
  EXPECT_THROW(build_triangle_group(2, 3, 5), Error);
}

TEST(LevelWeights, Examples) {
  EXPECT_EQ(level_weights(5, 3, 3, 2, 1), (std::array<int, 3>{1, 1, 1}));
  EXPECT_EQ(level_weights(7, 3, 3, 1, 1), (std::array<int, 3>{0, 0, 0}));
  EXPECT_THROW(level_weights(4, 3, 3, 2, 1), Error);
  EXPECT_THROW(level_weights(5, 3, 3, 2, 0), Error);
}

TEST(LevelWeights, WeightsAreUnitsModK) {
  const TriangleGroup tg = with_level(build_triangle_group(5, 3, 3), 2);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(gcd(tg.weights[i], 2), 1);
    EXPECT_EQ(mod(static_cast<long>(tg.signature[i]) * tg.weights[i], 2), 1);
  }
}

TEST(CanonicalRep, Examples) {
  const TriangleGroup tg = with_level(build_triangle_group(5, 3, 3), 2);
  const LiftedWord one = append(LiftedWord{}, tg, 0, 1);
  EXPECT_EQ(one.weight, 1);
  expect_close(canonical_rep(one, 2), mul(central(1), tg.generators[0]), 1e-12);
  const LiftedWord two = append(one, tg, 1, 1);
  EXPECT_EQ(two.weight, 0);
  expect_close(canonical_rep(two, 2), two.element, 0.0);
}

// The minimal positive rotation about u inside the level-k subgroup is d1.
TEST(Isotropy, MinimalRotationIsD1) {
  const TriangleGroup tg = with_level(build_triangle_group(5, 3, 3), 2);
  const StarSetup s = star_setup(tg, 0, 3, 2);
  double best = 1e9;
  UElement best_el;
  for (int sign : {1, -1}) {
    LiftedWord w;
    for (int n = 1; n <= 12; ++n) {
      w = append(w, tg, 0, sign);
      const UElement g = canonical_rep(w, 2);
      ASSERT_LT(std::abs(g.z()), 1e-9);
      const double angle = -2 * g.alpha();  // rotation angle of (0, alpha)
      if (angle > 1e-9 && angle < best) {
        best = angle;
        best_el = g;
      }
    }
  }
  expect_close(best_el, s.d1, 1e-10);
  EXPECT_NEAR(best, 4 * kPi / 5, 1e-12);
}

// ---------------------------------------------------------------------------
// Downstairs orbit oracle: breadth-first search over group elements by right
// multiplication with the rotations about the triangle vertices, using only
// 2x2 Moebius matrices.

struct Moebius {
  Complex a, b, c, d;
  Complex apply(Complex w) const { return (a * w + b) / (c * w + d); }
  Moebius operator*(const Moebius& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
};

Moebius rotation_about(Complex x, double t) {
  const double s = 1.0 / std::sqrt(1.0 - std::norm(x));
  const Moebius T{s, s * x, s * std::conj(x), s};
  const Moebius Ti{s, -s * x, -s * std::conj(x), s};
  const Moebius R{std::polar(1.0, t / 2), 0.0, 0.0, std::polar(1.0, -t / 2)};
  return T * R * Ti;
}

std::array<Complex, 3> oracle_vertices(int p1, int p2, int p3) {
  auto side = [](int a, int b, int c) {
    return std::acosh((std::cos(kPi / a) * std::cos(kPi / b) + std::cos(kPi / c)) / (std::sin(kPi / a) * std::sin(kPi / b)));
  };
  return {Complex(0.0, 0.0), Complex(std::tanh(side(p1, p2, p3) / 2), 0.0),
          std::polar(std::tanh(side(p1, p3, p2) / 2), kPi / p1)};
}

int oracle_orbit_count(int p1, int p2, int p3, double radius) {
  const auto v = oracle_vertices(p1, p2, p3);
  const std::array<int, 3> p{p1, p2, p3};
  std::vector<Moebius> gens;
  for (int i = 0; i < 3; ++i) {
    gens.push_back(rotation_about(v[i], 2 * kPi / p[i]));
    gens.push_back(rotation_about(v[i], -2 * kPi / p[i]));
  }
  auto key = [](Complex w) { return std::make_pair(std::llround(w.real() * 1e8), std::llround(w.imag() * 1e8)); };
  std::map<std::pair<std::pair<long long, long long>, std::pair<long long, long long>>, int> seen;
  std::vector<Complex> points;
  std::deque<Moebius> queue{Moebius{1.0, 0.0, 0.0, 1.0}};
  seen[{key(v[0]), key(v[1])}] = 1;
  while (!queue.empty()) {
    const Moebius g = queue.front();
    queue.pop_front();
    const Complex x = g.apply(v[0]);
    if (std::abs(x) <= radius) points.push_back(x);
    for (const auto& r : gens) {
      const Moebius h = g * r;
      const Complex hx = h.apply(v[0]);
      if (std::abs(hx) > 0.99) continue;
      if (seen.emplace(std::make_pair(key(hx), key(h.apply(v[1]))), 1).second) queue.push_back(h);
    }
  }
  std::vector<Complex> distinct;
  for (const auto& x : points) {
    if (std::none_of(distinct.begin(), distinct.end(), [&](Complex y) { return std::abs(x - y) < 1e-9; })) {
      distinct.push_back(x);
    }
  }
  return static_cast<int>(distinct.size());
}

TEST(Orbit, CountMatchesDownstairsOracle) {
  const TriangleGroup tg = with_level(build_triangle_group(5, 3, 3), 2);
  const auto orbit = enumerate_orbit(tg, 0, 0.8);
  const int expected = oracle_orbit_count(5, 3, 3, 0.8);
  EXPECT_GT(expected, 1);
  EXPECT_EQ(static_cast<int>(orbit.size()), expected);
}

TEST(Orbit, PostconditionsAndOrder) {
  const TriangleGroup tg = with_level(build_triangle_group(7, 3, 3), 2);
  const auto orbit = enumerate_orbit(tg, 0, 0.9);
  ASSERT_FALSE(orbit.empty());
  EXPECT_NEAR(orbit.front().x.modulus(), 0.0, 1e-15);
  expect_close(orbit.front().rep, identity(), 1e-15);
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    const auto& o = orbit[i];
    EXPECT_LE(o.x.modulus(), 0.9);
    EXPECT_NEAR(std::abs(disc_action(o.rep, tg.vertices[0]).value() - o.x.value()), 0.0, 1e-9);
    if (i > 0) {
      const auto& prev = orbit[i - 1];
      const bool ordered = prev.x.modulus() < o.x.modulus() - 1e-12 ||
                           (std::abs(prev.x.modulus() - o.x.modulus()) <= 1e-12 &&
                            std::arg(prev.x.value()) <= std::arg(o.x.value()) + 1e-12);
      EXPECT_TRUE(ordered) << "at index " << i;
    }
  }
}

TEST(Orbit, SmallRadiusGivesOnlyU) {
  const TriangleGroup tg = with_level(build_triangle_group(5, 3, 3), 2);
  const auto orbit = enumerate_orbit(tg, 0, 0.05);
  ASSERT_EQ(orbit.size(), 1u);
  expect_close(orbit[0].rep, identity(), 0.0);
}

TEST(Orbit, WordLengthCapIsAnError) {
  const TriangleGroup tg = with_level(build_triangle_group(5, 3, 3), 2);
  OrbitOptions opts;
  opts.max_word_length = 2;
  EXPECT_THROW(enumerate_orbit(tg, 0, 0.95, opts), Error);
}

TEST(Orbit, RadiusOutsideDiscIsAnError) {
  const TriangleGroup tg = with_level(build_triangle_group(5, 3, 3), 2);
  EXPECT_THROW(enumerate_orbit(tg, 0, 1.0), Error);
}

TEST(CyclicFactor, Examples) {
  const UElement d2 = cyclic_factor(3, 2, DiscPoint{});
  expect_close(d2, rotation_lift(DiscPoint{}, 4 * kPi / 3), 1e-15);
  expect_close(power(d2, 3), central(2), 1e-12);
  const DiscPoint x(Complex(0.3, -0.2));
  expect_close(cyclic_factor(5, 1, x), rotation_lift(x, 2 * kPi / 5), 1e-15);
  EXPECT_THROW(cyclic_factor(3, 3, DiscPoint{}), Error);
}

TEST(StarSetup, FifteenGonAnchor) {
  const TriangleGroup tg = with_level(build_triangle_group(5, 3, 3), 2);
  const StarSetup s = star_setup(tg, 0, 3, 2);
  EXPECT_EQ(s.p, 15);
  EXPECT_EQ(s.p_u, 5);
  EXPECT_NEAR(s.theta, 2 * kPi / 15, 1e-15);
  expect_close(s.d, rotation_lift(s.u, 4 * kPi / 15), 1e-15);
  expect_close(s.d1, power(s.d, 3), 1e-10);
  expect_close(s.d2, power(s.d, 5), 1e-10);
}

TEST(StarSetup, OtherVertexIsRecentred) {
  const TriangleGroup tg = with_level(build_triangle_group(9, 3, 3), 2);
  const StarSetup s = star_setup(tg, 1, 3, 2);
  EXPECT_EQ(s.p, 3);
  EXPECT_NEAR(s.u.modulus(), 0.0, 1e-12);
  EXPECT_NEAR(s.theta, 2 * kPi / 3, 1e-15);
}

TEST(StarSetup, ConditionStarViolation) {
  // Gamma(2,3,11) admits a level-5 lift; with q = 2 at the order-2 vertex p = 2 < 5.
  const TriangleGroup tg = with_level(build_triangle_group(2, 3, 11), 5);
  try {
    star_setup(tg, 0, 2, 5);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("condition (*)"), std::string::npos);
  }
}

TEST(StarSetup, CyclicFactorMustBeCoprime) {
  const TriangleGroup tg = with_level(build_triangle_group(5, 3, 3), 2);
  EXPECT_THROW(star_setup(tg, 0, 4, 2), Error);
}

TEST(GroupLevel, CentreAudits) {
  std::vector<UElement> zc{identity(), central(3), central(1), central(2)};
  EXPECT_EQ(group_level(zc, zc.size()), 1);
  std::vector<UElement> zc2{central(4), central(2), central(-2)};
  EXPECT_EQ(group_level(zc2, zc2.size()), 2);
  std::vector<UElement> none{identity(), UElement(0.3, 0.1)};
  EXPECT_FALSE(group_level(none, none.size()).has_value());
}

TEST(GroupLevel, ConstructedSubgroupHasLevelTwo) {
  const TriangleGroup tg = with_level(build_triangle_group(5, 3, 3), 2);
  const auto stream = positive_word_stream(tg, 6);
  EXPECT_EQ(group_level(stream, stream.size()), 2);
}

TEST(Arithmetic, GcdLcmMod) {
  EXPECT_EQ(gcd(12, 18), 6);
  EXPECT_EQ(lcm(5, 3), 15);
  EXPECT_EQ(lcm(9, 3), 9);
  EXPECT_EQ(mod(-1, 3), 2);
}

}  // namespace
}  // namespace lfd
