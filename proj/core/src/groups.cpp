#include "lfd/groups.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <string>

#include "lfd/error.hpp"
#include "spatial_hash.hpp"

namespace lfd {

long gcd(long a, long b) { return std::gcd(a, b); }
long lcm(long a, long b) { return std::lcm(a, b); }
long mod(long a, long n) {
  const long r = a % n;
  return r < 0 ? r + n : r;
}

namespace {

double side_length(double a, double b, double opposite) {
  return std::acosh((std::cos(a) * std::cos(b) + std::cos(opposite)) / (std::sin(a) * std::sin(b)));
}

std::array<double, 3> as3(Complex z) { return {z.real(), z.imag(), 0.0}; }

bool is_central(const UElement& g, double tol) {
  return std::abs(g.z()) < tol && std::abs(std::sin(g.alpha())) < tol;
}

}  // namespace

bool is_hyperbolic(int p1, int p2, int p3) {
  const long a = p1, b = p2, c = p3;
  return a * b + b * c + c * a < a * b * c;
}

TriangleGroup build_triangle_group(int p1, int p2, int p3) {
  if (p1 < 2 || p2 < 2 || p3 < 2 || !is_hyperbolic(p1, p2, p3)) {
    throw Error("discrete-groups", "signature is not hyperbolic");
  }
  const double a = kPi / p1, b = kPi / p2, c = kPi / p3;
  const double c12 = side_length(a, b, c);
  const double c13 = side_length(a, c, b);

  TriangleGroup tg;
  tg.signature = {p1, p2, p3};
  tg.vertices = {DiscPoint(0.0), DiscPoint(std::tanh(c12 / 2.0)),
                 DiscPoint(std::polar(std::tanh(c13 / 2.0), a))};

  // With positive rotation angles the downstairs product r1 r2 r3 is trivial.
  for (int i = 0; i < 3; ++i) {
    tg.generators[i] = rotation_lift(tg.vertices[i], 2.0 * kPi / tg.signature[i]);
  }
  const UElement prod = mul(mul(tg.generators[0], tg.generators[1]), tg.generators[2]);
  if (!is_central(prod, 1e-8)) {
    throw Error("discrete-groups", "generator product is not central");
  }
  tg.central_exponent = static_cast<int>(std::lround(-prod.alpha() / kPi));

  // Point on the bisector at v1, halfway to the opposite side.
  const double altitude = std::asinh(std::sinh(c12) * std::sin(b));
  tg.interior_point = DiscPoint(std::polar(std::tanh(altitude / 4.0), a / 2.0));
  tg.tile = {tg.vertices[0], tg.vertices[1], tg.vertices[2],
             DiscPoint(std::conj(tg.vertices[2].value()))};
  return tg;
}

std::array<int, 3> level_weights(int p1, int p2, int p3, int k, int m) {
  if (k < 1) throw Error("discrete-groups", "level must be positive");
  std::array<int, 3> beta{0, 0, 0};
  if (k == 1) return beta;
  const std::array<int, 3> ps{p1, p2, p3};
  for (int i = 0; i < 3; ++i) {
    if (gcd(ps[i], k) != 1) {
      throw Error("discrete-groups", "no level-" + std::to_string(k) + " lift: gcd(" +
                                         std::to_string(ps[i]) + ", k) != 1");
    }
    for (int b = 0; b < k; ++b) {
      if (mod(static_cast<long>(ps[i]) * b, k) == 1 % k) {
        beta[i] = b;
        break;
      }
    }
  }
  if (mod(beta[0] + beta[1] + beta[2] - m, k) != 0) {
    throw Error("discrete-groups", "no level-" + std::to_string(k) + " lift: weight sum mismatch");
  }
  return beta;
}

TriangleGroup with_level(TriangleGroup tg, int k) {
  tg.weights = level_weights(tg.signature[0], tg.signature[1], tg.signature[2], k,
                             tg.central_exponent);
  tg.level = k;
  return tg;
}

TriangleGroup recentered(const TriangleGroup& tg, int index) {
  if (index < 0 || index > 2) throw Error("discrete-groups", "vertex index out of range");
  const UElement g = inv(translation_to(tg.vertices[index]));
  const UElement gi = inv(g);
  TriangleGroup out = tg;
  for (int i = 0; i < 3; ++i) {
    out.vertices[i] = disc_action(g, tg.vertices[i]);
    out.generators[i] = mul(mul(g, tg.generators[i]), gi);
  }
  out.vertices[index] = DiscPoint(0.0);
  out.interior_point = disc_action(g, tg.interior_point);
  for (int i = 0; i < 4; ++i) out.tile[i] = disc_action(g, tg.tile[i]);
  return out;
}

LiftedWord append(const LiftedWord& w, const TriangleGroup& tg, int generator, int exponent) {
  LiftedWord out = w;
  out.letters.push_back({generator, exponent});
  out.element = mul(w.element, power(tg.generators[generator], exponent));
  out.weight = static_cast<int>(
      mod(w.weight + static_cast<long>(tg.weights[generator]) * exponent, tg.level));
  return out;
}

UElement canonical_rep(const LiftedWord& w, int k) {
  const int j = static_cast<int>(mod(k - w.weight, k));
  return j == 0 ? w.element : mul(central(j), w.element);
}

std::vector<OrbitPoint> enumerate_orbit(const TriangleGroup& tg, int u_index, double radius,
                                        const OrbitOptions& options) {
  if (!(radius > 0.0 && radius < 1.0)) {
    throw Error("discrete-groups", "orbit radius must lie in (0, 1)");
  }
  const DiscPoint u = tg.vertices[u_index];
  const DiscPoint c = tg.interior_point;
  double reach = 0.0;
  for (const auto& t : tg.tile) reach = std::max(reach, hyperbolic_distance(c, t));
  const double limit = 2.0 * std::atanh(radius) + reach + 1e-9;
  const int k = tg.level;

  struct Node {
    LiftedWord word;
    int depth;
  };
  std::vector<UElement> seen_elements;
  std::vector<int> seen_weights;
  std::vector<Complex> seen_keys;
  detail::SpatialHash seen(1e-7);

  std::vector<OrbitPoint> orbit;
  detail::SpatialHash orbit_hash(std::max(options.dedup_tol, 1e-12) * 4.0);

  std::deque<Node> queue;
  auto visit = [&](LiftedWord w, int depth) {
    const Complex key = disc_action(w.element, c).value();
    if (2.0 * std::atanh(std::abs(key)) > limit) return;
    const int hit = seen.find(as3(key), 1e-8, [&](int i) { return std::abs(seen_keys[i] - key); });
    if (hit >= 0) {
      const UElement delta = mul(inv(seen_elements[hit]), w.element);
      const long j = std::lround(-delta.alpha() / kPi);
      if (std::abs(delta.z()) > 1e-6 || mod(w.weight - seen_weights[hit] - j, k) != 0) {
        throw Error("discrete-groups", "weight collision: lifted words disagree modulo the level");
      }
      return;
    }
    const int id = static_cast<int>(seen_keys.size());
    seen_keys.push_back(key);
    seen_elements.push_back(w.element);
    seen_weights.push_back(w.weight);
    seen.insert(as3(key), id);

    const Complex x = disc_action(w.element, u).value();
    if (std::abs(x) <= radius) {
      const int dup = orbit_hash.find(as3(x), options.dedup_tol,
                                      [&](int i) { return std::abs(orbit[i].x.value() - x); });
      if (dup < 0) {
        orbit_hash.insert(as3(x), static_cast<int>(orbit.size()));
        orbit.push_back({DiscPoint(x), canonical_rep(w, k), depth});
      }
    }
    queue.push_back({std::move(w), depth});
  };

  visit(LiftedWord{}, 0);
  while (!queue.empty()) {
    Node node = std::move(queue.front());
    queue.pop_front();
    if (node.depth >= options.max_word_length) {
      throw Error("discrete-groups", "word-length cap " + std::to_string(options.max_word_length) +
                                         " exceeded before exhausting the ball");
    }
    for (int g = 0; g < 3; ++g) {
      for (int e : {1, -1}) visit(append(node.word, tg, g, e), node.depth + 1);
    }
  }

  std::sort(orbit.begin(), orbit.end(), [](const OrbitPoint& a, const OrbitPoint& b) {
    const long ra = std::lround(a.x.modulus() * 1e8);
    const long rb = std::lround(b.x.modulus() * 1e8);
    if (ra != rb) return ra < rb;
    return std::arg(a.x.value()) < std::arg(b.x.value());
  });
  return orbit;
}

UElement cyclic_factor(int q, int k, const DiscPoint& u) {
  if (q < 1 || gcd(q, k) != 1) throw Error("discrete-groups", "unsupported cyclic factor");
  return rotation_lift(u, 2.0 * kPi * k / q);
}

StarSetup star_setup(const TriangleGroup& tg, int u_index, int q, int k) {
  if (u_index < 0 || u_index > 2) throw Error("discrete-groups", "u_vertex must be 0, 1 or 2");
  if (tg.level != k) throw Error("discrete-groups", "triangle group level differs from k");
  if (q < 2 || gcd(q, k) != 1) throw Error("discrete-groups", "unsupported cyclic factor");
  StarSetup s;
  s.group = recentered(tg, u_index);
  s.u_index = u_index;
  s.u = s.group.vertices[u_index];
  s.p_u = tg.signature[u_index];
  s.q = q;
  s.k = k;
  s.p = static_cast<int>(lcm(s.p_u, q));
  if (s.p <= k) throw Error("discrete-groups", "condition (*) violated: p <= k");
  s.theta = kPi * k / s.p;
  s.d = rotation_lift(s.u, 2.0 * s.theta);
  s.d1 = rotation_lift(s.u, 2.0 * kPi * k / s.p_u);
  s.d2 = cyclic_factor(q, k, s.u);
  if (element_distance(s.d1, power(s.d, s.p / s.p_u)) > 1e-10 ||
      element_distance(s.d2, power(s.d, s.p / q)) > 1e-10) {
    throw Error("discrete-groups", "d1, d2 are not powers of d");
  }
  return s;
}

std::optional<int> group_level(std::span<const UElement> elements, std::size_t max_n) {
  std::optional<int> best;
  const std::size_t n = std::min(max_n, elements.size());
  for (std::size_t i = 0; i < n; ++i) {
    const UElement& g = elements[i];
    if (std::abs(g.z()) >= 1e-9) continue;
    const double j = -g.alpha() / kPi;
    const long jr = std::lround(j);
    if (jr == 0 || std::abs(j - static_cast<double>(jr)) > 1e-9) continue;
    const int a = static_cast<int>(std::labs(jr));
    if (!best || a < *best) best = a;
  }
  return best;
}

std::vector<UElement> positive_word_stream(const TriangleGroup& tg, int max_length) {
  std::vector<UElement> out;
  std::vector<LiftedWord> layer{LiftedWord{}};
  for (int len = 1; len <= max_length; ++len) {
    std::vector<LiftedWord> next;
    next.reserve(layer.size() * 3);
    for (const auto& w : layer) {
      for (int g = 0; g < 3; ++g) {
        next.push_back(append(w, tg, g, 1));
        out.push_back(canonical_rep(next.back(), tg.level));
      }
    }
    layer = std::move(next);
  }
  return out;
}

}  // namespace lfd
