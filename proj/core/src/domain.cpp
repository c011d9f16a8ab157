#include <algorithm>
#include <cmath>
#include <string>

#include "internal.hpp"
#include "lfd/error.hpp"

namespace lfd {

Certificate relevance_certificate(const Polyhedron& poly, double radius, const StarSetup& setup) {
  const double mu = poly.mu_bound;
  if (!(mu > 0.0)) throw Error("domain-carver", "degenerate polyhedron: mu <= 0");
  const double c = std::cos(setup.theta / 2);
  const double r_star = std::sqrt(std::max(0.0, 1.0 - mu * mu * c * c));
  return {radius >= r_star, radius, r_star, mu};
}

double radius_schedule(const BuildConfig& config, int iteration) {
  const double rho = 2.0 * std::atanh(config.r0) * std::pow(config.growth, iteration);
  return std::tanh(rho / 2.0);
}

namespace {

struct Attempt {
  std::vector<OrbitPoint> orbit;
  std::vector<Prism> prisms;
  ConstraintSet constraints;
  std::optional<Polyhedron> poly;
  std::string failure;
};

Attempt attempt(const StarSetup& setup, const BuildConfig& config, double radius) {
  Attempt a;
  a.orbit = enumerate_orbit(setup.group, setup.u_index, radius, config.orbit);
  a.prisms = prisms_from_orbit(a.orbit);
  a.constraints = candidate_constraints(a.orbit, setup, config.margin, config.carve.eps_geom);
  try {
    a.poly = carve_domain(a.constraints, a.prisms, setup, config.carve);
  } catch (const Error& e) {
    if (e.stage() != "domain-carver") throw;
    a.failure = e.what();
  }
  return a;
}

double vertex_shift(const Polyhedron& a, const Polyhedron& b) {
  if (a.vertices.size() != b.vertices.size()) return INFINITY;
  double worst = 0.0;
  for (const auto& v : a.vertices) {
    double best = INFINITY;
    for (const auto& w : b.vertices) best = std::min(best, distance(v, w));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

Domain build_fundamental_domain(const StarSetup& setup, const BuildConfig& config) {
  if (setup.p <= setup.k) throw Error("domain-carver", "condition (*) violated: p <= k");
  std::string last_failure = "no iterations";
  for (int it = 0; it < config.cap; ++it) {
    const double radius = radius_schedule(config, it);
    Attempt a = attempt(setup, config, radius);
    if (!a.poly) {
      last_failure = a.failure;
      continue;
    }
    const Certificate cert = relevance_certificate(*a.poly, radius, setup);
    if (!cert.pass) {
      last_failure = "certificate failed at R = " + std::to_string(radius) +
                     " (needs " + std::to_string(cert.r_star) + ")";
      continue;
    }
    Domain d{std::move(*a.poly), std::move(a.orbit), std::move(a.prisms), std::move(a.constraints),
             cert, it + 1, 0.0};
    if (config.verify_stability) {
      Attempt next = attempt(setup, config, radius_schedule(config, it + 1));
      if (!next.poly) throw Error("domain-carver", "stability re-run failed: " + next.failure);
      d.stability_shift = vertex_shift(d.poly, *next.poly);
    }
    return d;
  }
  throw Error("domain-carver", "iteration cap reached: " + last_failure);
}

double section_sP(const ConePoint& a, const std::vector<Prism>& prisms, double theta) {
  double best = 0.0;
  for (const auto& prism : prisms) best = std::max(best, section_su(mul(prism.rep_inv, a), theta));
  return best;
}

double section_sP(const UElement& a, const std::vector<Prism>& prisms, double theta) {
  return section_sP(ConePoint::from(a), prisms, theta);
}

std::pair<long, long> pairing_exponents(const StarSetup& setup, long m) {
  const long A = setup.p / setup.p_u;
  const long B = setup.p / setup.q;
  if (B == 1) return {0, m - 0};
  for (long mag = 0; mag <= B; ++mag) {
    for (long a : {mag, -mag}) {
      if (mod(m - a * A, B) == 0) return {a, (m - a * A) / B};
    }
  }
  throw Error("identify", "pairing exponents unsolvable");
}

std::vector<TranslateHit> membership_translate(const UElement& a, const Domain& domain,
                                               const StarSetup& setup, double eps_geom) {
  struct Candidate {
    int orbit_index;
    long m;
  };
  std::vector<Candidate> cands;
  for (const auto& c : domain.constraints.constraints) cands.push_back({c.orbit_index, c.m});
  for (long m : {0L, 2L, -2L, 3L, -3L}) cands.push_back({0, m});

  const ConePoint ap = ConePoint::from(a);
  std::vector<TranslateHit> hits;
  for (const auto& c : cands) {
    const auto [ea, eb] = pairing_exponents(setup, c.m);
    const UElement g1 = mul(domain.orbit[c.orbit_index].rep, power(setup.d1, ea));
    const UElement g2 = power(setup.d2, -eb);
    const ConePoint pulled = act(inv(g1), inv(g2), ap);
    if (std::abs(pulled.alpha) >= kPi / 2) continue;
    if (std::abs(pulled.alpha) > setup.theta / 2 + 1e-6) continue;
    if (locate(domain.poly, cone_to_chart(pulled), 1e-6) == Location::Outside) continue;
    const double s = section_sP(pulled, domain.prisms, setup.theta);
    const ConePoint b = scale(s, pulled);
    if (std::abs(b.r * std::cos(b.alpha) - 1.0) > 1e-9) continue;
    const Location loc = locate(domain.poly, cone_to_chart(b), eps_geom);
    if (loc == Location::Outside) continue;
    hits.push_back({g1, g2, mul(g1, inv(g2)), loc});
  }
  return hits;
}

std::vector<ConePoint> sample_boundary(const StarSetup& setup, const std::vector<Prism>& prisms,
                                       std::size_t n, Sampler& sampler, double z_radius) {
  std::vector<ConePoint> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double alpha = sampler.uniform(-setup.theta / 2, setup.theta / 2);
    const UElement a(sampler.disc(z_radius), alpha);
    out.push_back(scale(section_sP(a, prisms, setup.theta), ConePoint::from(a)));
  }
  return out;
}

}  // namespace lfd
