#include "lfd/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "lfd/error.hpp"
#include "lfd/export.hpp"

namespace lfd {

namespace fs = std::filesystem;

StarSetup setup_from_config(const RunConfig& config) {
  validate(config);
  const auto& s = config.signature;
  const long p = lcm(s[static_cast<std::size_t>(config.u_vertex)], config.q);
  if (p <= config.k) {
    throw Error("discrete-groups", "condition (*) violated: p = " + std::to_string(p) +
                                       " is not larger than k = " + std::to_string(config.k));
  }
  const TriangleGroup tg = with_level(build_triangle_group(s[0], s[1], s[2]), config.k);
  return star_setup(tg, config.u_vertex, config.q, config.k);
}

RunResult run_pipeline(const RunConfig& config) {
  RunResult r;
  r.config = config;
  r.setup = setup_from_config(config);
  r.domain = build_fundamental_domain(r.setup, config.build_config());
  if (!r.domain.poly.compact) throw Error("domain-carver", "polyhedron is not compact");
  r.poly = refine_for_pairing(r.domain.poly, r.setup, config.eps_match);
  r.pairing = pair_faces(r.poly, r.setup, config.eps_match);
  r.quotient = quotient_complex(r.pairing, r.poly);
  r.symmetry = detect_symmetry(r.poly, 2 * r.setup.p, config.eps_match);
  r.symmetry_defects = equivariance_defects(r.poly, r.pairing, r.symmetry, config.eps_match);
  r.star = star_polygon_figure(r.setup.p, r.setup.k);
  return r;
}

namespace {

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cli-export", "cannot write " + path.string());
  out << text;
  if (!out) throw Error("cli-export", "write failed for " + path.string());
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cli-export", "cannot create " + dir + ": " + ec.message());
}

}  // namespace

void write_artifacts(const RunResult& r, const std::string& dir) {
  // Everything is rendered before the first file is touched.
  const std::string obj = obj_text(r.poly, run_metadata(r));
  const std::string json = domain_json(r);
  const std::string strip = xu_strip_svg(r.setup.theta, 3);
  const std::string star = star_polygon_svg(r.star);
  const std::string report = report_text(r);
  ensure_dir(dir);
  write_file(fs::path(dir) / "domain.obj", obj);
  write_file(fs::path(dir) / "domain.json", json);
  write_file(fs::path(dir) / "xu_strip.svg", strip);
  write_file(fs::path(dir) / "star_polygon.svg", star);
  write_file(fs::path(dir) / "report.txt", report);
}

void write_figures(const RunConfig& config, const std::string& dir) {
  const StarSetup setup = setup_from_config(config);
  const std::string strip = xu_strip_svg(setup.theta, 3);
  const std::string star = star_polygon_svg(star_polygon_figure(setup.p, setup.k));
  ensure_dir(dir);
  write_file(fs::path(dir) / "xu_strip.svg", strip);
  write_file(fs::path(dir) / "star_polygon.svg", star);
}

// ---------------------------------------------------------------------------
// Sampling checks

namespace {

UElement random_element(Sampler& s, double z_radius, double alpha_range) {
  return {s.disc(z_radius), s.uniform(-alpha_range, alpha_range)};
}

// Runs fn(i) for i in [0, n) on worker threads; results land in index order.
template <typename T, typename Fn>
std::vector<T> parallel_map(int n, Fn fn) {
  std::vector<T> out(static_cast<std::size_t>(n));
  const int workers = std::max(1, std::min<int>(static_cast<int>(std::thread::hardware_concurrency()), 16));
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < n; i += workers) out[static_cast<std::size_t>(i)] = fn(i);
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

Vec3 facet_interior_point(const Polyhedron& poly, const Facet& f) {
  std::vector<Vec3> pv;
  for (int v : f.vertices) pv.push_back(poly.vertices[v]);
  Vec3 c;
  for (const auto& p : pv) c += p;
  c = c / static_cast<double>(pv.size());
  if (point_polygon_distance(c, pv, f.plane.n) < 1e-12) {
    bool strictly = true;
    for (std::size_t i = 0; i < pv.size() && strictly; ++i) {
      const Vec3 a = pv[i], b = pv[(i + 1) % pv.size()];
      strictly = norm(cross(b - a, c - a)) / norm(b - a) > 1e-9;
    }
    if (strictly) return c;
  }
  // Non-convex facet: centroid of a convex corner triangle that contains no other vertex.
  const std::size_t n = pv.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 a = pv[(i + n - 1) % n], b = pv[i], d = pv[(i + 1) % n];
    if (dot(cross(b - a, d - b), f.plane.n) <= 1e-12) continue;
    const Vec3 t = (a + b + d) / 3.0;
    if (point_polygon_distance(t, pv, f.plane.n) < 1e-12) return t;
  }
  return c;
}

}  // namespace

TilingStats tiling_test(const RunResult& r, int samples, double radius, std::uint64_t seed) {
  Sampler sampler(seed);
  std::vector<UElement> points;
  for (int i = 0; i < samples; ++i) points.push_back(random_element(sampler, radius, radius));
  enum Outcome { kOne, kZero, kSeveral, kBoundary };
  const auto outcomes = parallel_map<int>(samples, [&](int i) {
    const auto hits = membership_translate(points[static_cast<std::size_t>(i)], r.domain, r.setup,
                                           r.config.eps_geom);
    std::vector<UElement> classes;
    bool boundary = false;
    for (const auto& h : hits) {
      boundary |= h.location == Location::Boundary;
      const bool seen = std::any_of(classes.begin(), classes.end(),
                                    [&](const UElement& c) { return element_distance(c, h.product) < 1e-6; });
      if (!seen) classes.push_back(h.product);
    }
    if (boundary) return static_cast<int>(kBoundary);
    if (classes.empty()) return static_cast<int>(kZero);
    return static_cast<int>(classes.size() == 1 ? kOne : kSeveral);
  });
  TilingStats t;
  t.samples = samples;
  for (int o : outcomes) {
    t.exactly_one += o == kOne;
    t.zero += o == kZero;
    t.several += o == kSeveral;
    t.boundary_excluded += o == kBoundary;
  }
  return t;
}

BoundaryStats boundary_cross_validation(const RunResult& r, int samples, std::uint64_t seed) {
  Sampler sampler(seed);
  const double z_radius = 1.0 / std::cos(r.setup.theta / 2);
  BoundaryStats b;
  // Draw batches until `samples` points have landed on the E_e sheet.
  const int max_emitted = 1000 * std::max(samples, 1);
  while (b.on_sheet < samples && b.emitted < max_emitted) {
    const auto points = sample_boundary(r.setup, r.domain.prisms, 256, sampler, z_radius);
    b.emitted += static_cast<int>(points.size());
    for (const auto& a : points) {
      if (b.on_sheet == samples) break;
      // On the sheet: Re w = 1 on the principal branch.
      if (std::abs(a.alpha) >= kPi / 2 || std::abs(a.r * std::cos(a.alpha) - 1.0) > 1e-9) continue;
      ++b.on_sheet;
      const Vec3 y = cone_to_chart(a);
      double d = 0.0;
      if (locate(r.poly, y, r.config.eps_geom) == Location::Outside) {
        d = INFINITY;
        for (const auto& f : r.poly.facets) {
          std::vector<Vec3> pv;
          for (int v : f.vertices) pv.push_back(r.poly.vertices[v]);
          d = std::min(d, point_polygon_distance(y, pv, f.plane.n));
        }
      }
      b.worst_distance = std::max(b.worst_distance, d);
      b.inside += d <= 1e-6;
    }
  }
  return b;
}

double prism_bound_excess(const StarSetup& setup, const std::vector<Prism>& prisms, int samples,
                          std::uint64_t seed) {
  Sampler sampler(seed);
  const double c = std::cos(setup.theta / 2);
  double worst = -INFINITY;
  for (int i = 0; i < samples; ++i) {
    const Prism& prism = prisms[static_cast<std::size_t>(i) % prisms.size()];
    // A point of Q_u: |z| < r <= phi(alpha).
    const double alpha = sampler.uniform(-3 * setup.theta, 3 * setup.theta);
    const double r = phi(alpha, setup.theta) * sampler.uniform(1e-3, 1.0);
    const ConePoint b{sampler.disc(r * 0.999), alpha, r};
    const ConePoint a = mul(prism.rep, b);
    const Complex x = prism.x.value();
    const double f = std::sqrt(1.0 - std::norm(x)) / c;
    worst = std::max(worst, std::abs(a.w() - std::conj(x) * a.z) - f);
  }
  return worst;
}

// ---------------------------------------------------------------------------
// verify

std::vector<CheckResult> verify_run(const RunResult& r) {
  std::vector<CheckResult> out;
  auto add = [&](std::string name, bool pass, std::string detail) {
    out.push_back({std::move(name), pass, std::move(detail)});
  };
  auto sci = [](double x) {
    std::ostringstream os;
    os.precision(3);
    os << x;
    return os.str();
  };
  const RunConfig& cfg = r.config;
  const StarSetup& s = r.setup;
  Sampler sampler(cfg.seed);

  {
    double worst = 0.0;
    for (int i = 0; i < cfg.spot_samples; ++i) {
      const DiscPoint x(sampler.disc(0.95));
      worst = std::max(worst, element_distance(rotation_lift(x, 2 * kPi), central(1)));
    }
    add("cover-arith: r_x(2 pi) is central", worst <= 1e-10, "max deviation " + sci(worst));
  }
  {
    double worst = 0.0;
    for (int i = 0; i < cfg.spot_samples; ++i) {
      const UElement g = random_element(sampler, 1.5, 4.0);
      const ConePoint a{g.z(), g.alpha(), g.r() * sampler.uniform(1.0, 3.0)};
      const double t = sampler.uniform(-kPi, kPi);
      const ConePoint left = mul(s.d, a);
      const ConePoint right = mul(a, rotation_lift(DiscPoint{}, -2 * t));
      worst = std::max({worst, std::abs(left.z - a.z * std::polar(1.0, s.theta)),
                        std::abs(left.alpha - (a.alpha - s.theta)), std::abs(left.r - a.r),
                        std::abs(right.z - a.z * std::polar(1.0, t)), std::abs(right.alpha - (a.alpha + t)),
                        std::abs(right.r - a.r)});
    }
    add("cover-arith: rotation action formulas", worst <= 1e-10, "max deviation " + sci(worst));
  }
  {
    double worst = 0.0;
    for (int i = 0; i < cfg.spot_samples; ++i) {
      const UElement g = random_element(sampler, 1.5, 4.0), h = random_element(sampler, 1.5, 4.0);
      const PseudoVector pg = project_pi(g), ph = project_pi(h), pm = project_pi(mul(g, h));
      const Complex z = std::conj(pg.w) * ph.z + pg.z * ph.w;
      const Complex w = std::conj(pg.z) * ph.z + pg.w * ph.w;
      worst = std::max({worst, std::abs(pm.z - z), std::abs(pm.w - w)});
    }
    add("cover-arith: projection is a homomorphism", worst <= 1e-10, "max deviation " + sci(worst));
  }
  {
    const double excess = prism_bound_excess(s, r.domain.prisms, cfg.prism_bound_samples, cfg.seed + 1);
    add("domain-carver: prism bound |w - conj(x) z| <= f(|x|)", excess <= 1e-9, "max excess " + sci(excess));
  }
  const Certificate& cert = r.domain.certificate;
  add("domain-carver: relevance certificate", cert.pass,
      "R " + sci(cert.radius) + " vs R* " + sci(cert.r_star) + ", mu bound " + sci(cert.mu));
  add("domain-carver: compact polyhedron", r.poly.compact && r.poly.volume > 0,
      "volume " + sci(r.poly.volume) + ", boundary Euler " + std::to_string(r.poly.euler));
  add("domain-carver: facet plane residuals", r.poly.max_residual <= cfg.eps_geom, "max " + sci(r.poly.max_residual));
  add("domain-carver: stability under a larger orbit", r.domain.stability_shift <= cfg.eps_geom,
      "max vertex shift " + sci(r.domain.stability_shift));
  {
    bool inside = std::all_of(r.poly.vertices.begin(), r.poly.vertices.end(),
                              [](const Vec3& v) { return in_light_cone(v, 1e-12); });
    add("domain-carver: vertices inside the light cone", inside, "");
  }
  {
    int bad_own = 0, bad_any = 0;
    for (const auto& f : r.poly.facets) {
      const ConePoint a = chart_to_cone(facet_interior_point(r.poly, f));
      if (prism_classify(a, r.domain.prisms[static_cast<std::size_t>(f.tag.orbit_index)], s, cfg.eps_geom) !=
          Side::Boundary) {
        ++bad_own;
      }
      for (const auto& prism : r.domain.prisms) {
        if (prism_classify(a, prism, s, cfg.eps_geom) == Side::Interior) {
          ++bad_any;
          break;
        }
      }
    }
    add("domain-carver: facet points on their tagged prism and no prism interior", bad_own == 0 && bad_any == 0,
        std::to_string(bad_own) + " off their prism, " + std::to_string(bad_any) + " inside some prism");
  }
  {
    bool inv_ok = static_cast<int>(r.pairing.pairs.size()) == static_cast<int>(r.poly.facets.size());
    for (const auto& fp : r.pairing.pairs) {
      inv_ok = inv_ok && fp.partner != fp.facet && r.pairing.pairs[static_cast<std::size_t>(fp.partner)].partner == fp.facet;
    }
    add("identify: pairing is a fixed-point-free involution", inv_ok,
        std::to_string(r.pairing.pairs.size()) + " facets, " + std::to_string(r.pairing.tag_mismatches) +
            " tag mismatches");
  }
  {
    const double lor = congruence_defect(r.poly, r.pairing, true);
    const double euc = congruence_defect(r.poly, r.pairing, false);
    add("identify: paired facets congruent (chart interval)", lor <= cfg.eps_match,
        "max defect " + sci(lor) + " (Euclidean " + sci(euc) + ")");
  }
  add("identify: quotient Euler characteristic 0", r.quotient.chi == 0,
      "V " + std::to_string(r.quotient.vertices) + " E " + std::to_string(r.quotient.edges) + " F " +
          std::to_string(r.quotient.faces) + " cell " + std::to_string(r.quotient.cell_term));
  add("identify: nontrivial symmetry, pairing equivariant", r.symmetry.order() > 1 && r.symmetry_defects == 0,
      r.symmetry.name() + ", " + std::to_string(r.symmetry_defects) + " defects");
  {
    const TilingStats t = tiling_test(r, cfg.tiling_samples, cfg.tiling_radius, cfg.seed + 2);
    const int counted = t.samples - t.boundary_excluded;
    const bool pass = t.exactly_one == counted && t.boundary_excluded * 100 < std::max(1, t.samples);
    add("domain-carver: translates tile a neighbourhood of e", pass,
        std::to_string(t.exactly_one) + "/" + std::to_string(counted) + " in exactly one class, " +
            std::to_string(t.boundary_excluded) + " boundary exclusions");
  }
  {
    const BoundaryStats b = boundary_cross_validation(r, cfg.boundary_samples, cfg.seed + 3);
    add("domain-carver: sampled boundary lies in the polyhedron",
        b.on_sheet == cfg.boundary_samples && b.inside == b.on_sheet,
        std::to_string(b.inside) + "/" + std::to_string(b.on_sheet) + " on-sheet points within 1e-6 (" + std::to_string(b.emitted) +
            " emitted), worst " + sci(b.worst_distance));
  }
  return out;
}

}  // namespace lfd
