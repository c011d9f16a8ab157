#include "lfd/export.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "lfd/error.hpp"

namespace lfd {

namespace {

using nlohmann::json;

std::string fixed6(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

std::string num(double x, int digits = 10) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

json element_json(const UElement& g) { return json::array({g.z().real(), g.z().imag(), g.alpha()}); }

}  // namespace

std::string obj_text(const Polyhedron& poly, const Metadata& meta) {
  std::ostringstream os;
  for (const auto& [key, value] : meta) os << "# " << key << ": " << value << '\n';
  for (const auto& v : poly.vertices) os << "v " << fixed6(v.x) << ' ' << fixed6(v.y) << ' ' << fixed6(v.z) << '\n';
  for (const auto& f : poly.facets) {
    os << 'f';
    for (int id : f.vertices) os << ' ' << id + 1;
    os << '\n';
  }
  return os.str();
}

ObjMesh parse_obj(const std::string& text) {
  ObjMesh mesh;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto colon = line.find(':');
      if (colon != std::string::npos && line.size() > 2) {
        std::string value = line.substr(colon + 1);
        if (!value.empty() && value.front() == ' ') value.erase(0, 1);
        mesh.meta.emplace_back(line.substr(2, colon - 2), value);
      }
      continue;
    }
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "v") {
      Vec3 v;
      if (!(ls >> v.x >> v.y >> v.z)) throw Error("cli-export", "bad vertex on OBJ line " + std::to_string(lineno));
      mesh.vertices.push_back(v);
    } else if (tag == "f") {
      std::vector<int> face;
      std::string tok;
      while (ls >> tok) {
        const int idx = std::stoi(tok.substr(0, tok.find('/')));
        if (idx < 1 || idx > static_cast<int>(mesh.vertices.size())) {
          throw Error("cli-export", "face index out of range on OBJ line " + std::to_string(lineno));
        }
        face.push_back(idx - 1);
      }
      if (face.size() < 3) throw Error("cli-export", "degenerate face on OBJ line " + std::to_string(lineno));
      mesh.faces.push_back(std::move(face));
    } else {
      throw Error("cli-export", "unsupported OBJ record '" + tag + "'");
    }
  }
  return mesh;
}

Metadata run_metadata(const RunResult& r) {
  const auto& s = r.config.signature;
  return {
      {"group", "Gamma(" + std::to_string(s[0]) + "," + std::to_string(s[1]) + "," + std::to_string(s[2]) +
                    ")^" + std::to_string(r.config.k) + " x (C_" + std::to_string(r.config.q) + ")^" +
                    std::to_string(r.config.k)},
      {"u_vertex", std::to_string(r.config.u_vertex) + " (order " + std::to_string(r.setup.p_u) + ")"},
      {"p", std::to_string(r.setup.p)},
      {"theta", num(r.setup.theta)},
      {"coordinates", "chart (Re z, Im z, Im w) on Re w = 1, axis x3"},
      {"scale", "1 (chart units)"},
      {"orbit_radius", num(r.domain.certificate.radius)},
      {"r_star", num(r.domain.certificate.r_star)},
      {"vertices", std::to_string(r.poly.vertices.size())},
      {"facets", std::to_string(r.poly.facets.size())},
      {"seed", std::to_string(r.config.seed)},
  };
}

std::string domain_json(const RunResult& r) {
  json doc;
  doc["config"] = json::parse(config_json(r.config));
  doc["setup"] = {{"p", r.setup.p},
                  {"theta", r.setup.theta},
                  {"k", r.setup.k},
                  {"p_u", r.setup.p_u},
                  {"q", r.setup.q},
                  {"u_vertex", r.setup.u_index}};

  json verts = json::array(), edges = json::array(), facets = json::array(), tags = json::array();
  for (const auto& v : r.poly.vertices) verts.push_back({v.x, v.y, v.z});
  for (const auto& e : r.poly.edges) edges.push_back({e[0], e[1]});
  for (const auto& f : r.poly.facets) {
    facets.push_back(f.vertices);
    tags.push_back({{"orbit_index", f.tag.orbit_index},
                    {"m", f.tag.m},
                    {"slab", f.tag.orbit_index == 0 && std::abs(f.tag.m) == 1},
                    {"h", element_json(f.h)},
                    {"plane", {f.plane.n.x, f.plane.n.y, f.plane.n.z, f.plane.c}}});
  }
  doc["polyhedron"] = {{"vertices", verts},
                       {"edges", edges},
                       {"facets", facets},
                       {"tags", tags},
                       {"volume", r.poly.volume},
                       {"compact", r.poly.compact}};

  json pairs = json::array(), flags = json::array();
  for (const auto& fp : r.pairing.pairs) {
    pairs.push_back({{"facet", fp.facet},
                     {"partner", fp.partner},
                     {"a", fp.a},
                     {"b", fp.b},
                     {"stabilizer_shift", fp.stabilizer_shift},
                     {"gamma1", element_json(fp.gamma1)},
                     {"gamma2", element_json(fp.gamma2)},
                     {"vertex_map", fp.vertex_map}});
    json fl = json::array();
    for (const auto& f : fp.flags) {
      fl.push_back({{f[0].facet, f[0].edge, f[0].vertex}, {f[1].facet, f[1].edge, f[1].vertex}});
    }
    flags.push_back(fl);
  }
  json stab_elems = json::array();
  for (const auto& e : r.pairing.stabilizer.elements) {
    stab_elems.push_back({{"exponent", e.exponent}, {"central", e.central}, {"chart_rotation", e.chart_rotation}});
  }
  doc["pairing"] = {{"pairs", pairs},
                    {"flags", flags},
                    {"stabilizer",
                     {{"J", r.pairing.stabilizer.J},
                      {"rotation_order", r.pairing.stabilizer.rotation_order},
                      {"elements", stab_elems}}}};

  doc["checks"] = {{"mu", r.poly.mu},
                   {"mu_bound", r.poly.mu_bound},
                   {"R", r.domain.certificate.radius},
                   {"R_star", r.domain.certificate.r_star},
                   {"certificate", r.domain.certificate.pass},
                   {"iterations", r.domain.iterations},
                   {"stability_shift", r.domain.stability_shift},
                   {"max_residual", r.poly.max_residual},
                   {"boundary_euler", r.poly.euler},
                   {"chi", r.quotient.chi},
                   {"quotient", {{"V", r.quotient.vertices}, {"E", r.quotient.edges}, {"F", r.quotient.faces}}},
                   {"symmetry_order", r.symmetry.order()},
                   {"symmetry", r.symmetry.name()},
                   {"equivariance_defects", r.symmetry_defects},
                   {"star_polygon", r.star.descriptor()}};
  return doc.dump(1) + "\n";
}

std::string report_text(const RunResult& r, const std::vector<CheckResult>* checks) {
  std::ostringstream os;
  for (const auto& [key, value] : run_metadata(r)) os << key << ": " << value << '\n';
  os << '\n';
  os << "domain\n";
  os << "  iterations          " << r.domain.iterations << '\n';
  os << "  certificate         " << (r.domain.certificate.pass ? "pass" : "fail") << " (R " << num(r.domain.certificate.radius)
     << " >= R* " << num(r.domain.certificate.r_star) << ")\n";
  os << "  mu (vertices)       " << num(r.poly.mu) << '\n';
  os << "  mu (lower bound)    " << num(r.poly.mu_bound) << '\n';
  os << "  V / E / F           " << r.poly.vertices.size() << " / " << r.poly.edges.size() << " / "
     << r.poly.facets.size() << " (boundary Euler " << r.poly.euler << ")\n";
  os << "  volume (chart)      " << num(r.poly.volume) << '\n';
  os << "  max residual        " << num(r.poly.max_residual, 3) << '\n';
  os << "  stability shift     " << num(r.domain.stability_shift, 3) << '\n';
  os << "identification\n";
  os << "  pairs               " << r.pairing.pairs.size() / 2 << '\n';
  os << "  stabilizer          J = " << r.pairing.stabilizer.J << ", "
     << (r.pairing.stabilizer.rotation_order > 1
             ? "rotation of order " + std::to_string(r.pairing.stabilizer.rotation_order)
             : std::string("acts trivially"))
     << '\n';
  os << "  quotient V/E/F      " << r.quotient.vertices << " / " << r.quotient.edges << " / " << r.quotient.faces
     << ", cell term " << r.quotient.cell_term << ", chi " << r.quotient.chi << '\n';
  os << "  symmetry            " << r.symmetry.name() << " (order " << r.symmetry.order() << "), equivariance defects "
     << r.symmetry_defects << '\n';
  os << "figures\n";
  os << "  star polygon        " << r.star.descriptor() << ", traced " << r.star.traced_corners << " corners, winding "
     << r.star.traced_winding << '\n';
  if (checks) {
    os << "checks\n";
    for (const auto& c : *checks) {
      os << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name;
      if (!c.detail.empty()) os << ": " << c.detail;
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace lfd
