#include "lfd/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "lfd/error.hpp"
#include "lfd/groups.hpp"

namespace lfd {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw Error("config", "unknown key '" + key + "' in " + where);
  }
}

template <typename T>
void read(const json& obj, const char* key, T& out) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error("config", std::string("bad value for '") + key + "': " + e.what());
  }
}

json to_json(const RunConfig& c) {
  return json{
      {"signature", c.signature},
      {"k", c.k},
      {"u_vertex", c.u_vertex},
      {"q", c.q},
      {"tolerances", {{"eps_geom", c.eps_geom}, {"eps_match", c.eps_match}, {"eps_orb", c.eps_orb}}},
      {"orbit",
       {{"r0", c.r0},
        {"growth", c.growth},
        {"cap", c.cap},
        {"margin", c.margin},
        {"max_word_length", c.max_word_length}}},
      {"sampling",
       {{"tiling", c.tiling_samples},
        {"boundary", c.boundary_samples},
        {"prism_bound", c.prism_bound_samples},
        {"spot", c.spot_samples},
        {"tiling_radius", c.tiling_radius}}},
      {"seed", c.seed},
      {"output_dir", c.output_dir},
  };
}

}  // namespace

BuildConfig RunConfig::build_config() const {
  BuildConfig b;
  b.r0 = r0;
  b.growth = growth;
  b.cap = cap;
  b.margin = margin;
  b.carve.eps_geom = eps_geom;
  b.orbit.dedup_tol = eps_orb;
  b.orbit.max_word_length = max_word_length;
  return b;
}

std::string RunConfig::label() const {
  std::ostringstream os;
  os << signature[0] << signature[1] << signature[2] << "_k" << k << "_u" << u_vertex << "_q" << q;
  return os.str();
}

void validate(const RunConfig& c) {
  for (int p : c.signature) {
    if (p < 2) throw Error("config", "signature entries must be integers >= 2");
  }
  if (!is_hyperbolic(c.signature[0], c.signature[1], c.signature[2])) throw Error("config", "signature is not hyperbolic (1/p1 + 1/p2 + 1/p3 >= 1)");
  if (c.k < 1) throw Error("config", "level k must be >= 1");
  if (c.q < 2) throw Error("config", "q must be >= 2");
  if (c.u_vertex < 0 || c.u_vertex > 2) throw Error("config", "u_vertex must be 0, 1 or 2");
  if (!(c.eps_geom > 0 && c.eps_match > 0 && c.eps_orb > 0)) {
    throw Error("config", "tolerances must be positive");
  }
  if (!(c.r0 > 0 && c.r0 < 1)) throw Error("config", "orbit.r0 must lie in (0, 1)");
  if (!(c.growth > 1)) throw Error("config", "orbit.growth must exceed 1");
  if (c.cap < 1) throw Error("config", "orbit.cap must be >= 1");
  if (!(c.margin >= 0)) throw Error("config", "orbit.margin must be >= 0");
  if (c.max_word_length < 1) throw Error("config", "orbit.max_word_length must be >= 1");
  if (c.tiling_samples < 0 || c.boundary_samples < 0 || c.prism_bound_samples < 0 || c.spot_samples < 0) {
    throw Error("config", "sampling counts must be >= 0");
  }
  if (!(c.tiling_radius > 0 && c.tiling_radius < 1)) {
    throw Error("config", "sampling.tiling_radius must lie in (0, 1)");
  }
}

RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error("config", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error("config", "top level must be an object");
  reject_unknown(doc, {"signature", "k", "u_vertex", "q", "tolerances", "orbit", "sampling", "seed", "output_dir"},
                 "config");
  if (!doc.contains("signature")) throw Error("config", "missing required key 'signature'");

  RunConfig c;
  read(doc, "signature", c.signature);
  read(doc, "k", c.k);
  read(doc, "u_vertex", c.u_vertex);
  read(doc, "q", c.q);
  read(doc, "seed", c.seed);
  read(doc, "output_dir", c.output_dir);
  if (doc.contains("tolerances")) {
    const json& t = doc["tolerances"];
    reject_unknown(t, {"eps_geom", "eps_match", "eps_orb"}, "tolerances");
    read(t, "eps_geom", c.eps_geom);
    read(t, "eps_match", c.eps_match);
    read(t, "eps_orb", c.eps_orb);
  }
  if (doc.contains("orbit")) {
    const json& o = doc["orbit"];
    reject_unknown(o, {"r0", "growth", "cap", "margin", "max_word_length"}, "orbit");
    read(o, "r0", c.r0);
    read(o, "growth", c.growth);
    read(o, "cap", c.cap);
    read(o, "margin", c.margin);
    read(o, "max_word_length", c.max_word_length);
  }
  if (doc.contains("sampling")) {
    const json& s = doc["sampling"];
    reject_unknown(s, {"tiling", "boundary", "prism_bound", "spot", "tiling_radius"}, "sampling");
    read(s, "tiling", c.tiling_samples);
    read(s, "boundary", c.boundary_samples);
    read(s, "prism_bound", c.prism_bound_samples);
    read(s, "spot", c.spot_samples);
    read(s, "tiling_radius", c.tiling_radius);
  }
  validate(c);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("config", "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string config_json(const RunConfig& config, int indent) { return to_json(config).dump(indent); }

}  // namespace lfd
