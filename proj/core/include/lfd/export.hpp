#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "lfd/pipeline.hpp"

namespace lfd {

using Metadata = std::vector<std::pair<std::string, std::string>>;

// Wavefront subset: '#' metadata lines, "v x1 x2 x3" with 6 decimals, 1-indexed "f" lines.
std::string obj_text(const Polyhedron& poly, const Metadata& meta);

struct ObjMesh {
  std::vector<Vec3> vertices;
  std::vector<std::vector<int>> faces;  // 0-indexed
  Metadata meta;
};
ObjMesh parse_obj(const std::string& text);

Metadata run_metadata(const RunResult& result);
std::string domain_json(const RunResult& result);
std::string report_text(const RunResult& result, const std::vector<CheckResult>* checks = nullptr);

}  // namespace lfd
