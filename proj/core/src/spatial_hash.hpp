#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

namespace lfd::detail {

// Uniform grid hash for tolerance-based point deduplication in up to three
// dimensions.  Queries inspect the 27 neighbouring cells.
class SpatialHash {
 public:
  explicit SpatialHash(double cell) : cell_(cell) {}

  template <typename Dist>
  int find(const std::array<double, 3>& p, double tol, Dist&& dist) const {
    const auto c = key(p);
    int best = -1;
    double best_d = tol;
    for (int dx = -1; dx <= 1; ++dx)
      for (int dy = -1; dy <= 1; ++dy)
        for (int dz = -1; dz <= 1; ++dz) {
          auto it = cells_.find(pack({c[0] + dx, c[1] + dy, c[2] + dz}));
          if (it == cells_.end()) continue;
          for (int idx : it->second) {
            const double d = dist(idx);
            if (d <= best_d) {
              best_d = d;
              best = idx;
            }
          }
        }
    return best;
  }

  void insert(const std::array<double, 3>& p, int idx) { cells_[pack(key(p))].push_back(idx); }

 private:
  std::array<std::int64_t, 3> key(const std::array<double, 3>& p) const {
    return {static_cast<std::int64_t>(std::floor(p[0] / cell_)),
            static_cast<std::int64_t>(std::floor(p[1] / cell_)),
            static_cast<std::int64_t>(std::floor(p[2] / cell_))};
  }
  static std::uint64_t pack(const std::array<std::int64_t, 3>& k) {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto v : k) {
      h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }

  double cell_;
  std::unordered_map<std::uint64_t, std::vector<int>> cells_;
};

}  // namespace lfd::detail
