#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lfd/cover.hpp"

namespace lfd {

struct StarPolygon {
  int p = 0;
  int k = 0;
  double theta = 0.0;
  int n = 0;  // descriptor {n/m}
  int m = 0;
  // Closed polyline alternating inner points (radius 1, angle j theta) and outer
  // cusps (radius 1/cos(theta/2), angle (2j+1) theta/2) until it returns to the start.
  std::vector<Complex> boundary;
  int traced_corners = 0;  // number of outer cusps on the closed polyline
  int traced_winding = 0;  // turns of the polyline about the origin

  std::string descriptor() const { return "{" + std::to_string(n) + "/" + std::to_string(m) + "}"; }
};

StarPolygon star_polygon_figure(int p, int k);
std::string star_polygon_svg(const StarPolygon& star);

// Samples (alpha, phi(alpha)) on [-periods theta, periods theta].
std::vector<std::pair<double, double>> xu_boundary(double theta, int periods, int samples_per_period = 64);
std::string xu_strip_svg(double theta, int periods);

}  // namespace lfd
