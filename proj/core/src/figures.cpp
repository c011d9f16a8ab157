#include "lfd/figures.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "lfd/carve.hpp"
#include "lfd/error.hpp"

namespace lfd {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  std::string s(buf);
  return s == "-0.0000" ? "0.0000" : s;
}

}  // namespace

StarPolygon star_polygon_figure(int p, int k) {
  if (k < 1 || p <= k) throw Error("cli-export", "star polygon needs p > k >= 1");
  StarPolygon s;
  s.p = p;
  s.k = k;
  s.theta = kPi * k / p;
  if (k % 2 == 1) {
    s.n = 2 * p;
    s.m = k;
  } else {
    s.n = p;
    s.m = k;
  }
  // The inner points j theta = j pi k / p return to angle 0 after 2p / gcd(2p, k) steps.
  const int g = std::gcd(2 * p, k);
  s.traced_corners = 2 * p / g;
  s.traced_winding = k / g;
  const double outer = 1.0 / std::cos(s.theta / 2);
  for (int j = 0; j < s.traced_corners; ++j) {
    s.boundary.push_back(std::polar(1.0, j * s.theta));
    s.boundary.push_back(std::polar(outer, (2 * j + 1) * s.theta / 2));
  }
  return s;
}

std::string star_polygon_svg(const StarPolygon& star) {
  const double scale = 200.0;
  const double half = 260.0;
  auto px = [&](Complex c) { return fmt(half + scale * c.real()) + "," + fmt(half - scale * c.imag()); };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"520\" height=\"560\" viewBox=\"0 0 520 560\">\n";
  os << "  <title>star polygon " << star.descriptor() << ", p=" << star.p << ", k=" << star.k << "</title>\n";
  os << "  <circle cx=\"" << fmt(half) << "\" cy=\"" << fmt(half) << "\" r=\"" << fmt(scale)
     << "\" fill=\"none\" stroke=\"#bbbbbb\" stroke-dasharray=\"4 4\"/>\n";

  // Descriptor star: every m-th of n equally spaced points on the unit circle.
  os << "  <polygon fill=\"none\" stroke=\"#c0392b\" stroke-width=\"0.8\" points=\"";
  const int steps = star.n / std::gcd(star.n, star.m);
  for (int j = 0; j < steps; ++j) {
    if (j) os << ' ';
    os << px(std::polar(1.0, 2 * kPi * j * star.m / star.n));
  }
  os << "\"/>\n";

  os << "  <polygon fill=\"#2e86c1\" fill-opacity=\"0.15\" fill-rule=\"nonzero\" stroke=\"#1b4f72\" "
        "stroke-width=\"1.2\" points=\"";
  for (std::size_t i = 0; i < star.boundary.size(); ++i) {
    if (i) os << ' ';
    os << px(star.boundary[i]);
  }
  os << "\"/>\n";
  os << "  <text x=\"10\" y=\"545\" font-family=\"sans-serif\" font-size=\"14\">" << star.descriptor()
     << "  theta=" << fmt(star.theta) << "  traced corners=" << star.traced_corners
     << " winding=" << star.traced_winding << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

std::vector<std::pair<double, double>> xu_boundary(double theta, int periods, int samples_per_period) {
  if (!(theta > 0 && theta < kPi)) throw Error("cli-export", "theta must lie in (0, pi)");
  std::vector<std::pair<double, double>> out;
  const int total = 2 * periods * samples_per_period;
  for (int i = 0; i <= total; ++i) {
    const double alpha = -periods * theta + theta * i / samples_per_period;
    out.emplace_back(alpha, phi(alpha, theta));
  }
  return out;
}

std::string xu_strip_svg(double theta, int periods) {
  const auto curve = xu_boundary(theta, periods);
  const double width = 640.0, height = 320.0, pad = 30.0;
  const double amax = periods * theta;
  const double rmax = 1.25 / std::cos(theta / 2);
  auto X = [&](double a) { return fmt(pad + (a + amax) / (2 * amax) * (width - 2 * pad)); };
  auto Y = [&](double r) { return fmt(height - pad - r / rmax * (height - 2 * pad)); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  os << "  <title>X_u in the (alpha, r) half-plane, theta=" << fmt(theta) << "</title>\n";
  os << "  <path fill=\"#2e86c1\" fill-opacity=\"0.2\" stroke=\"none\" d=\"M " << X(-amax) << ' ' << Y(0);
  for (const auto& [a, r] : curve) os << " L " << X(a) << ' ' << Y(r);
  os << " L " << X(amax) << ' ' << Y(0) << " Z\"/>\n";
  os << "  <polyline fill=\"none\" stroke=\"#1b4f72\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < curve.size(); ++i) {
    if (i) os << ' ';
    os << X(curve[i].first) << ',' << Y(curve[i].second);
  }
  os << "\"/>\n";
  // The axis r = 0 bounds the region but does not belong to it.
  os << "  <line x1=\"" << X(-amax) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(amax) << "\" y2=\"" << Y(0)
     << "\" stroke=\"#555555\" stroke-dasharray=\"6 4\"/>\n";
  os << "  <line x1=\"" << X(0) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(0) << "\" y2=\"" << fmt(pad / 2)
     << "\" stroke=\"#999999\" stroke-width=\"0.5\"/>\n";
  os << "  <text x=\"" << fmt(width - pad) << "\" y=\"" << fmt(height - pad / 3) << "\" font-family=\"sans-serif\" "
        "font-size=\"12\">alpha</text>\n";
  os << "  <text x=\"" << fmt(pad / 3) << "\" y=\"" << fmt(pad / 2 + 10) << "\" font-family=\"sans-serif\" "
        "font-size=\"12\">r</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace lfd
