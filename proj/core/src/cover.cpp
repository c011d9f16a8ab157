#include "lfd/cover.hpp"

#include <cmath>

#include "lfd/error.hpp"

namespace lfd {

namespace {

struct Lifted {
  Complex z;
  Complex w;
  double alpha;
};

Lifted lift(const UElement& g) { return {g.z(), g.v(), g.alpha()}; }
Lifted lift(const ConePoint& a) { return {a.z, a.w(), a.alpha}; }

// Product of matrices [[conj w, z], [conj z, w]] with the argument of the
// second diagonal entry tracked continuously.  |c| < 1 keeps 1 + c in the
// right half plane, so the principal argument never jumps.
Lifted product(const Lifted& a, const Lifted& b) {
  const Complex ww = a.w * b.w;
  const Complex c = std::conj(a.z) * b.z / ww;
  if (!(std::norm(c) < 1.0)) {
    throw Error("cover-arith", "cocycle correction left the unit disc");
  }
  const Complex one_c = 1.0 + c;
  return {std::conj(a.w) * b.z + a.z * b.w, ww * one_c, a.alpha + b.alpha + std::arg(one_c)};
}

UElement to_element(const Lifted& l) { return {l.z, l.alpha}; }
ConePoint to_cone(const Lifted& l) { return {l.z, l.alpha, std::abs(l.w)}; }

}  // namespace

DiscPoint::DiscPoint(Complex x) : x_(x) {
  if (!(std::norm(x) < 1.0)) {
    throw Error("cover-arith", "disc point outside the open unit disc");
  }
}

bool is_valid(const ConePoint& a) { return a.r > 0.0 && std::abs(a.z) < a.r; }

double pairing(const PseudoVector& a, const PseudoVector& b) {
  return std::real(a.z * std::conj(b.z) - a.w * std::conj(b.w));
}

PseudoVector project_pi(const UElement& g) { return {g.z(), g.v()}; }
PseudoVector project_pi(const ConePoint& a) { return {a.z, a.w()}; }

UElement project_theta(const ConePoint& a) {
  const double lambda = std::sqrt((a.r - std::abs(a.z)) * (a.r + std::abs(a.z)));
  return {a.z / lambda, a.alpha};
}

ConePoint scale(double lambda, const ConePoint& a) {
  if (!(lambda > 0.0)) {
    throw Error("cover-arith", "scale factor must be positive");
  }
  return {lambda * a.z, a.alpha, lambda * a.r};
}

UElement identity() { return {}; }
UElement central(int power) { return {Complex{}, -kPi * power}; }

UElement mul(const UElement& g, const UElement& h) { return to_element(product(lift(g), lift(h))); }

UElement inv(const UElement& g) { return {-g.z(), -g.alpha()}; }

UElement power(const UElement& g, long n) {
  UElement base = n < 0 ? inv(g) : g;
  unsigned long e = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
  UElement acc;
  while (e != 0) {
    if (e & 1UL) acc = mul(acc, base);
    e >>= 1;
    if (e != 0) base = mul(base, base);
  }
  return acc;
}

ConePoint mul(const UElement& g, const ConePoint& a) { return to_cone(product(lift(g), lift(a))); }
ConePoint mul(const ConePoint& a, const UElement& h) { return to_cone(product(lift(a), lift(h))); }

ConePoint act(const UElement& g1, const UElement& g2, const ConePoint& a) {
  return mul(mul(g1, a), inv(g2));
}

UElement act(const UElement& g1, const UElement& g2, const UElement& a) {
  return mul(mul(g1, a), inv(g2));
}

UElement translation_to(const DiscPoint& x) {
  const double s = 1.0 / std::sqrt(1.0 - std::norm(x.value()));
  return {s * x.value(), 0.0};
}

UElement rotation_lift(const DiscPoint& x, double t) {
  const UElement tx = translation_to(x);
  return mul(mul(tx, UElement{Complex{}, -t / 2.0}), inv(tx));
}

DiscPoint disc_action(const UElement& g, const DiscPoint& x) {
  const Complex a = g.z();
  const Complex b = g.v();
  const Complex y = x.value();
  return DiscPoint((std::conj(b) * y + a) / (std::conj(a) * y + b));
}

double hyperbolic_distance(const DiscPoint& a, const DiscPoint& b) {
  const Complex x = a.value();
  const Complex y = b.value();
  const double num = std::abs(x - y);
  const double den = std::abs(1.0 - std::conj(x) * y);
  return 2.0 * std::atanh(num / den);
}

double element_distance(const UElement& g, const UElement& h) {
  return std::max(std::abs(g.z() - h.z()), std::abs(g.alpha() - h.alpha()));
}

}  // namespace lfd
