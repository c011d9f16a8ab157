#pragma once

#include <complex>
#include <numbers>

namespace lfd {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

// Point of the Poincare disc, |x| < 1.
class DiscPoint {
 public:
  DiscPoint() = default;
  explicit DiscPoint(Complex x);

  Complex value() const { return x_; }
  double modulus() const { return std::abs(x_); }

 private:
  Complex x_{0.0, 0.0};
};

// Point of the ambient space C^2 carrying the form Re(z1 conj z2 - w1 conj w2).
struct PseudoVector {
  Complex z;
  Complex w;
};

// Element of the universal cover of SU(1,1): downstairs matrix [[conj v, z], [conj z, v]]
// with v = r e^{i alpha}, r = sqrt(1 + |z|^2) and alpha an unbounded lifted argument.
class UElement {
 public:
  UElement() = default;
  UElement(Complex z, double alpha) : z_(z), alpha_(alpha) {}

  Complex z() const { return z_; }
  double alpha() const { return alpha_; }
  double r() const { return std::sqrt(1.0 + std::norm(z_)); }
  Complex v() const { return std::polar(r(), alpha_); }

 private:
  Complex z_{0.0, 0.0};
  double alpha_ = 0.0;
};

// Point of the universal cover of the cone |z| < |w|; w = r e^{i alpha}.
struct ConePoint {
  Complex z;
  double alpha = 0.0;
  double r = 1.0;

  Complex w() const { return std::polar(r, alpha); }
  static ConePoint from(const UElement& g) { return {g.z(), g.alpha(), g.r()}; }
};

bool is_valid(const ConePoint& a);

double pairing(const PseudoVector& a, const PseudoVector& b);
PseudoVector project_pi(const UElement& g);
PseudoVector project_pi(const ConePoint& a);
UElement project_theta(const ConePoint& a);
ConePoint scale(double lambda, const ConePoint& a);

UElement identity();
// Generator of the centre, r_0(2 pi) = (0, -pi).
UElement central(int power = 1);

UElement mul(const UElement& g, const UElement& h);
UElement inv(const UElement& g);
UElement power(const UElement& g, long n);

ConePoint mul(const UElement& g, const ConePoint& a);
ConePoint mul(const ConePoint& a, const UElement& h);
// (g1, g2) . a = g1 a g2^{-1}
ConePoint act(const UElement& g1, const UElement& g2, const ConePoint& a);
UElement act(const UElement& g1, const UElement& g2, const UElement& a);

UElement translation_to(const DiscPoint& x);  // T_x, sends 0 to x
UElement rotation_lift(const DiscPoint& x, double t);
DiscPoint disc_action(const UElement& g, const DiscPoint& x);

double hyperbolic_distance(const DiscPoint& a, const DiscPoint& b);

// Distance in (z, alpha) coordinates, used for element equality checks.
double element_distance(const UElement& g, const UElement& h);

}  // namespace lfd
