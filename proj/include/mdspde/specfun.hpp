#pragma once

namespace mdspde::specfun {

// Values of the Jacobi elliptic functions at a common argument.
// Satisfies sn^2 + cn^2 = 1 and dn^2 = 1 - m*sn^2.
struct EllipticTriple {
  double sn;
  double cn;
  double dn;
};

// Complete elliptic integral of the first kind,
//   K(m) = int_0^1 dx / sqrt((1-x^2)(1-m x^2)),
// in the parameter convention where m multiplies x^2 (Abramowitz-Stegun).
// Computed by the arithmetic-geometric mean iteration. Requires 0 <= m < 1.
double elliptic_K(double m);

// (sn, cn, dn)(x, m) for m in [0, 1], via the descending Landen/AGM ladder.
// m = 0 reduces to (sin, cos, 1); m = 1 is the hyperbolic limit
// (tanh, sech, sech). The argument is range-reduced by the period 4K(m).
EllipticTriple jacobi_elliptic(double x, double m);

// Scaled quarter-period map
//   M(a) = sqrt(2)/sqrt(2-a^2) * K(a^2/(2-a^2)),
// strictly increasing on (0,1) with M(0+) = pi/2 and M(1-) = +inf.
double quarter_period_M(double amplitude);

// Inverse of M by bracketed bisection on the increasing branch.
// Requires target > pi/2; the result a satisfies |M(a) - target| <= 1e-10.
double inverse_M(double target);

}  // namespace mdspde::specfun
