#include "mdspde/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mdspde::specfun {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr int kMaxAgmIter = 64;
}  // namespace

double elliptic_K(double m) {
  if (!(m >= 0.0 && m < 1.0)) {
    throw std::domain_error("elliptic_K: parameter must satisfy 0 <= m < 1");
  }
  double a = 1.0;
  double b = std::sqrt(1.0 - m);
  for (int i = 0; i < kMaxAgmIter && std::abs(a - b) > 1e-17 * a; ++i) {
    const double mid = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = mid;
  }
  return kPi / (2.0 * a);
}

EllipticTriple jacobi_elliptic(double x, double m) {
  if (!(m >= 0.0 && m <= 1.0)) {
    throw std::domain_error("jacobi_elliptic: parameter must satisfy 0 <= m <= 1");
  }
  if (m == 0.0) {
    return {std::sin(x), std::cos(x), 1.0};
  }
  if (m == 1.0) {
    const double t = std::tanh(x);
    const double s = 1.0 / std::cosh(x);
    return {t, s, s};
  }

  // reduce by the full period 4K so the phase recursion keeps precision
  const double quarter = elliptic_K(m);
  double u = std::remainder(x, 4.0 * quarter);

  double scale[kMaxAgmIter];
  double ratio[kMaxAgmIter];
  double a = 1.0;
  double b = std::sqrt(1.0 - m);
  double c = std::sqrt(m);
  int depth = 0;
  scale[0] = a;
  ratio[0] = c;
  while (std::abs(c) > 1e-16 && depth + 1 < kMaxAgmIter) {
    const double an = 0.5 * (a + b);
    const double bn = std::sqrt(a * b);
    c = 0.5 * (a - b);
    a = an;
    b = bn;
    ++depth;
    scale[depth] = a;
    ratio[depth] = c;
  }

  // backward phase recursion (A&S 16.4); keep phi_1 for the dn ratio formula
  double phi = std::ldexp(1.0, depth) * a * u;
  double phi_prev = phi;
  for (int i = depth; i >= 1; --i) {
    const double s = std::clamp(ratio[i] / scale[i] * std::sin(phi), -1.0, 1.0);
    phi_prev = phi;
    phi = 0.5 * (phi + std::asin(s));
  }

  const double sn = std::sin(phi);
  const double cn = std::cos(phi);
  // dn via the phase ratio (A&S 16.4.4); near odd quarter periods the ratio
  // degenerates to 0/0, where the defining identity is well conditioned
  double dn;
  const double denom = depth >= 1 ? std::cos(phi_prev - phi) : 1.0;
  if (depth >= 1 && std::abs(denom) > 1e-2) {
    dn = cn / denom;
  } else {
    dn = std::sqrt(1.0 - m * sn * sn);
  }
  return {sn, cn, dn};
}

double quarter_period_M(double amplitude) {
  if (!(amplitude > 0.0 && amplitude < 1.0)) {
    throw std::domain_error("quarter_period_M: amplitude must lie in (0, 1)");
  }
  const double a2 = amplitude * amplitude;
  return std::sqrt(2.0 / (2.0 - a2)) * elliptic_K(a2 / (2.0 - a2));
}

double inverse_M(double target) {
  if (!(target > kPi / 2.0)) {
    throw std::domain_error("inverse_M: target must exceed pi/2 (no preimage)");
  }
  double lo = 1e-12;
  double hi = 0.9;
  while (quarter_period_M(hi) < target) {
    hi = 1.0 - 0.25 * (1.0 - hi);
    if (1.0 - hi < 1e-15) {
      throw std::domain_error("inverse_M: target beyond representable range");
    }
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (quarter_period_M(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace mdspde::specfun
