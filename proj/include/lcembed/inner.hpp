#pragma once

#include <vector>

#include "lcembed/measure.hpp"

namespace lcembed::inner {

struct BlaschkeZero {
  Complex z;
  int mult = 1;
};

// Finite Blaschke product times an optional singular factor.
// Half-plane factors: (s - z_n)/(s + conj(z_n)), singular exp(-T s).
// Disc factors: (z_n - z)/(1 - conj(z_n) z), singular exp(T (z-1)/(z+1)).
struct InnerFunction {
  measure::Domain domain = measure::Domain::HalfPlane;
  std::vector<BlaschkeZero> zeros;
  double singular_T = 0.0;  // 0 means no singular factor

  bool has_singular() const { return singular_T > 0.0; }
  bool is_trivial() const { return zeros.empty() && !has_singular(); }
};

void validate(const InnerFunction& theta);

Complex eval(const InnerFunction& theta, Complex s);

struct LogModResult {
  double log_modulus = 0.0;  // -inf at a zero
  Complex derivative{0.0, 0.0};
};

// log|theta(s)| by stable per-factor log1p summation, and theta'(s) via the
// logarithmic derivative (requires theta(s) != 0).
LogModResult log_modulus_and_derivative(const InnerFunction& theta, Complex s);

Complex log_derivative(const InnerFunction& theta, Complex s);

struct SpectrumInfo {
  std::vector<Complex> zero_points;     // distinct zero locations
  bool contains_infinity = false;       // half-plane singular factor
  bool contains_minus_one = false;      // disc singular factor

  // Distance to the finite part of the spectrum (+inf when empty).
  double dist_to(Complex p) const;
  double sup_abs() const;  // sup |z| over finite spectrum points, 0 if empty
  bool contains_origin() const;
};

SpectrumInfo spectrum(const InnerFunction& theta);

// M(z) = (1-z)/(1+z), a self-inverse bijection disc <-> half-plane.
Complex mobius(Complex z);

// Zero-for-zero transfer; |transferred(M(z))| = |original(z)|.
InnerFunction transfer_inner(const InnerFunction& theta);

// d(mu)(s) = 4 d(rho)(z) / |1+z|^2 under s = M(z). Atoms map exactly;
// density pieces become tabulated pieces.
measure::PositiveMeasure transfer_measure_disc_to_halfplane(
    const measure::PositiveMeasure& rho);
measure::PositiveMeasure transfer_measure_halfplane_to_disc(
    const measure::PositiveMeasure& mu);

// Upper bound for log|theta(z)| on the cone {|Im z - omega| <= Re z},
// Re z >= delta, where delta = dist(i*omega, spectrum) > 0:
//   -(delta^2/48) * (1/Re z) * |theta'(w0)/theta(w0)|,  w0 = i*omega + delta/4.
// Requires a pure finite Blaschke product. Throws InputError naming the
// violated precondition otherwise.
double baranov_log_bound(const InnerFunction& theta, double omega, Complex z);

}  // namespace lcembed::inner
