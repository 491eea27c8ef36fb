#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "lcembed/common.hpp"
#include "lcembed/quadrature.hpp"

namespace lcembed::measure {

enum class Domain { HalfPlane, Disc, Axis };

struct Atom {
  Complex location;
  double mass = 0.0;
};

// Density c * x^beta on [x0, x1). Pieces with beta <= -1 must have x0 > 0.
struct PowerDensity {
  double c = 0.0;
  double beta = 0.0;
};

struct RadialPiece {
  double x0 = 0.0;
  double x1 = 0.0;  // may be +inf
  PowerDensity power;
  // When set, overrides power: pointwise density on [x0, x1). Not
  // serializable; produced e.g. by measure transfer between domains.
  std::function<double(double)> tabulated;

  bool is_power() const { return !tabulated; }
};

// Axis-aligned rectangle with constant density.
struct PlanarPiece {
  double re0 = 0.0, re1 = 0.0;
  double im0 = 0.0, im1 = 0.0;
  double density = 0.0;
};

struct PositiveMeasure {
  Domain domain = Domain::HalfPlane;
  std::vector<Atom> atoms;
  std::vector<RadialPiece> radial;
  std::vector<PlanarPiece> planar;

  bool purely_atomic() const { return radial.empty() && planar.empty(); }
  double total_atom_mass() const;
};

// Throws InputError if masses/densities are negative, support points leave
// the closed domain, or a power piece with beta <= -1 starts at 0.
void validate(const PositiveMeasure& mu);

// Region {x+iy : 0 < x <= h, |y-a| <= h/2} together with its boundary
// segment on {x=0} (closed convention; an atom at iy0 with |y0-a| <= h/2
// belongs to the square).
struct CarlesonSquare {
  double a = 0.0;
  double h = 0.0;
};

double square_mass(const PositiveMeasure& mu, const CarlesonSquare& q);

// Mass of one radial piece on [lo, hi); closed form for power densities.
double radial_piece_mass(const RadialPiece& p, double lo, double hi);

// mu([0, x]), atom at 0 included. Axis-domain measures only.
double interval_mass(const PositiveMeasure& mu, double x);

// Atoms summed exactly; power pieces integrated after the substitution
// x = u^(1/(1+beta)) which absorbs an endpoint singularity at 0 exactly;
// unbounded pieces get a 1/x tail map. Non-integrable singularities are
// reported via converged=false on the result.
quad::Result integrate_kernel(const PositiveMeasure& mu,
                              const std::function<Complex(Complex)>& kernel,
                              double rel_tol = 1e-8);

struct SquareRatio {
  CarlesonSquare q;
  double ratio = 0.0;
};

struct CarlesonSupResult {
  double sup = 0.0;  // +inf when the ratio is unbounded
  bool finite = true;
  std::vector<SquareRatio> witnesses;
  double certified_lower_bound = 0.0;
  bool exact = false;          // atomic exhaustive search succeeded
  double growth_exponent = 0;  // ratio ~ h^e diagnostic when unbounded
};

// sup over Carleson squares with h >= h_min of mu(Q)/nu(Q). For purely
// atomic mu the candidate family (atom ordinates and midpoints as centers;
// abscissae, ordinate gaps and h_min as sides) is exhaustive and the result
// exact. With density pieces a multiscale grid search refines dyadically
// until the running sup changes by < 1e-3 relative.
CarlesonSupResult carleson_sup(
    const PositiveMeasure& mu,
    const std::function<double(const CarlesonSquare&)>& nu_square_mass,
    double h_min);

struct RatioSupResult {
  double sup = 0.0;  // +inf when divergent
  bool finite = true;
  double witness_x = 0.0;
  double growth_exponent = 0.0;  // of the divergent ratio, when finite=false
};

// sup_{x >= x_min} mu([0,x]) / x^q, exact for atoms + power pieces
// (candidates: x_min, atom locations, piece endpoints, interior stationary
// points, and the x->inf / x->0 limits). x_min = 0 is accepted and means
// the full-range test sup_{x > 0}.
RatioSupResult ratio_sup(const PositiveMeasure& mu, double q, double x_min);

inline RatioSupResult widom_constant(const PositiveMeasure& mu, double x_min) {
  return ratio_sup(mu, 1.0, x_min);
}

inline RatioSupResult power_weight_constant(const PositiveMeasure& mu,
                                            double alpha, double x_min) {
  if (alpha < 0) throw InputError("power_weight_constant: alpha must be >= 0");
  return ratio_sup(mu, 1.0 + 2.0 * alpha, x_min);
}

}  // namespace lcembed::measure
