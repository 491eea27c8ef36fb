#pragma once

#include <string>
#include <vector>

#include "lcembed/measure.hpp"

namespace lcembed::zen {

// Base measure on [0, inf) with 0 in its support: an optional atom at 0
// plus radial density pieces. Determines nu = base (x) Lebesgue on the
// half-plane and the weight w(t) = 2*pi * int exp(-2rt) d(base)(r).
struct ZenBase {
  double atom_at_zero = 0.0;
  std::vector<measure::RadialPiece> density;

  static ZenBase hardy();              // point mass at 0
  static ZenBase bergman();            // Lebesgue on [0, inf)
  static ZenBase power(double alpha);  // r^(2*alpha-1) dr, alpha > 0
};

void validate(const ZenBase& base);

// base([0, t)); the atom at 0 is always inside.
double base_interval_mass(const ZenBase& base, double t);

struct Delta2Result {
  double sup = 0.0;
  bool satisfied = false;
  bool exact = false;  // closed form (pure atom, or atom + one power piece)
};

// sup_t base[0,2t)/base[0,t), closed form when available, otherwise over a
// geometric grid (default [1e-6, 1e6], 200 points per decade).
Delta2Result delta2_ratio(const ZenBase& base, double t_lo = 1e-6,
                          double t_hi = 1e6, int per_decade = 200);

struct ZenWeight {
  enum class Tag { Hardy, Bergman, Power, Numeric } tag = Tag::Numeric;
  double alpha = 0.0;      // Power tag
  ZenBase base;            // retained for numeric evaluation
  std::string closed_form; // human-readable tag for reports

  double operator()(double t) const;
};

ZenWeight weight_from_base(const ZenBase& base);

// nu(Q_{a,h}) for the product measure: base([0,h]) * h.
double product_square_mass(const ZenBase& base, const measure::CarlesonSquare& q);

struct EmbeddingResult {
  bool bounded = false;
  double constant_k = 0.0;
  std::vector<measure::SquareRatio> witnesses;
  double T = 0.0;  // recorded only; the h >= 1 criterion is T-independent
  Delta2Result delta2;
};

// Carleson-square test mu(Q_{a,h}) <= k nu(Q_{a,h}) over h >= 1. Throws
// HypothesisError when the base fails the doubling condition.
EmbeddingResult finite_time_embedding_test(const measure::PositiveMeasure& mu,
                                           const ZenBase& base, double T);

}  // namespace lcembed::zen
