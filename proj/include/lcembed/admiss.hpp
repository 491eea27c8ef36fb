#pragma once

#include <utility>
#include <vector>

#include "lcembed/measure.hpp"
#include "lcembed/zen.hpp"

namespace lcembed::admiss {

struct Mode {
  Complex lambda;  // Re lambda < 0
  Complex b;
};

struct DiagonalSystem {
  std::vector<Mode> modes;
  zen::ZenBase weight;
  double T = 1.0;
};

void validate(const DiagonalSystem& sys);

// Atoms at -lambda_k with masses |b_k|^2; coincident eigenvalues merged.
measure::PositiveMeasure system_to_measure(const DiagonalSystem& sys);

struct AdmissibilityResult {
  bool admissible = false;
  double constant = 0.0;
  zen::EmbeddingResult embedding;
  // Anchored dyadic scan mu(Q_{0,2^m})/nu(Q_{0,2^m}): a sustained geometric
  // climb marks the mode family as inadmissible in the large-system limit.
  std::vector<std::pair<double, double>> growth_profile;  // (h, ratio)
  double growth_slope = 0.0;  // least-squares log2-slope over the top half
};

// Finite-horizon Carleson-square test of the modal measure against the
// weight's product measure, plus the dyadic growth diagnostic. Inadmissible
// when the square ratio is unbounded or when the dyadic profile grows
// geometrically (slope >= 0.1 per doubling and total climb >= 4x).
AdmissibilityResult admissibility_test(const DiagonalSystem& sys);

}  // namespace lcembed::admiss
