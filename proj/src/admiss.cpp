#include "lcembed/admiss.hpp"

#include <algorithm>
#include <cmath>

namespace lcembed::admiss {

void validate(const DiagonalSystem& sys) {
  if (sys.modes.empty()) throw InputError("system has no modes");
  if (!(sys.T > 0)) throw InputError("system horizon must be positive");
  for (const auto& m : sys.modes) {
    if (!std::isfinite(m.lambda.real()) || !std::isfinite(m.lambda.imag()))
      throw InputError("mode eigenvalue is not finite");
    if (!(m.lambda.real() < 0))
      throw InputError("mode eigenvalue needs Re lambda < 0");
    if (!std::isfinite(std::abs(m.b)))
      throw InputError("mode control coefficient is not finite");
  }
  zen::validate(sys.weight);
}

measure::PositiveMeasure system_to_measure(const DiagonalSystem& sys) {
  validate(sys);
  measure::PositiveMeasure mu;
  mu.domain = measure::Domain::HalfPlane;
  for (const auto& m : sys.modes) {
    const Complex loc = -m.lambda;
    const double mass = std::norm(m.b);
    bool merged = false;
    for (auto& a : mu.atoms) {
      if (a.location == loc) {
        a.mass += mass;
        merged = true;
        break;
      }
    }
    if (!merged) mu.atoms.push_back({loc, mass});
  }
  return mu;
}

AdmissibilityResult admissibility_test(const DiagonalSystem& sys) {
  validate(sys);
  const auto mu = system_to_measure(sys);
  AdmissibilityResult res;
  res.embedding = zen::finite_time_embedding_test(mu, sys.weight, sys.T);
  res.constant = res.embedding.constant_k;

  // anchored profile over h = 2^m covering the mode scales
  double max_scale = 2.0;
  for (const auto& a : mu.atoms)
    max_scale = std::max(max_scale, std::abs(a.location));
  const int m_hi = std::max(3, (int)std::ceil(std::log2(max_scale)));
  for (int m = 0; m <= m_hi; ++m) {
    const double h = std::pow(2.0, m);
    const measure::CarlesonSquare q{0.0, h};
    const double denom = zen::product_square_mass(sys.weight, q);
    const double ratio = denom > 0 ? measure::square_mass(mu, q) / denom : 0.0;
    res.growth_profile.push_back({h, ratio});
  }

  const int n = (int)res.growth_profile.size();
  // mu([0,h]) is nondecreasing, so ratios are zero up to the first scale
  // holding mass; start the fit there to keep empty scales out of the slope.
  int start = n / 2;
  while (start < n && !(res.growth_profile[start].second > 0)) ++start;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (int i = start; i < n; ++i) {
    const double y = std::log2(res.growth_profile[i].second);
    sx += i;
    sy += y;
    sxx += (double)i * i;
    sxy += i * y;
    ++cnt;
  }
  if (cnt >= 2) {
    const double det = cnt * sxx - sx * sx;
    res.growth_slope = det != 0 ? (cnt * sxy - sx * sy) / det : 0.0;
  }
  // a genuine dyadic family climbs across many doublings; a short rise is
  // just the window crossing a cluster of modes
  const double last = res.growth_profile.back().second;
  const bool climbing = cnt >= 5 && res.growth_slope >= 0.1 &&
                        last >= 4.0 * res.growth_profile[start].second;

  res.admissible = res.embedding.bounded && !climbing;
  return res;
}

}  // namespace lcembed::admiss
