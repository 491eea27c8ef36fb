#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lcembed/inner.hpp"
#include "lcembed/measure.hpp"

namespace lcembed::cohn {

enum class Verdict { Bounded, Unbounded, Inconclusive };

struct HypothesisCheck {
  std::string name;
  bool passed = false;
  std::string note;  // "symbolic", "sampled", "unchecked", ...
};

struct CriterionReport {
  std::string criterion;
  double sup_value = 0.0;  // smallest admissible constant over the tested set
  std::vector<Complex> witness_points;
  std::string tested_range;
  Verdict verdict = Verdict::Inconclusive;
  std::vector<HypothesisCheck> hypothesis_checks;
  // Secondary constant for criteria that report two forms.
  double aux_value = 0.0;
  std::string aux_name;
  // Further named constants (e.g. the bare kernel sup behind a windowed form).
  std::vector<std::pair<std::string, double>> extra_constants;
};

// h(xi) = int (1-|xi|^2)/|1 - conj(xi) z|^2 d(rho)(z) over the closed disc.
double disc_h_function(const measure::PositiveMeasure& rho, Complex xi);

// sup over sampled xi of h(xi)*(1-|phi(xi)|). Hyperbolic-density sampling
// plus rays toward the spectrum. The sublevel-set connectivity hypothesis is
// recorded: known-true for a pure singular factor or a single zero location,
// unchecked otherwise (verdict Inconclusive in that case).
CriterionReport cohn_test_disc(const measure::PositiveMeasure& rho,
                               const inner::InnerFunction& phi);

// Radial reformulation for rho supported on [-1,1]:
//   (1-|phi(r)|) * int_{[-1,r)} (1-r)/(1-t)^2 d(rho)(t)
//     + (1-|phi(r)|)/(1-r) * rho([r,1])  <=  C.
// Tested on a grid refined toward the endpoints, restricted to
// r <= 1 - dist(1,spec)/2 and r >= -1 + dist(-1,spec)/2 when the endpoint
// is off the spectrum.
CriterionReport radial_test_disc(const measure::PositiveMeasure& rho,
                                 const inner::InnerFunction& phi);

// int Re w / |conj(w) + s|^2 d(mu)(s); for real w this is the classical
// kernel w/|w+s|^2. Pole-free for Re w > 0 and mu on the closed half-plane.
double halfplane_kernel_integral(const measure::PositiveMeasure& mu, Complex w,
                                 double rel_tol = 1e-10);

// Evaluates both exponential-window and two-term-polynomial forms:
//   F1(w) = kernel integral * (1 - exp(-T Re w))          -> sup_value
//   F2(w) = int d(mu)/|conj(w)+s|^2 / (1/Re w + 1/(Re w)^2) -> aux_value
// over a log grid of real w plus off-axis wedge samples. The verdict does
// not depend on T.
CriterionReport paley_wiener_test(const measure::PositiveMeasure& mu, double T);

// sup over real w of kernel integral * (1-|theta(w)|), with the tested
// range reduced to [min(dist(0,spec)/2, 1), 2 sup|spec|] when the spectrum
// is bounded; an unbounded spectrum gets a sampled tail-decay certificate.
CriterionReport radial_test_halfplane(const measure::PositiveMeasure& mu,
                                      const inner::InnerFunction& theta);

// Same integrand over real w for measures supported on the sector
// |Im s| <= tan(half_angle) Re s. Hypotheses recorded: origin off the
// spectrum (symbolic) and |theta| bounded away from 1 far out in the
// sector (closed form for a pure singular factor, sampled otherwise).
CriterionReport sector_test(const measure::PositiveMeasure& mu,
                            const inner::InnerFunction& theta,
                            double half_angle);

struct ModelKernel {
  inner::InnerFunction theta;
  Complex s;
  double norm_squared = 0.0;            // analytic side: (1-|theta(s)|^2)/(4 pi Re s)
  double time_side_norm_squared = 0.0;  // = 2 pi * norm_squared

  // k_s(z) = (1 - conj(theta(s)) theta(z)) / (2 pi (z + conj(s))).
  Complex operator()(Complex z) const;
};

ModelKernel model_kernel(const inner::InnerFunction& theta, Complex s);

}  // namespace lcembed::cohn
