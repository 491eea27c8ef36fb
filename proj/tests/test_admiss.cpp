#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "lcembed/admiss.hpp"

using namespace lcembed;

namespace {

admiss::DiagonalSystem dyadic_system(double b_exponent_base, int k_max) {
  admiss::DiagonalSystem sys;
  for (int k = 0; k <= k_max; ++k) {
    const double lam = -std::pow(2.0, k);
    const double b = std::pow(b_exponent_base, k);
    sys.modes.push_back({Complex{lam, 0.0}, Complex{b, 0.0}});
  }
  sys.weight = zen::ZenBase::hardy();
  return sys;
}

}  // namespace

TEST_CASE("modal measure construction") {
  admiss::DiagonalSystem sys;
  sys.modes.push_back({Complex{-1.0, 0.0}, Complex{2.0, 0.0}});
  sys.weight = zen::ZenBase::hardy();
  auto mu = admiss::system_to_measure(sys);
  REQUIRE(mu.atoms.size() == 1);
  CHECK(std::abs(mu.atoms[0].location - Complex{1.0, 0.0}) < 1e-15);
  CHECK(mu.atoms[0].mass == doctest::Approx(4.0));

  // coincident eigenvalues merge, masses add
  sys.modes.push_back({Complex{-1.0, 0.0}, Complex{0.0, 3.0}});
  sys.modes.push_back({Complex{-2.0, 1.0}, Complex{1.0, 0.0}});
  auto mu2 = admiss::system_to_measure(sys);
  REQUIRE(mu2.atoms.size() == 2);
  CHECK(mu2.atoms[0].mass == doctest::Approx(13.0));
  CHECK(std::abs(mu2.atoms[1].location - Complex{2.0, -1.0}) < 1e-15);
}

TEST_CASE("system validation needs strictly stable eigenvalues") {
  admiss::DiagonalSystem marginal;
  marginal.modes.push_back({Complex{0.0, 1.0}, Complex{1.0, 0.0}});
  marginal.weight = zen::ZenBase::hardy();
  CHECK_THROWS_AS(admiss::validate(marginal), InputError);

  admiss::DiagonalSystem unstable;
  unstable.modes.push_back({Complex{0.5, 0.0}, Complex{1.0, 0.0}});
  unstable.weight = zen::ZenBase::hardy();
  CHECK_THROWS_AS(admiss::validate(unstable), InputError);
}

TEST_CASE("square-root mode weights are admissible") {
  auto sys = dyadic_system(std::sqrt(2.0), 9);
  auto r = admiss::admissibility_test(sys);
  CHECK(r.admissible);
  // sup_h mu([0,h]) / h at h = 2^10 - 1... masses 2^k at 2^k
  CHECK(r.constant == doctest::Approx(1023.0 / 512.0).epsilon(1e-12));
  CHECK(r.constant <= 2.0 + 1e-9);
  CHECK(r.growth_slope < 0.1);
}

TEST_CASE("geometric mode weights are flagged") {
  auto sys = dyadic_system(2.0, 9);
  auto r = admiss::admissibility_test(sys);
  CHECK_FALSE(r.admissible);
  CHECK(r.growth_slope >= 0.1);
  REQUIRE_FALSE(r.growth_profile.empty());
  const auto& last = r.growth_profile.back();
  const auto& mid = r.growth_profile[r.growth_profile.size() / 2];
  CHECK(last.second >= 4.0 * mid.second);
}

TEST_CASE("single mode has the sharp constant") {
  admiss::DiagonalSystem sys;
  sys.modes.push_back({Complex{-1.0, 0.0}, Complex{1.0, 0.0}});
  sys.weight = zen::ZenBase::hardy();
  auto r = admiss::admissibility_test(sys);
  CHECK(r.admissible);
  CHECK(r.constant == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("rotating the mode vectors changes nothing") {
  auto sys = dyadic_system(std::sqrt(2.0), 6);
  auto base = admiss::admissibility_test(sys);
  for (auto& m : sys.modes) m.b *= Complex{0.6, 0.8};  // unimodular
  auto rotated = admiss::admissibility_test(sys);
  CHECK(rotated.admissible == base.admissible);
  CHECK(rotated.constant == doctest::Approx(base.constant).epsilon(1e-12));
}

TEST_CASE("mode energies scale quadratically") {
  auto sys = dyadic_system(std::sqrt(2.0), 6);
  auto base = admiss::admissibility_test(sys);
  for (auto& m : sys.modes) m.b *= 3.0;
  auto scaled = admiss::admissibility_test(sys);
  CHECK(scaled.constant == doctest::Approx(9.0 * base.constant).epsilon(1e-12));
}

TEST_CASE("verdict matches the ratio test for the point-mass weight") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> lam(0.1, 16.0), amp(0.2, 3.0);
  for (int trial = 0; trial < 10; ++trial) {
    admiss::DiagonalSystem sys;
    for (int i = 0; i < 6; ++i)
      sys.modes.push_back({Complex{-lam(rng), 0.0}, Complex{amp(rng), 0.0}});
    sys.weight = zen::ZenBase::hardy();
    auto r = admiss::admissibility_test(sys);
    auto mu = admiss::system_to_measure(sys);
    mu.domain = measure::Domain::Axis;  // all eigenvalues are real here
    auto w = measure::widom_constant(mu, 1.0);
    CHECK(r.admissible == w.finite);
    if (r.admissible) CHECK(r.constant >= w.sup - 1e-9);
  }
}
