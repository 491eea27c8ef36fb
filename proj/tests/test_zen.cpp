#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "lcembed/zen.hpp"

using namespace lcembed;

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kInf = std::numeric_limits<double>::infinity();

zen::ZenBase power_piece_base(double beta) {
  zen::ZenBase b;
  b.density.push_back({0.0, kInf, {1.0, beta}, nullptr});
  return b;
}

}  // namespace

TEST_CASE("doubling ratio closed forms") {
  auto hardy = zen::delta2_ratio(zen::ZenBase::hardy());
  CHECK(hardy.satisfied);
  CHECK(hardy.exact);
  CHECK(hardy.sup == doctest::Approx(1.0));

  auto bergman = zen::delta2_ratio(zen::ZenBase::bergman());
  CHECK(bergman.satisfied);
  CHECK(bergman.exact);
  CHECK(bergman.sup == doctest::Approx(2.0));

  // density r^(1+2a): interval mass ~ t^(2+2a), ratio 2^(2+2a)
  for (double alpha : {0.5, 1.0}) {
    auto r = zen::delta2_ratio(power_piece_base(1.0 + 2.0 * alpha));
    CHECK(r.satisfied);
    CHECK(r.sup ==
          doctest::Approx(std::pow(2.0, 2.0 + 2.0 * alpha)).epsilon(1e-12));
  }
}

TEST_CASE("doubling failure is detected for super-polynomial growth") {
  zen::ZenBase b;
  auto f = [](double r) {
    const double l = std::log1p(r);
    return std::exp(l * l);
  };
  b.density.push_back({0.0, kInf, {0.0, 0.0}, f});
  auto d = zen::delta2_ratio(b);
  CHECK_FALSE(d.satisfied);

  measure::PositiveMeasure mu;
  mu.domain = measure::Domain::HalfPlane;
  mu.atoms.push_back({Complex{1.0, 0.0}, 1.0});
  CHECK_THROWS_AS(zen::finite_time_embedding_test(mu, b, 1.0),
                  HypothesisError);
}

TEST_CASE("weights: Hardy and Bergman correspondences") {
  auto hardy = zen::weight_from_base(zen::ZenBase::hardy());
  auto bergman = zen::weight_from_base(zen::ZenBase::bergman());
  for (int i = 0; i <= 100; ++i) {
    const double t = std::pow(10.0, -4.0 + 8.0 * i / 100.0);
    CHECK(hardy(t) == doctest::Approx(2.0 * kPi).epsilon(1e-10));
    CHECK(bergman(t) == doctest::Approx(kPi / t).epsilon(1e-10));
  }
}

TEST_CASE("weights: power preset matches the closed form") {
  // alpha = 1/2 coincides with Bergman
  auto half = zen::weight_from_base(zen::ZenBase::power(0.5));
  CHECK(half(2.0) == doctest::Approx(kPi / 2.0).epsilon(1e-12));

  auto one = zen::weight_from_base(zen::ZenBase::power(1.0));
  for (double t : {0.1, 1.0, 7.5}) {
    // 2*pi*Gamma(2)/(2t)^2
    CHECK(one(t) == doctest::Approx(2.0 * kPi / (4.0 * t * t)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(zen::ZenBase::power(0.0), InputError);
}

TEST_CASE("weights: numeric path agrees with the closed form") {
  // Lebesgue split into two pieces is not tag-recognized
  zen::ZenBase split;
  split.density.push_back({0.0, 1.0, {1.0, 0.0}, nullptr});
  split.density.push_back({1.0, kInf, {1.0, 0.0}, nullptr});
  auto w = zen::weight_from_base(split);
  for (double t : {0.05, 0.7, 3.0, 40.0})
    CHECK(w(t) == doctest::Approx(kPi / t).epsilon(1e-8));
}

TEST_CASE("weights are positive, nonincreasing, and above the tail bound") {
  const auto bases = {zen::ZenBase::hardy(), zen::ZenBase::bergman(),
                      zen::ZenBase::power(0.75)};
  for (const auto& b : bases) {
    auto w = zen::weight_from_base(b);
    const double nu_half = zen::base_interval_mass(b, 0.5);
    double prev = kInf;
    for (int i = 0; i <= 100; ++i) {
      const double t = std::pow(10.0, -4.0 + 8.0 * i / 100.0);
      const double v = w(t);
      CHECK(v > 0.0);
      CHECK(v <= prev * (1.0 + 1e-12));
      CHECK(v >= 2.0 * kPi * nu_half * std::exp(-t) * (1.0 - 1e-12));
      prev = v;
    }
  }
}

TEST_CASE("product measure of a Carleson square") {
  CHECK(zen::product_square_mass(zen::ZenBase::hardy(), {3.0, 7.0}) ==
        doctest::Approx(7.0));
  CHECK(zen::product_square_mass(zen::ZenBase::bergman(), {-1.0, 3.0}) ==
        doctest::Approx(9.0));
  // density r^(1+2a), a=1/2: mass = h^(2+2a)/(2+2a) * h = 16/3 at h=2
  CHECK(zen::product_square_mass(power_piece_base(2.0), {0.0, 2.0}) ==
        doctest::Approx(16.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("finite-interval embedding oracle values") {
  measure::PositiveMeasure leb;
  leb.domain = measure::Domain::Axis;
  leb.radial.push_back({0.0, kInf, {1.0, 0.0}, nullptr});
  auto r1 = zen::finite_time_embedding_test(leb, zen::ZenBase::hardy(), 1.0);
  CHECK(r1.bounded);
  CHECK(r1.constant_k == doctest::Approx(1.0).epsilon(1e-6));

  measure::PositiveMeasure sqrtm;
  sqrtm.domain = measure::Domain::Axis;
  sqrtm.radial.push_back({0.0, kInf, {1.0, -0.5}, nullptr});
  auto r2 = zen::finite_time_embedding_test(sqrtm, zen::ZenBase::hardy(), 5.0);
  CHECK(r2.bounded);
  CHECK(r2.constant_k == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(r2.T == doctest::Approx(5.0));

  measure::PositiveMeasure atom;
  atom.domain = measure::Domain::HalfPlane;
  atom.atoms.push_back({Complex{1.0, 0.0}, 3.0});
  auto r3 = zen::finite_time_embedding_test(atom, zen::ZenBase::hardy(), 1.0);
  CHECK(r3.bounded);
  CHECK(r3.constant_k == doctest::Approx(3.0).epsilon(1e-12));
  REQUIRE_FALSE(r3.witnesses.empty());
  CHECK(r3.witnesses.front().q.h == doctest::Approx(1.0));
}

TEST_CASE("embedding constant scales linearly in the masses") {
  measure::PositiveMeasure mu;
  mu.domain = measure::Domain::HalfPlane;
  mu.atoms.push_back({Complex{0.5, 0.3}, 1.0});
  mu.atoms.push_back({Complex{2.0, -1.0}, 0.7});
  auto base = zen::finite_time_embedding_test(mu, zen::ZenBase::hardy(), 1.0);
  for (auto& a : mu.atoms) a.mass *= 2.0;
  auto doubled =
      zen::finite_time_embedding_test(mu, zen::ZenBase::hardy(), 1.0);
  CHECK(doubled.constant_k ==
        doctest::Approx(2.0 * base.constant_k).epsilon(1e-14));
}

TEST_CASE("embedding verdict matches widom finiteness for atomic axis input") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> loc(0.0, 8.0), mass(0.1, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    measure::PositiveMeasure mu;
    mu.domain = measure::Domain::Axis;
    for (int i = 0; i < 5; ++i)
      mu.atoms.push_back({Complex{loc(rng), 0.0}, mass(rng)});
    auto emb = zen::finite_time_embedding_test(mu, zen::ZenBase::hardy(), 1.0);
    auto wid = measure::widom_constant(mu, 1.0);
    CHECK(emb.bounded == wid.finite);
  }
}

TEST_CASE("base validation requires 0 in the support") {
  zen::ZenBase detached;
  detached.density.push_back({1.0, 2.0, {1.0, 0.0}, nullptr});
  CHECK_THROWS_AS(zen::validate(detached), InputError);

  zen::ZenBase empty;
  CHECK_THROWS_AS(zen::validate(empty), InputError);
}
