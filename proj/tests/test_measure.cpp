#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "lcembed/measure.hpp"

using namespace lcembed;
using measure::CarlesonSquare;
using measure::Domain;
using measure::PositiveMeasure;

namespace {

PositiveMeasure atomic(Domain d, std::vector<measure::Atom> atoms) {
  PositiveMeasure mu;
  mu.domain = d;
  mu.atoms = std::move(atoms);
  return mu;
}

PositiveMeasure sqrt_density() {
  PositiveMeasure mu;
  mu.domain = Domain::Axis;
  mu.radial.push_back({0.0, std::numeric_limits<double>::infinity(),
                       {1.0, -0.5}, nullptr});
  return mu;
}

double hardy_nu(const CarlesonSquare& q) { return q.h; }

}  // namespace

TEST_CASE("square_mass: planar Lebesgue area") {
  PositiveMeasure mu;
  mu.domain = Domain::HalfPlane;
  mu.planar.push_back({0.0, 10.0, -10.0, 10.0, 1.0});
  CHECK(measure::square_mass(mu, {0.0, 2.0}) == doctest::Approx(4.0));
}

TEST_CASE("square_mass: atom containment with closed boundary") {
  auto mu = atomic(Domain::HalfPlane, {{Complex{1.0, 0.0}, 1.0}});
  CHECK(measure::square_mass(mu, {0.0, 1.0}) == 1.0);
  CHECK(measure::square_mass(mu, {0.0, 0.999}) == 0.0);

  // boundary segment {x = 0} belongs to the square
  auto boundary = atomic(Domain::HalfPlane, {{Complex{0.0, 0.5}, 3.0}});
  CHECK(measure::square_mass(boundary, {0.5, 1.0}) == 3.0);
  CHECK(measure::square_mass(boundary, {0.0, 1.0}) == 3.0);  // |y-a| = h/2
}

TEST_CASE("square_mass and interval_mass of dx/sqrt(x)") {
  auto mu = sqrt_density();
  CHECK(measure::square_mass(mu, {0.0, 4.0}) == doctest::Approx(4.0));
  CHECK(measure::interval_mass(mu, 4.0) == doctest::Approx(4.0));
  CHECK(measure::interval_mass(mu, 1.0) == doctest::Approx(2.0));
}

TEST_CASE("interval_mass basics") {
  PositiveMeasure leb;
  leb.domain = Domain::Axis;
  leb.radial.push_back(
      {0.0, std::numeric_limits<double>::infinity(), {1.0, 0.0}, nullptr});
  CHECK(measure::interval_mass(leb, 3.0) == doctest::Approx(3.0));

  auto origin = atomic(Domain::Axis, {{Complex{0.0, 0.0}, 5.0}});
  CHECK(measure::interval_mass(origin, 1.0) == 5.0);
}

TEST_CASE("interval_mass rejects planar measures") {
  PositiveMeasure mu;
  mu.domain = Domain::HalfPlane;
  mu.planar.push_back({0.0, 1.0, 0.0, 1.0, 1.0});
  CHECK_THROWS_AS(measure::interval_mass(mu, 1.0), InputError);
}

TEST_CASE("integrate_kernel oracle values") {
  auto atom2 = atomic(Domain::HalfPlane, {{Complex{2.0, 0.0}, 1.0}});
  auto r1 = measure::integrate_kernel(atom2, [](Complex s) { return 1.0 / s; });
  CHECK(r1.real() == doctest::Approx(0.5).epsilon(1e-14));

  PositiveMeasure leb;
  leb.domain = Domain::Axis;
  leb.radial.push_back(
      {0.0, std::numeric_limits<double>::infinity(), {1.0, 0.0}, nullptr});
  auto r2 = measure::integrate_kernel(
      leb, [](Complex s) { return 1.0 / ((1.0 + s) * (1.0 + s)); });
  CHECK(r2.converged);
  CHECK(r2.real() == doctest::Approx(1.0).epsilon(1e-8));

  auto r3 = measure::integrate_kernel(
      sqrt_density(), [](Complex s) { return std::exp(-s); });
  CHECK(r3.converged);
  CHECK(r3.real() == doctest::Approx(1.7724538509055160).epsilon(1e-8));
}

TEST_CASE("carleson_sup: single atom, Hardy denominator") {
  auto mu = atomic(Domain::HalfPlane, {{Complex{1.0, 0.0}, 3.0}});
  auto r = measure::carleson_sup(mu, hardy_nu, 1.0);
  CHECK(r.finite);
  CHECK(r.exact);
  CHECK(r.sup == doctest::Approx(3.0).epsilon(1e-12));
  REQUIRE_FALSE(r.witnesses.empty());
  CHECK(r.witnesses.front().q.h == doctest::Approx(1.0));
}

TEST_CASE("carleson_sup: dx/sqrt(x) against Hardy") {
  auto r = measure::carleson_sup(sqrt_density(), hardy_nu, 1.0);
  CHECK(r.finite);
  CHECK(r.sup == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(r.certified_lower_bound <= r.sup + 1e-12);
  CHECK(r.certified_lower_bound == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("carleson_sup is nonincreasing in h_min") {
  auto mu = atomic(Domain::HalfPlane, {{Complex{0.3, 1.0}, 2.0},
                                       {Complex{2.0, -0.5}, 1.0},
                                       {Complex{0.7, 0.2}, 0.5}});
  double prev = std::numeric_limits<double>::infinity();
  for (double h_min : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    auto r = measure::carleson_sup(mu, hardy_nu, h_min);
    CHECK(r.sup <= prev + 1e-12);
    prev = r.sup;
  }
}

TEST_CASE("carleson_sup exhaustive atomic oracle") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> coord(0.05, 4.0), ord(-3.0, 3.0),
      mass(0.1, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + (int)(rng() % 19);
    PositiveMeasure mu;
    mu.domain = Domain::HalfPlane;
    for (int i = 0; i < n; ++i)
      mu.atoms.push_back({Complex{coord(rng), ord(rng)}, mass(rng)});
    const double h_min = 1.0;
    auto r = measure::carleson_sup(mu, hardy_nu, h_min);

    // brute force: a square attaining the sup can be shrunk until its side
    // is h_min, an atom abscissa, or the ordinate span of two atoms, with
    // the window aligned to touch an atom
    std::vector<double> sides = {h_min};
    for (const auto& a : mu.atoms)
      if (a.location.real() >= h_min) sides.push_back(a.location.real());
    for (const auto& a : mu.atoms)
      for (const auto& b : mu.atoms) {
        const double gap = std::abs(a.location.imag() - b.location.imag());
        if (gap >= h_min) sides.push_back(gap);
      }
    double best = 0.0;
    for (double h : sides) {
      for (const auto& a : mu.atoms) {
        for (double center : {a.location.imag(), a.location.imag() + h / 2,
                              a.location.imag() - h / 2}) {
          const double m = measure::square_mass(mu, {center, h});
          best = std::max(best, m / h);
        }
      }
    }
    CHECK(r.sup == doctest::Approx(best).epsilon(1e-10));
    CHECK(r.exact);
  }
}

TEST_CASE("region additivity under a vertical bisection") {
  // split the underlying planar density at x = h/2 and check the two
  // clipped measures add back to the full square mass
  PositiveMeasure full, left, right;
  for (auto* m : {&full, &left, &right}) m->domain = Domain::HalfPlane;
  auto dens = [](double, double) { return 1.0; };
  (void)dens;
  full.planar.push_back({0.0, 2.0, -1.0, 1.0, 1.5});
  left.planar.push_back({0.0, 0.85, -1.0, 1.0, 1.5});
  right.planar.push_back({0.85, 2.0, -1.0, 1.0, 1.5});
  const CarlesonSquare q{0.3, 1.7};
  const double whole = measure::square_mass(full, q);
  const double parts =
      measure::square_mass(left, q) + measure::square_mass(right, q);
  CHECK(whole == doctest::Approx(parts).epsilon(1e-8));
}

TEST_CASE("monotonicity of square_mass in h") {
  auto mu = atomic(Domain::HalfPlane,
                   {{Complex{0.3, 1.0}, 2.0}, {Complex{2.0, -0.5}, 1.0}});
  mu.radial.push_back({0.0, 3.0, {0.7, 0.0}, nullptr});
  double prev = 0.0;
  for (double h = 0.1; h < 8.0; h *= 1.3) {
    const double m = measure::square_mass(mu, {0.2, h});
    CHECK(m >= prev - 1e-12);
    prev = m;
  }
}

TEST_CASE("widom_constant oracle values") {
  PositiveMeasure leb;
  leb.domain = Domain::Axis;
  leb.radial.push_back(
      {0.0, std::numeric_limits<double>::infinity(), {1.0, 0.0}, nullptr});
  CHECK(measure::widom_constant(leb, 1.0).sup == doctest::Approx(1.0));

  auto w = measure::widom_constant(sqrt_density(), 1.0);
  CHECK(w.finite);
  CHECK(w.sup == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(w.witness_x == doctest::Approx(1.0));

  auto w0 = measure::widom_constant(sqrt_density(), 0.0);
  CHECK_FALSE(w0.finite);

  auto origin = atomic(Domain::Axis, {{Complex{0.0, 0.0}, 1.0}});
  CHECK(measure::widom_constant(origin, 1.0).sup == doctest::Approx(1.0));
}

TEST_CASE("power_weight_constant oracle values") {
  PositiveMeasure mu;  // x^2 dx, alpha = 1
  mu.domain = Domain::Axis;
  mu.radial.push_back(
      {0.0, std::numeric_limits<double>::infinity(), {1.0, 2.0}, nullptr});
  auto r = measure::power_weight_constant(mu, 1.0, 1.0);
  CHECK(r.finite);
  CHECK(r.sup == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  auto origin = atomic(Domain::Axis, {{Complex{0.0, 0.0}, 2.0}});
  CHECK(measure::power_weight_constant(origin, 0.5, 1.0).sup ==
        doctest::Approx(2.0));

  CHECK_THROWS_AS(measure::power_weight_constant(origin, -0.1, 1.0),
                  InputError);
}

TEST_CASE("power_weight_constant at alpha 0 reduces to widom_constant") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> loc(0.0, 5.0), mass(0.1, 3.0);
  for (int trial = 0; trial < 5; ++trial) {
    PositiveMeasure mu;
    mu.domain = Domain::Axis;
    for (int i = 0; i < 6; ++i)
      mu.atoms.push_back({Complex{loc(rng), 0.0}, mass(rng)});
    CHECK(measure::power_weight_constant(mu, 0.0, 1.0).sup ==
          doctest::Approx(measure::widom_constant(mu, 1.0).sup)
              .epsilon(1e-14));
  }
}

TEST_CASE("axis measures: carleson_sup against Hardy equals widom within 2x") {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> loc(0.0, 6.0), mass(0.1, 3.0);
  for (int trial = 0; trial < 10; ++trial) {
    PositiveMeasure mu;
    mu.domain = Domain::Axis;
    for (int i = 0; i < 8; ++i)
      mu.atoms.push_back({Complex{loc(rng), 0.0}, mass(rng)});
    const double widom = measure::widom_constant(mu, 1.0).sup;
    const double carls = measure::carleson_sup(mu, hardy_nu, 1.0).sup;
    CHECK(widom <= carls + 1e-10);
    CHECK(carls <= 2.0 * widom + 1e-10);
  }
}

TEST_CASE("validation rejects malformed measures") {
  auto neg = atomic(Domain::HalfPlane, {{Complex{1.0, 0.0}, -1.0}});
  CHECK_THROWS_AS(measure::validate(neg), InputError);

  auto left = atomic(Domain::HalfPlane, {{Complex{-1.0, 0.0}, 1.0}});
  CHECK_THROWS_AS(measure::validate(left), InputError);

  PositiveMeasure bad_piece;
  bad_piece.domain = Domain::Axis;
  bad_piece.radial.push_back({0.0, 1.0, {1.0, -1.5}, nullptr});  // beta <= -1
  CHECK_THROWS_AS(measure::validate(bad_piece), InputError);

  PositiveMeasure disc_far;
  disc_far.domain = Domain::Disc;
  disc_far.radial.push_back({0.0, 2.0, {1.0, 0.0}, nullptr});
  CHECK_THROWS_AS(measure::validate(disc_far), InputError);

  CHECK_THROWS_AS(measure::square_mass(atomic(Domain::HalfPlane, {}),
                                       {0.0, -1.0}),
                  InputError);
}
