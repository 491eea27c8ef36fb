#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>

#include "doctest.h"
#include "lcembed/operators.hpp"

using namespace lcembed;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kSqrtPi = 1.7724538509055160273;

measure::PositiveMeasure halfplane_atom(Complex s, double m) {
  measure::PositiveMeasure mu;
  mu.domain = measure::Domain::HalfPlane;
  mu.atoms.push_back({s, m});
  return mu;
}

measure::PositiveMeasure axis_power(double c, double beta) {
  measure::PositiveMeasure mu;
  mu.domain = measure::Domain::Axis;
  mu.radial.push_back({0.0, kInf, {c, beta}, nullptr});
  return mu;
}

double exp_symbol(double t) { return std::exp(-t); }

}  // namespace

TEST_CASE("quadrature grids: weights, symmetry, validation") {
  for (int n : {4, 40, 200}) {
    auto u = ops::QuadratureGrid::uniform_composite(3.0, n);
    auto g = ops::QuadratureGrid::graded(3.0, n, 2.0);
    double su = 0, sg = 0;
    for (double w : u.weights) su += w;
    for (double w : g.weights) sg += w;
    CHECK(su == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(sg == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(u.reflection_symmetric());
    for (size_t i = 1; i < g.nodes.size(); ++i)
      CHECK(g.nodes[i] > g.nodes[i - 1]);
  }
  // grading pulls the first node toward 0 like (4/n)^gamma
  auto g = ops::QuadratureGrid::graded(1.0, 100, 2.0);
  CHECK(g.nodes.front() < 1.0 / (25.0 * 25.0));
  CHECK_FALSE(g.reflection_symmetric());

  auto lg = ops::QuadratureGrid::log_practical_infinity(100.0, 64);
  for (double t : lg.nodes) {
    CHECK(t >= 1e-4);
    CHECK(t <= 100.0);
  }

  CHECK_THROWS_AS(ops::QuadratureGrid::uniform_composite(1.0, 10), InputError);
  CHECK_THROWS_AS(ops::QuadratureGrid::graded(1.0, 6), InputError);
  CHECK_THROWS_AS(ops::QuadratureGrid::graded(-1.0, 8), InputError);
  CHECK_THROWS_AS(ops::QuadratureGrid::log_practical_infinity(0.5, 64),
                  InputError);
}

TEST_CASE("symbol transforms") {
  CHECK(ops::laplace_symbol(halfplane_atom({1.0, 0.0}, 1.0), 2.0).real() ==
        doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
  // Lebesgue gives exactly 1/t
  CHECK(ops::laplace_symbol(axis_power(1.0, 0.0), 4.0).real() ==
        doctest::Approx(0.25).epsilon(1e-13));
  // dx/sqrt(x) gives sqrt(pi/t)
  CHECK(ops::laplace_symbol(axis_power(1.0, -0.5), 1.0).real() ==
        doctest::Approx(kSqrtPi).epsilon(1e-10));

  // conjugate-symmetric atoms give the real symbol 2 exp(-t) cos(t)
  measure::PositiveMeasure pair;
  pair.domain = measure::Domain::HalfPlane;
  pair.atoms.push_back({Complex{1.0, 1.0}, 1.0});
  pair.atoms.push_back({Complex{1.0, -1.0}, 1.0});
  auto fn = ops::laplace_symbol_fn(pair);
  CHECK(fn(0.7) ==
        doctest::Approx(2.0 * std::exp(-0.7) * std::cos(0.7)).epsilon(1e-12));

  auto bad = ops::laplace_symbol_fn(halfplane_atom({1.0, 1.0}, 1.0));
  CHECK_THROWS_AS(bad(1.0), InputError);
}

TEST_CASE("rank-one symbol: norm equals the exponential moment") {
  auto g = ops::QuadratureGrid::graded(1.0, 200);
  auto op = ops::discretize_hankel(exp_symbol, g);
  CHECK(op.hermitian);
  auto nr = ops::operator_norm(op);
  CHECK(nr.converged);
  const double expect = (1.0 - std::exp(-2.0)) / 2.0;
  CHECK(nr.norm == doctest::Approx(expect).epsilon(1e-6));

  auto norms = ops::hs_and_trace_norms(op);
  CHECK(norms.hs == doctest::Approx(expect).epsilon(1e-6));
  CHECK(norms.trace == doctest::Approx(expect).epsilon(1e-6));

  auto zero = ops::discretize_hankel([](double) { return 0.0; }, g);
  CHECK(ops::operator_norm(zero).norm == doctest::Approx(0.0));
}

TEST_CASE("weighted kernel reduces to the plain one at exponent zero") {
  auto g = ops::QuadratureGrid::graded(1.0, 40);
  auto a = ops::discretize_hankel(exp_symbol, g);
  auto b = ops::discretize_weighted_hankel(exp_symbol, 0.0, g);
  CHECK((a.matrix - b.matrix).norm() == doctest::Approx(0.0));

  auto c = ops::discretize_weighted_hankel(exp_symbol, 1.0,
                                           ops::QuadratureGrid::graded(1.0, 200));
  // rank one: t exp(-t) outer itself, norm = int_0^1 t^2 exp(-2t) dt
  const double expect = (1.0 - 5.0 * std::exp(-2.0)) / 4.0;
  CHECK(ops::operator_norm(c).norm == doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("reversal construction is unitarily equivalent to the kernel") {
  auto g = ops::QuadratureGrid::uniform_composite(1.0, 100);
  for (auto h : {ops::Symbol(exp_symbol),
                 ops::Symbol([](double t) { return 1.0 / std::sqrt(t); }),
                 ops::Symbol([](double t) {
                   return std::exp(-t) + std::exp(-2.0 * t);
                 })}) {
    auto hank = ops::discretize_hankel(h, g);
    auto toep = ops::toeplitz_via_reversal(h, g);
    auto sh = ops::singular_values(hank);
    auto st = ops::singular_values(toep);
    REQUIRE(sh.size() == st.size());
    for (size_t i = 0; i < sh.size(); ++i)
      CHECK(sh[i] == doctest::Approx(st[i]).epsilon(1e-8).scale(sh.front()));
  }

  // diagonal entries carry g(0) = h(T)
  auto toep = ops::toeplitz_via_reversal(exp_symbol, g);
  for (int i = 0; i < toep.grid.size(); ++i)
    CHECK(toep.matrix(i, i).real() ==
          doctest::Approx(g.weights[i] * std::exp(-1.0)).epsilon(1e-12));

  CHECK_THROWS_AS(
      ops::toeplitz_via_reversal(exp_symbol, ops::QuadratureGrid::graded(1.0, 40)),
      InputError);
}

TEST_CASE("embedding factorization against the quadratic form") {
  auto g = ops::QuadratureGrid::graded(1.0, 200);
  auto z = ops::embedding_matrix(halfplane_atom({1.0, 0.0}, 1.0), g);
  CHECK(z.matrix.rows() == 1);
  CHECK(z.factorization_residual >= 0.0);
  CHECK(z.factorization_residual <= 1e-10);

  measure::PositiveMeasure mu;
  mu.domain = measure::Domain::HalfPlane;
  mu.atoms.push_back({Complex{0.5, 0.0}, 1.0});
  mu.atoms.push_back({Complex{1.0, 2.0}, 0.5});
  mu.atoms.push_back({Complex{3.0, -1.0}, 2.0});
  auto zz = ops::embedding_matrix(mu, g);
  auto form = ops::embedding_form(zz);
  const double zn = ops::operator_norm(zz).norm;
  const double fn = ops::operator_norm(form).norm;
  CHECK(zn * zn == doctest::Approx(fn).epsilon(1e-8));

  // the quadratic form is positive semidefinite
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(form.matrix,
                                                     Eigen::EigenvaluesOnly);
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    CHECK(es.eigenvalues()(i) >= -1e-10 * fn);

  measure::PositiveMeasure empty;
  empty.domain = measure::Domain::HalfPlane;
  auto ze = ops::embedding_matrix(empty, g);
  CHECK(ops::operator_norm(ze).norm == doctest::Approx(0.0));
}

TEST_CASE("norm backends on fixed matrices") {
  ops::DiscretizedOperator diag;
  diag.hermitian = true;
  diag.matrix = Eigen::MatrixXcd::Zero(2, 2);
  diag.matrix(0, 0) = 3.0;
  diag.matrix(1, 1) = 1.0;
  CHECK(ops::operator_norm(diag).norm == doctest::Approx(3.0).epsilon(1e-8));

  ops::DiscretizedOperator nil;
  nil.hermitian = false;
  nil.matrix = Eigen::MatrixXcd::Zero(2, 2);
  nil.matrix(0, 1) = 1.0;
  CHECK(ops::operator_norm(nil).norm == doctest::Approx(1.0).epsilon(1e-8));

  ops::DiscretizedOperator indef;
  indef.hermitian = true;
  indef.matrix = Eigen::MatrixXcd::Zero(2, 2);
  indef.matrix(0, 0) = 1.0;
  indef.matrix(1, 1) = -1.0;
  CHECK_THROWS_AS(ops::hs_and_trace_norms(indef), InputError);
}

TEST_CASE("trace of the quadratic form matches the atom sum") {
  measure::PositiveMeasure mu;
  mu.domain = measure::Domain::HalfPlane;
  mu.atoms.push_back({Complex{0.5, 0.0}, 0.8});
  mu.atoms.push_back({Complex{2.0, 0.0}, 1.3});
  auto g = ops::QuadratureGrid::graded(1.0, 400);
  auto form = ops::embedding_form(ops::embedding_matrix(mu, g));
  double expect = 0.0;
  for (const auto& a : mu.atoms) {
    const double s = a.location.real();
    expect += a.mass * (1.0 - std::exp(-2.0 * s)) / (2.0 * s);
  }
  CHECK(ops::hs_and_trace_norms(form).trace ==
        doctest::Approx(expect).epsilon(1e-8));
}

TEST_CASE("grid refinement leaves smooth-symbol norms unchanged") {
  for (auto h : {ops::Symbol(exp_symbol), ops::Symbol([](double t) {
                   return std::exp(-t) + std::exp(-2.0 * t);
                 })}) {
    const double n200 = ops::operator_norm(ops::discretize_hankel(
                                               h, ops::QuadratureGrid::graded(1.0, 200)))
                            .norm;
    const double n400 = ops::operator_norm(ops::discretize_hankel(
                                               h, ops::QuadratureGrid::graded(1.0, 400)))
                            .norm;
    CHECK(std::abs(n200 - n400) <= 1e-6 * n400);
  }
}

TEST_CASE("measure-side trace") {
  inner::InnerFunction theta;
  theta.singular_T = 1.0;
  CHECK(ops::trace_from_measure(halfplane_atom({1.0, 0.0}, 1.0), theta) ==
        doctest::Approx((1.0 - std::exp(-2.0)) / 2.0).epsilon(1e-12));
  // boundary atoms contribute mass times the angular derivative
  CHECK(ops::trace_from_measure(halfplane_atom({0.0, 3.0}, 2.0), theta) ==
        doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("finite model compression") {
  inner::InnerFunction one_zero;
  one_zero.zeros.push_back({{1.0, 0.0}, 1});
  auto m = ops::model_hankel_finite(halfplane_atom({1.0, 0.0}, 1.0), one_zero);
  REQUIRE(m.matrix.rows() == 1);
  CHECK(m.matrix(0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(m.warning.empty());

  measure::PositiveMeasure empty;
  empty.domain = measure::Domain::HalfPlane;
  CHECK(ops::operator_norm(ops::model_hankel_finite(empty, one_zero)).norm ==
        doctest::Approx(0.0));

  // compression never exceeds the full quadratic form
  inner::InnerFunction two_zeros;
  two_zeros.zeros.push_back({{1.0, 0.0}, 1});
  two_zeros.zeros.push_back({{3.0, 0.0}, 1});
  auto mu = halfplane_atom({1.0, 0.0}, 1.0);
  const double model =
      ops::operator_norm(ops::model_hankel_finite(mu, two_zeros)).norm;
  auto full = ops::discretize_hankel(
      ops::laplace_symbol_fn(mu),
      ops::QuadratureGrid::log_practical_infinity(1e4, 400));
  CHECK(model <= ops::operator_norm(full).norm + 1e-6);

  inner::InnerFunction close;
  close.zeros.push_back({{1.0, 0.0}, 1});
  close.zeros.push_back({{1.0 + 1e-9, 0.0}, 1});
  auto degenerate = ops::model_hankel_finite(mu, close);
  CHECK_FALSE(degenerate.warning.empty());

  inner::InnerFunction repeated;
  repeated.zeros.push_back({{1.0, 0.0}, 2});
  CHECK_THROWS_AS(ops::model_hankel_finite(mu, repeated), InputError);
  inner::InnerFunction with_singular;
  with_singular.zeros.push_back({{1.0, 0.0}, 1});
  with_singular.singular_T = 1.0;
  CHECK_THROWS_AS(ops::model_hankel_finite(mu, with_singular), InputError);
}
