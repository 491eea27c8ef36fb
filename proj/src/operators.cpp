#include "lcembed/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace lcembed::ops {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 4-point Gauss-Legendre on [-1, 1].
constexpr double kGl4X[2] = {0.3399810435848563, 0.8611363115940526};
constexpr double kGl4W[2] = {0.6521451548625461, 0.3478548451374538};

void append_panel(QuadratureGrid& g, double a, double b) {
  const double c = 0.5 * (a + b), hh = 0.5 * (b - a);
  const double xs[4] = {c - hh * kGl4X[1], c - hh * kGl4X[0],
                        c + hh * kGl4X[0], c + hh * kGl4X[1]};
  const double ws[4] = {hh * kGl4W[1], hh * kGl4W[0], hh * kGl4W[0],
                        hh * kGl4W[1]};
  for (int i = 0; i < 4; ++i) {
    g.nodes.push_back(xs[i]);
    g.weights.push_back(ws[i]);
  }
}

}  // namespace

bool QuadratureGrid::reflection_symmetric(double tol) const {
  const int n = size();
  for (int i = 0; i < n; ++i) {
    const int j = n - 1 - i;
    if (std::abs(nodes[i] + nodes[j] - T) > tol * std::max(1.0, T)) return false;
    if (std::abs(weights[i] - weights[j]) > tol * std::max(1.0, T)) return false;
  }
  return true;
}

QuadratureGrid QuadratureGrid::uniform_composite(double T, int n) {
  if (!(T > 0)) throw InputError("grid needs T > 0");
  if (n < 4 || n % 4 != 0)
    throw InputError("uniform composite grid needs n to be a multiple of 4");
  QuadratureGrid g;
  g.T = T;
  g.scheme = Scheme::UniformComposite;
  const int panels = n / 4;
  for (int k = 0; k < panels; ++k)
    append_panel(g, T * k / panels, T * (k + 1) / panels);
  return g;
}

QuadratureGrid QuadratureGrid::graded(double T, int n, double gamma) {
  if (!(T > 0)) throw InputError("grid needs T > 0");
  if (n < 4 || n % 4 != 0)
    throw InputError("graded grid needs n to be a multiple of 4");
  if (!(gamma >= 1)) throw InputError("grading exponent must be >= 1");
  QuadratureGrid g;
  g.T = T;
  g.scheme = Scheme::Graded;
  g.gamma = gamma;
  const int panels = n / 4;
  for (int k = 0; k < panels; ++k) {
    const double a = T * std::pow((double)k / panels, gamma);
    const double b = T * std::pow((double)(k + 1) / panels, gamma);
    append_panel(g, a, b);
  }
  return g;
}

QuadratureGrid QuadratureGrid::log_practical_infinity(double T_inf, int n) {
  if (!(T_inf > 1)) throw InputError("practical-infinity cutoff must exceed 1");
  if (n < 2) throw InputError("grid needs at least 2 nodes");
  QuadratureGrid g;
  g.T = T_inf;
  g.scheme = Scheme::LogInfinity;
  const double la = std::log(T_inf) * -2.0;
  const double lb = std::log(T_inf);
  const double dl = (lb - la) / n;
  for (int i = 0; i < n; ++i) {
    const double t = std::exp(la + (i + 0.5) * dl);
    g.nodes.push_back(t);
    g.weights.push_back(t * dl);
  }
  return g;
}

Complex laplace_symbol(const measure::PositiveMeasure& mu, double t) {
  if (mu.domain == measure::Domain::Disc)
    throw InputError("laplace symbol expects a half-plane or axis measure");
  Complex v{0.0, 0.0};
  for (const auto& a : mu.atoms) v += a.mass * std::exp(-a.location * t);
  for (const auto& p : mu.radial) {
    if (std::isinf(p.x1) && t <= 0)
      throw InputError("laplace symbol diverges for t <= 0 with unbounded support");
    if (p.is_power() && p.x0 == 0 && std::isinf(p.x1)) {
      // int_0^inf c s^beta exp(-s t) ds = c Gamma(beta+1) / t^(beta+1)
      v += p.power.c * std::tgamma(p.power.beta + 1.0) /
           std::pow(t, p.power.beta + 1.0);
      continue;
    }
    measure::PositiveMeasure one;
    one.domain = measure::Domain::Axis;
    one.radial.push_back(p);
    auto r = measure::integrate_kernel(
        one, [t](Complex s) { return std::exp(-s * t); }, 1e-12);
    if (!r.converged)
      throw InputError("laplace symbol integral did not converge");
    v += r.value;
  }
  for (const auto& p : mu.planar) {
    // separable: int exp(-(x+iy) t) over the rectangle
    auto strip = [t](double a, double b) -> Complex {
      // int_a^b exp(-u t) du
      if (t == 0) return Complex{b - a, 0.0};
      return (std::exp(-a * t) - std::exp(-b * t)) / t;
    };
    const Complex re_part = strip(p.re0, p.re1);
    const Complex im_part =
        t == 0 ? Complex{p.im1 - p.im0, 0.0}
               : (std::exp(Complex{0.0, -p.im0 * t}) -
                  std::exp(Complex{0.0, -p.im1 * t})) /
                     Complex{0.0, t};
    v += p.density * re_part * im_part;
  }
  return v;
}

Symbol laplace_symbol_fn(const measure::PositiveMeasure& mu) {
  measure::validate(mu);
  return [mu](double t) {
    const Complex v = laplace_symbol(mu, t);
    if (std::abs(v.imag()) > 1e-10 * (1.0 + std::abs(v.real())))
      throw InputError(
          "laplace symbol is complex-valued; the measure is not "
          "conjugate-symmetric");
    return v.real();
  };
}

DiscretizedOperator discretize_hankel(const Symbol& h, const QuadratureGrid& g) {
  const int n = g.size();
  if (n == 0) throw InputError("empty quadrature grid");
  DiscretizedOperator op;
  op.grid = g;
  op.kind = OperatorKind::Hankel;
  op.hermitian = true;
  op.matrix.resize(n, n);
  std::vector<double> sq(n);
  for (int i = 0; i < n; ++i) sq[i] = std::sqrt(g.weights[i]);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double v = sq[i] * h(g.nodes[i] + g.nodes[j]) * sq[j];
      op.matrix(i, j) = v;
      op.matrix(j, i) = v;
    }
  return op;
}

DiscretizedOperator discretize_weighted_hankel(const Symbol& h, double alpha,
                                               const QuadratureGrid& g) {
  if (!(alpha >= 0)) throw InputError("weight exponent must be >= 0");
  const int n = g.size();
  if (n == 0) throw InputError("empty quadrature grid");
  DiscretizedOperator op;
  op.grid = g;
  op.kind = OperatorKind::WeightedHankel;
  op.hermitian = true;
  op.matrix.resize(n, n);
  std::vector<double> sq(n), ta(n);
  for (int i = 0; i < n; ++i) {
    sq[i] = std::sqrt(g.weights[i]);
    ta[i] = std::pow(g.nodes[i], alpha);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double v = sq[i] * ta[i] * h(g.nodes[i] + g.nodes[j]) * ta[j] * sq[j];
      op.matrix(i, j) = v;
      op.matrix(j, i) = v;
    }
  return op;
}

DiscretizedOperator toeplitz_via_reversal(const Symbol& h,
                                          const QuadratureGrid& g) {
  if (!g.reflection_symmetric())
    throw InputError("reversal construction needs a reflection-symmetric grid");
  const int n = g.size();
  DiscretizedOperator op;
  op.grid = g;
  op.kind = OperatorKind::ToeplitzReversal;
  op.hermitian = false;
  op.matrix.resize(n, n);
  std::vector<double> sq(n);
  for (int i = 0; i < n; ++i) sq[i] = std::sqrt(g.weights[i]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      op.matrix(i, j) = sq[i] * h(g.T - (g.nodes[i] - g.nodes[j])) * sq[j];
  return op;
}

namespace {

// Mass quantiles of one radial piece: n atoms of equal mass at the midpoints
// G^{-1}((k+1/2) m/n).
std::vector<measure::Atom> atomize_piece(const measure::RadialPiece& p, int n) {
  const double m = measure::radial_piece_mass(p, p.x0, p.x1);
  if (!std::isfinite(m))
    throw InputError("density piece with infinite mass cannot be atomized");
  std::vector<measure::Atom> out;
  if (m == 0) return out;
  for (int k = 0; k < n; ++k) {
    const double q = m * (k + 0.5) / n;
    double x;
    if (p.is_power()) {
      const double c = p.power.c, beta = p.power.beta;
      if (beta == -1.0) {
        x = p.x0 * std::exp(q / c);
      } else {
        const double e = beta + 1.0;
        x = std::pow(std::pow(p.x0, e) + e * q / c, 1.0 / e);
      }
    } else {
      double lo = p.x0, hi = std::isinf(p.x1) ? std::max(1.0, 2 * p.x0) : p.x1;
      while (std::isfinite(p.x1) == false &&
             measure::radial_piece_mass(p, p.x0, hi) < q)
        hi *= 2;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (measure::radial_piece_mass(p, p.x0, mid) < q)
          lo = mid;
        else
          hi = mid;
      }
      x = 0.5 * (lo + hi);
    }
    out.push_back({Complex{x, 0.0}, m / n});
  }
  return out;
}

std::vector<measure::Atom> atomize(const measure::PositiveMeasure& mu,
                                   int atoms_per_piece) {
  std::vector<measure::Atom> atoms = mu.atoms;
  for (const auto& p : mu.radial) {
    auto a = atomize_piece(p, atoms_per_piece);
    atoms.insert(atoms.end(), a.begin(), a.end());
  }
  const int side = std::max(2, (int)std::lround(std::sqrt(atoms_per_piece)));
  for (const auto& p : mu.planar) {
    const double dx = (p.re1 - p.re0) / side, dy = (p.im1 - p.im0) / side;
    const double cell = p.density * dx * dy;
    for (int i = 0; i < side; ++i)
      for (int j = 0; j < side; ++j)
        atoms.push_back({Complex{p.re0 + (i + 0.5) * dx, p.im0 + (j + 0.5) * dy},
                         cell});
  }
  return atoms;
}

Eigen::MatrixXcd embedding_rows(const std::vector<measure::Atom>& atoms,
                                const QuadratureGrid& g) {
  const int n = g.size();
  const int m = (int)atoms.size();
  Eigen::MatrixXcd z(m, n);
  for (int j = 0; j < m; ++j) {
    const double sm = std::sqrt(atoms[j].mass);
    for (int i = 0; i < n; ++i)
      z(j, i) = sm * std::exp(-atoms[j].location * g.nodes[i]) *
                std::sqrt(g.weights[i]);
  }
  return z;
}

double top_singular_value(const Eigen::MatrixXcd& a);

}  // namespace

DiscretizedOperator embedding_matrix(const measure::PositiveMeasure& mu,
                                     const QuadratureGrid& g,
                                     int atoms_per_piece) {
  measure::validate(mu);
  if (mu.domain == measure::Domain::Disc)
    throw InputError("embedding matrix expects a half-plane or axis measure");
  if (atoms_per_piece < 1) throw InputError("atoms_per_piece must be >= 1");
  DiscretizedOperator op;
  op.grid = g;
  op.kind = OperatorKind::Embedding;
  op.hermitian = false;

  auto atoms = atomize(mu, atoms_per_piece);
  op.matrix = embedding_rows(atoms, g);

  if (!mu.radial.empty() || !mu.planar.empty()) {
    auto finer = atomize(mu, 2 * atoms_per_piece);
    const double n1 = top_singular_value(op.matrix);
    const double n2 = top_singular_value(embedding_rows(finer, g));
    op.atomization_error = std::abs(n2 - n1) / std::max(n2, 1e-300);
  }

  bool real_support = true;
  for (const auto& a : atoms)
    if (a.location.imag() != 0.0) real_support = false;
  if (real_support) {
    Eigen::MatrixXcd gamma = op.matrix.adjoint() * op.matrix;
    Eigen::MatrixXcd direct(g.size(), g.size());
    for (int i = 0; i < g.size(); ++i)
      for (int j = 0; j < g.size(); ++j) {
        double h = 0;
        const double t = g.nodes[i] + g.nodes[j];
        for (const auto& a : atoms)
          h += a.mass * std::exp(-a.location.real() * t);
        direct(i, j) = std::sqrt(g.weights[i]) * h * std::sqrt(g.weights[j]);
      }
    op.factorization_residual = (gamma - direct).norm();
  }
  return op;
}

DiscretizedOperator embedding_form(const DiscretizedOperator& z) {
  if (z.kind != OperatorKind::Embedding)
    throw InputError("embedding_form expects an embedding matrix");
  DiscretizedOperator op;
  op.grid = z.grid;
  op.kind = OperatorKind::Embedding;
  op.hermitian = true;
  op.matrix = z.matrix.adjoint() * z.matrix;
  op.factorization_residual = z.factorization_residual;
  op.atomization_error = z.atomization_error;
  return op;
}

namespace {

// Power iteration on a Hermitian PSD matrix; returns the top eigenvalue.
struct PowerResult {
  double lambda = 0.0;
  int iterations = 0;
  bool converged = false;
};

PowerResult power_top_eigenvalue(const Eigen::MatrixXcd& b, double tol,
                                 int max_iter) {
  const int n = (int)b.rows();
  std::mt19937 rng(12345);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = Complex{gauss(rng), gauss(rng)};
  v.normalize();
  PowerResult r;
  double lambda = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    Eigen::VectorXcd w = b * v;
    lambda = std::real(v.dot(w));  // Rayleigh quotient, real for Hermitian b
    const double resid = (w - lambda * v).norm();
    r.iterations = it;
    if (resid <= tol * std::max(std::abs(lambda), 1e-300)) {
      r.lambda = lambda;
      r.converged = true;
      return r;
    }
    const double nw = w.norm();
    if (nw == 0.0) {  // measure-zero start vector in the kernel
      r.lambda = 0.0;
      r.converged = true;
      return r;
    }
    v = w / nw;
  }
  r.lambda = lambda;
  return r;
}

double top_singular_value(const Eigen::MatrixXcd& a) {
  Eigen::MatrixXcd b = a.adjoint() * a;
  auto r = power_top_eigenvalue(b, 1e-10, 50000);
  return std::sqrt(std::max(0.0, r.lambda));
}

}  // namespace

NormResult operator_norm(const DiscretizedOperator& op, double tol) {
  NormResult out;
  if (op.matrix.rows() == 0 || op.matrix.cols() == 0) {
    out.norm = 0.0;
    return out;
  }
  if (op.hermitian) {
    auto r = power_top_eigenvalue(op.matrix, tol, 50000);
    out.norm = std::abs(r.lambda);
    out.iterations = r.iterations;
    out.converged = r.converged;
    return out;
  }
  Eigen::MatrixXcd b = op.matrix.adjoint() * op.matrix;
  auto r = power_top_eigenvalue(b, tol, 50000);
  out.norm = std::sqrt(std::max(0.0, r.lambda));
  out.iterations = r.iterations;
  out.converged = r.converged;
  return out;
}

std::vector<double> singular_values(const DiscretizedOperator& op) {
  std::vector<double> sv;
  if (op.matrix.rows() == 0 || op.matrix.cols() == 0) return sv;
  if (op.hermitian) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(op.matrix,
                                                       Eigen::EigenvaluesOnly);
    for (int i = 0; i < es.eigenvalues().size(); ++i)
      sv.push_back(std::abs(es.eigenvalues()(i)));
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(op.matrix);
    for (int i = 0; i < svd.singularValues().size(); ++i)
      sv.push_back(svd.singularValues()(i));
  }
  std::sort(sv.begin(), sv.end(), std::greater<double>());
  return sv;
}

SchattenNorms hs_and_trace_norms(const DiscretizedOperator& op) {
  SchattenNorms out;
  out.hs = op.matrix.norm();
  if (!op.hermitian)
    throw InputError("trace norm is computed for Hermitian matrices only");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(op.matrix,
                                                     Eigen::EigenvaluesOnly);
  const double scale = std::max(out.hs, 1e-300);
  double tr = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double ev = es.eigenvalues()(i);
    if (ev < -1e-10 * scale)
      throw InputError("matrix has a negative eigenvalue; not PSD");
    tr += std::max(0.0, ev);
  }
  out.trace = tr;
  return out;
}

double trace_from_measure(const measure::PositiveMeasure& mu,
                          const inner::InnerFunction& theta, double rel_tol) {
  measure::validate(mu);
  inner::validate(theta);
  if (theta.domain != measure::Domain::HalfPlane)
    throw InputError("trace_from_measure expects a half-plane inner function");
  if (mu.domain == measure::Domain::Disc)
    throw InputError("trace_from_measure expects a half-plane or axis measure");
  auto k = [&theta](Complex s) {
    if (s.real() <= 0.0) {
      // boundary limit of (1-|theta|^2)/(2 Re s): the angular derivative
      double v = theta.singular_T;
      for (const auto& z : theta.zeros)
        v += z.mult * 2.0 * z.z.real() / std::norm(s - z.z);
      return Complex{v, 0.0};
    }
    const double lm = inner::log_modulus_and_derivative(theta, s).log_modulus;
    return Complex{-std::expm1(2.0 * lm) / (2.0 * s.real()), 0.0};
  };
  auto r = measure::integrate_kernel(mu, k, rel_tol);
  if (!r.converged)
    throw InputError("trace integral did not converge");
  return r.real();
}

DiscretizedOperator model_hankel_finite(const measure::PositiveMeasure& mu,
                                        const inner::InnerFunction& theta) {
  measure::validate(mu);
  inner::validate(theta);
  if (theta.domain != measure::Domain::HalfPlane)
    throw InputError("model compression expects a half-plane inner function");
  if (theta.has_singular() || theta.zeros.empty())
    throw InputError("model compression needs a pure finite Blaschke product");
  std::vector<Complex> s;
  for (const auto& z : theta.zeros) {
    if (z.mult != 1)
      throw InputError("model compression needs simple zeros");
    for (const auto& prev : s)
      if (prev == z.z) throw InputError("model compression needs distinct zeros");
    s.push_back(z.z);
  }
  const int n = (int)s.size();
  Eigen::MatrixXcd gram(n, n), h(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      gram(j, k) = 1.0 / (s[j] + std::conj(s[k]));
      auto kern = [&s, j, k](Complex sigma) {
        return 1.0 / ((sigma + s[j]) * std::conj(sigma + s[k]));
      };
      auto r = measure::integrate_kernel(mu, kern, 1e-12);
      if (!r.converged)
        throw InputError("model compression integral did not converge");
      h(j, k) = r.value;
    }
  h = 0.5 * (h + h.adjoint()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
  const auto& ev = es.eigenvalues();
  DiscretizedOperator op;
  op.kind = OperatorKind::ModelHankel;
  op.hermitian = true;
  op.gram_condition = ev(n - 1) / std::max(ev(0), 1e-300);
  if (ev(0) <= 0 || op.gram_condition > 1e12)
    op.warning = "exponential system is numerically degenerate";
  Eigen::VectorXd inv_sqrt(n);
  for (int i = 0; i < n; ++i)
    inv_sqrt(i) = ev(i) > 0 ? 1.0 / std::sqrt(ev(i)) : 0.0;
  Eigen::MatrixXcd gi =
      es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().adjoint();
  op.matrix = gi * h * gi;
  op.matrix = 0.5 * (op.matrix + op.matrix.adjoint()).eval();
  return op;
}

}  // namespace lcembed::ops
