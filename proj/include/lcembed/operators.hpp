#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "lcembed/inner.hpp"
#include "lcembed/measure.hpp"

namespace lcembed::ops {

struct QuadratureGrid {
  std::vector<double> nodes;    // strictly increasing, in (0, T]
  std::vector<double> weights;  // positive
  double T = 0.0;               // interval length, or the practical cutoff
  enum class Scheme { UniformComposite, Graded, LogInfinity } scheme =
      Scheme::UniformComposite;
  double gamma = 1.0;  // grading exponent for Scheme::Graded

  int size() const { return static_cast<int>(nodes.size()); }
  // Invariant under t -> T - t (needed for the reversal construction).
  bool reflection_symmetric(double tol = 1e-9) const;

  // n/4 panels of 4-point Gauss-Legendre; reflection symmetric; sum of
  // weights equals T exactly up to rounding.
  static QuadratureGrid uniform_composite(double T, int n);
  // Panel breakpoints T*(k/P)^gamma cluster nodes at 0 like (i/n)^gamma * T.
  static QuadratureGrid graded(double T, int n, double gamma = 2.0);
  // Log-uniform midpoint nodes on [T_inf^-2, T_inf]; stands in for (0, inf)
  // in truncation sweeps.
  static QuadratureGrid log_practical_infinity(double T_inf, int n);
};

enum class OperatorKind {
  Hankel,
  WeightedHankel,
  ToeplitzReversal,
  Embedding,
  ModelHankel
};

struct DiscretizedOperator {
  Eigen::MatrixXcd matrix;
  QuadratureGrid grid;  // empty for ModelHankel
  OperatorKind kind = OperatorKind::Hankel;
  bool hermitian = false;
  double factorization_residual = -1.0;  // Embedding: ||Z*Z - Gamma||_F when computed
  double atomization_error = -1.0;       // Embedding of densities: norm change under doubling
  double gram_condition = -1.0;          // ModelHankel
  std::string warning;
};

using Symbol = std::function<double(double)>;

// h(t) = int exp(-s t) d(mu)(s). Closed forms for atoms and whole-axis power
// pieces; quadrature otherwise. Throws InputError when the integral diverges
// at the requested t.
Complex laplace_symbol(const measure::PositiveMeasure& mu, double t);
// Real-valued view; throws InputError if the measure makes the symbol
// complex (conjugate-asymmetric off-axis support).
Symbol laplace_symbol_fn(const measure::PositiveMeasure& mu);

// Symmetrized Nystrom matrix M_ij = sqrt(w_i) h(t_i + t_j) sqrt(w_j).
DiscretizedOperator discretize_hankel(const Symbol& h, const QuadratureGrid& g);

// Kernel t^alpha h(t+tau) tau^alpha, same symmetrization.
DiscretizedOperator discretize_weighted_hankel(const Symbol& h, double alpha,
                                               const QuadratureGrid& g);

// Kernel g(t - tau) with g(x) = h(T - x); unitarily equivalent to the Hankel
// matrix through the reflection t -> T-t, so singular values agree. Requires
// a reflection-symmetric grid.
DiscretizedOperator toeplitz_via_reversal(const Symbol& h,
                                          const QuadratureGrid& g);

// Rows sqrt(m_j) exp(-s_j t_i) sqrt(w_i) per atom. Density pieces are
// atomized at mass quantiles (atoms_per_piece each; the result records the
// operator-norm change under doubling that count). The Hermitian form
// Gamma = Z*Z is exposed via embedding_form().
DiscretizedOperator embedding_matrix(const measure::PositiveMeasure& mu,
                                     const QuadratureGrid& g,
                                     int atoms_per_piece = 512);

DiscretizedOperator embedding_form(const DiscretizedOperator& z);

struct NormResult {
  double norm = 0.0;
  int iterations = 0;
  bool converged = true;
};

// Largest singular value by power iteration on M*M (or on M directly when
// Hermitian PSD), deterministic seed, relative tolerance tol.
NormResult operator_norm(const DiscretizedOperator& op, double tol = 1e-8);

std::vector<double> singular_values(const DiscretizedOperator& op);

struct SchattenNorms {
  double hs = 0.0;
  double trace = 0.0;
};

// hs = Frobenius norm. trace requires a Hermitian PSD matrix (checked;
// a negative eigenvalue beyond -1e-10*||M|| is reported and rejected).
SchattenNorms hs_and_trace_norms(const DiscretizedOperator& op);

// int ||P_K exp(-conj(s) .)||^2 d(mu)(s) = int (1-|theta(s)|^2)/(2 Re s) dmu,
// the measure-side value matching the matrix trace of Gamma = Z*Z.
double trace_from_measure(const measure::PositiveMeasure& mu,
                          const inner::InnerFunction& theta,
                          double rel_tol = 1e-10);

// Compression of Gamma to the span of {exp(-conj(s_j) t)} for the zeros s_j
// of a finite Blaschke product with distinct zeros: G^(-1/2) H G^(-1/2) with
// G_jk = 1/(s_j + conj(s_k)),
// H_jk = int d(mu)(s) / ((s + s_j)(conj(s) + conj(s_k))).
DiscretizedOperator model_hankel_finite(const measure::PositiveMeasure& mu,
                                        const inner::InnerFunction& theta);

}  // namespace lcembed::ops
