#pragma once

#include <vector>

// Shape-invariance chain for the deformed Poschl-Teller Hamiltonian
//   H = P^2 - v0 / cosh^2 X,   [tanh X, P] = i(1/cosh^2 X + beta P^2 + delta),
// built from A_n = i xi_n P + eta_n tanh X. The algebra scale alpha is fixed to 1.

namespace dha {

struct ChainParams {
  double xi;
  double eta;
  int n = 0;
};

struct ChainStep {
  double xi;
  double eta;
  double eps;  // level spacing E_n - E_{n-1}; 0 for the ground level
};

struct LadderChain {
  double xi0;
  double eta0;
  double beta;
  double delta;
  double theta;  // cos(theta) = 1/sqrt(1 + beta)
  int n_max;
  std::vector<ChainStep> steps;  // n = 0..n_max
};

/// Coefficients of  kinetic * P^2 - depth / cosh^2 X + constant.
struct PartnerCoeffs {
  double kinetic;
  double depth;
  double constant;
};

enum class Partner { minus, plus };

struct Level {
  int n;
  double e_chain;     // eigenvalue of H_0^-
  double e_physical;  // eigenvalue of P^2 - v0/cosh^2 X
};

struct SpectrumResult {
  double v0;
  double beta;
  double delta;
  double xi0;
  double eta0;
  double constant_shift;  // H_0^- = H + constant_shift
  int n_max;
  std::vector<Level> levels;
};

struct InitialParams {
  double xi0;
  double eta0;
};

/// Unique (xi0 > 0, eta0 > 0) with xi0^2 - xi0 eta0 beta = 1 and
/// eta0^2 + xi0 eta0 = v0, i.e. H_0^- reproduces P^2 - v0/cosh^2 X up to a constant.
InitialParams match_initial_params(double v0, double beta, double delta);

struct LadderStepResult {
  ChainParams next;
  double eps;
};

/// One application of the shape-invariance recursion. Throws ChainTerminated if p.eta <= 0.
LadderStepResult ladder_step(const ChainParams& p, double beta, double delta);

/// eta_n = eta0 cos(n theta) - xi0 sin(n theta) / sqrt(beta), with the beta -> 0 limit eta0 - n xi0.
double eta_closed_form(int n, double xi0, double eta0, double beta);

/// Largest n with eta_n > 0 (strict), from the arctan formula.
int compute_n_max(double xi0, double eta0, double beta);

/// Iterates ladder_step up to n_max. The recursion decides n_max when the
/// arctan ratio lies within 1e-12 of an integer; any other disagreement, or a
/// recursion/closed-form mismatch above 1e-10 relative, throws std::logic_error.
LadderChain build_chain(double xi0, double eta0, double beta, double delta);

/// Eigenvalues of H_0^- for n = 0..n_max and the physical levels of P^2 - v0/cosh^2 X.
/// Throws InconsistentAlgebra if beta*delta > 4.
SpectrumResult spectrum(double v0, double beta, double delta);

/// Linear-order approximation of the chain eigenvalues for n = 0..n_max.
std::vector<double> linear_spectrum(double xi0, double eta0, double beta, double delta, int n_max);

/// Single-level form of linear_spectrum.
double linear_level(double xi0, double eta0, double beta, double delta, int n);

PartnerCoeffs partner_coeffs(const ChainParams& p, double beta, double delta, Partner which);

/// Debug only: chain eigenvalues for n = n_max+1 .. n_max+count obtained by
/// continuing the recursion past the sign change of eta. These are not
/// physical levels and never appear in SpectrumResult.
std::vector<double> formal_continuation(const LadderChain& chain, int count);

}  // namespace dha
