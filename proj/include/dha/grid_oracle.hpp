#pragma once

#include <vector>

#include "dha/algebra_bounds.hpp"
#include "dha/grid.hpp"

// Finite-difference cross-checks of the exact chain results. The reference
// problem is the undeformed Poschl-Teller operator
//   xi0^2 p^2 - (eta0^2 + xi0 eta0) sech^2 x,
// and the deformed Hamiltonian enters only through expectation values in its
// eigenstates (first-order perturbation theory).

namespace dha {

struct ReferenceLevel {
  double eigenvalue;
  GridState state;  // trapezoid-normalized; first significant value positive
};

/// Grid constraints for the reference problem: h <= 0.02 and 10 <= L <= 25.
void validate_reference_grid(const Grid& grid);

/// xi0^2 p^2 - (eta0^2 + xi0 eta0) sech^2 x with the three-point p^2.
BandedMatrix reference_operator(double xi0, double eta0, const Grid& grid);

/// Bound states (eigenvalue < 0) in ascending order. Throws ConvergenceFailure
/// if the eigensolver fails.
std::vector<ReferenceLevel> solve_reference(double xi0, double eta0, const Grid& grid);

/// The linearized deformed Hamiltonian H_0^- (alpha = 1) as a real symmetric
/// matrix. Deformation terms are products of the central-difference stencil
/// and cosh^2 x; throws std::logic_error if the assembled matrix is not
/// symmetric to 1e-10 of its largest entry.
GridOperator build_hlin(double xi0, double eta0, double beta, double delta, const Grid& grid);

struct HlinRow {
  int n;
  double expectation;   // <psi_n | H_lin | psi_n>
  double linear_value;  // linear-order chain eigenvalue
  double abs_diff;
  double tolerance;     // max(1e-3, 1e-2 |linear_value|)
  bool is_n_max;
  bool within_tolerance;
};

struct HlinCheck {
  int n_max;
  std::vector<HlinRow> rows;  // one per reference bound state
};

HlinCheck hlin_expectation_check(double xi0, double eta0, double beta, double delta,
                                 const Grid& grid);

/// <psi_n_max | H_lin | psi_n_max> at fixed spacing over several half-widths.
struct LengthSweep {
  std::vector<double> half_widths;
  std::vector<double> expectations;
  bool strictly_increasing;
  double relative_spread;  // (max - min) / max |value|
};

LengthSweep n_max_length_sweep(double xi0, double eta0, double beta, double delta, double spacing,
                               const std::vector<double>& half_widths);

/// |<H_lin> - linear value| at level n for spacing h and h/2.
struct RefinementSweep {
  int n;
  double coarse_spacing;
  double coarse_deviation;
  double fine_deviation;
  bool converging;  // fine deviation smaller than coarse
};

RefinementSweep refinement_sweep(double xi0, double eta0, double beta, double delta, const Grid& coarse,
                                 int n);

/// Approximate deformed momentum, P = -i * matrix, to first order in beta and delta.
GridOperator deformed_momentum_operator(double alpha, double beta, double delta, const Grid& grid);

/// ||([tanh ax, P] - i(a sech^2 ax + beta P^2 + delta)) psi|| / ||psi||.
double commutator_residual(double alpha, double beta, double delta, const Grid& grid,
                           const GridState& state);

struct HeisenbergReport {
  double dtanh;             // Delta tanh(aX)
  double dp;                // Delta P
  double mean_commutator;   // <[tanh aX, P] / i>
  double rhs_half_mean;     // |<C>| / 2
  bool satisfied;           // dtanh * dp >= rhs_half_mean
  bool tanh_spread_bounded; // dtanh <= 1
};

/// Robertson inequality for tanh(aX) and the approximate P in a real state.
HeisenbergReport verify_heisenberg(const GridState& state, const TanhAlgebra& algebra, const Grid& grid);

/// <psi | op | psi> by trapezoid quadrature; for imaginary operators the real
/// part, which vanishes for real states.
double expectation(const Grid& grid, const GridOperator& op, const GridState& state);

}  // namespace dha
