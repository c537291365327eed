#include "dha/grid_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "dha/shape_chain.hpp"
#include "dha/tridiagonal_eigen.hpp"

namespace dha {
namespace {

double sech2(double x) {
  const double s = 1.0 / std::cosh(x);
  return s * s;
}

double cosh2(double x) {
  const double c = std::cosh(x);
  return c * c;
}

// First entry above 1e-3 of the peak is made positive, so signs are reproducible.
void fix_sign(std::vector<double>& v) {
  double peak = 0.0;
  for (double x : v) peak = std::max(peak, std::abs(x));
  for (double x : v) {
    if (std::abs(x) > 1e-3 * peak) {
      if (x < 0.0) {
        for (double& y : v) y = -y;
      }
      return;
    }
  }
}

double n_max_expectation(double xi0, double eta0, double beta, double delta, const Grid& grid) {
  const HlinCheck check = hlin_expectation_check(xi0, eta0, beta, delta, grid);
  for (const HlinRow& row : check.rows) {
    if (row.is_n_max) return row.expectation;
  }
  throw std::runtime_error(
      fmt::format("level n_max = {} is not bound on the reference grid", check.n_max));
}

}  // namespace

void validate_reference_grid(const Grid& grid) {
  if (grid.spacing() > 0.02 * (1.0 + 1e-12)) {
    throw std::invalid_argument(fmt::format("grid spacing {} exceeds 0.02", grid.spacing()));
  }
  if (grid.half_width() < 10.0 || grid.half_width() > 25.0) {
    throw std::invalid_argument(fmt::format("grid half-width {} outside [10, 25]", grid.half_width()));
  }
}

BandedMatrix reference_operator(double xi0, double eta0, const Grid& grid) {
  const double depth = eta0 * eta0 + xi0 * eta0;
  BandedMatrix h = second_difference(grid) * (-xi0 * xi0);
  h += multiplication(grid, [depth](double x) { return -depth * sech2(x); });
  return h;
}

std::vector<ReferenceLevel> solve_reference(double xi0, double eta0, const Grid& grid) {
  if (!(xi0 > 0.0) || !(eta0 > 0.0)) {
    throw std::invalid_argument("solve_reference: xi0 and eta0 must be positive");
  }
  validate_reference_grid(grid);
  const BandedMatrix h = reference_operator(xi0, eta0, grid);
  const SymmetricTridiagonal t{h.main_diagonal(), h.sub_diagonal()};

  const std::size_t bound = t.count_below(0.0);
  std::vector<ReferenceLevel> levels;
  levels.reserve(bound);
  for (EigenPair& pair : lowest_eigenpairs(t, bound)) {
    normalize(grid, pair.vector);
    fix_sign(pair.vector);
    levels.push_back({pair.value, GridState{std::move(pair.vector)}});
  }
  return levels;
}

GridOperator build_hlin(double xi0, double eta0, double beta, double delta, const Grid& grid) {
  const std::size_t n = grid.points();
  const BandedMatrix d = central_difference(grid);
  const BandedMatrix c = multiplication(grid, cosh2);
  const BandedMatrix identity = BandedMatrix::identity(n);

  BandedMatrix h = reference_operator(xi0, eta0, grid);
  h += identity * (eta0 * eta0);

  if (delta != 0.0) {
    // {p, 1/2 {p, c}} with p = -iD  ->  -1/2 {D, {D, c}}
    const BandedMatrix term = anticommutator(d, anticommutator(d, c)) * -0.5;
    h += (term * (xi0 * xi0) - identity * (xi0 * eta0)) * delta;
  }
  if (beta != 0.0) {
    // 4p + p^3 = -i(4D - D^3), so {p, 1/6 {c, 4p + p^3}} -> -1/6 {D, {c, 4D - D^3}};
    // p^2 -> -D^2.
    const BandedMatrix q = d * 4.0 - d * d * d;
    const BandedMatrix term = anticommutator(d, anticommutator(c, q)) * (-1.0 / 6.0);
    h += (term * (xi0 * xi0) + d * d * (2.0 * xi0 * xi0 + xi0 * eta0)) * beta;
  }

  const double asymmetry = h.max_asymmetry();
  if (asymmetry > 1e-10 * h.max_abs()) {
    throw std::logic_error(fmt::format("H_lin asymmetry {} exceeds 1e-10 of scale {}", asymmetry,
                                       h.max_abs()));
  }
  return {h.symmetrized(), false};
}

double expectation(const Grid& grid, const GridOperator& op, const GridState& state) {
  if (op.imaginary) {
    return 0.0;
  }
  const std::vector<double> applied = op.matrix.apply(state.values);
  return inner(grid, state.values, applied);
}

HlinCheck hlin_expectation_check(double xi0, double eta0, double beta, double delta,
                                 const Grid& grid) {
  const std::vector<ReferenceLevel> reference = solve_reference(xi0, eta0, grid);
  const GridOperator hlin = build_hlin(xi0, eta0, beta, delta, grid);

  HlinCheck check{compute_n_max(xi0, eta0, beta), {}};
  for (std::size_t k = 0; k < reference.size(); ++k) {
    const int n = static_cast<int>(k);
    const double value = expectation(grid, hlin, reference[k].state);
    const double linear = linear_level(xi0, eta0, beta, delta, n);
    const double diff = std::abs(value - linear);
    const double tol = std::max(1e-3, 1e-2 * std::abs(linear));
    check.rows.push_back({n, value, linear, diff, tol, n == check.n_max, diff <= tol});
  }
  return check;
}

LengthSweep n_max_length_sweep(double xi0, double eta0, double beta, double delta, double spacing,
                               const std::vector<double>& half_widths) {
  LengthSweep sweep{half_widths, {}, true, 0.0};
  for (double half_width : half_widths) {
    sweep.expectations.push_back(
        n_max_expectation(xi0, eta0, beta, delta, Grid::with_spacing(half_width, spacing)));
  }
  const auto& e = sweep.expectations;
  for (std::size_t k = 1; k < e.size(); ++k) {
    sweep.strictly_increasing = sweep.strictly_increasing && e[k] > e[k - 1];
  }
  if (!e.empty()) {
    const auto [lo, hi] = std::minmax_element(e.begin(), e.end());
    double scale = 0.0;
    for (double v : e) scale = std::max(scale, std::abs(v));
    sweep.relative_spread = scale > 0.0 ? (*hi - *lo) / scale : 0.0;
  }
  return sweep;
}

RefinementSweep refinement_sweep(double xi0, double eta0, double beta, double delta, const Grid& coarse,
                                 int n) {
  const Grid fine(coarse.half_width(), 2 * (coarse.points() - 1) + 1);
  auto deviation = [&](const Grid& grid) {
    const HlinCheck check = hlin_expectation_check(xi0, eta0, beta, delta, grid);
    if (n < 0 || static_cast<std::size_t>(n) >= check.rows.size()) {
      throw std::out_of_range(fmt::format("level {} is not bound on the reference grid", n));
    }
    return check.rows[static_cast<std::size_t>(n)].abs_diff;
  };
  const double coarse_dev = deviation(coarse);
  const double fine_dev = deviation(fine);
  return {n, coarse.spacing(), coarse_dev, fine_dev, fine_dev < coarse_dev};
}

GridOperator deformed_momentum_operator(double alpha, double beta, double delta, const Grid& grid) {
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("deformed_momentum_operator: alpha must be positive");
  }
  const BandedMatrix d = central_difference(grid);
  const BandedMatrix c = multiplication(grid, [alpha](double x) { return cosh2(alpha * x); });

  // P = -i M with
  //   M = D + beta ({c, 4a^2 D - D^3} / 6a - D) + delta {c, D} / 2a.
  BandedMatrix m = d;
  if (beta != 0.0) {
    const BandedMatrix q = d * (4.0 * alpha * alpha) - d * d * d;
    m += (anticommutator(c, q) * (1.0 / (6.0 * alpha)) - d) * beta;
  }
  if (delta != 0.0) {
    m += anticommutator(c, d) * (delta / (2.0 * alpha));
  }

  const double asymmetry = m.max_asymmetry(-1.0);
  if (asymmetry > 1e-10 * m.max_abs()) {
    throw std::logic_error(
        fmt::format("momentum operator departs from antisymmetry by {}", asymmetry));
  }
  BandedMatrix antisymmetric = m - m.transposed();
  antisymmetric *= 0.5;
  return {std::move(antisymmetric), true};
}

double commutator_residual(double alpha, double beta, double delta, const Grid& grid,
                           const GridState& state) {
  const GridOperator p = deformed_momentum_operator(alpha, beta, delta, grid);
  const BandedMatrix& m = p.matrix;
  const std::vector<double> t = grid.sample([alpha](double x) { return std::tanh(alpha * x); });
  const std::vector<double> s = grid.sample([alpha](double x) { return sech2(alpha * x); });
  const std::vector<double>& psi = state.values;
  const std::size_t n = grid.points();

  // With P = -iM: [T, P] - i(a s + beta P^2 + delta) = -i([T, M] + a s - beta M^2 + delta).
  const std::vector<double> m_psi = m.apply(psi);
  std::vector<double> t_psi(n);
  for (std::size_t i = 0; i < n; ++i) t_psi[i] = t[i] * psi[i];
  const std::vector<double> m_t_psi = m.apply(t_psi);
  const std::vector<double> mm_psi = m.apply(m_psi);

  std::vector<double> residual(n);
  for (std::size_t i = 0; i < n; ++i) {
    residual[i] = t[i] * m_psi[i] - m_t_psi[i] + alpha * s[i] * psi[i] - beta * mm_psi[i] +
                  delta * psi[i];
  }
  return norm(grid, residual) / norm(grid, psi);
}

HeisenbergReport verify_heisenberg(const GridState& state, const TanhAlgebra& algebra,
                                   const Grid& grid) {
  const double a = algebra.alpha();
  const std::vector<double>& psi = state.values;
  const std::size_t n = grid.points();
  const double norm2 = inner(grid, psi, psi);

  const std::vector<double> t = grid.sample([a](double x) { return std::tanh(a * x); });
  std::vector<double> t_psi(n);
  for (std::size_t i = 0; i < n; ++i) t_psi[i] = t[i] * psi[i];
  const double mean_t = inner(grid, psi, t_psi) / norm2;
  const double mean_t2 = inner(grid, t_psi, t_psi) / norm2;
  const double dtanh = std::sqrt(std::max(0.0, mean_t2 - mean_t * mean_t));

  // Real states: <P> = 0 and <P^2> = ||M psi||^2.
  const GridOperator p = deformed_momentum_operator(a, algebra.beta(), algebra.delta(), grid);
  const std::vector<double> m_psi = p.matrix.apply(psi);
  const double dp = std::sqrt(inner(grid, m_psi, m_psi) / norm2);

  // C = [T, P] / i = -[T, M].
  const std::vector<double> m_t_psi = p.matrix.apply(t_psi);
  std::vector<double> c_psi(n);
  for (std::size_t i = 0; i < n; ++i) c_psi[i] = m_t_psi[i] - t[i] * m_psi[i];
  const double mean_c = inner(grid, psi, c_psi) / norm2;
  const double half = 0.5 * std::abs(mean_c);

  return {
      .dtanh = dtanh,
      .dp = dp,
      .mean_commutator = mean_c,
      .rhs_half_mean = half,
      .satisfied = dtanh * dp >= half * (1.0 - 1e-12),
      .tanh_spread_bounded = dtanh <= 1.0 + 1e-12,
  };
}

}  // namespace dha
