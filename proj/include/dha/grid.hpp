#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "dha/banded_matrix.hpp"

namespace dha {

/// Uniform grid on [-L, L] with an odd number of nodes, so x = 0 is a node.
/// Wavefunctions vanish just outside the grid (Dirichlet).
class Grid {
 public:
  Grid(double half_width, std::size_t points);

  /// Grid with spacing h; 2L/h must be an even integer (to 1e-9).
  static Grid with_spacing(double half_width, double spacing);

  double half_width() const { return half_width_; }
  std::size_t points() const { return points_; }
  double spacing() const { return spacing_; }
  double node(std::size_t i) const;
  std::vector<double> nodes() const;
  std::vector<double> sample(const std::function<double(double)>& f) const;

  /// Trapezoid weights h * (1/2, 1, ..., 1, 1/2).
  double weight(std::size_t i) const;

 private:
  double half_width_;
  std::size_t points_;
  double spacing_;
};

/// Real wavefunction sampled on a grid.
struct GridState {
  std::vector<double> values;

  /// Normalized exp(-x^2 / (2 sigma^2)), centered at `center`.
  static GridState gaussian(const Grid& grid, double sigma, double center = 0.0);
};

double inner(const Grid& grid, std::span<const double> a, std::span<const double> b);
double norm(const Grid& grid, std::span<const double> a);
void normalize(const Grid& grid, std::vector<double>& a);

/// Real operator on grid functions. When `imaginary` is set the operator is
/// -i * matrix (the real antisymmetric form of a momentum-like operator).
struct GridOperator {
  BandedMatrix matrix;
  bool imaginary = false;
};

/// Central difference (f[i+1] - f[i-1]) / 2h; p = -i * central_difference.
BandedMatrix central_difference(const Grid& grid);
/// Three-point second difference (f[i+1] - 2f[i] + f[i-1]) / h^2; p^2 = -second_difference.
BandedMatrix second_difference(const Grid& grid);
BandedMatrix multiplication(const Grid& grid, const std::function<double(double)>& f);

}  // namespace dha
