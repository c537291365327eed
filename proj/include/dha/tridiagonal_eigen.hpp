#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dha {

/// Symmetric tridiagonal matrix: diagonal d[0..n), off-diagonal e[0..n-1).
struct SymmetricTridiagonal {
  std::vector<double> diagonal;
  std::vector<double> off_diagonal;

  std::size_t order() const { return diagonal.size(); }
  /// Number of eigenvalues strictly below x (Sturm sequence count).
  std::size_t count_below(double x) const;
  /// Gershgorin enclosure of the spectrum.
  std::pair<double, double> spectrum_bounds() const;
  std::vector<double> apply(std::span<const double> x) const;
};

struct EigenPair {
  double value;
  std::vector<double> vector;  // Euclidean-normalized
};

/// The k-th smallest eigenvalue (0-based) by Sturm bisection.
double kth_eigenvalue(const SymmetricTridiagonal& t, std::size_t k);

/// Eigenvector for a known eigenvalue by inverse iteration, orthogonalized
/// against `previous` (eigenvectors of nearby eigenvalues). Throws
/// ConvergenceFailure if the residual does not drop below tolerance.
std::vector<double> inverse_iteration(const SymmetricTridiagonal& t, double eigenvalue,
                                      std::span<const std::vector<double>> previous = {});

/// Lowest `count` eigenpairs in ascending order.
std::vector<EigenPair> lowest_eigenpairs(const SymmetricTridiagonal& t, std::size_t count);

}  // namespace dha
