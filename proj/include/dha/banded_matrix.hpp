#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dha {

/// Square matrix with equal lower and upper bandwidth, stored row-wise as
/// n x (2b+1) diagonals. Entries outside the band are zero.
class BandedMatrix {
 public:
  BandedMatrix(std::size_t order, std::size_t bandwidth);

  static BandedMatrix diagonal(std::span<const double> values);
  static BandedMatrix identity(std::size_t order);

  std::size_t order() const { return order_; }
  std::size_t bandwidth() const { return bandwidth_; }

  /// Entry (i, j); zero outside the band.
  double operator()(std::size_t i, std::size_t j) const;
  /// Mutable entry (i, j); (i, j) must lie inside the band.
  double& at(std::size_t i, std::size_t j);

  std::vector<double> apply(std::span<const double> x) const;

  BandedMatrix transposed() const;
  BandedMatrix symmetrized() const;  // (M + M^T) / 2

  double max_abs() const;
  /// max |M - sign * M^T|; sign = +1 measures asymmetry, -1 measures departure from antisymmetry.
  double max_asymmetry(double sign = 1.0) const;

  /// Diagonal and first sub-diagonal, as consumed by the tridiagonal eigensolver.
  std::vector<double> main_diagonal() const;
  std::vector<double> sub_diagonal() const;

  BandedMatrix& operator+=(const BandedMatrix& other);
  BandedMatrix& operator-=(const BandedMatrix& other);
  BandedMatrix& operator*=(double scale);

  friend BandedMatrix operator+(BandedMatrix lhs, const BandedMatrix& rhs) { return lhs += rhs; }
  friend BandedMatrix operator-(BandedMatrix lhs, const BandedMatrix& rhs) { return lhs -= rhs; }
  friend BandedMatrix operator*(BandedMatrix m, double s) { return m *= s; }
  friend BandedMatrix operator*(double s, BandedMatrix m) { return m *= s; }
  friend BandedMatrix operator*(const BandedMatrix& lhs, const BandedMatrix& rhs);

 private:
  BandedMatrix widened(std::size_t bandwidth) const;
  std::size_t width() const { return 2 * bandwidth_ + 1; }

  std::size_t order_;
  std::size_t bandwidth_;
  std::vector<double> data_;
};

/// AB + BA
BandedMatrix anticommutator(const BandedMatrix& a, const BandedMatrix& b);
/// AB - BA
BandedMatrix commutator(const BandedMatrix& a, const BandedMatrix& b);

}  // namespace dha
