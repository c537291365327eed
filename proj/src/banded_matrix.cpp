#include "dha/banded_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dha {

BandedMatrix::BandedMatrix(std::size_t order, std::size_t bandwidth)
    : order_(order), bandwidth_(bandwidth), data_(order * (2 * bandwidth + 1), 0.0) {
  if (order == 0) {
    throw std::invalid_argument("BandedMatrix: order must be positive");
  }
}

BandedMatrix BandedMatrix::diagonal(std::span<const double> values) {
  BandedMatrix m(values.size(), 0);
  std::copy(values.begin(), values.end(), m.data_.begin());
  return m;
}

BandedMatrix BandedMatrix::identity(std::size_t order) {
  return diagonal(std::vector<double>(order, 1.0));
}

double BandedMatrix::operator()(std::size_t i, std::size_t j) const {
  const std::size_t distance = i > j ? i - j : j - i;
  if (distance > bandwidth_) {
    return 0.0;
  }
  return data_[i * width() + (j + bandwidth_ - i)];
}

double& BandedMatrix::at(std::size_t i, std::size_t j) {
  const std::size_t distance = i > j ? i - j : j - i;
  if (i >= order_ || j >= order_ || distance > bandwidth_) {
    throw std::out_of_range("BandedMatrix::at outside the band");
  }
  return data_[i * width() + (j + bandwidth_ - i)];
}

std::vector<double> BandedMatrix::apply(std::span<const double> x) const {
  if (x.size() != order_) {
    throw std::invalid_argument("BandedMatrix::apply: size mismatch");
  }
  std::vector<double> y(order_, 0.0);
  for (std::size_t i = 0; i < order_; ++i) {
    const std::size_t lo = i >= bandwidth_ ? i - bandwidth_ : 0;
    const std::size_t hi = std::min(order_ - 1, i + bandwidth_);
    const double* row = &data_[i * width() + bandwidth_ - i];
    double sum = 0.0;
    for (std::size_t j = lo; j <= hi; ++j) {
      sum += row[j] * x[j];
    }
    y[i] = sum;
  }
  return y;
}

BandedMatrix BandedMatrix::transposed() const {
  BandedMatrix t(order_, bandwidth_);
  for (std::size_t i = 0; i < order_; ++i) {
    const std::size_t lo = i >= bandwidth_ ? i - bandwidth_ : 0;
    const std::size_t hi = std::min(order_ - 1, i + bandwidth_);
    for (std::size_t j = lo; j <= hi; ++j) {
      t.at(j, i) = (*this)(i, j);
    }
  }
  return t;
}

BandedMatrix BandedMatrix::symmetrized() const {
  BandedMatrix s = *this + transposed();
  s *= 0.5;
  return s;
}

double BandedMatrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) {
    m = std::max(m, std::abs(v));
  }
  return m;
}

double BandedMatrix::max_asymmetry(double sign) const {
  double m = 0.0;
  for (std::size_t i = 0; i < order_; ++i) {
    const std::size_t hi = std::min(order_ - 1, i + bandwidth_);
    for (std::size_t j = i; j <= hi; ++j) {
      m = std::max(m, std::abs((*this)(i, j) - sign * (*this)(j, i)));
    }
  }
  return m;
}

std::vector<double> BandedMatrix::main_diagonal() const {
  std::vector<double> d(order_);
  for (std::size_t i = 0; i < order_; ++i) {
    d[i] = (*this)(i, i);
  }
  return d;
}

std::vector<double> BandedMatrix::sub_diagonal() const {
  std::vector<double> e(order_ - 1);
  for (std::size_t i = 0; i + 1 < order_; ++i) {
    e[i] = (*this)(i + 1, i);
  }
  return e;
}

BandedMatrix BandedMatrix::widened(std::size_t bandwidth) const {
  if (bandwidth <= bandwidth_) {
    return *this;
  }
  BandedMatrix w(order_, bandwidth);
  for (std::size_t i = 0; i < order_; ++i) {
    const std::size_t lo = i >= bandwidth_ ? i - bandwidth_ : 0;
    const std::size_t hi = std::min(order_ - 1, i + bandwidth_);
    for (std::size_t j = lo; j <= hi; ++j) {
      w.at(i, j) = (*this)(i, j);
    }
  }
  return w;
}

BandedMatrix& BandedMatrix::operator+=(const BandedMatrix& other) {
  if (other.order_ != order_) {
    throw std::invalid_argument("BandedMatrix: order mismatch");
  }
  if (other.bandwidth_ > bandwidth_) {
    *this = widened(other.bandwidth_);
  }
  const BandedMatrix rhs = other.widened(bandwidth_);
  for (std::size_t k = 0; k < data_.size(); ++k) {
    data_[k] += rhs.data_[k];
  }
  return *this;
}

BandedMatrix& BandedMatrix::operator-=(const BandedMatrix& other) {
  return *this += other * -1.0;
}

BandedMatrix& BandedMatrix::operator*=(double scale) {
  for (double& v : data_) {
    v *= scale;
  }
  return *this;
}

BandedMatrix operator*(const BandedMatrix& lhs, const BandedMatrix& rhs) {
  if (lhs.order_ != rhs.order_) {
    throw std::invalid_argument("BandedMatrix: order mismatch");
  }
  const std::size_t n = lhs.order_;
  const std::size_t bw = std::min(n - 1, lhs.bandwidth_ + rhs.bandwidth_);
  BandedMatrix product(n, bw);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t klo = i >= lhs.bandwidth_ ? i - lhs.bandwidth_ : 0;
    const std::size_t khi = std::min(n - 1, i + lhs.bandwidth_);
    for (std::size_t k = klo; k <= khi; ++k) {
      const double a = lhs(i, k);
      if (a == 0.0) {
        continue;
      }
      const std::size_t jlo = k >= rhs.bandwidth_ ? k - rhs.bandwidth_ : 0;
      const std::size_t jhi = std::min(n - 1, k + rhs.bandwidth_);
      for (std::size_t j = jlo; j <= jhi; ++j) {
        product.at(i, j) += a * rhs(k, j);
      }
    }
  }
  return product;
}

BandedMatrix anticommutator(const BandedMatrix& a, const BandedMatrix& b) {
  return a * b + b * a;
}

BandedMatrix commutator(const BandedMatrix& a, const BandedMatrix& b) {
  return a * b - b * a;
}

}  // namespace dha
