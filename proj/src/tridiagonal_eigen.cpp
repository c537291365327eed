#include "dha/tridiagonal_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

#include "dha/errors.hpp"

namespace dha {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double norm2(std::span<const double> x) {
  return std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
}

double scale_of(const SymmetricTridiagonal& t) {
  const auto [lo, hi] = t.spectrum_bounds();
  return std::max({std::abs(lo), std::abs(hi), std::numeric_limits<double>::min()});
}

// Solves (T - shift) x = b in place by Gaussian elimination with partial
// pivoting. Zero pivots are replaced by a tiny multiple of the matrix scale so
// that inverse iteration at an exact eigenvalue still produces a direction.
void solve_shifted(const SymmetricTridiagonal& t, double shift, std::vector<double>& b) {
  const std::size_t n = t.order();
  const double tiny = kEps * scale_of(t);
  // Row i after elimination holds u0[i] x_i + u1[i] x_{i+1} + u2[i] x_{i+2}.
  std::vector<double> u0(n), u1(n, 0.0), u2(n, 0.0);
  std::vector<double> sub(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    u0[i] = t.diagonal[i] - shift;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    u1[i] = t.off_diagonal[i];
    sub[i] = t.off_diagonal[i];
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    // Rows i and i+1; row i+1 is [sub[i], u0[i+1], u1[i+1]].
    if (std::abs(sub[i]) > std::abs(u0[i])) {
      std::swap(u0[i], sub[i]);
      std::swap(u1[i], u0[i + 1]);
      std::swap(u2[i], u1[i + 1]);
      std::swap(b[i], b[i + 1]);
    }
    if (u0[i] == 0.0) {
      u0[i] = tiny;
    }
    const double m = sub[i] / u0[i];
    u0[i + 1] -= m * u1[i];
    u1[i + 1] -= m * u2[i];
    b[i + 1] -= m * b[i];
  }
  if (u0[n - 1] == 0.0) {
    u0[n - 1] = tiny;
  }
  for (std::size_t k = n; k-- > 0;) {
    double v = b[k];
    if (k + 1 < n) v -= u1[k] * b[k + 1];
    if (k + 2 < n) v -= u2[k] * b[k + 2];
    b[k] = v / u0[k];
  }
}

}  // namespace

std::size_t SymmetricTridiagonal::count_below(double x) const {
  const std::size_t n = order();
  const double tiny = kEps * kEps;
  std::size_t count = 0;
  double q = diagonal[0] - x;
  for (std::size_t i = 0;; ++i) {
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
    if (i + 1 == n) break;
    q = diagonal[i + 1] - x - off_diagonal[i] * off_diagonal[i] / q;
  }
  return count;
}

std::pair<double, double> SymmetricTridiagonal::spectrum_bounds() const {
  const std::size_t n = order();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(off_diagonal[i - 1]);
    if (i + 1 < n) radius += std::abs(off_diagonal[i]);
    lo = std::min(lo, diagonal[i] - radius);
    hi = std::max(hi, diagonal[i] + radius);
  }
  return {lo, hi};
}

std::vector<double> SymmetricTridiagonal::apply(std::span<const double> x) const {
  const std::size_t n = order();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double v = diagonal[i] * x[i];
    if (i > 0) v += off_diagonal[i - 1] * x[i - 1];
    if (i + 1 < n) v += off_diagonal[i] * x[i + 1];
    y[i] = v;
  }
  return y;
}

double kth_eigenvalue(const SymmetricTridiagonal& t, std::size_t k) {
  if (k >= t.order()) {
    throw std::out_of_range("kth_eigenvalue: index beyond matrix order");
  }
  auto [lo, hi] = t.spectrum_bounds();
  const double tol = 2.0 * kEps * scale_of(t);
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= tol || mid == lo || mid == hi) {
      return mid;
    }
    if (t.count_below(mid) > k) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  throw ConvergenceFailure(fmt::format("bisection for eigenvalue {} did not converge", k));
}

std::vector<double> inverse_iteration(const SymmetricTridiagonal& t, double eigenvalue,
                                      std::span<const std::vector<double>> previous) {
  const std::size_t n = t.order();
  const double scale = scale_of(t);
  const double tolerance = 1e3 * kEps * scale * std::sqrt(static_cast<double>(n));

  std::mt19937_64 rng(0x5eed1234u + n);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  std::vector<double> x(n);
  for (double& v : x) v = uniform(rng);

  auto orthonormalize = [&](std::vector<double>& v) {
    for (const auto& q : previous) {
      const double overlap = std::inner_product(v.begin(), v.end(), q.begin(), 0.0);
      for (std::size_t i = 0; i < n; ++i) v[i] -= overlap * q[i];
    }
    const double norm = norm2(v);
    if (norm == 0.0 || !std::isfinite(norm)) {
      throw ConvergenceFailure("inverse iteration produced a degenerate vector");
    }
    for (double& e : v) e /= norm;
  };

  orthonormalize(x);
  for (int iter = 0; iter < 8; ++iter) {
    solve_shifted(t, eigenvalue, x);
    orthonormalize(x);
    std::vector<double> r = t.apply(x);
    for (std::size_t i = 0; i < n; ++i) r[i] -= eigenvalue * x[i];
    if (norm2(r) <= tolerance) {
      return x;
    }
  }
  throw ConvergenceFailure(
      fmt::format("inverse iteration at eigenvalue {} did not reach residual {}", eigenvalue, tolerance));
}

std::vector<EigenPair> lowest_eigenpairs(const SymmetricTridiagonal& t, std::size_t count) {
  if (t.off_diagonal.size() + 1 != t.diagonal.size()) {
    throw std::invalid_argument("SymmetricTridiagonal: off-diagonal must have n-1 entries");
  }
  count = std::min(count, t.order());
  std::vector<EigenPair> pairs;
  std::vector<std::vector<double>> vectors;
  pairs.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double value = kth_eigenvalue(t, k);
    std::vector<double> v = inverse_iteration(t, value, vectors);
    vectors.push_back(v);
    pairs.push_back({value, std::move(v)});
  }
  return pairs;
}

}  // namespace dha
