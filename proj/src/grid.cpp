#include "dha/grid.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace dha {

Grid::Grid(double half_width, std::size_t points) : half_width_(half_width), points_(points) {
  if (!std::isfinite(half_width) || half_width <= 0.0) {
    throw std::invalid_argument(fmt::format("grid half-width must be positive, got {}", half_width));
  }
  if (points < 3 || points % 2 == 0) {
    throw std::invalid_argument(fmt::format("grid needs an odd number of points >= 3, got {}", points));
  }
  spacing_ = 2.0 * half_width / static_cast<double>(points - 1);
}

Grid Grid::with_spacing(double half_width, double spacing) {
  const double intervals = 2.0 * half_width / spacing;
  const double rounded = std::round(intervals);
  if (std::abs(intervals - rounded) > 1e-9 * rounded) {
    throw std::invalid_argument(
        fmt::format("spacing {} does not divide [-{}, {}] evenly", spacing, half_width, half_width));
  }
  return Grid(half_width, static_cast<std::size_t>(rounded) + 1);
}

double Grid::node(std::size_t i) const {
  // Symmetric evaluation keeps x_i = -x_{N-1-i} exactly.
  const auto half = static_cast<double>(points_ - 1) / 2.0;
  return (static_cast<double>(i) - half) * spacing_;
}

std::vector<double> Grid::nodes() const {
  std::vector<double> x(points_);
  for (std::size_t i = 0; i < points_; ++i) x[i] = node(i);
  return x;
}

std::vector<double> Grid::sample(const std::function<double(double)>& f) const {
  std::vector<double> values(points_);
  for (std::size_t i = 0; i < points_; ++i) values[i] = f(node(i));
  return values;
}

double Grid::weight(std::size_t i) const {
  return (i == 0 || i + 1 == points_) ? 0.5 * spacing_ : spacing_;
}

GridState GridState::gaussian(const Grid& grid, double sigma, double center) {
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("gaussian: sigma must be positive");
  }
  GridState state{grid.sample([&](double x) {
    const double u = (x - center) / sigma;
    return std::exp(-0.5 * u * u);
  })};
  normalize(grid, state.values);
  return state;
}

double inner(const Grid& grid, std::span<const double> a, std::span<const double> b) {
  if (a.size() != grid.points() || b.size() != grid.points()) {
    throw std::invalid_argument("inner: vector size does not match grid");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += grid.weight(i) * a[i] * b[i];
  return sum;
}

double norm(const Grid& grid, std::span<const double> a) {
  return std::sqrt(inner(grid, a, a));
}

void normalize(const Grid& grid, std::vector<double>& a) {
  const double n = norm(grid, a);
  if (n == 0.0 || !std::isfinite(n)) {
    throw std::invalid_argument("normalize: zero or non-finite state");
  }
  for (double& v : a) v /= n;
}

BandedMatrix central_difference(const Grid& grid) {
  const std::size_t n = grid.points();
  const double c = 1.0 / (2.0 * grid.spacing());
  BandedMatrix d(n, 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    d.at(i, i + 1) = c;
    d.at(i + 1, i) = -c;
  }
  return d;
}

BandedMatrix second_difference(const Grid& grid) {
  const std::size_t n = grid.points();
  const double c = 1.0 / (grid.spacing() * grid.spacing());
  BandedMatrix d(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    d.at(i, i) = -2.0 * c;
    if (i + 1 < n) {
      d.at(i, i + 1) = c;
      d.at(i + 1, i) = c;
    }
  }
  return d;
}

BandedMatrix multiplication(const Grid& grid, const std::function<double(double)>& f) {
  const std::vector<double> values = grid.sample(f);
  return BandedMatrix::diagonal(values);
}

}  // namespace dha
