#include "dha/algebra_bounds.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

#include "dha/errors.hpp"

namespace dha {
namespace {

void require_finite_positive(double value, const char* name) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw std::invalid_argument(fmt::format("{} must be positive and finite, got {}", name, value));
  }
}

}  // namespace

TanhAlgebra::TanhAlgebra(double alpha, double beta, double delta, Unchecked)
    : alpha_(alpha), beta_(beta), delta_(delta) {
  require_finite_positive(alpha, "alpha");
  require_finite_positive(beta, "beta");
  if (!std::isfinite(delta) || delta < 0.0) {
    throw std::invalid_argument(fmt::format("delta must be nonnegative and finite, got {}", delta));
  }
}

TanhAlgebra::TanhAlgebra(double alpha, double beta, double delta)
    : TanhAlgebra(alpha, beta, delta, Unchecked{}) {
  if (!consistent()) {
    throw InconsistentAlgebra(
        fmt::format("tanh algebra is self-contradictory: beta*delta = {} > 4", beta * delta));
  }
}

TanhAlgebra TanhAlgebra::unchecked(double alpha, double beta, double delta) {
  return TanhAlgebra(alpha, beta, delta, Unchecked{});
}

QuarticAlgebra::QuarticAlgebra(double alpha, double beta, Unchecked) : alpha_(alpha), beta_(beta) {
  require_finite_positive(alpha, "alpha");
  require_finite_positive(beta, "beta");
}

QuarticAlgebra::QuarticAlgebra(double alpha, double beta)
    : QuarticAlgebra(alpha, beta, Unchecked{}) {
  if (!consistent()) {
    throw InconsistentAlgebra(fmt::format(
        "quartic algebra is self-contradictory: alpha*beta^2 = {} > 4", alpha * beta * beta));
  }
}

QuarticAlgebra QuarticAlgebra::unchecked(double alpha, double beta) {
  return QuarticAlgebra(alpha, beta, Unchecked{});
}

ConsistencyReport check_consistency(const TanhAlgebra& algebra, Criterion criterion) {
  const double bound = criterion == Criterion::paper ? 4.0 : 1.0;
  const double margin = bound - algebra.beta() * algebra.delta();
  return {margin >= 0.0, margin, criterion, margin == 0.0};
}

ConsistencyReport check_consistency(const QuarticAlgebra& algebra) {
  const double margin = 4.0 - algebra.alpha() * algebra.beta() * algebra.beta();
  return {margin >= 0.0, margin, Criterion::paper, margin == 0.0};
}

TanhWindow tanh_window(const TanhAlgebra& algebra) {
  if (!algebra.consistent()) {
    throw InconsistentAlgebra(fmt::format("tanh algebra is self-contradictory: beta*delta = {} > 4",
                                          algebra.beta() * algebra.delta()));
  }
  const double b = algebra.beta();
  const double d = algebra.delta();
  const double dtanh_min = std::sqrt(b * d);
  return {
      .dp_min = d / 2.0,
      .dp_max = 2.0 / b,
      .p2_min = d * d / 4.0,
      .p2_max = 4.0 / (b * b),
      .dtanh_min = dtanh_min,
      .dx_min = dtanh_min / algebra.alpha(),
  };
}

std::pair<double, double> tanh_sharp_momentum_window(const TanhAlgebra& algebra) {
  const double b = algebra.beta();
  const double d = algebra.delta();
  const double disc = 1.0 - b * d;
  if (disc < 0.0) {
    throw NoRealWindow(fmt::format("beta*delta = {} > 1: beta t^2 - 2t + delta > 0 for all t", b * d));
  }
  const double root = std::sqrt(disc);
  // Lower root in the cancellation-free form d / (1 + root).
  return {d / (1.0 + root), (1.0 + root) / b};
}

QuarticWindow quartic_window(const QuarticAlgebra& algebra) {
  if (!algebra.consistent()) {
    throw InconsistentAlgebra(
        fmt::format("quartic algebra is self-contradictory: alpha*beta^2 = {} > 4",
                    algebra.alpha() * algebra.beta() * algebra.beta()));
  }
  const double a = algebra.alpha();
  const double b = algebra.beta();
  return {
      .p2_max = 16.0 / (a * b * b * b),
      .dp2_min = 4.0 / 9.0 * std::sqrt(3.0 * a),
      .x2_max = 4.0 / (a * b),
      .dx2_min = b,
  };
}

double kempf_minimal_length(double beta) {
  if (!std::isfinite(beta) || beta <= 0.0) {
    throw std::domain_error(fmt::format("kempf_minimal_length: beta must be positive, got {}", beta));
  }
  return std::sqrt(beta);
}

}  // namespace dha
