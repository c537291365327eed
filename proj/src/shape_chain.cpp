#include "dha/shape_chain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "dha/errors.hpp"

namespace dha {
namespace {

void require_nonnegative(double value, const char* name) {
  if (!std::isfinite(value) || value < 0.0) {
    throw std::invalid_argument(fmt::format("{} must be nonnegative and finite, got {}", name, value));
  }
}

void require_positive(double value, const char* name) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw std::invalid_argument(fmt::format("{} must be positive and finite, got {}", name, value));
  }
}

// (1/theta) * arctan(eta0 sqrt(beta) / xi0); eta0/xi0 at beta = 0.
double n_max_ratio(double xi0, double eta0, double beta) {
  if (beta == 0.0) {
    return eta0 / xi0;
  }
  const double rb = std::sqrt(beta);
  return std::atan2(eta0 * rb, xi0) / std::atan(rb);
}

}  // namespace

InitialParams match_initial_params(double v0, double beta, double delta) {
  require_positive(v0, "v0");
  require_nonnegative(beta, "beta");
  require_nonnegative(delta, "delta");
  if (beta * delta > 4.0) {
    throw InconsistentAlgebra(fmt::format("beta*delta = {} > 4", beta * delta));
  }
  // t = xi0 eta0 solves (1 + beta) t^2 + (1 - beta v0) t - v0 = 0. The product
  // of the roots is negative, so exactly one is positive; it lies in (0, v0).
  const double a = 1.0 + beta;
  const double b = 1.0 - beta * v0;
  const double disc = std::sqrt(b * b + 4.0 * a * v0);
  const double t = b >= 0.0 ? 2.0 * v0 / (b + disc) : (disc - b) / (2.0 * a);
  const double eta0 = std::sqrt(v0 - t);
  return {t / eta0, eta0};
}

LadderStepResult ladder_step(const ChainParams& p, double beta, double delta) {
  if (!(p.eta > 0.0)) {
    throw ChainTerminated(fmt::format("ladder step from n = {} with eta = {} <= 0", p.n, p.eta));
  }
  const double scale = std::sqrt(1.0 + beta);
  const ChainParams next{(p.xi + beta * p.eta) / scale, (p.eta - p.xi) / scale, p.n + 1};
  return {next, (p.eta * p.eta - next.eta * next.eta) * (1.0 + delta)};
}

double eta_closed_form(int n, double xi0, double eta0, double beta) {
  if (n < 0) {
    throw std::invalid_argument("eta_closed_form: n must be nonnegative");
  }
  require_nonnegative(beta, "beta");
  if (beta == 0.0) {
    return eta0 - n * xi0;
  }
  const double rb = std::sqrt(beta);
  const double angle = n * std::atan(rb);
  return eta0 * std::cos(angle) - xi0 * std::sin(angle) / rb;
}

int compute_n_max(double xi0, double eta0, double beta) {
  require_positive(xi0, "xi0");
  require_positive(eta0, "eta0");
  require_nonnegative(beta, "beta");
  return static_cast<int>(std::ceil(n_max_ratio(xi0, eta0, beta))) - 1;
}

LadderChain build_chain(double xi0, double eta0, double beta, double delta) {
  require_positive(xi0, "xi0");
  require_positive(eta0, "eta0");
  require_nonnegative(beta, "beta");
  require_nonnegative(delta, "delta");

  const double ratio = n_max_ratio(xi0, eta0, beta);
  const bool near_integer = std::abs(ratio - std::round(ratio)) <= 1e-12 * std::max(1.0, ratio);
  const int formula_n_max = compute_n_max(xi0, eta0, beta);

  LadderChain chain{xi0, eta0, beta, delta, std::atan(std::sqrt(beta)), 0, {}};
  chain.steps.push_back({xi0, eta0, 0.0});

  // The formula bounds the iteration; one extra step lets the recursion settle ties.
  const int cap = formula_n_max + 1;
  ChainParams current{xi0, eta0, 0};
  while (current.n < cap) {
    const auto [next, eps] = ladder_step(current, beta, delta);
    if (!(next.eta > 0.0)) {
      break;
    }
    chain.steps.push_back({next.xi, next.eta, eps});
    current = next;
  }
  chain.n_max = current.n;

  if (chain.n_max != formula_n_max && !near_integer) {
    throw std::logic_error(fmt::format("n_max mismatch: recursion {} vs arctan formula {} (ratio {})",
                                       chain.n_max, formula_n_max, ratio));
  }
  for (int n = 0; n <= chain.n_max; ++n) {
    const double recursive = chain.steps[n].eta;
    const double closed = eta_closed_form(n, xi0, eta0, beta);
    if (std::abs(recursive - closed) > 1e-10 * std::max(1.0, std::abs(recursive))) {
      throw std::logic_error(fmt::format("eta_{} recursion {} disagrees with closed form {}", n,
                                         recursive, closed));
    }
  }
  return chain;
}

SpectrumResult spectrum(double v0, double beta, double delta) {
  const auto [xi0, eta0] = match_initial_params(v0, beta, delta);
  const LadderChain chain = build_chain(xi0, eta0, beta, delta);
  const double shift = eta0 * eta0 - xi0 * eta0 * delta;

  SpectrumResult result{v0, beta, delta, xi0, eta0, shift, chain.n_max, {}};
  result.levels.reserve(chain.steps.size());
  for (int n = 0; n <= chain.n_max; ++n) {
    const double eta = chain.steps[n].eta;
    // Closed form of the partial sums of eps; exactly 0 at n = 0.
    const double e_chain = n == 0 ? 0.0 : (eta0 * eta0 - eta * eta) * (1.0 + delta);
    result.levels.push_back({n, e_chain, e_chain - shift});
  }
  return result;
}

double linear_level(double xi0, double eta0, double beta, double delta, int n) {
  const double m = n;
  const double eta_lin = eta0 - xi0 * m;
  return (1.0 + delta) * (eta0 * eta0 - eta_lin * eta_lin) -
         beta / 3.0 * eta_lin * (xi0 * m * m * m - 3.0 * eta0 * m * m + 2.0 * xi0 * m);
}

std::vector<double> linear_spectrum(double xi0, double eta0, double beta, double delta, int n_max) {
  if (n_max < 0) {
    throw std::invalid_argument("linear_spectrum: n_max must be nonnegative");
  }
  std::vector<double> levels;
  levels.reserve(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    levels.push_back(linear_level(xi0, eta0, beta, delta, n));
  }
  return levels;
}

PartnerCoeffs partner_coeffs(const ChainParams& p, double beta, double delta, Partner which) {
  const double cross = p.xi * p.eta;
  const double sign = which == Partner::minus ? 1.0 : -1.0;
  return {
      p.xi * p.xi - sign * cross * beta,
      p.eta * p.eta + sign * cross,
      p.eta * p.eta - sign * cross * delta,
  };
}

std::vector<double> formal_continuation(const LadderChain& chain, int count) {
  std::vector<double> levels;
  const double scale = std::sqrt(1.0 + chain.beta);
  double xi = chain.steps.back().xi;
  double eta = chain.steps.back().eta;
  for (int k = 0; k < count; ++k) {
    const double next_xi = (xi + chain.beta * eta) / scale;
    eta = (eta - xi) / scale;
    xi = next_xi;
    levels.push_back((chain.eta0 * chain.eta0 - eta * eta) * (1.0 + chain.delta));
  }
  return levels;
}

}  // namespace dha
