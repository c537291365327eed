#include <doctest.h>

#include <cmath>
#include <random>

#include "dha/algebra_bounds.hpp"
#include "dha/errors.hpp"

using namespace dha;

namespace {

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1e-300, std::abs(a), std::abs(b)});
}

// Brute-force solution set of beta t^2 - 2t + delta <= 0: log scan for the
// sign change, then bisection on each edge.
std::pair<double, double> scan_window(double beta, double delta) {
  auto f = [&](double t) { return beta * t * t - 2.0 * t + delta; };
  auto refine = [&](double lo, double hi) {
    // f(lo) and f(hi) have opposite signs
    const bool lo_neg = f(lo) <= 0.0;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      if ((f(mid) <= 0.0) == lo_neg) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
  };
  const int samples = 200000;
  double prev = 1e-8;
  double first = NAN, last = NAN;
  for (int k = 1; k <= samples; ++k) {
    const double t = 1e-8 * std::pow(1e16, static_cast<double>(k) / samples);
    if ((f(prev) <= 0.0) != (f(t) <= 0.0)) {
      const double edge = refine(prev, t);
      if (std::isnan(first)) first = edge; else last = edge;
    }
    prev = t;
  }
  return {first, last};
}

}  // namespace

TEST_CASE("consistency report under the paper criterion") {
  SUBCASE("figure parameters") {
    const auto r = check_consistency(TanhAlgebra(1, 0.01, 0.01));
    CHECK(r.consistent);
    CHECK_FALSE(r.degenerate);
    CHECK(r.margin == doctest::Approx(3.9999).epsilon(1e-14));
    CHECK(r.criterion == Criterion::paper);
  }
  SUBCASE("boundary is consistent but degenerate") {
    const auto r = check_consistency(TanhAlgebra(1, 4, 1));
    CHECK(r.consistent);
    CHECK(r.degenerate);
    CHECK(r.margin == 0.0);
  }
  SUBCASE("beta*delta > 4 is self-contradictory") {
    const auto r = check_consistency(TanhAlgebra::unchecked(1, 3, 2));
    CHECK_FALSE(r.consistent);
    CHECK(r.margin == -2.0);
    CHECK_THROWS_AS(TanhAlgebra(1, 3, 2), InconsistentAlgebra);
  }
  SUBCASE("quartic alpha*beta^2 > 4") {
    const auto r = check_consistency(QuarticAlgebra::unchecked(1, 3));
    CHECK_FALSE(r.consistent);
    CHECK(r.margin == -5.0);
    CHECK_THROWS_AS(QuarticAlgebra(1, 3), InconsistentAlgebra);
  }
  SUBCASE("sharp criterion is stricter") {
    const auto algebra = TanhAlgebra(1, 2, 1);
    CHECK(check_consistency(algebra).consistent);
    const auto sharp = check_consistency(algebra, Criterion::sharp);
    CHECK_FALSE(sharp.consistent);
    CHECK(sharp.margin == -1.0);
    CHECK(sharp.criterion == Criterion::sharp);
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(TanhAlgebra(0, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(TanhAlgebra(1, -1, 1), std::invalid_argument);
  CHECK_THROWS_AS(TanhAlgebra(1, 1, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(TanhAlgebra(1, NAN, 1), std::invalid_argument);
  CHECK_THROWS_AS(QuarticAlgebra(1, 0), std::invalid_argument);
  CHECK_NOTHROW(TanhAlgebra(1, 0.01, 0.0));
}

TEST_CASE("tanh window") {
  SUBCASE("figure parameters") {
    const auto w = tanh_window(TanhAlgebra(1, 0.01, 0.01));
    CHECK(w.dp_min == doctest::Approx(0.005).epsilon(1e-15));
    CHECK(w.dp_max == doctest::Approx(200).epsilon(1e-15));
    CHECK(w.p2_min == doctest::Approx(2.5e-5).epsilon(1e-15));
    CHECK(w.p2_max == doctest::Approx(4e4).epsilon(1e-15));
    CHECK(w.dtanh_min == doctest::Approx(0.01).epsilon(1e-15));
    CHECK(w.dx_min == doctest::Approx(0.01).epsilon(1e-15));
  }
  SUBCASE("beta*delta = 4 collapses the momentum window") {
    const auto w = tanh_window(TanhAlgebra(1, 2, 2));
    CHECK(w.dp_min == 1.0);
    CHECK(w.dp_max == 1.0);
  }
  SUBCASE("delta = 0 has no lower momentum bound") {
    const auto w = tanh_window(TanhAlgebra(1, 0.01, 0));
    CHECK(w.dp_min == 0.0);
    CHECK(w.p2_min == 0.0);
    CHECK(w.dtanh_min == 0.0);
    CHECK(w.dx_min == 0.0);
  }
  SUBCASE("coordinate bound scales with 1/alpha") {
    const auto w = tanh_window(TanhAlgebra(2, 0.04, 1));
    CHECK(w.dtanh_min == doctest::Approx(0.2));
    CHECK(w.dx_min == doctest::Approx(0.1));
  }
  CHECK_THROWS_AS(tanh_window(TanhAlgebra::unchecked(1, 3, 2)), InconsistentAlgebra);
}

TEST_CASE("sharp momentum window") {
  SUBCASE("figure parameters against a brute-force scan") {
    const auto [lo, hi] = tanh_sharp_momentum_window(TanhAlgebra(1, 0.01, 0.01));
    const auto [scan_lo, scan_hi] = scan_window(0.01, 0.01);
    CHECK(lo == doctest::Approx(0.0050001).epsilon(1e-6));
    CHECK(hi == doctest::Approx(199.995).epsilon(1e-6));
    CHECK(close_rel(lo, scan_lo, 1e-10));
    CHECK(close_rel(hi, scan_hi, 1e-10));
  }
  SUBCASE("double root at beta*delta = 1") {
    const auto [lo, hi] = tanh_sharp_momentum_window(TanhAlgebra(1, 1, 1));
    CHECK(lo == 1.0);
    CHECK(hi == 1.0);
  }
  CHECK_THROWS_AS(tanh_sharp_momentum_window(TanhAlgebra(1, 1, 2)), NoRealWindow);
}

TEST_CASE("quartic window") {
  SUBCASE("alpha = beta = 1") {
    const auto w = quartic_window(QuarticAlgebra(1, 1));
    CHECK(w.p2_max == 16.0);
    CHECK(w.dp2_min == doctest::Approx(4.0 / 9.0 * std::sqrt(3.0)).epsilon(1e-15));
    CHECK(w.dp2_min == doctest::Approx(0.7698).epsilon(1e-4));
    CHECK(w.x2_max == 4.0);
    CHECK(w.dx2_min == 1.0);
  }
  SUBCASE("X window degenerates at alpha*beta^2 = 4") {
    const auto w = quartic_window(QuarticAlgebra(1, 2));
    CHECK(w.x2_max == 2.0);
    CHECK(w.dx2_min == 2.0);
  }
  SUBCASE("alpha = 4, beta = 1") {
    const auto w = quartic_window(QuarticAlgebra(4, 1));
    CHECK(w.p2_max == 4.0);
    CHECK(w.dp2_min == doctest::Approx(1.5396).epsilon(1e-4));
    CHECK(w.x2_max == 1.0);
    CHECK(w.dx2_min == 1.0);
  }
  CHECK_THROWS_AS(quartic_window(QuarticAlgebra::unchecked(1, 3)), InconsistentAlgebra);
}

TEST_CASE("Kempf minimal length") {
  CHECK(kempf_minimal_length(1.0) == 1.0);
  CHECK(kempf_minimal_length(0.01) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(kempf_minimal_length(4.0) == 2.0);
  CHECK_THROWS_AS(kempf_minimal_length(0.0), std::domain_error);
  CHECK_THROWS_AS(kempf_minimal_length(-1.0), std::domain_error);
}

TEST_CASE("property: sharp window nests inside the paper window") {
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> log_beta(-4.0, 2.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double beta = std::pow(10.0, log_beta(rng));
    const double delta = unit(rng) / beta;  // beta*delta <= 1
    const TanhAlgebra algebra(1.0, beta, delta);
    const auto [lo, hi] = tanh_sharp_momentum_window(algebra);
    const auto w = tanh_window(algebra);
    CHECK(lo >= w.dp_min * (1.0 - 1e-12));
    CHECK(hi <= w.dp_max * (1.0 + 1e-12));
    CHECK(lo <= hi);
    // Both edges are roots of beta t^2 - 2t + delta.
    CHECK(std::abs(beta * lo * lo - 2 * lo + delta) <= 1e-12 * std::max(1.0, 2 * lo));
    CHECK(std::abs(beta * hi * hi - 2 * hi + delta) <= 1e-12 * std::max(1.0, 2 * hi));
  }
}

TEST_CASE("property: windows match closed-form substitution") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> log_param(-3.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double alpha = std::pow(10.0, log_param(rng));
    const double beta = std::pow(10.0, log_param(rng));
    const double delta = std::min(std::pow(10.0, log_param(rng)), 4.0 / beta);
    const auto w = tanh_window(TanhAlgebra(alpha, beta, delta));
    const long double b = beta, d = delta, a = alpha;
    CHECK(close_rel(w.dp_min, static_cast<double>(d / 2), 1e-12));
    CHECK(close_rel(w.dp_max, static_cast<double>(2 / b), 1e-12));
    CHECK(close_rel(w.p2_min, static_cast<double>(d * d / 4), 1e-12));
    CHECK(close_rel(w.p2_max, static_cast<double>(4 / (b * b)), 1e-12));
    CHECK(close_rel(w.dtanh_min, static_cast<double>(std::sqrt(b * d)), 1e-12));
    CHECK(close_rel(w.dx_min, static_cast<double>(std::sqrt(b * d) / a), 1e-12));
    CHECK(w.dp_min <= w.dp_max * (1 + 1e-12));
    CHECK(w.p2_min <= w.p2_max * (1 + 1e-12));
  }
}

TEST_CASE("property: the momentum window shrinks monotonically as beta*delta -> 4") {
  const double beta = 0.5;
  double previous_width = INFINITY;
  for (int k = 0; k <= 100; ++k) {
    const double delta = 8.0 * k / 100.0;  // beta*delta from 0 to 4
    const auto w = tanh_window(TanhAlgebra(1, beta, delta));
    const double width = w.dp_max - w.dp_min;
    CHECK(width < previous_width);
    CHECK(width >= 0.0);
    previous_width = width;
  }
  CHECK(previous_width == 0.0);
}

TEST_CASE("property: consistency is monotone in the parameters") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> param(0.0, 4.0);
  std::uniform_real_distribution<double> shrink(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double beta = param(rng) + 1e-6;
    const double delta = param(rng);
    if (!check_consistency(TanhAlgebra::unchecked(1, beta, delta)).consistent) continue;
    const double beta2 = beta * shrink(rng) + 1e-9;
    const double delta2 = delta * shrink(rng);
    CHECK(check_consistency(TanhAlgebra::unchecked(1, beta2, delta2)).consistent);
  }
}

TEST_CASE("property: quartic X window degenerates exactly on the boundary") {
  for (double beta : {0.5, 1.0, 2.0, 4.0, 8.0}) {
    const double alpha = 4.0 / (beta * beta);
    const auto w = quartic_window(QuarticAlgebra(alpha, beta));
    CHECK(w.x2_max == doctest::Approx(w.dx2_min).epsilon(1e-15));
  }
}
