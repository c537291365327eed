#include <doctest.h>

#include <cmath>
#include <random>

#include "dha/errors.hpp"
#include "dha/shape_chain.hpp"

using namespace dha;

namespace {

// Matching by bisection on t = xi0 * eta0: xi0 = sqrt(1 + beta t), eta0 = t / xi0,
// and t^2 / (1 + beta t) + t = v0.
std::pair<double, double> bisect_match(double v0, double beta) {
  auto f = [&](double t) { return t * t / (1 + beta * t) + t - v0; };
  double lo = 0.0, hi = v0;
  for (int i = 0; i < 300; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0 ? lo : hi) = mid;
  }
  const double t = 0.5 * (lo + hi);
  const double xi = std::sqrt(1 + beta * t);
  return {xi, t / xi};
}

int brute_force_n_max(double xi0, double eta0, double beta, double delta) {
  ChainParams p{xi0, eta0, 0};
  int n = 0;
  while (true) {
    const auto step = ladder_step(p, beta, delta);
    if (step.next.eta <= 0) return n;
    p = step.next;
    ++n;
  }
}

double max_linear_error(double v0, double beta, double delta) {
  const auto s = spectrum(v0, beta, delta);
  const auto lin = linear_spectrum(s.xi0, s.eta0, beta, delta, s.n_max);
  double worst = 0;
  for (const auto& level : s.levels)
    worst = std::max(worst, std::abs(level.e_chain - lin[static_cast<std::size_t>(level.n)]));
  return worst;
}

}  // namespace

TEST_CASE("matching the figure parameters") {
  const auto m = match_initial_params(30, 0.01, 0.01);
  CHECK(m.xi0 == doctest::Approx(1.02525369729434).epsilon(1e-13));
  CHECK(m.eta0 == doctest::Approx(4.98853541817917).epsilon(1e-13));
  CHECK(m.xi0 * m.xi0 - m.xi0 * m.eta0 * 0.01 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(m.eta0 * m.eta0 + m.xi0 * m.eta0 == doctest::Approx(30.0).epsilon(1e-14));
}

TEST_CASE("matching at other deformations") {
  auto m = match_initial_params(30, 0.005, 0.005);
  CHECK(m.xi0 == doctest::Approx(1.01256367570331).epsilon(1e-13));
  CHECK(m.eta0 == doctest::Approx(4.99429279570605).epsilon(1e-13));
  m = match_initial_params(30, 0.02, 0.02);
  CHECK(m.xi0 == doctest::Approx(1.05100643643893).epsilon(1e-13));
  CHECK(m.eta0 == doctest::Approx(4.9768738710356).epsilon(1e-13));
  CHECK_THROWS_AS(match_initial_params(30, 3, 2), InconsistentAlgebra);
}

TEST_CASE("matching agrees with a bisection oracle") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> v0_dist(0.5, 200.0);
  std::uniform_real_distribution<double> beta_dist(0.0, 0.5);
  for (int trial = 0; trial < 500; ++trial) {
    const double v0 = v0_dist(rng), beta = beta_dist(rng);
    const auto m = match_initial_params(v0, beta, 0.0);
    const auto [xi, eta] = bisect_match(v0, beta);
    CHECK(m.xi0 == doctest::Approx(xi).epsilon(1e-12));
    CHECK(m.eta0 == doctest::Approx(eta).epsilon(1e-12));
  }
}

TEST_CASE("figure spectrum against high-precision values") {
  const auto s = spectrum(30, 0.01, 0.01);
  REQUIRE(s.n_max == 4);
  REQUIRE(s.levels.size() == 5);
  const double e_chain[] = {0, 9.42673847551251, 16.8755601985141, 22.0514623284899, 24.7494586424706};
  const double e_phys[] = {-24.8343404746123, -15.4076019990998, -7.95878027609819, -2.78287814612239,
                           -0.0848818321417501};
  for (int n = 0; n <= 4; ++n) {
    CHECK(s.levels[n].n == n);
    CHECK(s.levels[n].e_chain == doctest::Approx(e_chain[n]).epsilon(1e-12));
    CHECK(s.levels[n].e_physical == doctest::Approx(e_phys[n]).epsilon(1e-12));
  }
  CHECK(s.constant_shift == doctest::Approx(24.8343404746123).epsilon(1e-13));
}

TEST_CASE("chain steps against high-precision values") {
  const auto chain = build_chain(1.02525369729434, 4.98853541817917, 0.01, 0.01);
  REQUIRE(chain.n_max == 4);
  const double eta[] = {4.98853541817917, 3.94361270755985, 2.85954719743435, 1.747098909656,
                        0.617309582731733};
  const double eps[] = {0, 9.42673847551251, 7.44882172300161, 5.1759021299758, 2.69799631398064};
  for (int n = 0; n <= 4; ++n) {
    CHECK(chain.steps[n].eta == doctest::Approx(eta[n]).epsilon(1e-11));
    CHECK(chain.steps[n].eps == doctest::Approx(eps[n]).epsilon(1e-11));
  }
  CHECK(chain.theta == doctest::Approx(std::atan(0.1)).epsilon(1e-15));
  CHECK(eta_closed_form(5, chain.xi0, chain.eta0, 0.01) ==
        doctest::Approx(-0.518606924273831).epsilon(1e-10));
}

TEST_CASE("linear spectrum against high-precision values") {
  const auto m = match_initial_params(30, 0.01, 0.01);
  const auto lin = linear_spectrum(m.xi0, m.eta0, 0.01, 0.01, 4);
  const double expected[] = {0, 9.42673847551251, 16.881781030989, 22.0821039331616, 24.8287750602678};
  for (int n = 0; n <= 4; ++n) {
    CHECK(lin[n] == doctest::Approx(expected[n]).epsilon(1e-12));
    CHECK(linear_level(m.xi0, m.eta0, 0.01, 0.01, n) == doctest::Approx(lin[n]).epsilon(1e-15));
  }
}

TEST_CASE("undeformed limit reproduces the Poschl-Teller spectrum") {
  const auto s = spectrum(30, 0.0, 0.0);
  REQUIRE(s.n_max == 4);
  CHECK(s.xi0 == doctest::Approx(1.0));
  CHECK(s.eta0 == doctest::Approx(5.0));
  for (int n = 0; n <= 4; ++n)
    CHECK(s.levels[n].e_physical == doctest::Approx(-(5.0 - n) * (5.0 - n)).epsilon(1e-13));
  // v0 = 6: s = 2, levels -4, -1; the zero-energy edge is not bound.
  const auto small = spectrum(6, 0.0, 0.0);
  CHECK(small.n_max == 1);
}

TEST_CASE("ladder step rejects a terminated chain") {
  CHECK_THROWS_AS(ladder_step({1.0, 0.0, 3}, 0.01, 0.01), ChainTerminated);
  CHECK_THROWS_AS(ladder_step({1.0, -0.5, 3}, 0.01, 0.01), ChainTerminated);
  const auto step = ladder_step({1.0, 2.0, 0}, 0.0, 0.0);
  CHECK(step.next.n == 1);
  CHECK(step.next.xi == 1.0);
  CHECK(step.next.eta == 1.0);
  CHECK(step.eps == 3.0);
}

TEST_CASE("property: recursion agrees with the closed form") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> v0_dist(1.0, 500.0);
  std::uniform_real_distribution<double> beta_dist(1e-4, 0.2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const double beta = beta_dist(rng);
    const double delta = unit(rng) * 0.2;
    const auto m = match_initial_params(v0_dist(rng), beta, delta);
    const auto chain = build_chain(m.xi0, m.eta0, beta, delta);
    for (const auto& step : chain.steps) {
      const int n = static_cast<int>(&step - chain.steps.data());
      CHECK(step.eta == doctest::Approx(eta_closed_form(n, m.xi0, m.eta0, beta)).epsilon(1e-10).scale(m.eta0));
    }
    CHECK(chain.n_max == brute_force_n_max(m.xi0, m.eta0, beta, delta));
    CHECK(chain.n_max == compute_n_max(m.xi0, m.eta0, beta));
  }
}

TEST_CASE("property: chain levels increase and stay below the continuum") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> v0_dist(2.0, 300.0);
  std::uniform_real_distribution<double> small(0.0, 0.05);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = spectrum(v0_dist(rng), small(rng), small(rng));
    for (std::size_t n = 1; n < s.levels.size(); ++n)
      CHECK(s.levels[n].e_chain > s.levels[n - 1].e_chain);
    CHECK(s.levels.front().e_chain == 0.0);
  }
}

TEST_CASE("property: partner Hamiltonians are shape invariant") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> eta_dist(0.5, 10.0);
  std::uniform_real_distribution<double> xi_dist(0.8, 1.5);
  std::uniform_real_distribution<double> small(0.0, 0.1);
  for (int trial = 0; trial < 500; ++trial) {
    const ChainParams p{xi_dist(rng), eta_dist(rng), 0};
    const double beta = small(rng), delta = small(rng);
    const auto step = ladder_step(p, beta, delta);
    const auto plus = partner_coeffs(p, beta, delta, Partner::plus);
    const auto next_minus = partner_coeffs(step.next, beta, delta, Partner::minus);
    CHECK(plus.kinetic == doctest::Approx(next_minus.kinetic).epsilon(1e-12));
    CHECK(plus.depth == doctest::Approx(next_minus.depth).epsilon(1e-12));
    CHECK(plus.constant - next_minus.constant == doctest::Approx(step.eps).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("ground level of the deformed chain is exactly zero") {
  const auto s = spectrum(30, 0.01, 0.01);
  CHECK(s.levels[0].e_chain == 0.0);
  CHECK(s.levels[0].e_physical == doctest::Approx(-s.constant_shift).epsilon(1e-15));
}

TEST_CASE("linear approximation error shrinks quadratically") {
  const double coarse = max_linear_error(30, 0.02, 0.02);
  const double mid = max_linear_error(30, 0.01, 0.01);
  const double fine = max_linear_error(30, 0.005, 0.005);
  CHECK(coarse == doctest::Approx(0.2962).epsilon(1e-3));
  CHECK(mid == doctest::Approx(0.0793).epsilon(2e-3));
  CHECK(fine == doctest::Approx(0.02051).epsilon(2e-3));
  CHECK(coarse / mid >= 3.5);
  CHECK(coarse / mid <= 4.5);
  CHECK(mid / fine >= 3.5);
  CHECK(mid / fine <= 4.5);
}

TEST_CASE("deformed spectrum approaches the undeformed one") {
  const auto base = spectrum(30, 0.0, 0.0);
  double previous = INFINITY;
  for (double eps : {1e-2, 1e-3, 1e-4, 1e-5}) {
    const auto s = spectrum(30, eps, eps);
    double worst = 0;
    for (int n = 0; n <= base.n_max; ++n)
      worst = std::max(worst, std::abs(s.levels[n].e_physical - base.levels[n].e_physical));
    CHECK(worst < previous);
    if (std::isfinite(previous)) {
      CHECK(previous / worst > 8.0);
      CHECK(previous / worst < 12.0);
    }
    previous = worst;
  }
}

TEST_CASE("formal continuation past n_max") {
  const auto chain = build_chain(1.02525369729434, 4.98853541817917, 0.01, 0.01);
  const auto extra = formal_continuation(chain, 1);
  REQUIRE(extra.size() == 1);
  CHECK(extra[0] == doctest::Approx(24.8626978012885).epsilon(1e-11));
  CHECK(spectrum(30, 0.01, 0.01).levels.size() == 5);
}

TEST_CASE("n_max on an integer ratio is decided by the recursion") {
  // beta = 0: ratio eta0 / xi0 = 5 exactly, eta_5 = 0 is not a bound level.
  const auto chain = build_chain(1.0, 5.0, 0.0, 0.0);
  CHECK(chain.n_max == 4);
  CHECK(compute_n_max(1.0, 5.0, 0.0) == 4);
  CHECK(compute_n_max(1.0, 5.0000001, 0.0) == 5);
}
