#include <doctest.h>

#include <cmath>
#include <random>

#include "dyson/analytics.hpp"
#include "dyson/lattice.hpp"
#include "dyson/numerics.hpp"
#include "oracle.hpp"

using namespace dyson;
using namespace dyson::analytics;

namespace {

/// sum_{n > N} (-1)^{n+1} n^{-alpha}: direct partial sum to K, then the
/// Boole remainder f(K)/2 - f'(K)/4, whose error is O(K^{-alpha-3}).
long double remainder_oracle(std::int64_t N, double alpha) {
  const std::int64_t K = N + 2'000'001;
  const long double a = alpha;
  long double s = 0.0L;
  for (std::int64_t n = K - 1; n > N; --n) {
    const long double term = std::pow(static_cast<long double>(n), -a);
    s += (n % 2 == 1) ? term : -term;
  }
  const long double sign = (K % 2 == 1) ? 1.0L : -1.0L;
  const long double fk = std::pow(static_cast<long double>(K), -a);
  const long double dfk = -a * std::pow(static_cast<long double>(K), -a - 1.0L);
  return s + sign * (fk / 2.0L - dfk / 4.0L);
}

/// Direct B with exterior truncated at `reach` on each side.
long double b_oracle(const std::function<int(std::int64_t)>& omega, std::int64_t L1, double alpha, std::int64_t reach) {
  long double b = 0.0L;
  for (std::int64_t j = -L1 - reach; j < reach; ++j) {
    if (j >= -L1 && j <= -1) continue;
    long double c = 0.0L;
    for (std::int64_t i = -L1; i <= -1; ++i) {
      const long double sign = (i % 2 == 0) ? 1.0L : -1.0L;
      c += sign * std::pow(static_cast<long double>(std::llabs(i - j)), -static_cast<long double>(alpha));
    }
    b += c * omega(j);
  }
  return b;
}

}  // namespace

TEST_CASE("f_alpha values and symmetry") {
  for (double a : {1.1, 1.42, 1.5, 1.9}) {
    CHECK(f_alpha(0.0, a).value == doctest::Approx(2.0));
    CHECK(f_alpha(0.0, a).first == doctest::Approx(0.0));
    for (double t : {0.1, 0.37, 0.8}) {
      CHECK(f_alpha(t, a).value == doctest::Approx(f_alpha(-t, a).value));
      const double h = 1e-6;
      const double fd = (f_alpha(t + h, a).value - f_alpha(t - h, a).value) / (2 * h);
      CHECK(f_alpha(t, a).first == doctest::Approx(fd).epsilon(1e-6));
      const double sd = (f_alpha(t + h, a).first - f_alpha(t - h, a).first) / (2 * h);
      CHECK(f_alpha(t, a).second == doctest::Approx(sd).epsilon(1e-5));
      CHECK(f_alpha(t, a).second < 0.0);
    }
  }
  CHECK(f_alpha(1.0, 1.5).value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(std::isinf(f_alpha(1.0, 1.5).first));
  CHECK_THROWS_AS((void)f_alpha(1.01, 1.5), std::invalid_argument);
}

TEST_CASE("f_alpha peaks at zero on a fine grid") {
  for (double a : {1.42, 1.5, 1.7, 1.9}) {
    const double at_zero = f_alpha(0.0, a).value;
    for (int k = 0; k <= 10000; ++k) {
      const double t = -1.0 + 2.0 * k / 10000.0;
      CHECK(f_alpha(t, a).value <= at_zero + 1e-15);
    }
  }
}

TEST_CASE("g coefficient rebuilt factor by factor") {
  const double alpha = 1.5, beta = 5.0, eps = 0.5, j1 = 3.0, c1 = 1.0;
  const long double zeta = oracle::tail(1, alpha);
  long double M = 0.0L;
  const int points = 100000;
  for (int k = 1; k <= points; ++k) {
    const long double t = eps + (1.0L - eps) * k / points;
    M = std::max(M, std::pow(1.0L + t, 2.0L - alpha) + std::pow(1.0L - t, 2.0L - alpha));
  }
  const long double f_half = std::pow(1.5L, 2.0L - alpha) + std::pow(0.5L, 2.0L - alpha);
  const long double x = std::exp(-c1 * beta);
  const long double pref = std::exp(-2.0L * beta * (zeta + j1)) / ((2.0L - alpha) * (alpha - 1.0L));
  const long double want = pref * (f_half * (1.0L - x) - M * (1.0L + x));
  const double got = g_coefficient(alpha, beta, eps, j1, c1);
  CHECK(got == doctest::Approx(static_cast<double>(want)).epsilon(1e-9));
  CHECK_THROWS_AS((void)g_coefficient(alpha, beta, 1.0, j1, c1), std::invalid_argument);
}

TEST_CASE("g bracket changes sign where f(1/2)(1-x) = M(1+x)") {
  const double alpha = 1.5, eps = 0.3, j1 = 1.0, c1 = 1.0;
  const double f_half = f_alpha(0.5, alpha).value;
  const double M = f_alpha_max_outside(eps, alpha);
  REQUIRE(f_half < M);  // eps below 1/2: the bracket is negative for every beta
  CHECK(g_coefficient(alpha, 10.0, eps, j1, c1) < 0.0);

  // With eps above 1/2 the crossing exists.
  const double eps2 = 0.6;
  const double M2 = f_alpha_max_outside(eps2, alpha);
  REQUIRE(M2 < f_half);
  const double x_star = (f_half - M2) / (f_half + M2);
  const double beta_star = -std::log(x_star) / c1;
  CHECK(g_coefficient(alpha, 0.9 * beta_star, eps2, j1, c1) < 0.0);
  CHECK(g_coefficient(alpha, 1.1 * beta_star, eps2, j1, c1) > 0.0);
  // Past the crossing the prefactor drives g to zero from above.
  double previous = g_coefficient(alpha, 2.0 * beta_star, eps2, j1, c1);
  for (double b = 3.0 * beta_star; b < 20.0 * beta_star; b += beta_star) {
    const double g = g_coefficient(alpha, b, eps2, j1, c1);
    CHECK(g > 0.0);
    CHECK(g < previous);
    previous = g;
  }
}

TEST_CASE("alternating remainders") {
  CHECK(alternating_remainder(0, 2.0) == doctest::Approx(M_PI * M_PI / 12.0).epsilon(1e-12));
  CHECK(std::abs(alternating_remainder(0, 2.0) - M_PI * M_PI / 12.0) < 1e-10);
  for (double a : {1.2, 1.5, 1.9}) {
    for (std::int64_t N : {0, 1, 2, 5, 37, 400, 9999}) {
      const double want = static_cast<double>(remainder_oracle(N, a));
      CHECK(std::abs(alternating_remainder(N, a) - want) <= 1e-13);
    }
  }
  for (std::int64_t N = 1; N <= 200; ++N) {
    const double r = alternating_remainder(N, 1.5);
    CHECK(std::abs(r) <= std::pow(static_cast<double>(N + 1), -1.5));
    // The first omitted term is (-1)^N (N+1)^{-alpha}; R_N carries its sign.
    CHECK((r > 0.0) == (N % 2 == 0));
  }
}

TEST_CASE("B observable") {
  const std::int64_t L1 = 5;
  const double alpha = 1.5;
  const auto plus = [](SiteIndex) -> Spin { return 1; };
  const auto minus = [](SiteIndex) -> Spin { return -1; };
  const double bp = b_observable(plus, L1, alpha, 2000);
  const double bm = b_observable(minus, L1, alpha, 2000);
  CHECK(bp == doctest::Approx(-bm));

  // L1 = 1: one inner term.
  std::mt19937_64 rng(41);
  std::map<SiteIndex, int> pattern;
  for (SiteIndex j = -400; j < 400; ++j) pattern[j] = (rng() & 1U) ? 1 : -1;
  const auto omega = [&](SiteIndex j) -> Spin { return static_cast<Spin>(pattern.at(j)); };
  const double b1 = b_observable(omega, 1, alpha, 300);
  long double direct = 0.0L;
  for (SiteIndex j = -301; j < 300; ++j) {
    if (j == -1) continue;
    direct -= pattern.at(j) * std::pow(static_cast<long double>(std::llabs(1 + j)), -1.5L);
  }
  CHECK(b1 == doctest::Approx(static_cast<double>(direct)).epsilon(1e-12));

  const double b5 = b_observable(omega, L1, alpha, 300);
  CHECK(b5 == doctest::Approx(static_cast<double>(b_oracle([&](std::int64_t j) { return pattern.at(j); }, L1, alpha, 300)))
                  .epsilon(1e-12));

  CHECK_THROWS_AS((void)b_observable(plus, L1, alpha, 10, 1e-6), std::invalid_argument);
}

TEST_CASE("the maximizer beats random exteriors") {
  std::mt19937_64 rng(43);
  for (std::int64_t L1 : {3, 4}) {
    const BObservable b(L1, 1.5, 200);
    const double best = b.evaluate([&](SiteIndex j) { return b.maximizer(j); });
    for (int t = 0; t < 1000; ++t) {
      std::map<SiteIndex, Spin> w;
      for (auto j : b.sites()) w[j] = (rng() & 1U) ? 1 : -1;
      CHECK(std::abs(b.evaluate([&](SiteIndex j) { return w.at(j); })) <= best + 1e-12);
    }
    // The closed form agrees with the truncated sum up to the truncation bound.
    CHECK(std::abs(b_max(L1, 1.5).computed_value - best) <= b.tail_bound() + 1e-12);
  }
}

TEST_CASE("b_max stays below one constant") {
  for (double a : {1.2, 1.5, 1.9}) {
    const double ceiling = 2.0 * numerics::zeta(a) + 2.0 * numerics::power_tail(3, a);
    for (std::int64_t L1 = 2; L1 <= 256; L1 *= 2) {
      const auto r = b_max(L1, a);
      CHECK(r.satisfied);
      CHECK(r.computed_value <= ceiling);
    }
  }
}

TEST_CASE("field profiles") {
  FieldProfileSpec minus;
  minus.annulus_sign = -1;
  CHECK(field_profile(minus, 0) < 0.0);
  // The term-by-term comparison needs both specs to share the far pattern.
  std::mt19937_64 rng(8);
  std::vector<Spin> far(static_cast<std::size_t>(minus.n - minus.N));
  for (auto& s : far) s = (rng() & 1U) ? 1 : -1;
  minus.far_pattern = far;
  FieldProfileSpec plus = minus;
  plus.annulus_sign = 1;
  for (std::int64_t x : {0, 3, 100, 5000}) {
    long double diff = 0.0L;
    for (std::int64_t k = minus.L + 1; k <= minus.N; ++k) diff += 2.0L * std::pow(static_cast<long double>(k + x), -1.5L);
    CHECK(field_profile(plus, x) - field_profile(minus, x) == doctest::Approx(static_cast<double>(diff)).epsilon(1e-11));
    CHECK(field_profile(plus, x) >= field_profile(minus, x));
  }
  // Domination by the tail of the couplings at distance x.
  for (std::int64_t x : {10, 1000, 100000, 10000000}) {
    const double h = field_profile(minus, x);
    CHECK(std::abs(h) <= 2.0 * numerics::power_tail(x + 1, 1.5));
  }

  // An all-plus past is the plus-boundary field of [0, n + 2x] seen from x.
  FieldProfileSpec all;
  all.L = 2;
  all.N = 10;
  all.n = 40;
  all.alpha = 1.7;
  all.annulus_sign = 1;
  std::vector<Spin> past(static_cast<std::size_t>(all.n), 1);
  for (std::int64_t x : {0, 1, 5, 17}) {
    const double h = past_field(past, x, all.alpha);
    const double bf = boundary_field(x, Volume(0, all.n + 2 * x), BoundaryCondition::plus(100000), CouplingModel(1.7, 1.0));
    CHECK(h == doctest::Approx(bf).epsilon(1e-10));
  }

  FieldProfileSpec bad;
  bad.N = bad.L;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("energy tail of a far block") {
  struct Triple {
    std::int64_t L, N;
    double alpha;
  };
  for (const auto& t : {Triple{4, 64, 1.5}, Triple{8, 256, 1.3}, Triple{16, 1024, 1.9}}) {
    // sum_d count(d) d^{-alpha} with count(d) = #{i in [0,2L] : i + N + 1 <= d}.
    const std::int64_t D = 4'000'000;
    long double direct = 0.0L;
    for (std::int64_t d = D; d >= t.N + 1; --d) {
      const std::int64_t count = std::min<std::int64_t>(2 * t.L + 1, d - t.N);
      direct += count * std::pow(static_cast<long double>(d), -static_cast<long double>(t.alpha));
    }
    direct += (2 * t.L + 1) * oracle::tail(D + 1, t.alpha);
    CHECK(boundary_tail_exact(t.L, t.N, t.alpha) == doctest::Approx(static_cast<double>(direct)).epsilon(1e-12));
    CHECK(boundary_tail_exact(t.L, t.N, t.alpha) <= boundary_tail_bound(t.L, t.N, t.alpha));
  }
  CHECK(boundary_tail_bound(8, 100, 1.5) == doctest::Approx(2.0 * boundary_tail_bound(4, 100, 1.5)));
  CHECK(boundary_tail_bound(4, 1000000000, 1.5) < 1e-3);
  CHECK(boundary_tail_bound(4, 64, 1.5) == doctest::Approx(3.0 / 0.5 * 4.0 / 8.0));
}

TEST_CASE("bond removal energy") {
  const std::int64_t L1 = 3;
  const double alpha = 1.6;
  long double direct = 0.0L;
  for (std::int64_t i = -L1; i <= -1; ++i) {
    direct += oracle::tail(-i, alpha);          // j >= 0
    direct += oracle::tail(i + L1 + 1, alpha);  // j < -L1
  }
  CHECK(bond_removal_energy(L1, alpha) == doctest::Approx(static_cast<double>(direct)).epsilon(1e-12));
}
