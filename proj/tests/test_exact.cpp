#include <doctest.h>

#include <cmath>
#include <random>

#include "dyson/exact.hpp"
#include "dyson/lattice.hpp"
#include "oracle.hpp"

using namespace dyson;
using exact::exact_gibbs;

namespace {

oracle::System plus_system(Volume v, double alpha, double beta, double j1, SiteIndex cutoff) {
  oracle::System s;
  s.lo = v.lo();
  s.n = static_cast<std::size_t>(v.size());
  s.model = {alpha, beta, j1};
  s.exterior = oracle::plus();
  s.cutoff = cutoff;
  s.left_tail = s.right_tail = 1;
  return s;
}

}  // namespace

TEST_CASE("beta zero gives the uniform measure") {
  for (SiteIndex hi = 0; hi < 10; ++hi) {
    const auto r = exact_gibbs({0, hi}, BoundaryCondition::free(), CouplingModel(1.5, 0.0));
    CHECK(r.log_partition == doctest::Approx(static_cast<double>(hi + 1) * std::log(2.0)));
    for (const auto& [site, m] : r.magnetization) CHECK(std::abs(m) < 1e-14);
  }
}

TEST_CASE("single site is tanh of the boundary field") {
  const CouplingModel model(2.0, 1.0);
  const auto bc = BoundaryCondition::plus(1000);
  const double h = boundary_field(0, {0, 0}, bc, model);
  const auto r = exact_gibbs({0, 0}, bc, model);
  CHECK(r.magnetization.at(0) == doctest::Approx(std::tanh(h)).epsilon(1e-10));
}

TEST_CASE("one free site under a constraint") {
  const CouplingModel model(1.5, 0.7, 2.0);
  const auto bc = BoundaryCondition::plus(200);
  const Volume v(-3, 3);
  Constraint c;
  c.freeze(-3, -1, -1).freeze(1, 3, 1).freeze(2, -1);
  double h = boundary_field(0, v, bc, model);
  for (const auto& [site, spin] : c.frozen_sites) h += model.coupling(site, 0) * spin;
  const double m = exact::exact_conditional_magnetization(v, bc, model, c, 0);
  CHECK(m == doctest::Approx(std::tanh(model.beta() * h)).epsilon(1e-10));
  const auto r = exact_gibbs(v, bc, model, c);
  CHECK(r.magnetization.at(2) == -1.0);
  CHECK(r.magnetization.at(-2) == -1.0);
}

TEST_CASE("empty constraint agrees with the unconstrained measure") {
  const CouplingModel model(1.5, 1.2);
  const auto bc = BoundaryCondition::dobrushin_minus_plus(300);
  const Volume v(-3, 2);
  const auto r = exact_gibbs(v, bc, model);
  for (SiteIndex s = -3; s <= 2; ++s) {
    CHECK(exact::exact_conditional_magnetization(v, bc, model, {}, s) == doctest::Approx(r.magnetization.at(s)));
  }
}

TEST_CASE("enumeration agrees with the naive oracle") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 12; ++t) {
    const double alpha = std::vector<double>{1.3, 1.5, 1.9}[t % 3];
    const double beta = 0.3 + 1.7 * std::uniform_real_distribution<double>(0, 1)(rng);
    const Volume v(-static_cast<SiteIndex>(rng() % 4), static_cast<SiteIndex>(rng() % 6));
    const SiteIndex cutoff = 64;
    auto sys = plus_system(v, alpha, beta, 1.0 + static_cast<double>(t % 3), cutoff);
    Constraint c;
    if (t % 2 == 1) {
      c.freeze(v.lo(), -1);
      sys.frozen[v.lo()] = -1;
    }
    const auto law = oracle::gibbs(sys);
    const auto want = law.magnetization();
    const auto r = exact_gibbs(v, BoundaryCondition::plus(cutoff), CouplingModel(alpha, beta, sys.model.j1), c);
    CHECK(r.log_partition == doctest::Approx(static_cast<double>(law.log_partition)).epsilon(1e-12));
    for (SiteIndex s = v.lo(); s <= v.hi(); ++s) {
      CHECK(r.magnetization.at(s) == doctest::Approx(static_cast<double>(want[v.offset(s)])).epsilon(1e-11));
    }
  }
}

TEST_CASE("large beta stays finite") {
  const auto r = exact_gibbs({-4, 4}, BoundaryCondition::plus(100), CouplingModel(1.5, 400.0, 3.0));
  CHECK(std::isfinite(r.log_partition));
  CHECK(r.magnetization.at(0) == doctest::Approx(1.0));
}

TEST_CASE("GKS positivity and plus/minus symmetry") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 20; ++t) {
    const double alpha = 1.1 + 0.9 * std::uniform_real_distribution<double>(0, 1)(rng);
    const double beta = 3.0 * std::uniform_real_distribution<double>(0, 1)(rng);
    const SiteIndex size = 1 + static_cast<SiteIndex>(rng() % 16);
    const Volume v(0, size - 1);
    const CouplingModel model(alpha, beta);
    const auto p = exact_gibbs(v, BoundaryCondition::plus(50), model);
    const auto m = exact_gibbs(v, BoundaryCondition::minus(50), model);
    for (SiteIndex s = v.lo(); s <= v.hi(); ++s) {
      CHECK(p.magnetization.at(s) >= -1e-12);
      CHECK(std::abs(p.magnetization.at(s) + m.magnetization.at(s)) <= 1e-12);
    }
  }
}

TEST_CASE("nested volume bracket") {
  const CouplingModel model(1.5, 1.0);
  const std::vector<Volume> vols = {{-1, 1}, {-2, 2}, {-3, 3}};
  const auto seq = exact::nested_volume_bracket(0, vols, BoundaryCondition::plus(), model);
  REQUIRE(seq.size() == 3);
  CHECK(seq[0] > seq[1]);
  CHECK(seq[1] > seq[2]);

  const auto zero = exact::nested_volume_bracket(0, vols, BoundaryCondition::plus(), model.with_beta(0.0));
  for (double z : zero) CHECK(std::abs(z) < 1e-14);

  const std::vector<Volume> one = {{-2, 2}};
  const auto single = exact::nested_volume_bracket(0, one, BoundaryCondition::plus(), model);
  CHECK(single[0] == doctest::Approx(exact_gibbs({-2, 2}, BoundaryCondition::plus(), model).magnetization.at(0)));

  const std::vector<Volume> bad = {{-2, 2}, {-1, 3}};
  CHECK_THROWS_AS((void)exact::nested_volume_bracket(0, bad, BoundaryCondition::plus(), model), std::invalid_argument);
}

TEST_CASE("cap and constraint errors") {
  const CouplingModel model(1.5, 1.0);
  exact::ExactOptions small;
  small.max_free_sites = 4;
  CHECK_THROWS_AS((void)exact_gibbs({0, 4}, BoundaryCondition::plus(), model, {}, small), exact::CapExceeded);
  Constraint c;
  c.freeze(0, 1);
  CHECK_NOTHROW((void)exact_gibbs({0, 4}, BoundaryCondition::plus(), model, c, small));
  Constraint outside;
  outside.freeze(9, 1);
  CHECK_THROWS_AS((void)exact_gibbs({0, 4}, BoundaryCondition::plus(), model, outside), std::invalid_argument);
  CHECK_THROWS_AS(
      (void)exact::exact_conditional_magnetization({0, 4}, BoundaryCondition::plus(), model, c, 0),
      std::invalid_argument);
}

TEST_CASE("result does not depend on the worker count") {
  const CouplingModel model(1.5, 1.3, 2.0);
  const auto bc = BoundaryCondition::dobrushin_minus_plus(500);
  setenv("DYSON_THREADS", "1", 1);
  const auto a = exact_gibbs({-6, 6}, bc, model);
  setenv("DYSON_THREADS", "7", 1);
  const auto b = exact_gibbs({-6, 6}, bc, model);
  unsetenv("DYSON_THREADS");
  CHECK(a.log_partition == b.log_partition);
  CHECK(a.magnetization == b.magnetization);
}
