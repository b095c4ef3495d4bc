#include <doctest.h>

#include <cmath>
#include <numeric>

#include "dyson/exact.hpp"
#include "dyson/mc.hpp"

using namespace dyson;
using mc::McParams;

namespace {

std::vector<SiteIndex> sites_of(const Volume& v) {
  std::vector<SiteIndex> s(static_cast<std::size_t>(v.size()));
  std::iota(s.begin(), s.end(), v.lo());
  return s;
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(McParams({10, 10, 4, 1, 1}).validate(true), std::invalid_argument);
  CHECK_THROWS_AS(McParams({10, 2, 1, 1, 1}).validate(true), std::invalid_argument);
  CHECK_NOTHROW(McParams({10, 2, 1, 1, 1}).validate(false));
  CHECK_THROWS_AS(McParams({10, 2, 2, 1, 0}).validate(true), std::invalid_argument);
  CHECK_THROWS_AS(McParams({10, 2, 0, 1, 1}).validate(false), std::invalid_argument);
  CHECK_THROWS_AS((void)mc::mc_magnetization({0, 2}, BoundaryCondition::free(), CouplingModel(1.5, 1.0), {},
                                             std::vector<SiteIndex>{0}, McParams{100, 10, 1, 1, 1}),
                  std::invalid_argument);
}

TEST_CASE("beta zero samples uniformly") {
  const Volume v(0, 5);
  const auto est = mc::mc_magnetization(v, BoundaryCondition::free(), CouplingModel(1.5, 0.0), {}, sites_of(v),
                                        McParams{4000, 100, 8, 3, 1});
  for (const auto& [site, e] : est) {
    CHECK(std::abs(e.mean) <= 4.0 * e.std_error);
    CHECK(e.n_samples == 8 * 3900);
  }
}

TEST_CASE("one free site matches tanh of its field") {
  // Frozen neighbours of equal sign keep the field away from zero.
  const CouplingModel model(1.5, 0.2);
  const auto bc = BoundaryCondition::dobrushin_minus_plus(200);
  const Volume v(-2, 2);
  Constraint c;
  c.freeze(-2, -1, 1).freeze(1, 2, 1);
  double h = boundary_field(0, v, bc, model);
  for (const auto& [site, spin] : c.frozen_sites) h += model.coupling(site, 0) * spin;
  const std::vector<SiteIndex> probe = {0};
  const auto est = mc::mc_magnetization(v, bc, model, c, probe, McParams{20000, 100, 8, 9, 1});
  CHECK(std::abs(est.at(0).mean - std::tanh(model.beta() * h)) <= 4.0 * est.at(0).std_error);
}

TEST_CASE("profile on [-3,3] under Dobrushin boundary matches enumeration") {
  const CouplingModel model(1.5, 0.5);
  const auto bc = BoundaryCondition::dobrushin_minus_plus(1000);
  const Volume v(-3, 3);
  const auto exact = exact::exact_gibbs(v, bc, model);
  const auto est = mc::mc_magnetization(v, bc, model, {}, sites_of(v), McParams{100000, 1000, 8, 5, 1});
  int inside = 0;
  for (SiteIndex s = -3; s <= 3; ++s) {
    const auto& e = est.at(s);
    if (std::abs(e.mean - exact.magnetization.at(s)) <= 3.0 * e.std_error) ++inside;
  }
  CHECK(inside >= 6);
}

TEST_CASE("stream length, thinning and frozen sites") {
  const Volume v(0, 4);
  Constraint c;
  c.freeze(2, -1);
  const McParams p{1000, 100, 3, 4, 7};
  mc::McSampleStream stream(v, BoundaryCondition::plus(50), CouplingModel(1.5, 0.5), c, p);
  CHECK(stream.size() == 3 * (900 / 7));
  std::int64_t n = 0;
  while (auto cfg = stream.next()) {
    CHECK(cfg->at(2) == -1);
    ++n;
  }
  CHECK(n == stream.size());
}

TEST_CASE("large beta keeps the all-plus state") {
  const CouplingModel model(1.5, 50.0);
  const auto bc = BoundaryCondition::plus(1000);
  const Volume v(-4, 4);
  // Smallest cost of flipping one spin of the all-plus state.
  const auto all_plus = SpinConfig::uniform(v, 1);
  double min_cost = std::numeric_limits<double>::infinity();
  for (SiteIndex s = v.lo(); s <= v.hi(); ++s) min_cost = std::min(min_cost, delta_energy(all_plus, s, bc, model));
  REQUIRE(min_cost > 0.0);
  const double per_proposal = std::exp(-model.beta() * min_cost);
  const McParams p{1000, 0, 2, 1, 1};
  mc::McSampleStream stream(v, bc, model, {}, p);
  std::int64_t all = 0;
  std::int64_t total = 0;
  while (auto cfg = stream.next()) {
    ++total;
    all += *cfg == all_plus;
  }
  // A union bound over every proposal made says a departure is this unlikely.
  CHECK(per_proposal * static_cast<double>(p.sweeps * v.size() * p.chains) < 1e-6);
  CHECK(static_cast<double>(all) >= 0.99 * static_cast<double>(total));
}

TEST_CASE("seed determinism and seed sensitivity") {
  const Volume v(-3, 3);
  const auto bc = BoundaryCondition::dobrushin_minus_plus(100);
  const CouplingModel model(1.5, 1.0, 2.0);
  const McParams p{3000, 100, 4, 42, 1};
  setenv("DYSON_THREADS", "1", 1);
  const auto a = mc::mc_magnetization(v, bc, model, {}, sites_of(v), p);
  setenv("DYSON_THREADS", "4", 1);
  const auto b = mc::mc_magnetization(v, bc, model, {}, sites_of(v), p);
  unsetenv("DYSON_THREADS");
  auto q = p;
  q.seed = 43;
  const auto c = mc::mc_magnetization(v, bc, model, {}, sites_of(v), q);
  bool any_diff = false;
  for (SiteIndex s = -3; s <= 3; ++s) {
    CHECK(a.at(s).mean == b.at(s).mean);
    CHECK(a.at(s).std_error == b.at(s).std_error);
    any_diff = any_diff || a.at(s).mean != c.at(s).mean;
  }
  CHECK(any_diff);
  CHECK(mc::chain_seed(1, 0) != mc::chain_seed(1, 1));
  CHECK(mc::chain_seed(1, 0) != mc::chain_seed(2, 0));
}

TEST_CASE("aligned start follows the boundary") {
  const Volume v(-2, 2);
  const CouplingModel model(1.5, 1.0);
  const ReducedSystem plus(v, BoundaryCondition::plus(), model);
  const ReducedSystem minus(v, BoundaryCondition::minus(), model);
  const ReducedSystem dmp(v, BoundaryCondition::dobrushin_minus_plus(), model);
  for (auto s : mc::aligned_start(plus)) CHECK(s == 1);
  for (auto s : mc::aligned_start(minus)) CHECK(s == -1);
  const auto step = mc::aligned_start(dmp);
  CHECK(step.front() == -1);
  CHECK(step.back() == 1);
}

TEST_CASE("chain-mean combination") {
  const std::vector<double> means = {0.1, 0.3, 0.2, 0.4};
  const auto e = mc::combine_chain_means(means, 10);
  CHECK(e.mean == doctest::Approx(0.25));
  const double var = (0.0225 + 0.0025 + 0.0025 + 0.0225) / 3.0;
  CHECK(e.std_error == doctest::Approx(std::sqrt(var / 4.0)));
  CHECK(e.n_samples == 40);
  const std::vector<double> one = {0.7};
  CHECK(mc::combine_chain_means(one, 5).std_error == 0.0);
}
