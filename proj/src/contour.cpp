#include "dyson/contour.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <tuple>

namespace dyson::contour {

namespace {

constexpr std::int64_t kNone = -1;

std::int64_t signed_square(std::int64_t u) noexcept { return u * (u < 0 ? -u : u); }

Spin exterior_neighbour(const BoundaryCondition& bc, const Volume& v, SiteIndex site) {
  return bc.kind() == BoundaryKind::Free ? Spin{0} : bc.exterior_spin(site, v);
}

void require_dobrushin(const BoundaryCondition& bc) {
  if (!bc.is_dobrushin()) throw std::invalid_argument("the interface point needs a Dobrushin boundary condition");
}

std::size_t interface_bin(const InterfaceFrame& frame, std::span<const Spin> spins, Spin left, Spin right) {
  const auto flips = spin_flip_points(spins, frame.volume.lo(), left, right);
  const auto diagram = build_triangles(flips);
  return frame.bin_of(diagram.interface->doubled);
}

}  // namespace

double perturbation_scale(std::int64_t extent) noexcept {
  const double x = static_cast<double>(std::llabs(extent)) + 1.0;
  return 1.0 / (100.0 * x * x);
}

FlipPoint make_flip_point(std::int64_t doubled, double kappa) noexcept {
  const double x = static_cast<double>(doubled) / 2.0;
  return {doubled, x + kappa * x * std::abs(x)};
}

std::vector<FlipPoint> spin_flip_points(std::span<const Spin> spins, SiteIndex lo, Spin left, Spin right) {
  const auto n = static_cast<SiteIndex>(spins.size());
  const double kappa = perturbation_scale(std::max(std::llabs(lo), std::llabs(lo + n - 1)));
  std::vector<FlipPoint> out;
  Spin prev = left;
  for (SiteIndex k = 0; k <= n; ++k) {
    const Spin cur = k < n ? spins[static_cast<std::size_t>(k)] : right;
    if (prev != 0 && cur != 0 && prev != cur) out.push_back(make_flip_point(2 * (lo + k) - 1, kappa));
    prev = cur;
  }
  return out;
}

std::vector<FlipPoint> spin_flip_points(const SpinConfig& config, const BoundaryCondition& bc) {
  const Volume& v = config.volume();
  return spin_flip_points(config.spins(), v.lo(), exterior_neighbour(bc, v, v.lo() - 1),
                          exterior_neighbour(bc, v, v.hi() + 1));
}

TriangleDiagram build_triangles(std::span<const FlipPoint> flips) {
  const auto m = static_cast<std::int64_t>(flips.size());
  for (std::int64_t k = 0; k < m; ++k) {
    if ((flips[k].doubled & 1) == 0) throw std::invalid_argument("flip points must sit at half-integers");
    if (k > 0 && flips[k].doubled <= flips[k - 1].doubled) {
      throw std::invalid_argument("flip points must be strictly increasing");
    }
  }

  std::vector<std::int64_t> prev(m);
  std::vector<std::int64_t> next(m);
  std::vector<bool> alive(m, true);
  for (std::int64_t k = 0; k < m; ++k) {
    prev[k] = k - 1;
    next[k] = k + 1 < m ? k + 1 : kNone;
  }

  using Key = std::tuple<std::int64_t, std::int64_t, std::int64_t, std::int64_t>;  // gap, skew, left, right
  auto key = [&](std::int64_t a, std::int64_t b) -> Key {
    const std::int64_t ua = flips[a].doubled;
    const std::int64_t ub = flips[b].doubled;
    return {ub - ua, signed_square(ub) - signed_square(ua), a, b};
  };
  std::priority_queue<Key, std::vector<Key>, std::greater<>> queue;
  for (std::int64_t k = 0; k + 1 < m; ++k) queue.push(key(k, k + 1));

  TriangleDiagram diagram;
  while (!queue.empty()) {
    const auto [gap, skew, a, b] = queue.top();
    queue.pop();
    if (!alive[a] || !alive[b] || next[a] != b) continue;
    diagram.triangles.emplace_back(flips[a], flips[b]);
    alive[a] = alive[b] = false;
    const std::int64_t p = prev[a];
    const std::int64_t q = next[b];
    if (p != kNone) next[p] = q;
    if (q != kNone) prev[q] = p;
    if (p != kNone && q != kNone) queue.push(key(p, q));
  }
  for (std::int64_t k = 0; k < m; ++k) {
    if (alive[k]) diagram.interface = flips[k];
  }
  return diagram;
}

double interface_point(const SpinConfig& config, const BoundaryCondition& bc) {
  require_dobrushin(bc);
  const auto diagram = build_triangles(spin_flip_points(config, bc));
  return diagram.interface->position();
}

ThetaGrid::ThetaGrid(std::int64_t L) : L_(L) {
  if (L < 1) throw std::invalid_argument("L must be positive");
}

double ThetaGrid::value(std::size_t index) const {
  if (index >= size()) throw std::out_of_range("theta index out of range");
  const auto k = static_cast<std::int64_t>(index) - L_ - 1;
  return static_cast<double>(2 * k + 1) / static_cast<double>(2 * L_);
}

std::vector<double> ThetaGrid::values() const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = value(i);
  return out;
}

std::size_t ThetaGrid::nearest_index(double theta) const {
  const double k = std::floor(theta * static_cast<double>(L_));
  const double clamped = std::clamp(k, static_cast<double>(-L_ - 1), static_cast<double>(L_));
  return static_cast<std::size_t>(static_cast<std::int64_t>(clamped) + L_ + 1);
}

InterfaceFrame::InterfaceFrame(const Volume& v) : volume(v), grid((v.size() - 1) / 2 > 0 ? (v.size() - 1) / 2 : 1) {
  if (v.size() % 2 == 0 || v.size() < 3) {
    throw std::invalid_argument("interface volumes need odd size 2L + 1 with L >= 1");
  }
}

std::size_t InterfaceFrame::bin_of(std::int64_t doubled_interface) const {
  // doubled (I* - center) = 2k + 1
  const std::int64_t k = (doubled_interface - (volume.lo() + volume.hi()) - 1) / 2;
  return static_cast<std::size_t>(k + grid.L() + 1);
}

InterfaceAnalysis exact_interface_analysis(const Volume& volume, const BoundaryCondition& bc,
                                           const CouplingModel& model, const exact::ExactOptions& options) {
  require_dobrushin(bc);
  const InterfaceFrame frame(volume);
  const ReducedSystem system(volume, bc, model);
  const Spin left = bc.exterior_spin(volume.lo() - 1, volume);
  const Spin right = bc.exterior_spin(volume.hi() + 1, volume);
  const auto sums = exact::enumerate(
      system, frame.grid.size(),
      [&](std::span<const Spin> spins) { return interface_bin(frame, spins, left, right); }, options);

  InterfaceAnalysis out;
  out.grid = frame.grid;
  out.configurations = sums.class_count;
  out.conditional = sums.class_magnetization;
  out.magnetization = sums.magnetization;
  out.probability.resize(frame.grid.size());
  for (std::size_t b = 0; b < out.probability.size(); ++b) out.probability[b] = sums.class_probability(b);
  return out;
}

InterfaceHistogram interface_histogram(const Volume& volume, const CouplingModel& model, const BoundaryCondition& bc,
                                       Engine engine, const mc::McParams& params,
                                       const exact::ExactOptions& options) {
  require_dobrushin(bc);
  InterfaceHistogram h;
  if (engine == Engine::Exact) {
    const auto a = exact_interface_analysis(volume, bc, model, options);
    h.grid = a.grid;
    h.probability = a.probability;
    h.std_error.assign(a.probability.size(), 0.0);
    h.count.assign(a.configurations.begin(), a.configurations.end());
    return h;
  }

  params.validate(true);
  const InterfaceFrame frame(volume);
  const ReducedSystem system(volume, bc, model);
  const Spin left = bc.exterior_spin(volume.lo() - 1, volume);
  const Spin right = bc.exterior_spin(volume.hi() + 1, volume);
  const std::size_t bins = frame.grid.size();
  const auto chains = static_cast<std::size_t>(params.chains);
  std::vector<std::vector<std::int64_t>> counts(chains, std::vector<std::int64_t>(bins, 0));
  mc::run_chains(system, params, [&](std::size_t c, std::span<const Spin> spins) {
    ++counts[c][interface_bin(frame, spins, left, right)];
  });

  h.grid = frame.grid;
  h.probability.resize(bins);
  h.std_error.resize(bins);
  h.count.assign(bins, 0);
  const auto per_chain = params.samples_per_chain();
  h.chain_frequency.assign(chains, std::vector<double>(bins, 0.0));
  std::vector<double> freq(chains);
  for (std::size_t b = 0; b < bins; ++b) {
    for (std::size_t c = 0; c < chains; ++c) {
      freq[c] = static_cast<double>(counts[c][b]) / static_cast<double>(per_chain);
      h.chain_frequency[c][b] = freq[c];
      h.count[b] += counts[c][b];
    }
    const auto e = mc::combine_chain_means(freq, per_chain);
    h.probability[b] = e.mean;
    h.std_error[b] = e.std_error;
  }
  return h;
}

std::map<SiteIndex, double> conditional_profile(const Volume& volume, const CouplingModel& model,
                                                const BoundaryCondition& bc, double theta, Engine engine,
                                                const mc::McParams& params, const exact::ExactOptions& options) {
  require_dobrushin(bc);
  const InterfaceFrame frame(volume);
  const std::size_t bin = frame.grid.nearest_index(theta);
  std::vector<double> profile;

  if (engine == Engine::Exact) {
    const auto a = exact_interface_analysis(volume, bc, model, options);
    if (a.configurations[bin] == 0) throw std::domain_error("no configuration has its interface at this theta");
    profile = a.conditional[bin];
  } else {
    params.validate(false);
    const ReducedSystem system(volume, bc, model);
    const Spin left = bc.exterior_spin(volume.lo() - 1, volume);
    const Spin right = bc.exterior_spin(volume.hi() + 1, volume);
    const auto n = static_cast<std::size_t>(volume.size());
    const auto chains = static_cast<std::size_t>(params.chains);
    std::vector<std::vector<double>> sums(chains, std::vector<double>(n, 0.0));
    std::vector<std::int64_t> hits(chains, 0);
    mc::run_chains(system, params, [&](std::size_t c, std::span<const Spin> spins) {
      if (interface_bin(frame, spins, left, right) != bin) return;
      ++hits[c];
      for (std::size_t k = 0; k < n; ++k) sums[c][k] += spins[k];
    });
    std::int64_t total = 0;
    for (auto h : hits) total += h;
    if (total == 0) throw std::domain_error("no sample had its interface at this theta");
    profile.assign(n, 0.0);
    for (std::size_t c = 0; c < chains; ++c) {
      for (std::size_t k = 0; k < n; ++k) profile[k] += sums[c][k];
    }
    for (double& v : profile) v /= static_cast<double>(total);
  }

  std::map<SiteIndex, double> out;
  for (std::size_t k = 0; k < profile.size(); ++k) out[volume.lo() + static_cast<SiteIndex>(k)] = profile[k];
  return out;
}

}  // namespace dyson::contour
