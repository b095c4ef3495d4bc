#include "dyson/mc.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dyson/parallel.hpp"

namespace dyson::mc {

void McParams::validate(bool error_bars) const {
  if (sweeps <= burnin) throw std::invalid_argument("sweeps must exceed burnin");
  if (burnin < 0) throw std::invalid_argument("burnin must be nonnegative");
  if (chains < 1) throw std::invalid_argument("chains must be at least 1");
  if (thin < 1) throw std::invalid_argument("thin must be at least 1");
  if (error_bars && chains < 2) throw std::invalid_argument("chains must be at least 2 for error bars");
  if (samples_per_chain() < 1) throw std::invalid_argument("thin leaves no samples after burnin");
}

Estimate combine_chain_means(std::span<const double> chain_means, std::int64_t samples_per_chain) {
  Estimate e;
  const auto k = static_cast<double>(chain_means.size());
  if (chain_means.empty()) return e;
  for (double m : chain_means) e.mean += m;
  e.mean /= k;
  if (chain_means.size() > 1) {
    double ss = 0.0;
    for (double m : chain_means) ss += (m - e.mean) * (m - e.mean);
    e.std_error = std::sqrt(ss / (k - 1.0) / k);
  }
  e.n_samples = static_cast<std::int64_t>(chain_means.size()) * samples_per_chain;
  return e;
}

std::vector<Spin> aligned_start(const ReducedSystem& system) {
  const Volume& v = system.volume();
  std::vector<Spin> spins = system.template_spins(1);
  const auto offsets = system.free_offsets();
  const SiteIndex mid2 = v.lo() + v.hi();  // twice the center
  for (std::size_t off : offsets) {
    const SiteIndex site = v.lo() + static_cast<SiteIndex>(off);
    Spin s = 1;
    switch (system.boundary().kind()) {
      case BoundaryKind::Minus:
        s = -1;
        break;
      case BoundaryKind::DobrushinMinusPlus:
        s = 2 * site < mid2 ? -1 : 1;
        break;
      case BoundaryKind::DobrushinPlusMinus:
        s = 2 * site < mid2 ? 1 : -1;
        break;
      default:
        break;
    }
    spins[off] = s;
  }
  return spins;
}

std::uint64_t chain_seed(std::uint64_t seed, std::uint64_t chain) noexcept {
  // splitmix64 finalizer over a golden-ratio stride
  std::uint64_t z = seed + (chain + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

MetropolisChain::MetropolisChain(const ReducedSystem& system, std::uint64_t seed)
    : system_(&system), rng_(seed), spins_(aligned_start(system)) {
  const std::size_t m = system.free_count();
  const auto offsets = system.free_offsets();
  coupling_.assign(m * m, 0.0);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) coupling_[a * m + b] = a == b ? 0.0 : system.coupling_between(a, b);
  }
  field_.resize(m);
  const auto fixed = system.fixed_field();
  for (std::size_t a = 0; a < m; ++a) {
    double h = fixed[a];
    for (std::size_t b = 0; b < m; ++b) h += coupling_[a * m + b] * spins_[offsets[b]];
    field_[a] = h;
  }
}

void MetropolisChain::sweep() {
  const std::size_t m = field_.size();
  if (m == 0) return;
  const auto offsets = system_->free_offsets();
  const double beta = system_->beta();
  for (std::size_t step = 0; step < m; ++step) {
    const auto a = static_cast<std::size_t>(((rng_() >> 32) * static_cast<std::uint64_t>(m)) >> 32);
    const double s = spins_[offsets[a]];
    const double de = 2.0 * s * field_[a];
    ++proposed_;
    if (de > 0.0 && uniform() >= std::exp(-beta * de)) continue;
    ++accepted_;
    spins_[offsets[a]] = static_cast<Spin>(-s);
    const double ds = -2.0 * s;
    const double* row = coupling_.data() + a * m;
    for (std::size_t b = 0; b < m; ++b) field_[b] += ds * row[b];
  }
}

void run_chains(const ReducedSystem& system, const McParams& params, const SampleObserver& observe) {
  params.validate(false);
  parallel_for(static_cast<std::size_t>(params.chains), [&](std::size_t c) {
    MetropolisChain chain(system, chain_seed(params.seed, c));
    for (std::int64_t t = 0; t < params.burnin; ++t) chain.sweep();
    const std::int64_t samples = params.samples_per_chain();
    for (std::int64_t k = 0; k < samples; ++k) {
      for (std::int64_t t = 0; t < params.thin; ++t) chain.sweep();
      observe(c, chain.spins());
    }
  });
}

std::map<SiteIndex, Estimate> mc_magnetization(const Volume& volume, const BoundaryCondition& bc,
                                               const CouplingModel& model, const Constraint& constraint,
                                               std::span<const SiteIndex> sites, const McParams& params,
                                               bool error_bars) {
  params.validate(error_bars);
  for (SiteIndex s : sites) {
    if (!volume.contains(s)) throw std::out_of_range("probe site " + std::to_string(s) + " outside the volume");
  }
  const ReducedSystem system(volume, bc, model, constraint);
  const auto chains = static_cast<std::size_t>(params.chains);
  std::vector<std::vector<double>> sums(chains, std::vector<double>(sites.size(), 0.0));
  std::vector<std::size_t> offsets;
  offsets.reserve(sites.size());
  for (SiteIndex s : sites) offsets.push_back(volume.offset(s));

  run_chains(system, params, [&](std::size_t c, std::span<const Spin> spins) {
    auto& row = sums[c];
    for (std::size_t k = 0; k < offsets.size(); ++k) row[k] += spins[offsets[k]];
  });

  const auto per_chain = params.samples_per_chain();
  std::map<SiteIndex, Estimate> out;
  std::vector<double> means(chains);
  for (std::size_t k = 0; k < sites.size(); ++k) {
    for (std::size_t c = 0; c < chains; ++c) means[c] = sums[c][k] / static_cast<double>(per_chain);
    out[sites[k]] = combine_chain_means(means, per_chain);
  }
  return out;
}

McSampleStream::McSampleStream(const Volume& volume, const BoundaryCondition& bc, const CouplingModel& model,
                               const Constraint& constraint, const McParams& params)
    : system_(volume, bc, model, constraint), params_(params) {
  params_.validate(false);
}

std::optional<SpinConfig> McSampleStream::next() {
  if (!chain_ || yielded_in_chain_ == params_.samples_per_chain()) {
    if (chain_index_ + 1 >= params_.chains) return std::nullopt;
    ++chain_index_;
    chain_.emplace(system_, chain_seed(params_.seed, static_cast<std::uint64_t>(chain_index_)));
    for (std::int64_t t = 0; t < params_.burnin; ++t) chain_->sweep();
    yielded_in_chain_ = 0;
  }
  for (std::int64_t t = 0; t < params_.thin; ++t) chain_->sweep();
  ++yielded_in_chain_;
  const auto s = chain_->spins();
  return SpinConfig(system_.volume(), std::vector<Spin>(s.begin(), s.end()));
}

}  // namespace dyson::mc
