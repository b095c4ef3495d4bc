#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "dyson/lattice.hpp"
#include "dyson/reduced_system.hpp"

/// Single-site Metropolis sampling of finite-volume Gibbs measures.
///
/// One sweep is free_count() proposals at uniformly random free sites.
/// Random-site selection keeps the chain aperiodic at every beta, which a
/// fixed scan order does not at beta = 0. Chains are independent, seeded
/// from (seed, chain index), start in the boundary-aligned state and run in
/// parallel; every reduction happens in chain order.
namespace dyson::mc {

struct McParams {
  std::int64_t sweeps = 20000;
  std::int64_t burnin = 2000;
  std::int64_t chains = 8;
  std::uint64_t seed = 1;
  std::int64_t thin = 1;

  /// Samples each chain records: (sweeps - burnin) / thin.
  [[nodiscard]] std::int64_t samples_per_chain() const noexcept { return (sweeps - burnin) / thin; }
  /// Throws std::invalid_argument on sweeps <= burnin, chains < 1, thin < 1,
  /// and on chains < 2 when error bars are requested.
  void validate(bool error_bars) const;
};

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t n_samples = 0;
};

/// Mean and across-chain standard error of per-chain means. A single chain
/// gets std_error 0.
[[nodiscard]] Estimate combine_chain_means(std::span<const double> chain_means, std::int64_t samples_per_chain);

/// Starting spins for a chain: all-plus under Plus, all-minus under Minus, a
/// step at the volume center under Dobrushin, all-plus otherwise.
[[nodiscard]] std::vector<Spin> aligned_start(const ReducedSystem& system);

/// Seed of chain `chain` derived from the run seed.
[[nodiscard]] std::uint64_t chain_seed(std::uint64_t seed, std::uint64_t chain) noexcept;

class MetropolisChain {
 public:
  MetropolisChain(const ReducedSystem& system, std::uint64_t seed);

  void sweep();
  /// Full-volume spins, constrained sites included.
  [[nodiscard]] std::span<const Spin> spins() const noexcept { return spins_; }
  [[nodiscard]] std::uint64_t accepted() const noexcept { return accepted_; }
  [[nodiscard]] std::uint64_t proposed() const noexcept { return proposed_; }

 private:
  [[nodiscard]] double uniform() noexcept { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

  const ReducedSystem* system_;
  std::mt19937_64 rng_;
  std::vector<Spin> spins_;
  std::vector<double> coupling_;  // free x free
  std::vector<double> field_;     // local field on each free site
  std::uint64_t accepted_ = 0;
  std::uint64_t proposed_ = 0;
};

/// Called with (chain index, full-volume spins) for every recorded sample.
/// Chains run concurrently, so an observer must only touch per-chain state.
using SampleObserver = std::function<void(std::size_t, std::span<const Spin>)>;

void run_chains(const ReducedSystem& system, const McParams& params, const SampleObserver& observe);

[[nodiscard]] std::map<SiteIndex, Estimate> mc_magnetization(const Volume& volume, const BoundaryCondition& bc,
                                                             const CouplingModel& model, const Constraint& constraint,
                                                             std::span<const SiteIndex> sites, const McParams& params,
                                                             bool error_bars = true);

/// Post-burnin, thinned configurations of chain 0, then chain 1, and so on.
/// Runs the chains lazily on the calling thread.
class McSampleStream {
 public:
  McSampleStream(const Volume& volume, const BoundaryCondition& bc, const CouplingModel& model,
                 const Constraint& constraint, const McParams& params);
  McSampleStream(const McSampleStream&) = delete;
  McSampleStream& operator=(const McSampleStream&) = delete;

  [[nodiscard]] std::optional<SpinConfig> next();
  /// Total number of configurations the stream yields.
  [[nodiscard]] std::int64_t size() const noexcept { return params_.chains * params_.samples_per_chain(); }

 private:
  ReducedSystem system_;
  McParams params_;
  std::optional<MetropolisChain> chain_;
  std::int64_t chain_index_ = -1;
  std::int64_t yielded_in_chain_ = 0;
};

}  // namespace dyson::mc
