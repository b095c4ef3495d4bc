#pragma once

#include <cstdint>
#include <vector>

#include "dyson/contour.hpp"
#include "dyson/exact.hpp"
#include "dyson/lattice.hpp"
#include "dyson/mc.hpp"
#include "dyson/report.hpp"

/// The packaged studies and the report builders behind every subcommand.
namespace dyson::experiments {

using contour::Engine;

/// 3 - log 3 / log 2, the smallest decay exponent the localization argument covers.
[[nodiscard]] double alpha_plus();

struct ModelParams {
  double alpha = 1.5;
  double beta = 1.0;
  double j1 = 1.0;
  SiteIndex cutoff = kDefaultCutoff;

  [[nodiscard]] CouplingModel model() const { return {alpha, beta, j1}; }
};

struct EngineParams {
  Engine engine = Engine::Exact;
  mc::McParams mc;
  exact::ExactOptions exact;
};

struct LocalizationParams {
  ModelParams model{1.5, 5.0, 3.0, kDefaultCutoff};
  EngineParams engine;
  std::vector<std::int64_t> L_list{3, 4, 5, 6, 7, 8};
  std::vector<double> epsilons{0.25, 0.5};
  /// epsilon whose escape probabilities carry the verdicts
  double verdict_epsilon = 0.5;
  double escape_threshold = 0.05;
};

/// Interface histograms on [-L, L] under minus-plus boundary conditions, the
/// escape probabilities P(|I*| > eps L) and a least-squares fit of -log P
/// against L^{2-alpha}.
[[nodiscard]] ExperimentReport run_localization(const LocalizationParams& p);

struct WettingParams {
  ModelParams model{1.5, 2.0, 1.0, kDefaultCutoff};
  EngineParams engine{Engine::Mc, {}, {}};
  std::int64_t L = 32;
  std::int64_t N = 256;
  std::int64_t left = -1;   ///< free sites left of the frozen block; -1 means 2L
  std::int64_t right = -1;  ///< free sites right of the origin; -1 means 2L
  double epsilon = 0.5;

  [[nodiscard]] Volume volume() const;
  /// Number of sites in each predicted wet window: floor((1 - eps) L / 2).
  [[nodiscard]] std::int64_t window() const;
};

/// Plus boundary conditions on [-N-left, right] with [-N,-1] frozen minus,
/// compared against the same volume without the frozen block.
[[nodiscard]] ExperimentReport run_wetting(const WettingParams& p);

struct DiscontinuityParams {
  ModelParams model{1.5, 2.0, 1.0, kDefaultCutoff};
  EngineParams engine;
  std::int64_t L = 2;
  std::int64_t N = 6;
  std::vector<std::int64_t> n_list{8, 10, 12};
  /// Adds a table of the bond-removal energy for block lengths 1..L.
  bool bond_removal = false;
};

/// Past [-n,-1] frozen to the alternating block on [-L,-1], +/- on
/// [-N-L,-L-1] and plus beyond; returns the two values of <sigma_0> per n.
[[nodiscard]] ExperimentReport run_discontinuity(const DiscontinuityParams& p);

/// Frozen past used by run_discontinuity for volume [-n, n].
[[nodiscard]] Constraint discontinuity_past(std::int64_t L, std::int64_t N, std::int64_t n, Spin annulus_sign);

/// Report builders for the single-shot subcommands.
[[nodiscard]] ExperimentReport run_exact(const ModelParams& m, const BoundaryCondition& bc, const Volume& volume,
                                         const exact::ExactOptions& options);
[[nodiscard]] ExperimentReport run_mc(const ModelParams& m, const BoundaryCondition& bc, const Volume& volume,
                                      const mc::McParams& params);
[[nodiscard]] ExperimentReport run_interface(const ModelParams& m, std::int64_t L, const EngineParams& engine);
[[nodiscard]] ExperimentReport run_bounds(double alpha, std::int64_t max_N, std::int64_t max_L1, std::int64_t L,
                                          std::int64_t N);
[[nodiscard]] ExperimentReport run_fields(double alpha, std::int64_t L, std::int64_t N, std::int64_t n);

}  // namespace dyson::experiments
