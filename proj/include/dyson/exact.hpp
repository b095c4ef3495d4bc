#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dyson/lattice.hpp"
#include "dyson/reduced_system.hpp"

/// Brute-force enumeration of finite-volume Gibbs measures.
///
/// Configurations of the free sites are visited in Gray-code order so that
/// consecutive states differ by one flip and the energy is updated from local
/// fields. The sequence is split into a fixed number of contiguous chunks that
/// are processed in parallel and merged in chunk order, so results do not
/// depend on the thread count. Weights are accumulated relative to a running
/// log-weight shift (streaming log-sum-exp).
namespace dyson::exact {

inline constexpr std::size_t kDefaultMaxFreeSites = 24;
inline constexpr std::size_t kAbsoluteMaxFreeSites = 40;

/// Thrown when the number of free sites exceeds the configured cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExactOptions {
  /// Enumeration costs 2^n; raising this past 30 is rarely sensible.
  std::size_t max_free_sites = kDefaultMaxFreeSites;
};

struct ExactResult {
  double log_partition = 0.0;
  std::map<SiteIndex, double> magnetization;
  Volume volume{0, 0};
  std::string boundary;
  CouplingModel model{1.5, 0.0, 1.0};
  double wall_seconds = 0.0;
};

/// Per-class sums over all configurations. Class ids come from a classifier
/// applied to the full-volume spin vector.
struct ClassSums {
  double log_partition = 0.0;
  std::vector<double> log_class_weight;      ///< -inf for empty classes
  std::vector<std::uint64_t> class_count;    ///< configurations per class
  /// Conditional mean spin per class and volume offset; NaN for empty classes.
  std::vector<std::vector<double>> class_magnetization;
  std::vector<double> magnetization;         ///< unconditional, per volume offset

  [[nodiscard]] double class_probability(std::size_t cls) const;
};

using Classifier = std::function<std::size_t(std::span<const Spin>)>;

/// Enumerates every free-site configuration of `system`. With a null
/// classifier everything falls in class 0.
[[nodiscard]] ClassSums enumerate(const ReducedSystem& system, std::size_t class_count, const Classifier& classify,
                                  const ExactOptions& options = {});

[[nodiscard]] ExactResult exact_gibbs(const Volume& volume, const BoundaryCondition& bc, const CouplingModel& model,
                                      const Constraint& constraint = {}, const ExactOptions& options = {});

[[nodiscard]] double exact_conditional_magnetization(const Volume& volume, const BoundaryCondition& bc,
                                                     const CouplingModel& model, const Constraint& constraint,
                                                     SiteIndex site, const ExactOptions& options = {});

/// <sigma_site> for each volume of an ascending nested list. Under plus
/// boundary conditions the sequence is nonincreasing and brackets the
/// constrained infinite-volume limit from above. The constraint must lie
/// inside the smallest volume.
[[nodiscard]] std::vector<double> nested_volume_bracket(SiteIndex site, std::span<const Volume> volumes,
                                                        const BoundaryCondition& bc, const CouplingModel& model,
                                                        const Constraint& constraint = {},
                                                        const ExactOptions& options = {});

}  // namespace dyson::exact
