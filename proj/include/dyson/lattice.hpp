#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

/// Configurations, volumes, couplings and boundary conditions for the
/// one-dimensional Dyson model
///
///     H(w) = - sum_{unordered {i,j}} J(|i-j|) w_i w_j,
///     J(1) = j1,  J(d) = d^{-alpha} for d >= 2.
///
/// Every pair is counted once. Exterior sites contribute through a per-site
/// ball: site i interacts with exterior site j only when |i - j| <= cutoff.
/// Homogeneous exterior sides may add the exact remaining tail
/// sum_{d > cutoff} d^{-alpha} (see BoundaryCondition::tail_correction).
namespace dyson {

using SiteIndex = std::int64_t;
using Spin = std::int8_t;

inline constexpr SiteIndex kMaxVolumeSites = SiteIndex{1} << 20;
inline constexpr SiteIndex kDefaultCutoff = 1000;

/// Closed integer interval [lo, hi].
class Volume {
 public:
  Volume(SiteIndex lo, SiteIndex hi);

  /// The symmetric box [-half_width, half_width].
  static Volume centered(SiteIndex half_width);

  [[nodiscard]] SiteIndex lo() const noexcept { return lo_; }
  [[nodiscard]] SiteIndex hi() const noexcept { return hi_; }
  [[nodiscard]] SiteIndex size() const noexcept { return hi_ - lo_ + 1; }
  [[nodiscard]] bool contains(SiteIndex site) const noexcept { return site >= lo_ && site <= hi_; }
  [[nodiscard]] bool contains(const Volume& other) const noexcept {
    return other.lo_ >= lo_ && other.hi_ <= hi_;
  }
  [[nodiscard]] std::size_t offset(SiteIndex site) const;

  bool operator==(const Volume&) const = default;

 private:
  SiteIndex lo_;
  SiteIndex hi_;
};

/// A +-1 spin assignment on a volume.
class SpinConfig {
 public:
  SpinConfig(Volume volume, std::vector<Spin> spins);

  static SpinConfig uniform(Volume volume, Spin value);
  /// (w_alt)_i = (-1)^i; +1 on even sites.
  static SpinConfig alternating(Volume volume);

  [[nodiscard]] const Volume& volume() const noexcept { return volume_; }
  [[nodiscard]] std::span<const Spin> spins() const noexcept { return spins_; }
  [[nodiscard]] Spin at(SiteIndex site) const;

  [[nodiscard]] SpinConfig flipped(SiteIndex site) const;
  [[nodiscard]] SpinConfig with_spin(SiteIndex site, Spin value) const;
  [[nodiscard]] SpinConfig negated() const;

  bool operator==(const SpinConfig&) const = default;

 private:
  Volume volume_;
  std::vector<Spin> spins_;
};

[[nodiscard]] bool is_spin(int value) noexcept;

class CouplingModel {
 public:
  CouplingModel(double alpha, double beta, double j1 = 1.0);

  [[nodiscard]] double alpha() const noexcept { return alpha_; }
  [[nodiscard]] double beta() const noexcept { return beta_; }
  [[nodiscard]] double j1() const noexcept { return j1_; }

  /// J(d) for d >= 1.
  [[nodiscard]] double coupling(SiteIndex distance) const;
  [[nodiscard]] double coupling(SiteIndex i, SiteIndex j) const;

  [[nodiscard]] CouplingModel with_beta(double beta) const { return {alpha_, beta, j1_}; }

  bool operator==(const CouplingModel&) const = default;

 private:
  double alpha_;
  double beta_;
  double j1_;
};

/// J(d) for d = 0..max_distance, J(0) = 0.
class CouplingTable {
 public:
  CouplingTable(const CouplingModel& model, SiteIndex max_distance);

  [[nodiscard]] double operator()(SiteIndex distance) const noexcept {
    return values_[static_cast<std::size_t>(distance)];
  }
  [[nodiscard]] SiteIndex max_distance() const noexcept {
    return static_cast<SiteIndex>(values_.size()) - 1;
  }

 private:
  std::vector<double> values_;
};

enum class BoundaryKind { Plus, Minus, Free, DobrushinMinusPlus, DobrushinPlusMinus, Frozen };

/// Exterior spin assignment. Immutable; use the named constructors.
class BoundaryCondition {
 public:
  static BoundaryCondition plus(SiteIndex cutoff = kDefaultCutoff);
  static BoundaryCondition minus(SiteIndex cutoff = kDefaultCutoff);
  static BoundaryCondition free();
  static BoundaryCondition dobrushin_minus_plus(SiteIndex cutoff = kDefaultCutoff);
  static BoundaryCondition dobrushin_plus_minus(SiteIndex cutoff = kDefaultCutoff);
  /// Explicit exterior pattern. It must cover [lo - cutoff, lo - 1] and
  /// [hi + 1, hi + cutoff] of any volume it is used with.
  static BoundaryCondition frozen(std::map<SiteIndex, Spin> pattern, SiteIndex cutoff);

  [[nodiscard]] BoundaryKind kind() const noexcept { return kind_; }
  [[nodiscard]] SiteIndex cutoff() const noexcept { return cutoff_; }
  [[nodiscard]] bool tail_correction() const noexcept { return tail_correction_; }
  [[nodiscard]] BoundaryCondition with_tail_correction(bool on) const;
  [[nodiscard]] BoundaryCondition with_cutoff(SiteIndex cutoff) const;

  [[nodiscard]] bool is_dobrushin() const noexcept {
    return kind_ == BoundaryKind::DobrushinMinusPlus || kind_ == BoundaryKind::DobrushinPlusMinus;
  }
  [[nodiscard]] const std::map<SiteIndex, Spin>& pattern() const noexcept { return pattern_; }

  /// Spin of an exterior site; 0 under Free.
  [[nodiscard]] Spin exterior_spin(SiteIndex site, const Volume& volume) const;
  /// Sign of the homogeneous exterior beyond the cutoff on each side (0 when
  /// there is no closed-form tail).
  [[nodiscard]] Spin left_tail_sign() const noexcept;
  [[nodiscard]] Spin right_tail_sign() const noexcept;

  /// Global spin flip of the exterior.
  [[nodiscard]] BoundaryCondition flipped() const;

  /// Throws std::invalid_argument unless the pattern covers the exterior ball.
  void validate_for(const Volume& volume) const;

  [[nodiscard]] std::string name() const;

 private:
  BoundaryCondition(BoundaryKind kind, SiteIndex cutoff, std::map<SiteIndex, Spin> pattern);

  BoundaryKind kind_;
  SiteIndex cutoff_;
  bool tail_correction_;
  std::map<SiteIndex, Spin> pattern_;
};

/// Partial assignment of spins inside a volume.
struct Constraint {
  std::map<SiteIndex, Spin> frozen_sites;

  [[nodiscard]] bool empty() const noexcept { return frozen_sites.empty(); }
  [[nodiscard]] bool is_frozen(SiteIndex site) const { return frozen_sites.count(site) != 0; }
  /// Freezes every site of [lo, hi] to value.
  Constraint& freeze(SiteIndex lo, SiteIndex hi, Spin value);
  Constraint& freeze(SiteIndex site, Spin value);

  void validate_for(const Volume& volume, const BoundaryCondition& bc) const;
};

/// sum_{j exterior, |j - site| <= cutoff} J(site, j) w_j, plus the homogeneous
/// tails when tail correction is on.
[[nodiscard]] double boundary_field(SiteIndex site, const Volume& volume, const BoundaryCondition& bc,
                                    const CouplingModel& model);

[[nodiscard]] double energy(const SpinConfig& config, const BoundaryCondition& bc, const CouplingModel& model);

/// energy(flip(config, site)) - energy(config) in O(size + cutoff).
[[nodiscard]] double delta_energy(const SpinConfig& config, SiteIndex site, const BoundaryCondition& bc,
                                  const CouplingModel& model);

}  // namespace dyson
