#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dyson/lattice.hpp"

namespace dyson {

/// A finite-volume Gibbs specification with the exterior and every
/// constrained site folded into per-site fields. Shared by both engines.
///
/// For the free sites F:
///   H = constant_energy - sum_{i in F} s_i fixed_field_i - sum_{{i,j} in F} J s_i s_j.
class ReducedSystem {
 public:
  ReducedSystem(const Volume& volume, const BoundaryCondition& bc, const CouplingModel& model,
                const Constraint& constraint = {});

  [[nodiscard]] const Volume& volume() const noexcept { return volume_; }
  [[nodiscard]] const CouplingModel& model() const noexcept { return model_; }
  [[nodiscard]] const BoundaryCondition& boundary() const noexcept { return bc_; }
  [[nodiscard]] const Constraint& constraint() const noexcept { return constraint_; }
  [[nodiscard]] double beta() const noexcept { return model_.beta(); }

  [[nodiscard]] std::size_t free_count() const noexcept { return free_sites_.size(); }
  /// Offsets (site - lo) of the free sites, ascending.
  [[nodiscard]] std::span<const std::size_t> free_offsets() const noexcept { return free_offsets_; }
  [[nodiscard]] std::span<const double> fixed_field() const noexcept { return fixed_field_; }
  [[nodiscard]] double constant_energy() const noexcept { return constant_energy_; }
  [[nodiscard]] const CouplingTable& couplings() const noexcept { return couplings_; }
  [[nodiscard]] double coupling_between(std::size_t free_a, std::size_t free_b) const noexcept;

  /// Full-volume spins with constrained sites set and free sites at `fill`.
  [[nodiscard]] std::vector<Spin> template_spins(Spin fill) const;

  /// Energy of a full-volume assignment that agrees with the constraint.
  [[nodiscard]] double energy_of(std::span<const Spin> spins) const;

 private:
  Volume volume_;
  BoundaryCondition bc_;
  CouplingModel model_;
  Constraint constraint_;
  std::vector<SiteIndex> free_sites_;
  std::vector<std::size_t> free_offsets_;
  std::vector<double> fixed_field_;
  double constant_energy_ = 0.0;
  CouplingTable couplings_;
};

}  // namespace dyson
