#include "dyson/reduced_system.hpp"

namespace dyson {

ReducedSystem::ReducedSystem(const Volume& volume, const BoundaryCondition& bc, const CouplingModel& model,
                             const Constraint& constraint)
    : volume_(volume), bc_(bc), model_(model), constraint_(constraint), couplings_(model, volume.size()) {
  bc.validate_for(volume);
  constraint.validate_for(volume, bc);

  const auto n = static_cast<std::size_t>(volume.size());
  std::vector<double> ext(n);
  for (std::size_t k = 0; k < n; ++k) ext[k] = boundary_field(volume.lo() + static_cast<SiteIndex>(k), volume, bc, model);

  std::vector<std::size_t> frozen;
  for (std::size_t k = 0; k < n; ++k) {
    const SiteIndex site = volume.lo() + static_cast<SiteIndex>(k);
    if (constraint.is_frozen(site)) {
      frozen.push_back(k);
    } else {
      free_sites_.push_back(site);
      free_offsets_.push_back(k);
    }
  }

  auto spin_at = [&](std::size_t k) {
    return static_cast<double>(constraint.frozen_sites.at(volume.lo() + static_cast<SiteIndex>(k)));
  };

  fixed_field_.reserve(free_offsets_.size());
  for (std::size_t k : free_offsets_) {
    double h = ext[k];
    for (std::size_t f : frozen) h += couplings_(static_cast<SiteIndex>(f > k ? f - k : k - f)) * spin_at(f);
    fixed_field_.push_back(h);
  }

  for (std::size_t a = 0; a < frozen.size(); ++a) {
    const double sa = spin_at(frozen[a]);
    double row = 0.0;
    for (std::size_t b = a + 1; b < frozen.size(); ++b) {
      row += couplings_(static_cast<SiteIndex>(frozen[b] - frozen[a])) * spin_at(frozen[b]);
    }
    constant_energy_ -= sa * (row + ext[frozen[a]]);
  }
}

double ReducedSystem::coupling_between(std::size_t free_a, std::size_t free_b) const noexcept {
  const std::size_t x = free_offsets_[free_a];
  const std::size_t y = free_offsets_[free_b];
  return couplings_(static_cast<SiteIndex>(x > y ? x - y : y - x));
}

std::vector<Spin> ReducedSystem::template_spins(Spin fill) const {
  std::vector<Spin> spins(static_cast<std::size_t>(volume_.size()), fill);
  for (const auto& [site, s] : constraint_.frozen_sites) spins[volume_.offset(site)] = s;
  return spins;
}

double ReducedSystem::energy_of(std::span<const Spin> spins) const {
  double e = constant_energy_;
  const std::size_t m = free_offsets_.size();
  for (std::size_t a = 0; a < m; ++a) {
    const double sa = spins[free_offsets_[a]];
    double row = fixed_field_[a];
    for (std::size_t b = a + 1; b < m; ++b) row += coupling_between(a, b) * spins[free_offsets_[b]];
    e -= sa * row;
  }
  return e;
}

}  // namespace dyson
