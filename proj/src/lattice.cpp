#include "dyson/lattice.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dyson/numerics.hpp"

namespace dyson {

namespace {

std::string site_str(SiteIndex s) { return std::to_string(s); }

void require_cutoff(SiteIndex cutoff) {
  if (cutoff < 1) throw std::invalid_argument("cutoff must be >= 1, got " + site_str(cutoff));
}

}  // namespace

// ---- Volume -----------------------------------------------------------------

Volume::Volume(SiteIndex lo, SiteIndex hi) : lo_(lo), hi_(hi) {
  if (hi < lo) throw std::invalid_argument("volume requires lo <= hi, got [" + site_str(lo) + ", " + site_str(hi) + "]");
  if (hi - lo + 1 > kMaxVolumeSites) throw std::invalid_argument("volume exceeds 2^20 sites");
}

Volume Volume::centered(SiteIndex half_width) {
  if (half_width < 0) throw std::invalid_argument("half width must be nonnegative");
  return {-half_width, half_width};
}

std::size_t Volume::offset(SiteIndex site) const {
  if (!contains(site)) {
    throw std::out_of_range("site " + site_str(site) + " outside volume [" + site_str(lo_) + ", " + site_str(hi_) + "]");
  }
  return static_cast<std::size_t>(site - lo_);
}

// ---- SpinConfig ---------------------------------------------------------------

bool is_spin(int value) noexcept { return value == 1 || value == -1; }

SpinConfig::SpinConfig(Volume volume, std::vector<Spin> spins) : volume_(volume), spins_(std::move(spins)) {
  if (static_cast<SiteIndex>(spins_.size()) != volume_.size()) {
    throw std::invalid_argument("spin vector length " + std::to_string(spins_.size()) + " does not match volume size " +
                                site_str(volume_.size()));
  }
  for (Spin s : spins_) {
    if (!is_spin(s)) throw std::invalid_argument("spins must be -1 or +1");
  }
}

SpinConfig SpinConfig::uniform(Volume volume, Spin value) {
  return {volume, std::vector<Spin>(static_cast<std::size_t>(volume.size()), value)};
}

SpinConfig SpinConfig::alternating(Volume volume) {
  std::vector<Spin> spins;
  spins.reserve(static_cast<std::size_t>(volume.size()));
  for (SiteIndex i = volume.lo(); i <= volume.hi(); ++i) spins.push_back(i % 2 == 0 ? Spin{1} : Spin{-1});
  return {volume, std::move(spins)};
}

Spin SpinConfig::at(SiteIndex site) const { return spins_[volume_.offset(site)]; }

SpinConfig SpinConfig::flipped(SiteIndex site) const {
  SpinConfig copy = *this;
  auto& s = copy.spins_[volume_.offset(site)];
  s = static_cast<Spin>(-s);
  return copy;
}

SpinConfig SpinConfig::with_spin(SiteIndex site, Spin value) const {
  if (!is_spin(value)) throw std::invalid_argument("spins must be -1 or +1");
  SpinConfig copy = *this;
  copy.spins_[volume_.offset(site)] = value;
  return copy;
}

SpinConfig SpinConfig::negated() const {
  SpinConfig copy = *this;
  for (auto& s : copy.spins_) s = static_cast<Spin>(-s);
  return copy;
}

// ---- CouplingModel --------------------------------------------------------------

CouplingModel::CouplingModel(double alpha, double beta, double j1) : alpha_(alpha), beta_(beta), j1_(j1) {
  if (!(alpha > 1.0) || !(alpha <= 2.0)) {
    throw std::invalid_argument("alpha must exceed 1 and be at most 2, got " + std::to_string(alpha));
  }
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw std::invalid_argument("beta must be finite and >= 0");
  if (!(j1 >= 1.0) || !std::isfinite(j1)) throw std::invalid_argument("j1 must be finite and >= 1");
}

double CouplingModel::coupling(SiteIndex distance) const {
  if (distance < 1) throw std::invalid_argument("coupling distance must be >= 1");
  if (distance == 1) return j1_;
  return std::pow(static_cast<double>(distance), -alpha_);
}

double CouplingModel::coupling(SiteIndex i, SiteIndex j) const { return coupling(i > j ? i - j : j - i); }

CouplingTable::CouplingTable(const CouplingModel& model, SiteIndex max_distance) {
  values_.resize(static_cast<std::size_t>(std::max<SiteIndex>(max_distance, 1)) + 1);
  values_[0] = 0.0;
  for (std::size_t d = 1; d < values_.size(); ++d) values_[d] = model.coupling(static_cast<SiteIndex>(d));
}

// ---- BoundaryCondition ----------------------------------------------------------

BoundaryCondition::BoundaryCondition(BoundaryKind kind, SiteIndex cutoff, std::map<SiteIndex, Spin> pattern)
    : kind_(kind), cutoff_(cutoff), tail_correction_(kind != BoundaryKind::Free && kind != BoundaryKind::Frozen),
      pattern_(std::move(pattern)) {
  require_cutoff(cutoff);
}

BoundaryCondition BoundaryCondition::plus(SiteIndex cutoff) { return {BoundaryKind::Plus, cutoff, {}}; }
BoundaryCondition BoundaryCondition::minus(SiteIndex cutoff) { return {BoundaryKind::Minus, cutoff, {}}; }
BoundaryCondition BoundaryCondition::free() { return {BoundaryKind::Free, 1, {}}; }
BoundaryCondition BoundaryCondition::dobrushin_minus_plus(SiteIndex cutoff) {
  return {BoundaryKind::DobrushinMinusPlus, cutoff, {}};
}
BoundaryCondition BoundaryCondition::dobrushin_plus_minus(SiteIndex cutoff) {
  return {BoundaryKind::DobrushinPlusMinus, cutoff, {}};
}

BoundaryCondition BoundaryCondition::frozen(std::map<SiteIndex, Spin> pattern, SiteIndex cutoff) {
  for (const auto& [site, s] : pattern) {
    if (!is_spin(s)) throw std::invalid_argument("frozen pattern spin at site " + site_str(site) + " is not +-1");
  }
  return {BoundaryKind::Frozen, cutoff, std::move(pattern)};
}

BoundaryCondition BoundaryCondition::with_tail_correction(bool on) const {
  BoundaryCondition copy = *this;
  copy.tail_correction_ = on;
  return copy;
}

BoundaryCondition BoundaryCondition::with_cutoff(SiteIndex cutoff) const {
  require_cutoff(cutoff);
  BoundaryCondition copy = *this;
  copy.cutoff_ = cutoff;
  return copy;
}

Spin BoundaryCondition::exterior_spin(SiteIndex site, const Volume& volume) const {
  if (volume.contains(site)) throw std::invalid_argument("site " + site_str(site) + " is not exterior");
  const bool left = site < volume.lo();
  switch (kind_) {
    case BoundaryKind::Plus: return 1;
    case BoundaryKind::Minus: return -1;
    case BoundaryKind::Free: return 0;
    case BoundaryKind::DobrushinMinusPlus: return left ? Spin{-1} : Spin{1};
    case BoundaryKind::DobrushinPlusMinus: return left ? Spin{1} : Spin{-1};
    case BoundaryKind::Frozen: {
      auto it = pattern_.find(site);
      if (it == pattern_.end()) throw std::invalid_argument("frozen pattern has a gap at site " + site_str(site));
      return it->second;
    }
  }
  return 0;
}

Spin BoundaryCondition::left_tail_sign() const noexcept {
  switch (kind_) {
    case BoundaryKind::Plus:
    case BoundaryKind::DobrushinPlusMinus: return 1;
    case BoundaryKind::Minus:
    case BoundaryKind::DobrushinMinusPlus: return -1;
    default: return 0;
  }
}

Spin BoundaryCondition::right_tail_sign() const noexcept {
  switch (kind_) {
    case BoundaryKind::Plus:
    case BoundaryKind::DobrushinMinusPlus: return 1;
    case BoundaryKind::Minus:
    case BoundaryKind::DobrushinPlusMinus: return -1;
    default: return 0;
  }
}

BoundaryCondition BoundaryCondition::flipped() const {
  BoundaryCondition copy = *this;
  switch (kind_) {
    case BoundaryKind::Plus: copy.kind_ = BoundaryKind::Minus; break;
    case BoundaryKind::Minus: copy.kind_ = BoundaryKind::Plus; break;
    case BoundaryKind::DobrushinMinusPlus: copy.kind_ = BoundaryKind::DobrushinPlusMinus; break;
    case BoundaryKind::DobrushinPlusMinus: copy.kind_ = BoundaryKind::DobrushinMinusPlus; break;
    case BoundaryKind::Free: break;
    case BoundaryKind::Frozen:
      for (auto& [site, s] : copy.pattern_) s = static_cast<Spin>(-s);
      break;
  }
  return copy;
}

void BoundaryCondition::validate_for(const Volume& volume) const {
  if (kind_ != BoundaryKind::Frozen) return;
  for (const auto& [site, s] : pattern_) {
    if (volume.contains(site)) throw std::invalid_argument("frozen pattern assigns interior site " + site_str(site));
  }
  for (SiteIndex j = volume.lo() - cutoff_; j < volume.lo(); ++j) {
    if (!pattern_.count(j)) throw std::invalid_argument("frozen pattern has a gap at site " + site_str(j));
  }
  for (SiteIndex j = volume.hi() + 1; j <= volume.hi() + cutoff_; ++j) {
    if (!pattern_.count(j)) throw std::invalid_argument("frozen pattern has a gap at site " + site_str(j));
  }
}

std::string BoundaryCondition::name() const {
  switch (kind_) {
    case BoundaryKind::Plus: return "plus";
    case BoundaryKind::Minus: return "minus";
    case BoundaryKind::Free: return "free";
    case BoundaryKind::DobrushinMinusPlus: return "dobrushin-mp";
    case BoundaryKind::DobrushinPlusMinus: return "dobrushin-pm";
    case BoundaryKind::Frozen: return "frozen";
  }
  return "unknown";
}

// ---- Constraint -----------------------------------------------------------------

Constraint& Constraint::freeze(SiteIndex lo, SiteIndex hi, Spin value) {
  for (SiteIndex s = lo; s <= hi; ++s) freeze(s, value);
  return *this;
}

Constraint& Constraint::freeze(SiteIndex site, Spin value) {
  if (!is_spin(value)) throw std::invalid_argument("constraint spin must be +-1");
  frozen_sites[site] = value;
  return *this;
}

void Constraint::validate_for(const Volume& volume, const BoundaryCondition& bc) const {
  for (const auto& [site, s] : frozen_sites) {
    if (!is_spin(s)) throw std::invalid_argument("constraint spin at site " + site_str(site) + " is not +-1");
    if (volume.contains(site)) continue;
    if (bc.kind() == BoundaryKind::Frozen) {
      auto it = bc.pattern().find(site);
      if (it != bc.pattern().end() && it->second != s) {
        throw std::invalid_argument("constraint at site " + site_str(site) + " contradicts the frozen boundary");
      }
    }
    throw std::invalid_argument("constraint site " + site_str(site) + " lies outside the volume");
  }
}

// ---- Energies -------------------------------------------------------------------

double boundary_field(SiteIndex site, const Volume& volume, const BoundaryCondition& bc, const CouplingModel& model) {
  if (!volume.contains(site)) throw std::out_of_range("boundary_field: site " + site_str(site) + " outside volume");
  if (bc.kind() == BoundaryKind::Free) return 0.0;
  bc.validate_for(volume);

  const SiteIndex cutoff = bc.cutoff();
  double field = 0.0;
  // Left exterior at distances (site - lo, cutoff], right at (hi - site, cutoff].
  for (SiteIndex d = site - volume.lo() + 1; d <= cutoff; ++d) {
    field += model.coupling(d) * bc.exterior_spin(site - d, volume);
  }
  for (SiteIndex d = volume.hi() - site + 1; d <= cutoff; ++d) {
    field += model.coupling(d) * bc.exterior_spin(site + d, volume);
  }
  if (bc.tail_correction()) {
    const int sides = bc.left_tail_sign() + bc.right_tail_sign();
    if (sides != 0) field += sides * numerics::power_tail(cutoff + 1, model.alpha());
  }
  return field;
}

double energy(const SpinConfig& config, const BoundaryCondition& bc, const CouplingModel& model) {
  const Volume& v = config.volume();
  const auto spins = config.spins();
  const std::size_t n = spins.size();
  CouplingTable table(model, v.size());
  double e = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) row += table(static_cast<SiteIndex>(j - i)) * spins[j];
    e -= spins[i] * row;
  }
  for (std::size_t i = 0; i < n; ++i) {
    e -= spins[i] * boundary_field(v.lo() + static_cast<SiteIndex>(i), v, bc, model);
  }
  return e;
}

double delta_energy(const SpinConfig& config, SiteIndex site, const BoundaryCondition& bc, const CouplingModel& model) {
  const Volume& v = config.volume();
  const std::size_t k = v.offset(site);
  const auto spins = config.spins();
  double field = boundary_field(site, v, bc, model);
  for (std::size_t j = 0; j < spins.size(); ++j) {
    if (j == k) continue;
    const SiteIndex d = j > k ? static_cast<SiteIndex>(j - k) : static_cast<SiteIndex>(k - j);
    field += model.coupling(d) * spins[j];
  }
  return 2.0 * spins[k] * field;
}

}  // namespace dyson
