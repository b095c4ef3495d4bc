#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dyson/exact.hpp"
#include "dyson/lattice.hpp"
#include "dyson/mc.hpp"

/// Spin-flip points, the triangle pairing and the interface point.
///
/// Positions live on the dual lattice of half-integers and are stored doubled
/// (an odd integer) so that every comparison is exact. Each flip point gets a
/// perturbed base r = x + kappa * x * |x|, which separates equal raw distances:
/// for two candidate pairs with the same raw gap the one farther from the
/// origin is wider. Pairs are matched by ascending (raw gap, perturbation
/// gap), both integers.
namespace dyson::contour {

struct FlipPoint {
  std::int64_t doubled = 1;  ///< 2 * position, always odd
  double perturbed_base = 0.5;

  [[nodiscard]] double position() const noexcept { return static_cast<double>(doubled) / 2.0; }
  bool operator==(const FlipPoint& o) const noexcept { return doubled == o.doubled; }
};

struct TriangleDiagram {
  std::vector<std::pair<FlipPoint, FlipPoint>> triangles;  ///< in matching order
  std::optional<FlipPoint> interface;
};

/// kappa for flip points inside [-extent - 1/2, extent + 1/2]; keeps every
/// base within 1/100 of its position.
[[nodiscard]] double perturbation_scale(std::int64_t extent) noexcept;

[[nodiscard]] FlipPoint make_flip_point(std::int64_t doubled, double kappa) noexcept;

/// Sign changes along volume plus one exterior site on each side, left to
/// right. Free boundaries contribute no edge flips.
[[nodiscard]] std::vector<FlipPoint> spin_flip_points(const SpinConfig& config, const BoundaryCondition& bc);
/// Same on a raw spin span; `left` and `right` are the exterior neighbours (0 = free).
[[nodiscard]] std::vector<FlipPoint> spin_flip_points(std::span<const Spin> spins, SiteIndex lo, Spin left, Spin right);

/// Throws std::invalid_argument unless flips are strictly increasing.
[[nodiscard]] TriangleDiagram build_triangles(std::span<const FlipPoint> flips);

/// Position of I* for a Dobrushin boundary condition.
[[nodiscard]] double interface_point(const SpinConfig& config, const BoundaryCondition& bc);

/// The grid T_L = {(2k + 1) / (2L) : k = -L-1, ..., L}.
class ThetaGrid {
 public:
  explicit ThetaGrid(std::int64_t L);

  [[nodiscard]] std::int64_t L() const noexcept { return L_; }
  [[nodiscard]] std::size_t size() const noexcept { return static_cast<std::size_t>(2 * L_ + 2); }
  [[nodiscard]] double value(std::size_t index) const;
  [[nodiscard]] std::vector<double> values() const;
  /// Index of the grid point closest to theta.
  [[nodiscard]] std::size_t nearest_index(double theta) const;

 private:
  std::int64_t L_;
};

/// Volume of odd size 2L + 1 with its grid; theta = (I* - center) / L.
struct InterfaceFrame {
  Volume volume;
  ThetaGrid grid;

  explicit InterfaceFrame(const Volume& v);
  /// Grid index of a doubled interface position.
  [[nodiscard]] std::size_t bin_of(std::int64_t doubled_interface) const;
};

/// Exact interface law plus the profiles conditioned on each interface bin.
struct InterfaceAnalysis {
  ThetaGrid grid{1};
  std::vector<double> probability;                   ///< per bin
  std::vector<std::uint64_t> configurations;         ///< per bin
  std::vector<std::vector<double>> conditional;      ///< per bin, per volume offset (NaN when empty)
  std::vector<double> magnetization;                 ///< unconditional, per volume offset
};

[[nodiscard]] InterfaceAnalysis exact_interface_analysis(const Volume& volume, const BoundaryCondition& bc,
                                                         const CouplingModel& model,
                                                         const exact::ExactOptions& options = {});

struct InterfaceHistogram {
  ThetaGrid grid{1};
  std::vector<double> probability;
  std::vector<double> std_error;     ///< zero for the exact engine
  std::vector<std::int64_t> count;   ///< configurations (exact) or samples (mc)
  /// Per-chain bin frequencies, chain-major (mc only).
  std::vector<std::vector<double>> chain_frequency;
};

enum class Engine { Exact, Mc };

[[nodiscard]] InterfaceHistogram interface_histogram(const Volume& volume, const CouplingModel& model,
                                                     const BoundaryCondition& bc, Engine engine,
                                                     const mc::McParams& params = {},
                                                     const exact::ExactOptions& options = {});

/// <sigma_i | I* in the bin of theta>. Throws std::domain_error when the
/// conditioning class is empty (exact) or never visited (mc).
[[nodiscard]] std::map<SiteIndex, double> conditional_profile(const Volume& volume, const CouplingModel& model,
                                                              const BoundaryCondition& bc, double theta,
                                                              Engine engine, const mc::McParams& params = {},
                                                              const exact::ExactOptions& options = {});

}  // namespace dyson::contour
