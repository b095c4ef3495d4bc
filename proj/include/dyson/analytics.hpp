#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "dyson/lattice.hpp"

/// Closed-form quantities: the interface free-energy shape f_alpha, the
/// localization rate g, alternating remainders, the observable B and its
/// maximizer, external-field profiles of a frozen past and the energy tail
/// of a far homogeneous block.
namespace dyson::analytics {

struct FAlpha {
  double value;
  double first;   ///< f'
  double second;  ///< f''
};

/// f(theta) = (1+theta)^{2-alpha} + (1-theta)^{2-alpha} with derivatives.
/// At theta = +-1 the derivatives are the one-sided limits (infinite).
[[nodiscard]] FAlpha f_alpha(double theta, double alpha);

/// max f_alpha over theta in (epsilon, 1] on a uniform grid of `points` steps;
/// by symmetry this is the max over |theta| > epsilon.
[[nodiscard]] double f_alpha_max_outside(double epsilon, double alpha, int points = 100000);

/// e^{-2 beta (zeta + j1)} / ((2-alpha)(alpha-1)) *
///   [f(1/2)(1 - e^{-c1 beta}) - M (1 + e^{-c1 beta})],  M = f_alpha_max_outside(epsilon).
[[nodiscard]] double g_coefficient(double alpha, double beta, double epsilon, double j1, double c1);

/// R_N = sum_{n > N} (-1)^{n+1} n^{-alpha}.
[[nodiscard]] double alternating_remainder(std::int64_t N, double alpha);

struct BoundReport {
  double computed_value = 0.0;
  double analytic_bound = 0.0;
  bool satisfied = false;

  static BoundReport check(double value, double bound) { return {value, bound, value <= bound + 1e-12}; }
};

/// B(w) = sum_{j outside [-L1,-1]} c_j w_j with
/// c_j = sum_{i in [-L1,-1]} (-1)^i |i-j|^{-alpha}, truncated to exterior
/// sites within `cutoff` of the block.
class BObservable {
 public:
  BObservable(std::int64_t L1, double alpha, std::int64_t cutoff = kDefaultCutoff);

  [[nodiscard]] std::int64_t L1() const noexcept { return L1_; }
  [[nodiscard]] std::int64_t cutoff() const noexcept { return cutoff_; }
  [[nodiscard]] double coefficient(SiteIndex j) const;
  /// Upper bound on |B| contributed by sites beyond the cutoff.
  [[nodiscard]] double tail_bound() const noexcept { return tail_bound_; }
  /// Sites j in [-L1-cutoff, -L1-1] and [0, cutoff-1].
  [[nodiscard]] std::vector<SiteIndex> sites() const;

  [[nodiscard]] double evaluate(const std::function<Spin(SiteIndex)>& omega) const;
  /// The pointwise maximizer: -1 on j >= 0; left of the block +1 for even
  /// L1 and -1 for odd L1.
  [[nodiscard]] Spin maximizer(SiteIndex j) const;

 private:
  std::int64_t L1_;
  double alpha_;
  std::int64_t cutoff_;
  std::vector<double> right_;  // c_j for j = 0 .. cutoff-1
  std::vector<double> left_;   // c_{-L1-k} for k = 1 .. cutoff
  double tail_bound_;
};

/// B on an exterior configuration. Throws std::invalid_argument when the
/// truncation error bound exceeds `tolerance`.
[[nodiscard]] double b_observable(const std::function<Spin(SiteIndex)>& omega, std::int64_t L1, double alpha,
                                  std::int64_t cutoff = kDefaultCutoff,
                                  double tolerance = std::numeric_limits<double>::infinity());

/// B at the maximizer, summed in closed form through power tails, against
/// the bound 2 zeta(alpha) + 2 sum_{d > L1} d^{-alpha}.
[[nodiscard]] BoundReport b_max(std::int64_t L1, double alpha);
/// Slack allowed when comparing b_max across L1: 2 sum_{d > L1} d^{-alpha}.
[[nodiscard]] double b_max_tail_allowance(std::int64_t L1, double alpha);

/// Frozen past: alternating on k = 1..L (w_{-k} = (-1)^k), annulus_sign on
/// k = L+1..N, far_pattern (default annulus_sign) on k = N+1..n, plus
/// beyond n.
struct FieldProfileSpec {
  std::int64_t L = 4;
  std::int64_t N = 1600;
  std::int64_t n = 6400;
  Spin annulus_sign = -1;
  std::optional<std::vector<Spin>> far_pattern;  ///< w_{-k} for k = N+1..n
  double alpha = 1.5;

  void validate() const;
  /// w_{-k} for k = 1..n.
  [[nodiscard]] std::vector<Spin> past() const;
};

/// h_x = sum_{k=1}^{n} w_{-k} (k+x)^{-alpha} + 2 sum_{k > n} (k+x)^{-alpha}
/// for a past given as w_{-k}, k = 1..past.size().
[[nodiscard]] double past_field(std::span<const Spin> past, std::int64_t x, double alpha);

[[nodiscard]] double field_profile(const FieldProfileSpec& spec, std::int64_t x);

/// 3/(alpha-1) L N^{1-alpha}.
[[nodiscard]] double boundary_tail_bound(std::int64_t L, std::int64_t N, double alpha);
/// sum_{j < -N} sum_{i=0}^{2L} |i-j|^{-alpha}, exact up to power-tail accuracy.
[[nodiscard]] double boundary_tail_exact(std::int64_t L, std::int64_t N, double alpha);

/// Largest energy change from deleting every bond between [-L1,-1] and its
/// complement: 2 sum_{i=1}^{L1} sum_{d >= i} d^{-alpha}.
[[nodiscard]] double bond_removal_energy(std::int64_t L1, double alpha);

}  // namespace dyson::analytics
