#include "dyson/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "dyson/numerics.hpp"

namespace dyson::analytics {

namespace {

using numerics::power_tail;

void require_alpha(double alpha) {
  if (!(alpha > 1.0 && alpha < 2.0)) throw std::invalid_argument("alpha must lie in (1, 2)");
}

double inv_pow(std::int64_t d, double alpha) { return std::pow(static_cast<double>(d), -alpha); }

}  // namespace

FAlpha f_alpha(double theta, double alpha) {
  require_alpha(alpha);
  if (!(std::abs(theta) <= 1.0)) throw std::invalid_argument("theta must lie in [-1, 1]");
  const double p = 1.0 + theta;
  const double m = 1.0 - theta;
  const double e = 2.0 - alpha;
  const double inf = std::numeric_limits<double>::infinity();
  FAlpha f{std::pow(p, e) + std::pow(m, e), 0.0, 0.0};
  // (1-theta)^{1-alpha} blows up at theta = 1, (1+theta)^{1-alpha} at theta = -1
  if (m == 0.0) {
    f.first = -inf;
    f.second = -inf;
  } else if (p == 0.0) {
    f.first = inf;
    f.second = -inf;
  } else {
    f.first = e * (std::pow(p, 1.0 - alpha) - std::pow(m, 1.0 - alpha));
    f.second = e * (1.0 - alpha) * (std::pow(p, -alpha) + std::pow(m, -alpha));
  }
  return f;
}

double f_alpha_max_outside(double epsilon, double alpha, int points) {
  if (!(epsilon >= 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in [0, 1)");
  if (points < 1) throw std::invalid_argument("points must be positive");
  double best = -std::numeric_limits<double>::infinity();
  for (int k = 1; k <= points; ++k) {
    const double theta = epsilon + k * (1.0 - epsilon) / points;
    best = std::max(best, f_alpha(std::min(theta, 1.0), alpha).value);
  }
  return best;
}

double g_coefficient(double alpha, double beta, double epsilon, double j1, double c1) {
  require_alpha(alpha);
  if (beta < 0.0) throw std::invalid_argument("beta must be nonnegative");
  if (c1 <= 0.0) throw std::invalid_argument("c1 must be positive");
  const double m = f_alpha_max_outside(epsilon, alpha);
  const double x = std::exp(-c1 * beta);
  const double prefactor = std::exp(-2.0 * beta * (numerics::zeta(alpha) + j1)) / ((2.0 - alpha) * (alpha - 1.0));
  return prefactor * (f_alpha(0.5, alpha).value * (1.0 - x) - m * (1.0 + x));
}

double alternating_remainder(std::int64_t N, double alpha) {
  if (N < 0) throw std::invalid_argument("N must be nonnegative");
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  // R_N = (-1)^N sum_{k>=0} (-1)^k (N+1+k)^{-alpha}
  const double s = numerics::alternating_sum([&](std::int64_t k) { return inv_pow(N + 1 + k, alpha); });
  return N % 2 == 0 ? s : -s;
}

BObservable::BObservable(std::int64_t L1, double alpha, std::int64_t cutoff)
    : L1_(L1), alpha_(alpha), cutoff_(cutoff), right_(cutoff), left_(cutoff) {
  if (L1 < 1) throw std::invalid_argument("L1 must be positive");
  if (cutoff < 1) throw std::invalid_argument("cutoff must be positive");
  if (!(alpha > 1.0)) throw std::invalid_argument("alpha must exceed 1");
  // Block site -i carries sign (-1)^i.
  for (std::int64_t j = 0; j < cutoff; ++j) {
    double c = 0.0;
    for (std::int64_t i = L1; i >= 1; --i) c += (i % 2 == 0 ? 1.0 : -1.0) * inv_pow(i + j, alpha);
    right_[j] = c;
  }
  for (std::int64_t k = 1; k <= cutoff; ++k) {
    double c = 0.0;
    for (std::int64_t i = 1; i <= L1; ++i) c += (i % 2 == 0 ? 1.0 : -1.0) * inv_pow(L1 + k - i, alpha);
    left_[k - 1] = c;
  }
  // |c_j| is at most its leading term, so each side's remainder is below sum_{d > cutoff} d^{-alpha}.
  tail_bound_ = 2.0 * power_tail(cutoff + 1, alpha);
}

double BObservable::coefficient(SiteIndex j) const {
  if (j >= 0 && j < cutoff_) return right_[static_cast<std::size_t>(j)];
  if (j <= -L1_ - 1 && j >= -L1_ - cutoff_) return left_[static_cast<std::size_t>(-L1_ - j - 1)];
  throw std::out_of_range("site " + std::to_string(j) + " is inside the block or beyond the cutoff");
}

std::vector<SiteIndex> BObservable::sites() const {
  std::vector<SiteIndex> out;
  out.reserve(static_cast<std::size_t>(2 * cutoff_));
  for (SiteIndex j = -L1_ - cutoff_; j <= -L1_ - 1; ++j) out.push_back(j);
  for (SiteIndex j = 0; j < cutoff_; ++j) out.push_back(j);
  return out;
}

double BObservable::evaluate(const std::function<Spin(SiteIndex)>& omega) const {
  double b = 0.0;
  for (std::int64_t k = cutoff_; k >= 1; --k) b += left_[k - 1] * omega(-L1_ - k);
  for (std::int64_t j = cutoff_ - 1; j >= 0; --j) b += right_[j] * omega(j);
  return b;
}

Spin BObservable::maximizer(SiteIndex j) const {
  if (j >= 0) return -1;
  if (j < -L1_) return L1_ % 2 == 0 ? Spin{1} : Spin{-1};
  throw std::out_of_range("site " + std::to_string(j) + " is inside the block");
}

double b_observable(const std::function<Spin(SiteIndex)>& omega, std::int64_t L1, double alpha, std::int64_t cutoff,
                    double tolerance) {
  const BObservable b(L1, alpha, cutoff);
  if (b.tail_bound() > tolerance) {
    throw std::invalid_argument("cutoff " + std::to_string(cutoff) + " leaves a truncation bound of " +
                                std::to_string(b.tail_bound()) + " above the tolerance");
  }
  return b.evaluate(omega);
}

BoundReport b_max(std::int64_t L1, double alpha) {
  if (L1 < 1) throw std::invalid_argument("L1 must be positive");
  if (!(alpha > 1.0)) throw std::invalid_argument("alpha must exceed 1");
  // Right side, w = -1: sum_i (-1)^{i+1} sum_{j>=0} (i+j)^{-alpha}.
  double right = 0.0;
  for (std::int64_t i = L1; i >= 1; --i) right += (i % 2 == 0 ? -1.0 : 1.0) * power_tail(i, alpha);
  // Left side: s * sum_i (-1)^i sum_{k>=1} (L1+k-i)^{-alpha}.
  double left = 0.0;
  for (std::int64_t i = 1; i <= L1; ++i) left += (i % 2 == 0 ? 1.0 : -1.0) * power_tail(L1 + 1 - i, alpha);
  left *= L1 % 2 == 0 ? 1.0 : -1.0;
  const double bound = 2.0 * numerics::zeta(alpha) + 2.0 * power_tail(L1 + 1, alpha);
  return BoundReport::check(right + left, bound);
}

double b_max_tail_allowance(std::int64_t L1, double alpha) { return 2.0 * power_tail(L1 + 1, alpha); }

void FieldProfileSpec::validate() const {
  if (!(L >= 1 && L < N && N < n)) throw std::invalid_argument("field profile needs 1 <= L < N < n");
  if (!is_spin(annulus_sign)) throw std::invalid_argument("annulus_sign must be +1 or -1");
  if (!(alpha > 1.0)) throw std::invalid_argument("alpha must exceed 1");
  if (far_pattern) {
    if (static_cast<std::int64_t>(far_pattern->size()) != n - N) {
      throw std::invalid_argument("far_pattern must hold n - N spins");
    }
    for (Spin s : *far_pattern) {
      if (!is_spin(s)) throw std::invalid_argument("far_pattern entries must be +1 or -1");
    }
  }
}

std::vector<Spin> FieldProfileSpec::past() const {
  validate();
  std::vector<Spin> w(static_cast<std::size_t>(n));
  for (std::int64_t k = 1; k <= n; ++k) {
    Spin s = annulus_sign;
    if (k <= L) s = k % 2 == 0 ? 1 : -1;
    if (k > N && far_pattern) s = (*far_pattern)[static_cast<std::size_t>(k - N - 1)];
    w[static_cast<std::size_t>(k - 1)] = s;
  }
  return w;
}

double past_field(std::span<const Spin> past, std::int64_t x, double alpha) {
  if (x < 0) throw std::invalid_argument("x must be nonnegative");
  const auto n = static_cast<std::int64_t>(past.size());
  double h = 2.0 * power_tail(n + 1 + x, alpha);
  for (std::int64_t k = n; k >= 1; --k) h += past[static_cast<std::size_t>(k - 1)] * inv_pow(k + x, alpha);
  return h;
}

double field_profile(const FieldProfileSpec& spec, std::int64_t x) { return past_field(spec.past(), x, spec.alpha); }

double boundary_tail_bound(std::int64_t L, std::int64_t N, double alpha) {
  if (L < 1 || N < 1) throw std::invalid_argument("L and N must be positive");
  return 3.0 / (alpha - 1.0) * static_cast<double>(L) * std::pow(static_cast<double>(N), 1.0 - alpha);
}

double boundary_tail_exact(std::int64_t L, std::int64_t N, double alpha) {
  if (L < 1 || N < 1) throw std::invalid_argument("L and N must be positive");
  double s = 0.0;
  for (std::int64_t i = 2 * L; i >= 0; --i) s += power_tail(i + N + 1, alpha);
  return s;
}

double bond_removal_energy(std::int64_t L1, double alpha) {
  if (L1 < 1) throw std::invalid_argument("L1 must be positive");
  double s = 0.0;
  for (std::int64_t i = L1; i >= 1; --i) s += power_tail(i, alpha);
  return 2.0 * s;
}

}  // namespace dyson::analytics
