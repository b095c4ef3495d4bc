#pragma once

#include <cstdint>
#include <functional>
#include <utility>

namespace dyson::numerics {

/// sum_{d >= first} d^{-alpha} for integer first >= 1 and alpha > 1.
///
/// Terms below 64 are summed directly; the remainder uses Euler-Maclaurin
/// through the fifth derivative, which is accurate to well below 1e-15 there.
[[nodiscard]] double power_tail(std::int64_t first, double alpha);

/// Riemann zeta for alpha > 1.
[[nodiscard]] inline double zeta(double alpha) { return power_tail(1, alpha); }

/// Rigorous bracket [int_{K+1}^inf, int_K^inf] x^{-alpha} dx for sum_{d > K} d^{-alpha}.
[[nodiscard]] std::pair<double, double> power_tail_bracket(std::int64_t last_summed, double alpha);

/// sum_{k >= 0} (-1)^k a(k) for a completely monotone sequence a, using the
/// Cohen-Rodriguez Villegas-Zagier acceleration with `terms` evaluations.
[[nodiscard]] double alternating_sum(const std::function<double(std::int64_t)>& a, int terms = 36);

}  // namespace dyson::numerics
