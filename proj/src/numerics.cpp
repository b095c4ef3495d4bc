#include "dyson/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace dyson::numerics {

double power_tail(std::int64_t first, double alpha) {
  if (first < 1) throw std::invalid_argument("power_tail: first index must be >= 1");
  if (!(alpha > 1.0)) throw std::invalid_argument("power_tail: alpha must exceed 1");

  constexpr std::int64_t kDirect = 64;
  double direct = 0.0;
  std::int64_t k = first;
  for (; k < kDirect; ++k) direct += std::pow(static_cast<double>(k), -alpha);

  // Euler-Maclaurin for sum_{d >= K} f(d), f(x) = x^{-a}:
  //   int_K^inf f + f(K)/2 - f'(K)/12 + f'''(K)/720 - f^(5)(K)/30240
  const double x = static_cast<double>(k);
  const double a = alpha;
  const double f = std::pow(x, -a);
  const double integral = x * f / (a - 1.0);
  const double d1 = -a * f / x;
  const double d3 = -a * (a + 1.0) * (a + 2.0) * f / (x * x * x);
  const double d5 = -a * (a + 1.0) * (a + 2.0) * (a + 3.0) * (a + 4.0) * f / (x * x * x * x * x);
  const double tail = integral + 0.5 * f - d1 / 12.0 + d3 / 720.0 - d5 / 30240.0;

  // Sum the small remainder first.
  return tail + direct;
}

std::pair<double, double> power_tail_bracket(std::int64_t last_summed, double alpha) {
  if (last_summed < 1) throw std::invalid_argument("power_tail_bracket: K must be >= 1");
  const double k = static_cast<double>(last_summed);
  return {std::pow(k + 1.0, 1.0 - alpha) / (alpha - 1.0), std::pow(k, 1.0 - alpha) / (alpha - 1.0)};
}

double alternating_sum(const std::function<double(std::int64_t)>& a, int terms) {
  const double n = terms;
  double d = std::pow(3.0 + std::sqrt(8.0), n);
  d = (d + 1.0 / d) / 2.0;
  double b = -1.0;
  double c = -d;
  double s = 0.0;
  for (int k = 0; k < terms; ++k) {
    c = b - c;
    s += c * a(k);
    const double kk = k;
    b = (kk + n) * (kk - n) * b / ((kk + 0.5) * (kk + 1.0));
  }
  return s / d;
}

}  // namespace dyson::numerics
