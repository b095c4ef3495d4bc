#include "dyson/exact.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <limits>

#include "dyson/parallel.hpp"

namespace dyson::exact {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
// Weights are kept at or below exp(-kHeadroom) of the shift so that new
// maxima rarely force a rescale.
constexpr double kHeadroom = 32.0;
constexpr std::uint64_t kMaxChunks = 64;

struct ChunkSums {
  double shift = kNegInf;
  std::vector<double> weight;    // per class
  std::vector<double> spin_sum;  // per class x free site
  std::vector<std::uint64_t> count;

  ChunkSums(std::size_t classes, std::size_t free)
      : weight(classes, 0.0), spin_sum(classes * free, 0.0), count(classes, 0) {}

  void rescale(double new_shift) {
    const double factor = shift == kNegInf ? 0.0 : std::exp(shift - new_shift);
    for (double& w : weight) w *= factor;
    for (double& s : spin_sum) s *= factor;
    shift = new_shift;
  }
};

void enumerate_chunk(const ReducedSystem& sys, const Classifier& classify, std::uint64_t first, std::uint64_t last,
                     const std::vector<double>& coupling, ChunkSums& out) {
  const std::size_t m = sys.free_count();
  const auto offsets = sys.free_offsets();
  const auto fixed = sys.fixed_field();
  const double beta = sys.beta();

  std::vector<Spin> full = sys.template_spins(1);
  std::vector<double> s(m);
  const std::uint64_t gray0 = first ^ (first >> 1);
  for (std::size_t a = 0; a < m; ++a) {
    s[a] = ((gray0 >> a) & 1U) != 0 ? 1.0 : -1.0;
    full[offsets[a]] = static_cast<Spin>(s[a]);
  }
  std::vector<double> h(m);
  for (std::size_t a = 0; a < m; ++a) {
    double v = fixed[a];
    for (std::size_t b = 0; b < m; ++b) v += coupling[a * m + b] * s[b];
    h[a] = v;
  }
  double e = sys.energy_of(full);

  const std::size_t classes = out.weight.size();
  for (std::uint64_t t = first;; ++t) {
    const double lw = -beta * e;
    if (lw > out.shift) out.rescale(lw + kHeadroom);
    const double w = std::exp(lw - out.shift);
    const std::size_t cls = classify ? classify(full) : 0;
    if (cls >= classes) throw std::logic_error("classifier returned an out-of-range class");
    out.weight[cls] += w;
    out.count[cls] += 1;
    double* row = out.spin_sum.data() + cls * m;
    for (std::size_t a = 0; a < m; ++a) row[a] += w * s[a];

    if (t + 1 >= last) break;
    const auto k = static_cast<std::size_t>(std::countr_zero(t + 1));
    e += 2.0 * s[k] * h[k];
    s[k] = -s[k];
    full[offsets[k]] = static_cast<Spin>(s[k]);
    const double ds = 2.0 * s[k];
    const double* jk = coupling.data() + k * m;
    for (std::size_t b = 0; b < m; ++b) h[b] += ds * jk[b];
  }
}

}  // namespace

double ClassSums::class_probability(std::size_t cls) const { return std::exp(log_class_weight.at(cls) - log_partition); }

ClassSums enumerate(const ReducedSystem& system, std::size_t class_count, const Classifier& classify,
                    const ExactOptions& options) {
  const std::size_t m = system.free_count();
  const std::size_t cap = std::min(options.max_free_sites, kAbsoluteMaxFreeSites);
  if (m > cap) {
    throw CapExceeded("exact enumeration over " + std::to_string(m) + " free sites exceeds the cap of " +
                      std::to_string(cap));
  }
  if (class_count == 0) throw std::invalid_argument("class_count must be positive");

  std::vector<double> coupling(m * m, 0.0);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) coupling[a * m + b] = a == b ? 0.0 : system.coupling_between(a, b);
  }

  const std::uint64_t total = std::uint64_t{1} << m;
  const std::uint64_t chunks = std::min(total, kMaxChunks);
  const std::uint64_t per_chunk = total / chunks;
  std::vector<ChunkSums> parts(chunks, ChunkSums(class_count, m));
  parallel_for(chunks, [&](std::size_t c) {
    enumerate_chunk(system, classify, c * per_chunk, (c + 1) * per_chunk, coupling, parts[c]);
  });

  double shift = kNegInf;
  for (const auto& p : parts) shift = std::max(shift, p.shift);
  ChunkSums merged(class_count, m);
  merged.shift = shift;
  for (auto& p : parts) {
    p.rescale(shift);
    for (std::size_t i = 0; i < merged.weight.size(); ++i) merged.weight[i] += p.weight[i];
    for (std::size_t i = 0; i < merged.spin_sum.size(); ++i) merged.spin_sum[i] += p.spin_sum[i];
    for (std::size_t i = 0; i < merged.count.size(); ++i) merged.count[i] += p.count[i];
  }

  const auto n = static_cast<std::size_t>(system.volume().size());
  const auto offsets = system.free_offsets();
  const auto base = system.template_spins(0);

  ClassSums out;
  double total_weight = 0.0;
  for (double w : merged.weight) total_weight += w;
  out.log_partition = std::log(total_weight) + shift;
  out.class_count = merged.count;
  out.magnetization.assign(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) out.magnetization[k] = base[k];
  for (std::size_t a = 0; a < m; ++a) {
    double sum = 0.0;
    for (std::size_t c = 0; c < class_count; ++c) sum += merged.spin_sum[c * m + a];
    out.magnetization[offsets[a]] = sum / total_weight;
  }
  out.log_class_weight.resize(class_count);
  out.class_magnetization.resize(class_count);
  for (std::size_t c = 0; c < class_count; ++c) {
    const double w = merged.weight[c];
    out.log_class_weight[c] = w > 0.0 ? std::log(w) + shift : kNegInf;
    auto& mag = out.class_magnetization[c];
    if (merged.count[c] == 0) {
      mag.assign(n, std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    mag.assign(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) mag[k] = base[k];
    for (std::size_t a = 0; a < m; ++a) mag[offsets[a]] = w > 0.0 ? merged.spin_sum[c * m + a] / w : 0.0;
  }
  return out;
}

ExactResult exact_gibbs(const Volume& volume, const BoundaryCondition& bc, const CouplingModel& model,
                        const Constraint& constraint, const ExactOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const ReducedSystem system(volume, bc, model, constraint);
  const ClassSums sums = enumerate(system, 1, nullptr, options);

  ExactResult result;
  result.log_partition = sums.log_partition;
  result.volume = volume;
  result.boundary = bc.name();
  result.model = model;
  for (SiteIndex site = volume.lo(); site <= volume.hi(); ++site) {
    result.magnetization[site] = sums.magnetization[volume.offset(site)];
  }
  result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

double exact_conditional_magnetization(const Volume& volume, const BoundaryCondition& bc, const CouplingModel& model,
                                       const Constraint& constraint, SiteIndex site, const ExactOptions& options) {
  if (!volume.contains(site)) throw std::out_of_range("probe site " + std::to_string(site) + " outside the volume");
  if (constraint.is_frozen(site)) throw std::invalid_argument("probe site " + std::to_string(site) + " is frozen");
  return exact_gibbs(volume, bc, model, constraint, options).magnetization.at(site);
}

std::vector<double> nested_volume_bracket(SiteIndex site, std::span<const Volume> volumes, const BoundaryCondition& bc,
                                          const CouplingModel& model, const Constraint& constraint,
                                          const ExactOptions& options) {
  if (volumes.empty()) throw std::invalid_argument("nested_volume_bracket needs at least one volume");
  for (std::size_t i = 1; i < volumes.size(); ++i) {
    if (!volumes[i].contains(volumes[i - 1]) || volumes[i] == volumes[i - 1]) {
      throw std::invalid_argument("volumes must be strictly nested and ascending");
    }
  }
  std::vector<double> out;
  out.reserve(volumes.size());
  for (const auto& v : volumes) out.push_back(exact_conditional_magnetization(v, bc, model, constraint, site, options));
  return out;
}

}  // namespace dyson::exact
