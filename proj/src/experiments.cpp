#include "dyson/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

#include "dyson/analytics.hpp"
#include "dyson/io.hpp"

namespace dyson::experiments {

namespace {

constexpr double kExactSlack = 1e-12;
constexpr double kSigmas = 3.0;

std::string engine_name(Engine e) { return e == Engine::Exact ? "exact" : "mc"; }

nlohmann::json model_json(const ModelParams& m) {
  return {{"alpha", m.alpha}, {"beta", m.beta}, {"j1", m.j1}, {"cutoff", m.cutoff}};
}

nlohmann::json engine_json(const EngineParams& e) {
  nlohmann::json j = {{"engine", engine_name(e.engine)}};
  if (e.engine == Engine::Mc) {
    j["sweeps"] = e.mc.sweeps;
    j["burnin"] = e.mc.burnin;
    j["chains"] = e.mc.chains;
    j["thin"] = e.mc.thin;
    j["seed"] = e.mc.seed;
  } else {
    j["max_free_sites"] = e.exact.max_free_sites;
  }
  return j;
}

nlohmann::json merge(nlohmann::json a, const nlohmann::json& b) {
  a.update(b);
  return a;
}

/// Finite values only; the JSON writer would turn NaN into null anyway.
nlohmann::json number_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

std::string key_of(double v) { return io::format_double(v); }

struct SiteValue {
  double mean = 0.0;
  double std_error = 0.0;
};

/// <sigma_i> on every site of the volume, frozen sites included.
std::map<SiteIndex, SiteValue> magnetization_profile(const Volume& volume, const BoundaryCondition& bc,
                                                     const CouplingModel& model, const Constraint& constraint,
                                                     const EngineParams& e) {
  std::map<SiteIndex, SiteValue> out;
  if (e.engine == Engine::Exact) {
    const auto r = exact::exact_gibbs(volume, bc, model, constraint, e.exact);
    for (const auto& [site, m] : r.magnetization) out[site] = {m, 0.0};
    return out;
  }
  std::vector<SiteIndex> sites;
  for (SiteIndex s = volume.lo(); s <= volume.hi(); ++s) sites.push_back(s);
  const auto est = mc::mc_magnetization(volume, bc, model, constraint, sites, e.mc);
  for (const auto& [site, m] : est) out[site] = {m.mean, m.std_error};
  return out;
}

/// Slack used in "beyond k standard errors" comparisons; exact results use a
/// rounding tolerance instead.
double sigma_slack(const EngineParams& e, double std_error) {
  return e.engine == Engine::Exact ? 0.0 : kSigmas * std_error;
}

struct LineFit {
  double slope = std::numeric_limits<double>::quiet_NaN();
  double intercept = std::numeric_limits<double>::quiet_NaN();
  std::int64_t points = 0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  LineFit f;
  f.points = static_cast<std::int64_t>(x.size());
  if (x.size() < 2) return f;
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) return f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  return f;
}

}  // namespace

double alpha_plus() { return 3.0 - std::log(3.0) / std::log(2.0); }

// ---------------------------------------------------------------------------
// localization

ExperimentReport run_localization(const LocalizationParams& p) {
  if (!(p.model.alpha > alpha_plus() && p.model.alpha < 2.0)) {
    throw std::invalid_argument("alpha must lie in (" + io::format_double(alpha_plus()) + ", 2)");
  }
  if (p.L_list.empty()) throw std::invalid_argument("L list is empty");
  for (std::size_t i = 0; i < p.L_list.size(); ++i) {
    if (p.L_list[i] < 1) throw std::invalid_argument("every L must be positive");
    if (i > 0 && p.L_list[i] <= p.L_list[i - 1]) throw std::invalid_argument("L list must be increasing");
  }

  ExperimentReport r;
  r.name = "localization";
  r.parameters = merge(model_json(p.model), engine_json(p.engine));
  r.parameters["L_list"] = p.L_list;
  r.parameters["epsilons"] = p.epsilons;
  r.parameters["verdict_epsilon"] = p.verdict_epsilon;
  r.parameters["escape_threshold"] = p.escape_threshold;

  Table hist("histogram", {"L", "theta", "probability", "std_error", "count"});
  Table escape("escape", {"L", "epsilon", "probability", "std_error"});
  const auto bc = BoundaryCondition::dobrushin_minus_plus(p.model.cutoff);
  const auto model = p.model.model();

  std::map<double, std::vector<double>> escape_by_eps;
  double worst_normalization = 0.0;
  double worst_mode_margin = std::numeric_limits<double>::infinity();
  for (std::int64_t L : p.L_list) {
    const auto h = contour::interface_histogram(Volume::centered(L), model, bc, p.engine.engine, p.engine.mc,
                                                p.engine.exact);
    double total = 0.0;
    std::size_t mode = 0;
    for (std::size_t b = 0; b < h.probability.size(); ++b) {
      hist.add_row({L, h.grid.value(b), h.probability[b], h.std_error[b], h.count[b]});
      total += h.probability[b];
      if (h.probability[b] > h.probability[mode]) mode = b;
    }
    worst_normalization = std::max(worst_normalization, std::abs(total - 1.0));
    // one grid step from theta = 0 reaches |theta| = 3 / (2L)
    const double step = 1.0 / static_cast<double>(L);
    worst_mode_margin = std::min(worst_mode_margin, 1.5 * step - std::abs(h.grid.value(mode)));

    for (double eps : p.epsilons) {
      double prob = 0.0;
      double se = 0.0;
      if (p.engine.engine == Engine::Exact) {
        for (std::size_t b = 0; b < h.probability.size(); ++b) {
          if (std::abs(h.grid.value(b)) > eps) prob += h.probability[b];
        }
      } else {
        std::vector<double> per_chain;
        for (const auto& freq : h.chain_frequency) {
          double s = 0.0;
          for (std::size_t b = 0; b < freq.size(); ++b) {
            if (std::abs(h.grid.value(b)) > eps) s += freq[b];
          }
          per_chain.push_back(s);
        }
        const auto e = mc::combine_chain_means(per_chain, p.engine.mc.samples_per_chain());
        prob = e.mean;
        se = e.std_error;
      }
      escape.add_row({L, eps, prob, se});
      escape_by_eps[eps].push_back(prob);
    }
  }

  nlohmann::json fits = nlohmann::json::object();
  Table fit_table("fit", {"epsilon", "slope", "intercept", "points"});
  for (const auto& [eps, probs] : escape_by_eps) {
    std::vector<double> x;
    std::vector<double> y;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      if (probs[i] <= 0.0) continue;
      x.push_back(std::pow(static_cast<double>(p.L_list[i]), 2.0 - p.model.alpha));
      y.push_back(-std::log(probs[i]));
    }
    const auto f = least_squares(x, y);
    fit_table.add_row({eps, f.slope, f.intercept, f.points});
    fits[key_of(eps)] = {{"slope", number_or_null(f.slope)},
                         {"intercept", number_or_null(f.intercept)},
                         {"points", f.points}};
  }

  const auto it = escape_by_eps.find(p.verdict_epsilon);
  if (it == escape_by_eps.end()) throw std::invalid_argument("verdict epsilon is not among the epsilons");
  const auto& probs = it->second;
  double min_drop = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < probs.size(); ++i) min_drop = std::min(min_drop, probs[i - 1] - probs[i]);
  if (probs.size() < 2) min_drop = 0.0;

  r.verdicts.push_back({"escape_strictly_decreasing", probs.size() >= 2 && min_drop > 0.0, min_drop,
                        "smallest drop of P(|I*| > eps L) between consecutive L"});
  const double last = probs.back();
  r.verdicts.push_back({"escape_below_threshold", last < p.escape_threshold, p.escape_threshold - last,
                        "P(|I*| > eps L) at the largest L against the threshold"});
  const double norm_tol = p.engine.engine == Engine::Exact ? 1e-9 : 1e-12;
  r.verdicts.push_back({"histogram_normalized", worst_normalization <= norm_tol, norm_tol - worst_normalization,
                        "largest deviation of the total probability from 1"});
  r.verdicts.push_back({"mode_near_center", worst_mode_margin >= 0.0, worst_mode_margin,
                        "histogram mode within one grid step of theta = 0 for every L"});

  r.summary["escape_probabilities"] = probs;
  r.summary["fit"] = fits;
  r.tables = {std::move(hist), std::move(escape), std::move(fit_table)};
  return r;
}

// ---------------------------------------------------------------------------
// wetting

Volume WettingParams::volume() const {
  const std::int64_t l = left < 0 ? 2 * L : left;
  const std::int64_t rr = right < 0 ? 2 * L : right;
  return {-N - l, rr};
}

std::int64_t WettingParams::window() const {
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor((1.0 - epsilon) * static_cast<double>(L) / 2.0)));
}

ExperimentReport run_wetting(const WettingParams& p) {
  if (p.L < 1 || p.N <= p.L) throw std::invalid_argument("wetting needs 1 <= L < N");
  if (!(p.epsilon > 0.0 && p.epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  const Volume volume = p.volume();
  const std::int64_t w = p.window();
  if (volume.hi() < w - 1 || -p.N - w < volume.lo()) {
    throw std::invalid_argument("the volume does not contain both wet windows of " + std::to_string(w) + " sites");
  }

  ExperimentReport r;
  r.name = "wetting";
  r.parameters = merge(model_json(p.model), engine_json(p.engine));
  r.parameters["L"] = p.L;
  r.parameters["N"] = p.N;
  r.parameters["lo"] = volume.lo();
  r.parameters["hi"] = volume.hi();
  r.parameters["epsilon"] = p.epsilon;

  Constraint frozen;
  frozen.freeze(-p.N, -1, -1);
  const auto bc = BoundaryCondition::plus(p.model.cutoff);
  const auto model = p.model.model();
  const auto cond = magnetization_profile(volume, bc, model, frozen, p.engine);
  const auto free = magnetization_profile(volume, bc, model, {}, p.engine);

  const SiteValue m = free.at(0);
  auto in_right = [&](SiteIndex s) { return s >= 0 && s <= w - 1; };
  auto in_left = [&](SiteIndex s) { return s >= -p.N - w && s <= -p.N - 1; };

  Table profile("profile", {"site", "conditioned", "conditioned_std_error", "unconditioned",
                            "unconditioned_std_error", "frozen", "wet_window"});
  double right_margin = std::numeric_limits<double>::infinity();
  double left_margin = std::numeric_limits<double>::infinity();
  double wet_margin = std::numeric_limits<double>::infinity();
  std::int64_t wet_hits = 0;
  for (SiteIndex s = volume.lo(); s <= volume.hi(); ++s) {
    const auto& c = cond.at(s);
    const auto& u = free.at(s);
    const bool window = in_right(s) || in_left(s);
    profile.add_row({s, c.mean, c.std_error, u.mean, u.std_error, std::int64_t{frozen.is_frozen(s)},
                     std::int64_t{window}});
    if (!window) continue;
    const double upper = c.mean + sigma_slack(p.engine, c.std_error);
    if (in_right(s)) {
      right_margin = std::min(right_margin, -upper);
    } else {
      left_margin = std::min(left_margin, -upper);
    }
    wet_margin = std::min(wet_margin, -m.mean / 2.0 - c.mean);
    if (c.mean <= -m.mean / 2.0) ++wet_hits;
  }

  const auto& c0 = cond.at(0);
  const double c0_margin = -(c0.mean + sigma_slack(p.engine, c0.std_error));
  const double m_margin = m.mean - sigma_slack(p.engine, m.std_error);
  const std::string sigmas = p.engine.engine == Engine::Exact ? "" : " beyond 3 standard errors";
  r.verdicts.push_back({"conditioned_site0_negative", c0_margin > 0.0, c0_margin,
                        "<sigma_0> with the frozen minus block is negative" + sigmas});
  r.verdicts.push_back({"right_window_negative", right_margin > 0.0, right_margin,
                        "every site of [0, " + std::to_string(w - 1) + "] is negative" + sigmas});
  r.verdicts.push_back({"left_window_negative", left_margin > 0.0, left_margin,
                        "every site of [" + std::to_string(-p.N - w) + ", " + std::to_string(-p.N - 1) +
                            "] is negative" + sigmas});
  r.verdicts.push_back({"unconditioned_site0_positive", m_margin > 0.0, m_margin,
                        "<sigma_0> without the frozen block is positive" + sigmas});
  r.verdicts.push_back({"wet_sites_below_minus_half_m", wet_margin >= 0.0, wet_margin,
                        std::to_string(wet_hits) + " of " + std::to_string(2 * w) + " window sites at or below -m/2"});

  r.summary["m"] = m.mean;
  r.summary["m_std_error"] = m.std_error;
  r.summary["conditioned_site0"] = c0.mean;
  r.summary["conditioned_site0_std_error"] = c0.std_error;
  r.summary["window"] = w;
  r.summary["L_N_factor"] = static_cast<double>(p.L) * std::pow(static_cast<double>(p.N), 1.0 - p.model.alpha);
  r.tables = {std::move(profile)};
  return r;
}

// ---------------------------------------------------------------------------
// discontinuity

Constraint discontinuity_past(std::int64_t L, std::int64_t N, std::int64_t n, Spin annulus_sign) {
  if (L < 1 || N <= L) throw std::invalid_argument("the discontinuity probe needs 1 <= L < N");
  if (n < N + L) throw std::invalid_argument("n must be at least N + L");
  if (!is_spin(annulus_sign)) throw std::invalid_argument("annulus sign must be +1 or -1");
  Constraint c;
  for (std::int64_t k = 1; k <= n; ++k) {
    Spin s = 1;
    if (k <= L) {
      s = k % 2 == 0 ? 1 : -1;
    } else if (k <= N + L) {
      s = annulus_sign;
    }
    c.freeze(-k, s);
  }
  return c;
}

ExperimentReport run_discontinuity(const DiscontinuityParams& p) {
  if (p.n_list.empty()) throw std::invalid_argument("n list is empty");
  for (std::size_t i = 1; i < p.n_list.size(); ++i) {
    if (p.n_list[i] <= p.n_list[i - 1]) throw std::invalid_argument("n list must be increasing");
  }

  ExperimentReport r;
  r.name = "discontinuity";
  r.parameters = merge(model_json(p.model), engine_json(p.engine));
  r.parameters["L"] = p.L;
  r.parameters["N"] = p.N;
  r.parameters["n_list"] = p.n_list;

  const auto bc = BoundaryCondition::plus(p.model.cutoff);
  const auto model = p.model.model();
  Table gaps("gap", {"n", "plus_past", "minus_past", "gap", "gap_std_error"});
  Table profiles("profiles", {"n", "site", "plus_past", "minus_past"});

  std::vector<double> gap_values;
  std::vector<double> gap_lower;
  std::vector<double> plus0;
  double dominance_margin = std::numeric_limits<double>::infinity();
  std::int64_t dominance_violations = 0;
  for (std::int64_t n : p.n_list) {
    const Volume volume(-n, n);
    const auto plus = magnetization_profile(volume, bc, model, discontinuity_past(p.L, p.N, n, 1), p.engine);
    const auto minus = magnetization_profile(volume, bc, model, discontinuity_past(p.L, p.N, n, -1), p.engine);
    for (SiteIndex s = 0; s <= n; ++s) {
      const auto& a = plus.at(s);
      const auto& b = minus.at(s);
      profiles.add_row({n, s, a.mean, b.mean});
      const double se = std::hypot(a.std_error, b.std_error);
      const double slack = p.engine.engine == Engine::Exact ? kExactSlack : kSigmas * se;
      dominance_margin = std::min(dominance_margin, a.mean - b.mean + slack);
      if (a.mean - b.mean + slack < 0.0) ++dominance_violations;
    }
    const auto& a = plus.at(0);
    const auto& b = minus.at(0);
    const double se = std::hypot(a.std_error, b.std_error);
    gaps.add_row({n, a.mean, b.mean, a.mean - b.mean, se});
    gap_values.push_back(a.mean - b.mean);
    gap_lower.push_back(a.mean - b.mean - sigma_slack(p.engine, se));
    plus0.push_back(a.mean);
  }

  const double min_gap_lower = *std::min_element(gap_lower.begin(), gap_lower.end());
  const double min_gap = *std::min_element(gap_values.begin(), gap_values.end());
  const double persistence = min_gap - 0.5 * gap_values.front();
  double monotone_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < plus0.size(); ++i) {
    monotone_margin = std::min(monotone_margin, plus0[i - 1] - plus0[i] + kExactSlack);
  }
  if (plus0.size() < 2) monotone_margin = 0.0;

  r.verdicts.push_back({"gap_positive", min_gap_lower > 0.0, min_gap_lower,
                        "smallest gap in <sigma_0> between the two pasts"});
  r.verdicts.push_back({"gap_persistence", persistence >= 0.0, persistence,
                        "smallest gap minus half the gap at the first n"});
  r.verdicts.push_back({"fkg_dominance", dominance_violations == 0, dominance_margin,
                        std::to_string(dominance_violations) + " sites where the minus past dominates"});
  if (p.engine.engine == Engine::Exact) {
    r.verdicts.push_back({"plus_past_nonincreasing", monotone_margin >= 0.0, monotone_margin,
                          "<sigma_0> under the plus past does not grow with n"});
  }

  r.summary["gaps"] = gap_values;
  r.summary["headline_gap"] = gap_values.back();
  r.tables = {std::move(gaps), std::move(profiles)};

  if (p.bond_removal) {
    Table bonds("bond_removal", {"L1", "energy", "energy_over_L1_power"});
    for (std::int64_t l1 = 1; l1 <= p.L; ++l1) {
      const double e = analytics::bond_removal_energy(l1, p.model.alpha);
      bonds.add_row({l1, e, e / std::pow(static_cast<double>(l1), 2.0 - p.model.alpha)});
    }
    r.tables.push_back(std::move(bonds));
  }
  return r;
}

// ---------------------------------------------------------------------------
// single-shot subcommands

ExperimentReport run_exact(const ModelParams& m, const BoundaryCondition& bc, const Volume& volume,
                           const exact::ExactOptions& options) {
  const auto res = exact::exact_gibbs(volume, bc, m.model(), {}, options);
  ExperimentReport r;
  r.name = "exact";
  r.parameters = model_json(m);
  r.parameters["lo"] = volume.lo();
  r.parameters["hi"] = volume.hi();
  r.parameters["boundary"] = bc.name();
  Table t("magnetization", {"site", "magnetization"});
  for (const auto& [site, v] : res.magnetization) t.add_row({site, v});
  r.summary = io::to_json(res, false);
  r.tables = {std::move(t)};
  return r;
}

ExperimentReport run_mc(const ModelParams& m, const BoundaryCondition& bc, const Volume& volume,
                        const mc::McParams& params) {
  std::vector<SiteIndex> sites;
  for (SiteIndex s = volume.lo(); s <= volume.hi(); ++s) sites.push_back(s);
  const auto est = mc::mc_magnetization(volume, bc, m.model(), {}, sites, params);
  ExperimentReport r;
  r.name = "mc";
  r.parameters = merge(model_json(m), engine_json({Engine::Mc, params, {}}));
  r.parameters["lo"] = volume.lo();
  r.parameters["hi"] = volume.hi();
  r.parameters["boundary"] = bc.name();
  Table t("magnetization", {"site", "mean", "std_error", "n_samples"});
  for (const auto& [site, e] : est) t.add_row({site, e.mean, e.std_error, e.n_samples});
  r.tables = {std::move(t)};
  return r;
}

ExperimentReport run_interface(const ModelParams& m, std::int64_t L, const EngineParams& engine) {
  const Volume volume = Volume::centered(L);
  const auto bc = BoundaryCondition::dobrushin_minus_plus(m.cutoff);
  const auto h = contour::interface_histogram(volume, m.model(), bc, engine.engine, engine.mc, engine.exact);
  ExperimentReport r;
  r.name = "interface";
  r.parameters = merge(model_json(m), engine_json(engine));
  r.parameters["L"] = L;
  Table hist("histogram", {"theta", "probability", "std_error", "count"});
  for (std::size_t b = 0; b < h.probability.size(); ++b) {
    hist.add_row({h.grid.value(b), h.probability[b], h.std_error[b], h.count[b]});
  }
  const double theta = 1.0 / (2.0 * static_cast<double>(L));
  const auto prof = contour::conditional_profile(volume, m.model(), bc, theta, engine.engine, engine.mc, engine.exact);
  Table profile("profile", {"site", "conditional_magnetization", "theta"});
  for (const auto& [site, v] : prof) profile.add_row({site, v, theta});
  r.tables = {std::move(hist), std::move(profile)};
  return r;
}

ExperimentReport run_bounds(double alpha, std::int64_t max_N, std::int64_t max_L1, std::int64_t L, std::int64_t N) {
  if (max_N < 1 || max_L1 < 2) throw std::invalid_argument("bounds need N >= 1 and L1 >= 2");
  ExperimentReport r;
  r.name = "bounds";
  r.parameters = {{"alpha", alpha}, {"N", max_N}, {"L1", max_L1}, {"L", L}, {"tail_N", N}};

  Table rem("remainder", {"N", "remainder", "bound"});
  std::int64_t rem_violations = 0;
  double rem_margin = std::numeric_limits<double>::infinity();
  for (std::int64_t k = 1; k <= max_N; ++k) {
    const double v = analytics::alternating_remainder(k, alpha);
    const double b = std::pow(static_cast<double>(k + 1), -alpha);
    rem.add_row({k, v, b});
    rem_margin = std::min(rem_margin, b - std::abs(v));
    if (std::abs(v) > b) ++rem_violations;
  }
  r.verdicts.push_back({"remainder_bound", rem_violations == 0, rem_margin,
                        std::to_string(rem_violations) + " violations of |R_N| <= (N+1)^{-alpha}"});

  Table bmax("b_max", {"L1", "b_max", "bound", "tail_allowance"});
  double worst_excess = -std::numeric_limits<double>::infinity();
  const double last = analytics::b_max(max_L1, alpha).computed_value;
  const double last_allow = analytics::b_max_tail_allowance(max_L1, alpha);
  bool bound_ok = true;
  for (std::int64_t l1 = 1; l1 <= max_L1; ++l1) {
    const auto rep = analytics::b_max(l1, alpha);
    const double allow = analytics::b_max_tail_allowance(l1, alpha);
    bmax.add_row({l1, rep.computed_value, rep.analytic_bound, allow});
    bound_ok = bound_ok && rep.satisfied;
    if (l1 >= 2) worst_excess = std::max(worst_excess, rep.computed_value - last - allow - last_allow);
  }
  r.verdicts.push_back({"b_max_uniform", worst_excess <= 0.0, -worst_excess,
                        "b_max(L1) - b_max(L1 max) within the two tail allowances for every L1 >= 2"});
  r.verdicts.push_back({"b_max_below_bound", bound_ok, 0.0, "b_max(L1) <= 2 zeta + 2 tail for every L1"});

  const double exact_tail = analytics::boundary_tail_exact(L, N, alpha);
  const double bound_tail = analytics::boundary_tail_bound(L, N, alpha);
  Table tail("energy_tail", {"L", "N", "exact", "bound"});
  tail.add_row({L, N, exact_tail, bound_tail});
  r.verdicts.push_back({"energy_tail_bound", exact_tail <= bound_tail, bound_tail - exact_tail,
                        "double sum against 3/(alpha-1) L N^{1-alpha}"});

  Table f("f_alpha", {"theta", "f_alpha"});
  for (int k = -100; k <= 100; ++k) {
    const double theta = k / 100.0;
    f.add_row({theta, analytics::f_alpha(theta, alpha).value});
  }
  r.tables = {std::move(rem), std::move(bmax), std::move(tail), std::move(f)};
  return r;
}

ExperimentReport run_fields(double alpha, std::int64_t L, std::int64_t N, std::int64_t n) {
  analytics::FieldProfileSpec minus_spec;
  minus_spec.L = L;
  minus_spec.N = N;
  minus_spec.n = n;
  minus_spec.alpha = alpha;
  minus_spec.annulus_sign = -1;
  auto plus_spec = minus_spec;
  plus_spec.annulus_sign = 1;
  const auto minus_past = minus_spec.past();
  const auto plus_past = plus_spec.past();

  ExperimentReport r;
  r.name = "fields";
  r.parameters = {{"alpha", alpha}, {"L", L}, {"N", N}, {"n", n}};
  Table tm("field_minus", {"x", "h_x"});
  Table tp("field_plus", {"x", "h_x"});
  std::int64_t last_nonpositive = -1;
  double plus_min = std::numeric_limits<double>::infinity();
  double h0 = 0.0;
  for (std::int64_t x = 0; x <= 2 * n; ++x) {
    const double hm = analytics::past_field(minus_past, x, alpha);
    const double hp = analytics::past_field(plus_past, x, alpha);
    if (x == 0) h0 = hm;
    if (hm <= 0.0) last_nonpositive = x;
    plus_min = std::min(plus_min, hp);
    tm.add_row({x, hm});
    tp.add_row({x, hp});
  }
  const std::int64_t x0 = last_nonpositive + 1;
  r.verdicts.push_back({"minus_negative_at_origin", h0 < 0.0, -h0, "h_0 under the minus annulus"});
  r.verdicts.push_back({"minus_positive_beyond_x0", x0 < n, static_cast<double>(n - x0),
                        "h_x > 0 for every x >= x0 = " + std::to_string(x0)});
  r.verdicts.push_back({"plus_positive", plus_min > 0.0, plus_min, "smallest h_x under the plus annulus"});
  r.summary["x0"] = x0;
  r.summary["L_N_factor"] = static_cast<double>(L) * std::pow(static_cast<double>(N), 1.0 - alpha);
  r.tables = {std::move(tm), std::move(tp)};
  return r;
}

}  // namespace dyson::experiments
