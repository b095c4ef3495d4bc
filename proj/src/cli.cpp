#include "dyson/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <ostream>
#include <set>

#include "dyson/exact.hpp"
#include "dyson/experiments.hpp"
#include "dyson/io.hpp"

namespace dyson::cli {

namespace {

const std::vector<std::pair<std::string, std::string>>& subcommand_table() {
  static const std::vector<std::pair<std::string, std::string>> table = {
      {"exact", "exact enumeration of <sigma_i> on [-L, L]"},
      {"mc", "Metropolis estimate of <sigma_i> on [-L, L]"},
      {"interface", "interface histogram and conditional profile on [-L, L]"},
      {"localization", "escape probability of the interface for L = 3..L"},
      {"wetting", "magnetization next to a frozen minus block [-N, -1]"},
      {"discontinuity", "<sigma_0> under the two alternating pasts for n = N+L, N+L+2, ..., n"},
      {"bounds", "alternating remainders, b_max, energy tail and f_alpha tables"},
      {"fields", "field profiles h_x of the minus and plus annulus pasts"},
  };
  return table;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// key=value lines turned into flag tokens.
std::vector<std::string> config_tokens(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("config: cannot read " + path);
  const auto& fields = run_config_fields();
  std::vector<std::string> tokens;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError("config " + path + " line " + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "config" || std::find(fields.begin(), fields.end(), key) == fields.end()) {
      throw UsageError("config " + path + " line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    tokens.push_back("--" + key);
    tokens.push_back(value);
  }
  return tokens;
}

/// Registers every RunConfig field on `sub`.
void add_fields(CLI::App* sub, RunConfig& c) {
  sub->add_option("--alpha", c.alpha, "decay exponent, 1 < alpha <= 2");
  sub->add_option("--beta", c.beta, "inverse temperature");
  sub->add_option("--j1", c.j1, "nearest-neighbour coupling, at least 1");
  sub->add_option("--L", c.L, "half-width, block length or largest L");
  sub->add_option("--N", c.N, "frozen block or annulus length");
  sub->add_option("--L1", c.L1, "largest block length for b_max");
  sub->add_option("--n", c.n, "largest volume edge or remainder index");
  sub->add_option("--cutoff", c.cutoff, "exterior truncation radius");
  sub->add_option("--epsilon", c.epsilon, "window fraction, 0 < epsilon < 1");
  sub->add_option("--sweeps", c.sweeps, "Metropolis sweeps per chain");
  sub->add_option("--burnin", c.burnin, "discarded sweeps per chain");
  sub->add_option("--chains", c.chains, "independent chains");
  sub->add_option("--thin", c.thin, "sweeps between recorded samples");
  sub->add_option("--seed", c.seed, "run seed");
  sub->add_option("--engine", c.engine, "exact or mc");
  sub->add_option("--out_dir", c.out_dir, "directory receiving the run folder");
  sub->add_option("--bc", c.bc, "plus, minus, free, dobrushin-mp or dobrushin-pm");
  sub->add_option("--max_free_sites", c.max_free_sites, "exact enumeration cap (cost 2^n)");
  sub->add_option("--config", c.config, "key=value file; flags override it");
}

struct Parser {
  CLI::App app{"Numerical laboratory for the one-dimensional long-range Ising model", "dyson-lab"};
  std::map<std::string, RunConfig> configs;

  Parser() {
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast)->always_capture_default();
    app.require_subcommand(1);
    for (const auto& [name, description] : subcommand_table()) {
      configs[name] = defaults_for(name);
      add_fields(app.add_subcommand(name, description), configs[name]);
    }
  }
};

BoundaryCondition boundary_from(const std::string& name, SiteIndex cutoff) {
  if (name == "plus") return BoundaryCondition::plus(cutoff);
  if (name == "minus") return BoundaryCondition::minus(cutoff);
  if (name == "free") return BoundaryCondition::free();
  if (name == "dobrushin-mp") return BoundaryCondition::dobrushin_minus_plus(cutoff);
  if (name == "dobrushin-pm") return BoundaryCondition::dobrushin_plus_minus(cutoff);
  throw PreconditionError("bc must be one of plus, minus, free, dobrushin-mp, dobrushin-pm");
}

experiments::ModelParams model_from(const RunConfig& c) { return {c.alpha, c.beta, c.j1, c.cutoff}; }

experiments::EngineParams engine_from(const RunConfig& c) {
  experiments::EngineParams e;
  e.engine = c.engine == "mc" ? experiments::Engine::Mc : experiments::Engine::Exact;
  e.mc = {c.sweeps, c.burnin, c.chains, c.seed, c.thin};
  e.exact.max_free_sites = static_cast<std::size_t>(c.max_free_sites);
  return e;
}

ExperimentReport build_report(const RunConfig& c) {
  const auto& s = c.subcommand;
  if (s == "exact") {
    exact::ExactOptions o;
    o.max_free_sites = static_cast<std::size_t>(c.max_free_sites);
    return experiments::run_exact(model_from(c), boundary_from(c.bc, c.cutoff), Volume::centered(c.L), o);
  }
  if (s == "mc") {
    return experiments::run_mc(model_from(c), boundary_from(c.bc, c.cutoff), Volume::centered(c.L),
                               {c.sweeps, c.burnin, c.chains, c.seed, c.thin});
  }
  if (s == "interface") return experiments::run_interface(model_from(c), c.L, engine_from(c));
  if (s == "localization") {
    experiments::LocalizationParams p;
    p.model = model_from(c);
    p.engine = engine_from(c);
    p.L_list.clear();
    for (std::int64_t l = 3; l <= c.L; ++l) p.L_list.push_back(l);
    if (p.L_list.empty()) throw PreconditionError("L must be at least 3 for localization");
    if (std::find(p.epsilons.begin(), p.epsilons.end(), c.epsilon) == p.epsilons.end()) {
      p.epsilons.push_back(c.epsilon);
      std::sort(p.epsilons.begin(), p.epsilons.end());
    }
    p.verdict_epsilon = c.epsilon;
    return experiments::run_localization(p);
  }
  if (s == "wetting") {
    experiments::WettingParams p;
    p.model = model_from(c);
    p.engine = engine_from(c);
    p.L = c.L;
    p.N = c.N;
    p.epsilon = c.epsilon;
    return experiments::run_wetting(p);
  }
  if (s == "discontinuity") {
    experiments::DiscontinuityParams p;
    p.model = model_from(c);
    p.engine = engine_from(c);
    p.L = c.L;
    p.N = c.N;
    p.n_list.clear();
    for (std::int64_t k = c.N + c.L; k <= c.n; k += 2) p.n_list.push_back(k);
    if (p.n_list.empty()) throw PreconditionError("n must be at least N + L");
    return experiments::run_discontinuity(p);
  }
  if (s == "bounds") return experiments::run_bounds(c.alpha, c.n, c.L1, c.L, c.N);
  if (s == "fields") return experiments::run_fields(c.alpha, c.L, c.N, c.n);
  throw UsageError("unknown subcommand " + s);
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, d] : subcommand_table()) v.push_back(name);
    return v;
  }();
  return names;
}

const std::vector<std::string>& run_config_fields() {
  static const std::vector<std::string> fields = {
      "alpha", "beta",   "j1",     "L",    "N",    "L1",     "n",       "cutoff", "epsilon",        "sweeps",
      "burnin", "chains", "thin",  "seed", "engine", "out_dir", "bc",     "max_free_sites", "config"};
  return fields;
}

RunConfig defaults_for(const std::string& subcommand) {
  RunConfig c;
  c.subcommand = subcommand;
  if (subcommand == "interface" || subcommand == "localization") {
    c.beta = 5.0;
    c.j1 = 3.0;
    c.L = subcommand == "interface" ? 4 : 8;
    c.bc = "dobrushin-mp";
  } else if (subcommand == "wetting") {
    c.beta = 2.0;
    c.L = 32;
    c.N = 256;
    c.engine = "mc";
  } else if (subcommand == "discontinuity") {
    c.beta = 2.0;
    c.L = 2;
    c.N = 6;
    c.n = 12;
  } else if (subcommand == "bounds") {
    c.L = 4;
    c.N = 64;
    c.n = 10000;
  } else if (subcommand == "fields") {
    c.L = 4;
    c.N = 1600;
    c.n = 6400;
  }
  return c;
}

RunConfig parse_cli(const std::vector<std::string>& argv) {
  std::vector<std::string> args(argv.begin() + (argv.empty() ? 0 : 1), argv.end());

  // Config-file values go right after the subcommand so later flags win.
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    if (path.empty()) continue;
    const auto tokens = config_tokens(path);
    const std::size_t at = args.empty() || args[0].rfind('-', 0) == 0 ? 0 : 1;
    args.insert(args.begin() + static_cast<std::ptrdiff_t>(at), tokens.begin(), tokens.end());
    break;
  }

  Parser p;
  std::reverse(args.begin(), args.end());
  try {
    p.app.parse(args);
  } catch (const CLI::CallForHelp&) {
    RunConfig c;
    c.help_requested = true;
    for (const auto* sub : p.app.get_subcommands()) c.subcommand = sub->get_name();
    return c;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  RunConfig c = p.configs.at(p.app.get_subcommands().front()->get_name());
  validate(c);
  return c;
}

void validate(const RunConfig& c) {
  auto need = [](bool ok, const std::string& message) {
    if (!ok) throw PreconditionError(message);
  };
  need(c.alpha > 1.0, "alpha must exceed 1");
  need(c.alpha <= 2.0, "alpha must not exceed 2");
  need(c.beta >= 0.0, "beta must be nonnegative");
  need(c.j1 >= 1.0, "j1 must be at least 1");
  need(c.L >= 1, "L must be positive");
  need(c.N >= 1, "N must be positive");
  need(c.L1 >= 1, "L1 must be positive");
  need(c.n >= 1, "n must be positive");
  need(c.cutoff >= 1, "cutoff must be positive");
  need(c.epsilon > 0.0 && c.epsilon < 1.0, "epsilon must lie in (0, 1)");
  need(c.sweeps > c.burnin, "sweeps must exceed burnin");
  need(c.burnin >= 0, "burnin must be nonnegative");
  need(c.chains >= 1, "chains must be positive");
  need(c.thin >= 1, "thin must be positive");
  need(c.engine == "exact" || c.engine == "mc", "engine must be exact or mc");
  need(c.max_free_sites >= 1 && c.max_free_sites <= static_cast<std::int64_t>(exact::kAbsoluteMaxFreeSites),
       "max_free_sites must lie in [1, " + std::to_string(exact::kAbsoluteMaxFreeSites) + "]");
  const std::set<std::string> bcs = {"plus", "minus", "free", "dobrushin-mp", "dobrushin-pm"};
  need(bcs.count(c.bc) != 0, "bc must be one of plus, minus, free, dobrushin-mp, dobrushin-pm");
}

std::string help_text(const std::string& subcommand) {
  Parser p;
  if (subcommand.empty()) return p.app.help();
  return p.app.get_subcommand(subcommand)->help();
}

std::filesystem::path dispatch(const RunConfig& config, std::ostream& log) {
  const auto report = build_report(config);
  const auto dir = io::emit_outputs(report, config.out_dir);
  for (const auto& v : report.verdicts) {
    log << (v.passed ? "PASS " : "FAIL ") << v.check << " (margin " << io::format_double(v.margin) << ") "
        << v.detail << '\n';
  }
  return dir;
}

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig c = parse_cli(argv);
    if (c.help_requested) {
      out << help_text(c.subcommand);
      return kOk;
    }
    const auto start = std::chrono::steady_clock::now();
    const auto dir = dispatch(c, out);
    out << dir.string() << '\n';
    err << "wall time " << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() << " s\n";
    return kOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const exact::CapExceeded& e) {
    err << "runtime error: " << e.what() << '\n';
    return kRuntime;
  } catch (const io::IoError& e) {
    err << "runtime error: " << e.what() << '\n';
    return kRuntime;
  } catch (const std::invalid_argument& e) {
    err << "precondition error: " << e.what() << '\n';
    return kPrecondition;
  } catch (const std::exception& e) {
    err << "runtime error: " << e.what() << '\n';
    return kRuntime;
  }
}

}  // namespace dyson::cli
