// ticksim CLI: parameter sweeps, inequality reports, and Monte Carlo runs
// over the tick-model library, emitted as CSV or JSON tables.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ticksim/io.hpp"
#include "ticksim/ticksim.hpp"

namespace {

using ticksim::io::Json;
using ticksim::io::Table;

constexpr double kPi = std::numbers::pi;

double deg2rad(double deg) { return deg * kPi / 180.0; }

struct CommonOpts {
  std::string format = "csv";
  std::string output;
  std::string config;  // consumed before parsing; kept here for --help only
};

// --output and --threads select a destination and execution resources, not
// the computed result, so they are never echoed into the table metadata:
// output bytes must not depend on them.
void add_common(CLI::App* sub, CommonOpts& c) {
  sub->add_option("--format", c.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--output", c.output, "write the table to this file instead of stdout");
  sub->add_option("--config", c.config,
                  "key=value config file; explicit flags override its values");
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

// Pulls --config <path> out of args, reads the file's key=value lines, and
// splices them in as --key=value tokens right after the subcommand name.
// Options parse take-last, so flags given explicitly still win. Returns a
// usage-error message, or empty on success.
std::string splice_config(std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size();) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                 args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
  if (path.empty()) return "";

  std::ifstream in(path);
  if (!in) return "config: cannot open " + path;
  std::vector<std::string> tokens;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string item = trim(line);
    if (item.empty() || item[0] == '#' || item[0] == ';') continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      return "config: missing '=' on line " + std::to_string(lineno) + " of " + path;
    }
    const std::string key = trim(item.substr(0, eq));
    std::string value = trim(item.substr(eq + 1));
    if (key.empty()) return "config: empty key on line " + std::to_string(lineno) + " of " + path;
    if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') &&
        value.back() == value.front()) {
      value = value.substr(1, value.size() - 2);
    }
    tokens.push_back("--" + key + "=" + value);
  }
  auto at = args.begin();
  if (at != args.end() && !at->empty() && at->front() != '-') ++at;  // keep the subcommand first
  args.insert(at, tokens.begin(), tokens.end());
  return "";
}

Table start_table(std::vector<std::string> columns, const char* subcommand,
                  const CommonOpts& c) {
  Table t(std::move(columns));
  t.set_meta("version", std::string(ticksim::kVersion));
  t.set_meta("subcommand", subcommand);
  t.set_meta("format", c.format);
  return t;
}

void emit(const Table& t, const CommonOpts& c) {
  ticksim::io::write_text(c.format == "json" ? t.to_json() : t.to_csv(), c.output);
}

// omega and phi are taken in units of pi by default; the radian spellings
// are accepted as mutually exclusive alternatives.
struct OscOpts {
  double omega_pi = 2.0;
  double phi_pi = 0.0;
  double omega_rad = 0.0;
  double phi_rad = 0.0;
  CLI::Option* omega_rad_opt = nullptr;
  CLI::Option* phi_rad_opt = nullptr;

  double omega() const { return omega_rad_opt->count() ? omega_rad : omega_pi * kPi; }
  double phi() const { return phi_rad_opt->count() ? phi_rad : phi_pi * kPi; }
};

void add_osc(CLI::App* sub, OscOpts& o) {
  auto* omega_pi = sub->add_option("--omega-pi", o.omega_pi, "angular frequency, units of pi per tick")
                       ->capture_default_str();
  auto* phi_pi = sub->add_option("--phi-pi", o.phi_pi, "initial phase, units of pi")
                     ->capture_default_str();
  o.omega_rad_opt = sub->add_option("--omega", o.omega_rad, "angular frequency, radians per tick");
  o.phi_rad_opt = sub->add_option("--phi", o.phi_rad, "initial phase, radians");
  omega_pi->excludes(o.omega_rad_opt);
  o.omega_rad_opt->excludes(omega_pi);
  phi_pi->excludes(o.phi_rad_opt);
  o.phi_rad_opt->excludes(phi_pi);
}

struct EprbOpts {
  CommonOpts common;
  OscOpts osc;
  double theta_deg = 0.0;
  double theta_min_deg = 0.0;
  double theta_max_deg = 180.0;
  double theta_step_deg = 5.0;
  double t = 0.0;
  std::uint64_t n = 0;
  CLI::Option* theta_opt = nullptr;
};

void cmd_eprb(const EprbOpts& o) {
  const ticksim::OscillationParams params(o.osc.omega(), o.osc.phi());
  const ticksim::TickTime tick{o.n};

  std::vector<double> thetas;
  if (o.theta_opt->count()) {
    thetas.push_back(o.theta_deg);
  } else {
    if (!(o.theta_step_deg > 0.0)) throw ticksim::DomainError("eprb: theta step must be > 0");
    if (o.theta_max_deg < o.theta_min_deg) {
      throw ticksim::DomainError("eprb: theta range is empty");
    }
    for (int i = 0;; ++i) {
      const double th = o.theta_min_deg + i * o.theta_step_deg;
      if (th > o.theta_max_deg + 1e-9) break;
      thetas.push_back(th);
    }
  }

  Table table = start_table({"theta", "p_standard", "p_discrete", "p_continuous", "correlation"},
                            "eprb", o.common);
  if (o.theta_opt->count()) {
    table.set_meta("theta_deg", o.theta_deg);
  } else {
    table.set_meta("theta_min_deg", o.theta_min_deg);
    table.set_meta("theta_max_deg", o.theta_max_deg);
    table.set_meta("theta_step_deg", o.theta_step_deg);
  }
  table.set_meta("n", o.n);
  table.set_meta("t", o.t);
  table.set_meta("omega", params.omega());
  table.set_meta("phi", params.phi());

  for (const double th : thetas) {
    const double rad = deg2rad(th);
    table.add_row({th, ticksim::p_standard(rad), ticksim::p_discrete(rad, tick),
                   ticksim::p_continuous(rad, o.t, params), ticksim::correlation(rad, tick)});
  }
  emit(table, o.common);
}

struct BellOpts {
  CommonOpts common;
  double theta_deg = 120.0;
  std::uint64_t n = 0;
};

void cmd_bell(const BellOpts& o) {
  const ticksim::BellReport rep =
      ticksim::bell_original_check(deg2rad(o.theta_deg), ticksim::TickTime{o.n});
  Table table = start_table({"theta", "lhs", "rhs", "violated", "margin"}, "bell", o.common);
  table.set_meta("theta_deg", o.theta_deg);
  table.set_meta("n", o.n);
  table.add_row({o.theta_deg, rep.lhs, rep.rhs_or_bound, rep.violated, rep.margin});
  emit(table, o.common);
}

struct ChshOpts {
  CommonOpts common;
  double a_deg = 0.0;
  double a_prime_deg = 90.0;
  double b_deg = 45.0;
  double b_prime_deg = 135.0;
  bool scan = false;
  double step_deg = 22.5;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t n = 0;
  unsigned threads = 0;
};

void cmd_chsh(const ChshOpts& o) {
  const ticksim::TickTime tick{o.n};
  double angles_deg[4] = {o.a_deg, o.a_prime_deg, o.b_deg, o.b_prime_deg};
  ticksim::ChshConfig config{
      ticksim::Direction::in_xz_plane(deg2rad(o.a_deg)),
      ticksim::Direction::in_xz_plane(deg2rad(o.a_prime_deg)),
      ticksim::Direction::in_xz_plane(deg2rad(o.b_deg)),
      ticksim::Direction::in_xz_plane(deg2rad(o.b_prime_deg)),
  };

  double s = 0.0;
  if (o.scan) {
    const double step_rad = deg2rad(o.step_deg);
    const ticksim::ChshScanResult res = ticksim::chsh_scan(step_rad, tick, o.threads);
    config = res.config;
    for (int i = 0; i < 4; ++i) {
      // Angles land on exact grid multiples; report them in degrees without
      // the round-trip through radians.
      angles_deg[i] = static_cast<double>(std::llround(res.angles[i] / step_rad)) * o.step_deg;
    }
    s = res.s_value;
  } else {
    s = ticksim::chsh_value(config, tick);
  }

  Json estimate;
  Json estimate_err;
  Json estimate_trials;
  if (o.trials > 0) {
    const ticksim::EstimateReport r =
        ticksim::estimate_chsh(config, tick, o.trials, o.seed, o.threads);
    estimate = r.estimate;
    estimate_err = r.std_error;
    estimate_trials = r.trials;
  }

  const double bound = ticksim::local_deterministic_bound();
  Table table = start_table({"a_deg", "a_prime_deg", "b_deg", "b_prime_deg", "s_value", "bound",
                             "violated", "margin", "s_estimate", "s_std_error", "trials"},
                            "chsh", o.common);
  table.set_meta("a_deg", o.a_deg);
  table.set_meta("a_prime_deg", o.a_prime_deg);
  table.set_meta("b_deg", o.b_deg);
  table.set_meta("b_prime_deg", o.b_prime_deg);
  table.set_meta("scan", o.scan);
  if (o.scan) table.set_meta("step_deg", o.step_deg);
  table.set_meta("n", o.n);
  table.set_meta("trials", o.trials);
  table.set_meta("seed", o.seed);
  table.add_row({angles_deg[0], angles_deg[1], angles_deg[2], angles_deg[3], s, bound,
                 s > bound + ticksim::kViolationGuard, s - bound, estimate, estimate_err,
                 estimate_trials});
  emit(table, o.common);
}

struct CatOpts {
  CommonOpts common;
  OscOpts osc;
  std::uint64_t ticks = 10;
  std::uint64_t runs = 0;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

void cmd_cat(const CatOpts& o) {
  const ticksim::CatConfig config(o.osc.omega(), o.osc.phi(), o.ticks);
  const std::vector<double> curve = ticksim::survival_curve(config);
  std::optional<ticksim::CatEnsemble> ensemble;
  if (o.runs > 0) {
    ensemble = ticksim::simulate_cat_ensemble(config, o.runs, o.seed, o.threads);
  }

  Table table = start_table({"tick", "survival", "empirical"}, "cat", o.common);
  table.set_meta("omega", config.omega());
  table.set_meta("phi", config.phi());
  table.set_meta("ticks", o.ticks);
  table.set_meta("runs", o.runs);
  table.set_meta("seed", o.seed);
  for (std::uint64_t n = 0; n < curve.size(); ++n) {
    Json emp;
    if (ensemble) emp = ensemble->empirical_survival(n);
    table.add_row({n, curve[n], emp});
  }
  emit(table, o.common);
}

struct PositionOpts {
  CommonOpts common;
  int grid_l = 256;
  double grid_h = 1.0;
  int max_mode = 3;
  double delta = 0.0;
  double delta_min = 0.05;
  double delta_max = 5.0;
  int delta_points = 21;
  CLI::Option* delta_opt = nullptr;
};

void cmd_position(const PositionOpts& o) {
  const ticksim::PositionGrid grid(o.grid_l, o.grid_h);
  const ticksim::WaveVector v = ticksim::band_limited_vector(grid, o.max_mode);

  std::vector<double> deltas;
  if (o.delta_opt->count()) {
    deltas.push_back(o.delta);
  } else {
    if (!(o.delta_min > 0.0) || !(o.delta_max > o.delta_min) || o.delta_points < 2) {
      throw ticksim::DomainError("position: sweep needs 0 < delta-min < delta-max and >= 2 points");
    }
    const double ratio = o.delta_max / o.delta_min;
    for (int i = 0; i < o.delta_points; ++i) {
      deltas.push_back(o.delta_min *
                       std::pow(ratio, static_cast<double>(i) / (o.delta_points - 1)));
    }
  }

  Table table = start_table({"delta", "error_norm"}, "position", o.common);
  table.set_meta("grid_L", o.grid_l);
  table.set_meta("grid_h", o.grid_h);
  table.set_meta("max_mode", o.max_mode);
  if (o.delta_opt->count()) {
    table.set_meta("delta", o.delta);
  } else {
    table.set_meta("delta_min", o.delta_min);
    table.set_meta("delta_max", o.delta_max);
    table.set_meta("delta_points", o.delta_points);
  }
  for (const double d : deltas) {
    const ticksim::WaveVector exact = ticksim::translate_exact(v, d, grid);
    const ticksim::ComplexVector<double> first = ticksim::translate_first_order(v, d, grid);
    table.add_row({d, (first - exact.amplitudes()).norm()});
  }
  emit(table, o.common);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tick-model simulator: spin correlations, Bell tests, the shooting cat, and "
               "bounded-translation positions",
               "ticksim"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ticksim::kVersion));

  EprbOpts eprb;
  auto* eprb_cmd = app.add_subcommand("eprb", "singlet pair probabilities and correlation");
  eprb.theta_opt = eprb_cmd->add_option("--theta-deg", eprb.theta_deg,
                                        "single analyzer angle (overrides the sweep)");
  eprb_cmd->add_option("--theta-min-deg", eprb.theta_min_deg, "sweep start")->capture_default_str();
  eprb_cmd->add_option("--theta-max-deg", eprb.theta_max_deg, "sweep end")->capture_default_str();
  eprb_cmd->add_option("--theta-step-deg", eprb.theta_step_deg, "sweep step")->capture_default_str();
  eprb_cmd->add_option("--n", eprb.n, "tick index")->capture_default_str();
  eprb_cmd->add_option("--t", eprb.t, "continuous time for the oscillating column")
      ->capture_default_str();
  add_osc(eprb_cmd, eprb.osc);
  add_common(eprb_cmd, eprb.common);
  eprb_cmd->callback([&eprb] { cmd_eprb(eprb); });

  BellOpts bell;
  auto* bell_cmd = app.add_subcommand("bell", "three-axis inequality check");
  bell_cmd->add_option("--theta-deg", bell.theta_deg, "angle between adjacent axes")
      ->capture_default_str();
  bell_cmd->add_option("--n", bell.n, "tick index")->capture_default_str();
  add_common(bell_cmd, bell.common);
  bell_cmd->callback([&bell] { cmd_bell(bell); });

  ChshOpts chsh;
  auto* chsh_cmd = app.add_subcommand("chsh", "CHSH value, optional scan and Monte Carlo");
  chsh_cmd->add_option("--a-deg", chsh.a_deg, "first axis of side A")->capture_default_str();
  chsh_cmd->add_option("--a-prime-deg", chsh.a_prime_deg, "second axis of side A")
      ->capture_default_str();
  chsh_cmd->add_option("--b-deg", chsh.b_deg, "first axis of side B")->capture_default_str();
  chsh_cmd->add_option("--b-prime-deg", chsh.b_prime_deg, "second axis of side B")
      ->capture_default_str();
  chsh_cmd->add_flag("--scan", chsh.scan, "grid-search all four angles");
  chsh_cmd->add_option("--step-deg", chsh.step_deg, "scan grid step")->capture_default_str();
  chsh_cmd->add_option("--trials", chsh.trials, "Monte Carlo trials per axis pair (0 = skip)")
      ->capture_default_str();
  chsh_cmd->add_option("--seed", chsh.seed, "Monte Carlo seed")->capture_default_str();
  chsh_cmd->add_option("--n", chsh.n, "tick index")->capture_default_str();
  chsh_cmd->add_option("--threads", chsh.threads, "worker threads (0 = hardware)")
      ->capture_default_str();
  add_common(chsh_cmd, chsh.common);
  chsh_cmd->callback([&chsh] { cmd_chsh(chsh); });

  CatOpts cat;
  auto* cat_cmd = app.add_subcommand("cat", "discrete shooting process survival");
  cat_cmd->add_option("--ticks", cat.ticks, "number of ticks")->capture_default_str();
  cat_cmd->add_option("--runs", cat.runs, "Monte Carlo runs (0 = closed form only)")
      ->capture_default_str();
  cat_cmd->add_option("--seed", cat.seed, "Monte Carlo seed")->capture_default_str();
  cat_cmd->add_option("--threads", cat.threads, "worker threads (0 = hardware)")
      ->capture_default_str();
  add_osc(cat_cmd, cat.osc);
  add_common(cat_cmd, cat.common);
  cat_cmd->callback([&cat] { cmd_cat(cat); });

  PositionOpts position;
  auto* pos_cmd = app.add_subcommand("position", "translation error scaling on the grid");
  pos_cmd->add_option("--grid-L", position.grid_l, "number of sites")
      ->check(CLI::Range(2, 1 << 16))
      ->capture_default_str();
  pos_cmd->add_option("--grid-h", position.grid_h, "site spacing")->capture_default_str();
  pos_cmd->add_option("--max-mode", position.max_mode, "band limit of the test vector")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  position.delta_opt =
      pos_cmd->add_option("--delta", position.delta, "single displacement (overrides the sweep)");
  pos_cmd->add_option("--delta-min", position.delta_min, "sweep start")->capture_default_str();
  pos_cmd->add_option("--delta-max", position.delta_max, "sweep end")->capture_default_str();
  pos_cmd->add_option("--delta-points", position.delta_points, "log-spaced sweep points")
      ->capture_default_str();
  add_common(pos_cmd, position.common);
  pos_cmd->callback([&position] { cmd_position(position); });

  // repeated options take the last value, so spliced config tokens are
  // overridden by flags given after them
  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
    for (CLI::Option* opt : sub->get_options()) {
      opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    }
  }

  std::vector<std::string> args(argv + 1, argv + argc);
  const std::string config_error = splice_config(args);
  if (!config_error.empty()) {
    std::cerr << "error: " << config_error << "\n";
    return 1;
  }
  std::reverse(args.begin(), args.end());  // CLI11 consumes the vector back to front

  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const ticksim::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ticksim::NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
