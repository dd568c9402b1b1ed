// sri: command-line front end for the recursion, resetter and diagnostics.

#include "sri/analysis.hpp"
#include "sri/io.hpp"
#include "sri/problems.hpp"
#include "sri/resetter.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using nlohmann::json;
using namespace sri;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Every accepted config key with its default; null means "take it from the
// problem" and is replaced by the resolved value before it is echoed.
json default_config() {
  return json{
      {"problem", "biased_linear"},
      {"dim", 1},
      {"eps", 0.1},
      {"a0", nullptr},
      {"gamma", nullptr},
      {"noise", nullptr},
      {"noise_k", nullptr},
      {"seed", 1},
      {"n", 10000},
      {"x0", nullptr},
      {"strategy", "steiner"},
      {"direction", nullptr},
      {"tw", 1.0},
      {"r0", 1.0},
      {"radius", "geometric:2"},
      {"allow_outside_start", false},
      {"trials", 2000},
      {"horizon", 20000},
      {"n0_list", json::array({10, 100, 1000})},
      {"init", "fixed-point"},
      {"conv_eps", nullptr},
      {"tail_fraction", 0.2},
      {"bound_inputs", json::object()},
      {"n0", 10},
      {"windows", 10},
      {"window_T", nullptr},
      {"level", 0},
      {"h", 0.01},
      {"paths", 6},
      {"grid_points", 5},
      {"T", nullptr},
  };
}

void merge_checked(json& cfg, const json& in, const std::string& where) {
  if (!in.is_object()) throw ConfigError(where + ": config must be a JSON object");
  for (auto it = in.begin(); it != in.end(); ++it) {
    if (!cfg.contains(it.key())) throw ConfigError(where + ": unknown config key '" + it.key() + "'");
    cfg[it.key()] = it.value();
  }
}

Point to_point(const json& j, int dim, const char* key) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw ConfigError(std::string(key) + ": expected an array of " + std::to_string(dim) + " numbers");
  Point p(dim);
  for (int i = 0; i < dim; ++i) p(i) = j[static_cast<std::size_t>(i)].get<double>();
  return p;
}

json to_json(const Point& p) {
  json a = json::array();
  for (Eigen::Index i = 0; i < p.size(); ++i) a.push_back(p(i));
  return a;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw ConfigError("cannot parse number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

// Typed view of a resolved config.
struct Run {
  json cfg;
  ProblemSpec prob;
  StepSchedule schedule;
  NoiseModel noise;
  Point x0;
  Selector selector;
  std::uint64_t seed = 1;
};

template <typename T>
T get_positive(const json& cfg, const char* key) {
  const T v = cfg.at(key).get<T>();
  if (!(v > 0)) throw ConfigError(std::string(key) + " must be positive");
  return v;
}

Run resolve(json cfg) {
  Run r{cfg, make_problem(cfg.at("problem").get<std::string>(), cfg.at("dim").get<int>(),
                          cfg.at("eps").get<double>()),
        StepSchedule(), NoiseModel(), Point(), Selector{}, 1};
  ProblemSpec& p = r.prob;
  const int d = p.dim();
  const double a0 = cfg.at("a0").is_null() ? p.schedule.a0() : cfg.at("a0").get<double>();
  const double gamma = cfg.at("gamma").is_null() ? p.schedule.gamma() : cfg.at("gamma").get<double>();
  r.schedule = StepSchedule(a0, gamma);
  const NoiseKind kind =
      cfg.at("noise").is_null() ? p.noise.kind : parse_noise_kind(cfg.at("noise").get<std::string>());
  const double nk = cfg.at("noise_k").is_null() ? p.noise.K : cfg.at("noise_k").get<double>();
  r.noise = NoiseModel(kind, nk);
  if (cfg.at("x0").is_null()) {
    r.x0 = Point::Zero(d);
    r.x0(0) = 0.5;
  } else {
    r.x0 = to_point(cfg.at("x0"), d, "x0");
  }
  r.selector.strategy = parse_strategy(cfg.at("strategy").get<std::string>());
  if (!cfg.at("direction").is_null()) r.selector.direction = to_point(cfg.at("direction"), d, "direction");
  r.seed = cfg.at("seed").get<std::uint64_t>();

  cfg["a0"] = a0;
  cfg["gamma"] = gamma;
  cfg["noise"] = to_string(kind);
  cfg["noise_k"] = nk;
  cfg["x0"] = to_json(r.x0);
  if (cfg.at("window_T").is_null()) cfg["window_T"] = p.attractor.T_A;
  if (cfg.at("T").is_null()) cfg["T"] = p.attractor.T_A;
  if (cfg.at("conv_eps").is_null()) cfg["conv_eps"] = p.attractor.eps0;
  r.cfg = cfg;
  return r;
}

std::filesystem::path out_dir(const std::string& dir) {
  std::filesystem::path p(dir);
  std::filesystem::create_directories(p);
  return p;
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream os(p);
  if (!os) throw std::runtime_error("cannot write " + p.string());
  return os;
}

// CSV outputs start with one '#' line holding the command and resolved config.
void csv_preamble(std::ostream& os, const std::string& command, const json& cfg) {
  os << "# " << json{{"command", command}, {"config", cfg}}.dump() << '\n';
}

void write_json(const std::filesystem::path& p, const json& j) {
  auto os = open_out(p);
  os << j.dump(2) << '\n';
}

BoundInputs bound_inputs(const Run& r) {
  BoundInputs in = make_bound_inputs(r.prob.attractor, r.prob.dim(),
                                     std::max(r.prob.map.growth_K(), r.noise.K), r.prob.L);
  const json& o = r.cfg.at("bound_inputs");
  if (!o.is_object()) throw ConfigError("bound_inputs must be an object");
  for (auto it = o.begin(); it != o.end(); ++it) {
    const std::string& k = it.key();
    if (k == "d") in.d = it.value().get<int>();
    else if (k == "eps0") in.eps0 = it.value().get<double>();
    else if (k == "K") in.K = it.value().get<double>();
    else if (k == "T_u") in.T_u = it.value().get<double>();
    else if (k == "C") in.C = it.value().get<double>();
    else if (k == "L") in.L = it.value().get<double>();
    else throw ConfigError("bound_inputs: unknown key '" + k + "'");
  }
  in.validate();
  return in;
}

json bound_json(const BoundInputs& in) {
  return json{{"d", in.d}, {"eps0", in.eps0}, {"K", in.K}, {"T_u", in.T_u}, {"C", in.C}, {"L", in.L},
              {"K0", bound_K0(in)}, {"K_tilde", bound_K_tilde(in)}};
}

std::vector<long> n0_list(const json& cfg) {
  std::vector<long> out;
  for (const auto& v : cfg.at("n0_list")) {
    const long n = v.get<long>();
    if (n < 0) throw ConfigError("n0_list entries must be >= 0");
    out.push_back(n);
  }
  if (out.empty()) throw ConfigError("n0_list must not be empty");
  return out;
}

SsriConfig ssri_config(const Run& r) {
  SsriConfig c;
  c.x0 = r.x0;
  c.radius = parse_radius_schedule(r.cfg.at("radius").get<std::string>(), r.cfg.at("r0").get<double>());
  c.T_W = r.cfg.at("tw").get<double>();
  c.require_initial_inside = !r.cfg.at("allow_outside_start").get<bool>();
  c.validate();
  return c;
}

int cmd_simulate(const Run& r, const std::filesystem::path& dir) {
  const long N = get_positive<long>(r.cfg, "n");
  RunOptions ro;
  ro.selector = r.selector;
  const Trajectory tr = run_inclusion(r.prob.map, r.x0, r.schedule, r.noise, N, r.seed, ro);
  auto os = open_out(dir / "trajectory.csv");
  csv_preamble(os, "simulate", r.cfg);
  write_trajectory_csv(os, tr);
  write_json(dir / "trajectory.json", json{{"command", "simulate"},
                                           {"config", r.cfg},
                                           {"steps", tr.steps()},
                                           {"divergent", tr.divergent},
                                           {"final", to_json(tr.X.back())}});
  if (tr.divergent) {
    std::cerr << "simulate: iterate became non-finite after " << tr.steps() << " steps\n";
    return kExitNumerical;
  }
  return 0;
}

int cmd_ssri(const Run& r, const std::filesystem::path& dir) {
  const long N = get_positive<long>(r.cfg, "n");
  const SsriConfig c = ssri_config(r);
  RunOptions ro;
  ro.selector = r.selector;
  const SsriResult res = run_ssri(r.prob.map, c, r.schedule, r.noise, N, r.seed, ro);
  const ResetSummary sum = reset_summary(res.trace, res.traj, c);
  auto os = open_out(dir / "trajectory.csv");
  csv_preamble(os, "ssri", r.cfg);
  write_trajectory_csv(os, res.traj);
  json windows = json::array();
  for (const auto& w : res.trace.windows) {
    json e{{"index", w.index}, {"elapsed", w.elapsed}, {"n_W_before", w.n_W_before},
           {"n_W_after", w.n_W_after}, {"check", w.check}, {"k", w.k_before}, {"reset", w.reset}};
    if (w.check) {
      e["radius"] = w.radius;
      e["norm"] = w.norm;
    }
    windows.push_back(std::move(e));
  }
  json audits = json::array();
  for (const auto& a : sum.audits)
    audits.push_back({{"index", a.index}, {"windows", a.windows_since_previous},
                      {"expected_windows", a.expected_windows}, {"elapsed", a.elapsed},
                      {"lo", a.lo}, {"hi", a.hi}, {"ok", a.ok}});
  write_json(dir / "reset_trace.json",
             json{{"command", "ssri"},
                  {"config", r.cfg},
                  {"divergent", res.traj.divergent},
                  {"resets", res.trace.reset_indices()},
                  {"total_resets", sum.total_resets},
                  {"performed_resets", sum.performed_resets},
                  {"last_reset_index", sum.last_reset_index},
                  {"window_elapsed_ok", sum.window_elapsed_ok},
                  {"audit_ok", sum.audit_ok},
                  {"audits", audits},
                  {"windows", windows}});
  if (res.traj.divergent) {
    std::cerr << "ssri: iterate became non-finite after " << res.traj.steps() << " steps\n";
    return kExitNumerical;
  }
  return 0;
}

int cmd_lockin(const Run& r, const std::filesystem::path& dir) {
  LockInOptions opt;
  opt.selector = r.selector;
  opt.eps = r.cfg.at("conv_eps").get<double>();
  opt.tail_fraction = r.cfg.at("tail_fraction").get<double>();
  opt.grid_points = get_positive<int>(r.cfg, "grid_points");
  const BoundInputs in = bound_inputs(r);
  opt.bound = in;
  const InitRule init = parse_init_rule(r.cfg.at("init").get<std::string>());
  const LockInReport rep =
      lock_in_empirical(r.prob.map, r.prob.attractor, r.schedule, r.noise, n0_list(r.cfg),
                        get_positive<long>(r.cfg, "trials"), get_positive<long>(r.cfg, "horizon"), init,
                        r.seed, opt);
  auto os = open_out(dir / "lockin.csv");
  csv_preamble(os, "lockin", r.cfg);
  write_lockin_csv(os, rep);
  json rows = json::array();
  for (const auto& row : rep.rows)
    rows.push_back({{"n0", row.n0}, {"trials", row.trials}, {"successes", row.successes},
                    {"divergent", row.divergent}, {"p", row.p}, {"ci_lo", row.ci.lo}, {"ci_hi", row.ci.hi},
                    {"bound", row.bound}, {"bound_vacuous", row.bound_vacuous}});
  write_json(dir / "lockin.json", json{{"command", "lockin"},
                                       {"config", r.cfg},
                                       {"horizon", rep.horizon},
                                       {"init", to_string(rep.init)},
                                       {"bound_inputs", bound_json(in)},
                                       {"rows", rows}});
  return 0;
}

int cmd_bound(const Run& r, const std::filesystem::path& dir) {
  const BoundInputs in = bound_inputs(r);
  auto os = open_out(dir / "bound.csv");
  csv_preamble(os, "bound", r.cfg);
  os << "n0,b_tail,K_tilde,bound\n";
  const double kt = bound_K_tilde(in);
  for (long n0 : n0_list(r.cfg))
    os << n0 << ',' << fmt(b_tail(r.schedule, n0)) << ',' << fmt(kt) << ','
       << fmt(theoretical_lockin_bound(in, r.schedule, n0)) << '\n';
  write_json(dir / "bound.json",
             json{{"command", "bound"}, {"config", r.cfg}, {"bound_inputs", bound_json(in)}});
  return 0;
}

int cmd_diagnose(const Run& r, const std::filesystem::path& dir) {
  const long n0 = r.cfg.at("n0").get<long>();
  if (n0 < 0) throw ConfigError("n0 must be >= 0");
  const int count = get_positive<int>(r.cfg, "windows");
  const double T = get_positive<double>(r.cfg, "window_T");
  const int level = r.cfg.at("level").get<int>();
  if (level < 0) throw ConfigError("level must be >= 0");
  FunnelConfig fc;
  fc.h = get_positive<double>(r.cfg, "h");
  fc.paths_per_x0 = get_positive<int>(r.cfg, "paths");
  fc.grid_points = get_positive<int>(r.cfg, "grid_points");
  fc.seed = r.seed;
  const std::vector<long> idx = window_subsequence(r.schedule, n0, T, count);
  RunOptions ro;
  ro.selector = r.selector;
  ro.start_index = n0;
  const Trajectory tr = run_inclusion(r.prob.map, r.x0, r.schedule, r.noise, idx.back() - n0, r.seed, ro);
  if (tr.divergent) {
    std::cerr << "diagnose: iterate became non-finite\n";
    return kExitNumerical;
  }
  auto os = open_out(dir / "diagnose.csv");
  csv_preamble(os, "diagnose", r.cfg);
  os << "window,n_start,n_end,gap,in_closure_Oprime,rho,rho1,rho2,slack,triangle_ok,zeta\n";
  const AttractorSpec& att = r.prob.attractor;
  long evaluated = 0, triangle_fail = 0;
  for (std::size_t m = 0; m + 1 < idx.size(); ++m) {
    const long lo = idx[m], hi = idx[m + 1];
    const double gap = r.schedule.elapsed(lo, hi);
    const double zeta = zeta_fluctuation(tr, lo, hi);
    const Point& xs = tr.Xp[tr.offset(lo)];
    const bool inside = (xs - att.center()).norm() <= att.O_prime_radius;
    os << m << ',' << lo << ',' << hi << ',' << fmt(gap) << ',' << (inside ? 1 : 0) << ',';
    if (inside) {
      fc.seed = substream_seed(r.seed, m);
      const RhoResult res = rho_diagnostics(tr, r.prob.map, lo, hi, att, level, fc);
      ++evaluated;
      if (!res.triangle_ok) ++triangle_fail;
      os << fmt(res.rho) << ',' << fmt(res.rho1) << ',' << fmt(res.rho2) << ',' << fmt(res.slack) << ','
         << (res.triangle_ok ? 1 : 0);
    } else {
      os << ",,,,";
    }
    os << ',' << fmt(zeta) << '\n';
  }
  write_json(dir / "diagnose.json", json{{"command", "diagnose"},
                                         {"config", r.cfg},
                                         {"windows", idx.size() - 1},
                                         {"evaluated", evaluated},
                                         {"triangle_failures", triangle_fail}});
  return 0;
}

int cmd_funnel(const Run& r, const std::filesystem::path& dir) {
  const double T = get_positive<double>(r.cfg, "T");
  const double h = get_positive<double>(r.cfg, "h");
  const int level = r.cfg.at("level").get<int>();
  if (level < 0) throw ConfigError("level must be >= 0");
  const SetValuedMap G = level == 0 ? r.prob.map : dilate_map(r.prob.map, level);
  const AttractorSpec& att = r.prob.attractor;
  const std::vector<Point> Y0 = ball_grid(att.center(), att.O_prime_radius, get_positive<int>(r.cfg, "grid_points"),
                                          true);
  const Funnel f = sample_funnel(G, Y0, T, std::min(h, T), get_positive<int>(r.cfg, "paths"), r.seed);
  auto os = open_out(dir / "funnel.csv");
  csv_preamble(os, "funnel", r.cfg);
  write_funnel_csv(os, f);
  write_json(dir / "funnel.json", json{{"command", "funnel"},
                                       {"config", r.cfg},
                                       {"map", G.name()},
                                       {"initial_points", Y0.size()},
                                       {"paths", f.paths.size()}});
  return 0;
}

json problem_json(const ProblemSpec& p) {
  const AttractorSpec& a = p.attractor;
  json notes = json::object();
  for (const auto& [k, v] : p.notes) notes[k] = v;
  return json{{"id", p.id},
              {"dim", p.dim()},
              {"map", p.map.name()},
              {"growth_K", p.map.growth_K()},
              {"attractor_center", to_json(a.center())},
              {"O_prime_radius", a.O_prime_radius},
              {"O_radius", a.O_radius},
              {"eps0", a.eps0},
              {"T_A", a.T_A},
              {"T_u", a.T_u},
              {"a0", p.schedule.a0()},
              {"gamma", p.schedule.gamma()},
              {"noise", to_string(p.noise.kind)},
              {"noise_k", p.noise.K},
              {"L", p.L},
              {"notes", notes}};
}

int cmd_problems(const std::filesystem::path& dir) {
  json list = json::array();
  for (const auto& p : list_problems()) list.push_back(problem_json(p));
  const json out{{"command", "problems"}, {"problems", list}};
  std::cout << out.dump(2) << '\n';
  write_json(dir / "problems.json", out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic recursive inclusions: simulation, resets, lock-in and diagnostics"};
  app.require_subcommand(1);

  std::string config_path, out = ".";
  // Flag -> config key; a flag overrides the config file only when given.
  std::map<std::string, std::string> strings;
  std::vector<std::pair<CLI::Option*, std::string>> flagged;

  const std::vector<std::tuple<std::string, std::string, std::string>> flags = {
      {"--problem", "problem", "catalog problem id"},
      {"--dim", "dim", "dimension (biased_linear)"},
      {"--eps", "eps", "ball radius (biased_linear)"},
      {"--a0", "a0", "step size a0 in a(n) = a0 / (n+1)^gamma"},
      {"--gamma", "gamma", "step size exponent"},
      {"--noise", "noise", "sphere-uniform | truncated-gaussian | rademacher-coordinates"},
      {"--noise-k", "noise_k", "noise constant K"},
      {"--seed", "seed", "base seed"},
      {"--n", "n", "number of steps"},
      {"--x0", "x0", "initial point, comma separated"},
      {"--strategy", "strategy", "steiner | random-support-direction | extreme-toward-fixed-direction"},
      {"--tw", "tw", "window length T_W"},
      {"--r0", "r0", "first reset radius"},
      {"--radius", "radius", "geometric:C or arithmetic:C"},
      {"--trials", "trials", "trials per n0"},
      {"--horizon", "horizon", "final iteration index"},
      {"--n0-list", "n0_list", "comma separated start indices"},
      {"--init", "init", "grid-in-Oprime | fixed-point"},
      {"--n0", "n0", "first window start (diagnose)"},
      {"--windows", "windows", "number of windows (diagnose)"},
      {"--level", "level", "dilation level l (0: the map itself)"},
      {"--dt", "h", "Euler step h of funnel and control paths"},
      {"--T", "T", "funnel horizon"},
  };

  std::vector<CLI::App*> subs;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"simulate", "run the recursion, write trajectory.csv"},
      {"ssri", "run the recursion with resets, write trajectory.csv and reset_trace.json"},
      {"lockin", "empirical lock-in probabilities against the bound"},
      {"bound", "theoretical lock-in bound table"},
      {"diagnose", "rho, rho1, rho2 and zeta per window"},
      {"funnel", "sample paths of the inclusion from a grid of O'"},
      {"problems", "list the problem catalog"},
  };
  bool allow_outside = false;
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--out", out, "output directory");
    if (name != "problems") {
      for (const auto& [flag, key, fhelp] : flags) flagged.emplace_back(sub->add_option(flag, strings[key], fhelp), key);
      flagged.emplace_back(sub->add_flag("--allow-outside-start", allow_outside, "accept |x0| >= r0"),
                           "allow_outside_start");
    }
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  std::string command;
  for (auto* s : subs)
    if (s->parsed()) command = s->get_name();

  std::filesystem::path dir;
  try {
    dir = out_dir(out);
    if (command == "problems") return cmd_problems(dir);
    json cfg = default_config();
    if (!config_path.empty()) {
      std::ifstream is(config_path);
      if (!is) throw ConfigError("cannot read config " + config_path);
      merge_checked(cfg, json::parse(is), config_path);
    }
    for (const auto& [opt, key] : flagged) {
      if (opt->count() == 0) continue;
      if (key == "allow_outside_start") {
        cfg[key] = allow_outside;
        continue;
      }
      const std::string& v = strings[key];
      const json& def = cfg.at(key);
      if (key == "x0") {
        cfg[key] = parse_list(v);
      } else if (key == "n0_list") {
        json a = json::array();
        for (double x : parse_list(v)) a.push_back(static_cast<long>(x));
        cfg[key] = a;
      } else if (key == "problem" || key == "noise" || key == "strategy" || key == "radius" || key == "init") {
        cfg[key] = v;
      } else if (key == "seed") {
        cfg[key] = static_cast<std::uint64_t>(std::stoull(v));
      } else if (def.is_number_integer()) {
        cfg[key] = std::stol(v);
      } else {
        cfg[key] = std::stod(v);
      }
    }
    const Run run = resolve(cfg);
    if (command == "simulate") return cmd_simulate(run, dir);
    if (command == "ssri") return cmd_ssri(run, dir);
    if (command == "lockin") return cmd_lockin(run, dir);
    if (command == "bound") return cmd_bound(run, dir);
    if (command == "diagnose") return cmd_diagnose(run, dir);
    if (command == "funnel") return cmd_funnel(run, dir);
    throw ConfigError("unknown command");
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::out_of_range& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
