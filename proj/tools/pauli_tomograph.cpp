// Command-line front end over the C API.
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "pauli_tomograph/pauli_tomograph.h"

namespace {

using nlohmann::json;

enum Exit { kPass = 0, kVerifyFailed = 1, kConfigError = 2, kNumericError = 3 };

struct Failure {
  int code;
  std::string message;
};

[[noreturn]] void config_error(const std::string& msg) { throw Failure{kConfigError, msg}; }

void check(pt_status s) {
  if (s == PT_OK) return;
  const bool config = s == PT_ERR_CONTRACT || s == PT_ERR_CONFIG || s == PT_ERR_IO;
  throw Failure{config ? kConfigError : kNumericError, pt_last_error()};
}

// Accepts plain numbers and multiples of pi such as "pi/4", "2pi/3", "-0.5*pi".
double parse_number(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), ::isspace), s.end());
  double v = 0.0;
  auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec == std::errc() && r.ptr == s.data() + s.size()) return v;
  static const std::regex pi_form(R"(^([+-]?[0-9]*\.?[0-9]*)\*?pi(/([0-9]*\.?[0-9]+))?$)");
  std::smatch m;
  if (std::regex_match(s, m, pi_form)) {
    double c = 1.0;
    const std::string coef = m[1].str();
    if (coef == "-") c = -1.0;
    else if (!coef.empty() && coef != "+") c = std::stod(coef);
    double d = m[3].matched ? std::stod(m[3].str()) : 1.0;
    if (d == 0.0) config_error("division by zero in '" + s + "'");
    return c * std::numbers::pi / d;
  }
  config_error("not a number: '" + s + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<double> number_list(const std::string& s) {
  std::vector<double> out;
  if (s.empty()) return out;
  for (const auto& t : split(s, ',')) out.push_back(parse_number(t));
  return out;
}

// "a:b,c:d" -> {a, b, c, d}; plain "a,b" -> {a, b} with tuple size 1.
std::vector<double> tuple_list(const std::string& s, std::size_t& arity) {
  std::vector<double> out;
  arity = 0;
  if (s.empty()) return out;
  for (const auto& item : split(s, ',')) {
    const auto parts = split(item, ':');
    if (arity == 0) arity = parts.size();
    if (parts.size() != arity) config_error("mixed tuple sizes in '" + s + "'");
    for (const auto& p : parts) out.push_back(parse_number(p));
  }
  return out;
}

pt_axis parse_grid(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 3) config_error("--grid expects min,max,count");
  const double lo = parse_number(parts[0]), hi = parse_number(parts[1]), n = parse_number(parts[2]);
  if (!(hi > lo) || n < 2 || n != std::floor(n)) config_error("invalid grid '" + s + "'");
  return pt_axis{lo, hi, static_cast<std::size_t>(n)};
}

std::string take_string(char* s) {
  std::string out(s ? s : "");
  pt_string_free(s);
  return out;
}

// Settings shared by every subcommand; strings keep the raw form so config values and flags
// go through the same parser.
struct Settings {
  std::string config, in, out, rep, grid, omega = "-1", omega0 = "0", kappa, field = "0,0,1", t, times, theta,
                                                  munu, tol, format, flow = "free", scenario, spin = "up";
};

struct Command {
  CLI::App* app = nullptr;
  std::map<std::string, CLI::Option*> options;
};

const std::map<std::string, std::string Settings::*>& setting_fields() {
  static const std::map<std::string, std::string Settings::*> fields = {
      {"config", &Settings::config}, {"in", &Settings::in},         {"out", &Settings::out},
      {"rep", &Settings::rep},       {"grid", &Settings::grid},     {"omega", &Settings::omega},
      {"omega0", &Settings::omega0}, {"kappa", &Settings::kappa},   {"field", &Settings::field},
      {"t", &Settings::t},           {"times", &Settings::times},   {"theta", &Settings::theta},
      {"munu", &Settings::munu},     {"tol", &Settings::tol},       {"format", &Settings::format},
      {"flow", &Settings::flow},     {"scenario", &Settings::scenario}, {"spin", &Settings::spin}};
  return fields;
}

const std::map<std::string, std::string>& option_help() {
  static const std::map<std::string, std::string> help = {
      {"in", "input TJSON file"},
      {"out", "output file"},
      {"rep", "optical | symplectic | wigner | husimi"},
      {"grid", "min,max,count per axis"},
      {"spin", "up | down"},
      {"omega", "Landau cyclotron frequency with sign (flow landau)"},
      {"omega0", "spin precession frequency"},
      {"kappa", "field coupling; when set the spin generator comes from --field"},
      {"field", "h1,h2,h3 homogeneous field direction"},
      {"t", "evolution time, e.g. 1.5 or 2pi"},
      {"times", "comma separated check times"},
      {"theta", "comma separated angles; pairs as a:b for 2D grids"},
      {"munu", "symplectic parameters as mu:nu,..."},
      {"tol", "override the scenario error tolerance"},
      {"format", "tjson | csv"},
      {"flow", "free | oscillator | landau"},
      {"scenario", "oscillator | landau"}};
  return help;
}

void add(Command& c, Settings& s, const std::string& key, const std::string& help) {
  c.options[key] = c.app->add_option("--" + key, s.*setting_fields().at(key), help);
}

std::string json_to_setting(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) {
    char buf[40];
    auto r = std::to_chars(buf, buf + sizeof buf, v.get<double>());
    return std::string(buf, r.ptr);
  }
  if (v.is_array()) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out.push_back(',');
      if (v[i].is_array()) {
        for (std::size_t k = 0; k < v[i].size(); ++k) {
          if (k) out.push_back(':');
          out += json_to_setting(v[i][k]);
        }
      } else {
        out += json_to_setting(v[i]);
      }
    }
    return out;
  }
  config_error("unsupported config value " + v.dump());
}

// Config file values fill every option not given on the command line.
void apply_config(const Command& c, Settings& s) {
  if (s.config.empty()) return;
  std::ifstream f(s.config);
  if (!f) config_error("cannot open config '" + s.config + "'");
  json j = json::parse(f, nullptr, false);
  if (j.is_discarded() || !j.is_object()) config_error("config '" + s.config + "' is not a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto opt = c.options.find(it.key());
    if (opt == c.options.end()) {
      if (it.key() == "config") continue;
      config_error("unknown config key '" + it.key() + "'");
    }
    if (opt->second->count() > 0) continue;
    s.*setting_fields().at(it.key()) = json_to_setting(it.value());
  }
}

json effective(const Command& c, const Settings& s) {
  json e = json::object();
  for (const auto& entry : c.options) {
    const std::string& v = s.*setting_fields().at(entry.first);
    if (!v.empty()) e[entry.first] = v;
  }
  return e;
}

void require_set(const std::string& v, const char* name) {
  if (v.empty()) config_error(std::string("--") + name + " is required");
}

void emit(const json& report) { std::cout << report.dump(2) << std::endl; }

struct Loaded {
  pt_state* state = nullptr;
  pt_dist* dist = nullptr;
  ~Loaded() {
    pt_state_free(state);
    pt_dist_free(dist);
  }
};

void load(const std::string& path, Loaded& l) {
  require_set(path, "in");
  check(pt_load(path.c_str(), &l.state, &l.dist));
}

json state_report(const pt_state* s) {
  char* out = nullptr;
  check(pt_state_report(s, &out));
  return json::parse(take_string(out));
}

json dist_report(const pt_dist* d) {
  char* out = nullptr;
  check(pt_dist_report(d, &out));
  return json::parse(take_string(out));
}

std::string format_of(const Settings& s, const char* fallback) {
  const std::string f = s.format.empty() ? fallback : s.format;
  if (f != "tjson" && f != "csv") config_error("unknown format '" + f + "'");
  return f;
}

void write_dist(const pt_dist* d, const Settings& s, const json& meta) {
  require_set(s.out, "out");
  if (format_of(s, "tjson") == "csv")
    check(pt_dist_export_csv(d, s.out.c_str()));
  else
    check(pt_dist_save(d, s.out.c_str(), meta.dump().c_str()));
}

void write_state(const pt_state* st, const Settings& s, const json& meta) {
  require_set(s.out, "out");
  if (format_of(s, "tjson") == "csv")
    check(pt_state_export_csv(st, s.out.c_str()));
  else
    check(pt_state_save(st, s.out.c_str(), meta.dump().c_str()));
}

void check_rep(const std::string& rep) {
  if (rep != "optical" && rep != "symplectic" && rep != "wigner" && rep != "husimi")
    config_error("unknown representation '" + rep + "'");
}

// Parameters for a representation: angle tuples for optical, (mu, nu) pairs for symplectic.
std::vector<double> rep_params(const Settings& s, std::size_t& count) {
  std::size_t arity = 0;
  std::vector<double> v;
  if (s.rep == "symplectic") {
    v = tuple_list(s.munu, arity);
    if (v.empty()) config_error("--munu is required for the symplectic representation");
    if (arity != 2) config_error("--munu expects mu:nu pairs");
  } else {
    v = tuple_list(s.theta, arity);
  }
  count = arity ? v.size() / arity : 0;
  return v;
}

int cmd_state(const Settings& s, const std::string& name, const std::vector<std::string>& args, const json& cfg) {
  const int down = s.spin == "down" ? 1 : (s.spin == "up" ? 0 : (config_error("--spin must be up or down"), 0));
  auto arg = [&](std::size_t i, const char* what) {
    if (i >= args.size()) config_error(std::string("state ") + name + " needs " + what);
    return args[i];
  };
  pt_state* st = nullptr;
  if (name == "fock") {
    const pt_axis a = s.grid.empty() ? pt_axis{-8, 8, 256} : parse_grid(s.grid);
    check(pt_state_fock(static_cast<int>(parse_number(arg(0, "n"))), a, down, &st));
  } else if (name == "coherent") {
    const pt_axis a = s.grid.empty() ? pt_axis{-8, 8, 256} : parse_grid(s.grid);
    const auto z = number_list(arg(0, "alpha as re[,im]"));
    check(pt_state_coherent(z[0], z.size() > 1 ? z[1] : 0.0, a, down, &st));
  } else if (name == "landau") {
    const pt_axis a = s.grid.empty() ? pt_axis{-8, 8, 128} : parse_grid(s.grid);
    check(pt_state_landau(static_cast<int>(parse_number(arg(0, "n"))), static_cast<int>(parse_number(arg(1, "m"))), a,
                          down, &st));
  } else if (name == "scenario") {
    const std::string id = arg(0, "a scenario id");
    if (s.grid.empty()) {
      check(pt_state_scenario(id.c_str(), nullptr, &st));
    } else {
      const pt_axis a = parse_grid(s.grid);
      check(pt_state_scenario(id.c_str(), &a, &st));
    }
  } else {
    config_error("unknown state '" + name + "' (fock, coherent, landau, scenario)");
  }
  std::unique_ptr<pt_state, void (*)(pt_state*)> guard(st, pt_state_free);
  json report = state_report(st);
  report["config"] = cfg;
  write_state(st, s, json{{"config", cfg}});
  emit(report);
  return kPass;
}

int cmd_transform(const Settings& s, const json& cfg) {
  require_set(s.rep, "rep");
  check_rep(s.rep);
  Loaded in;
  load(s.in, in);
  std::size_t count = 0;
  const auto params = rep_params(s, count);
  pt_dist* out = nullptr;
  if (in.state)
    check(pt_transform(in.state, s.rep.c_str(), params.empty() ? nullptr : params.data(), count, &out));
  else
    check(pt_dist_transform(in.dist, s.rep.c_str(), params.empty() ? nullptr : params.data(), count, &out));
  std::unique_ptr<pt_dist, void (*)(pt_dist*)> guard(out, pt_dist_free);
  json report = dist_report(out);
  report["config"] = cfg;
  write_dist(out, s, json{{"config", cfg}});
  emit(report);
  return kPass;
}

pt_evolution evolution_of(const Settings& s) {
  require_set(s.t, "t");
  pt_evolution e{};
  e.flow = s.flow.c_str();
  e.omega = parse_number(s.omega);
  e.omega0 = parse_number(s.omega0);
  e.t = parse_number(s.t);
  if (!std::isfinite(e.t)) config_error("--t must be finite");
  if (!s.kappa.empty()) {
    const auto h = number_list(s.field);
    if (h.size() != 3) config_error("--field expects h1,h2,h3");
    e.use_field = 1;
    e.kappa = parse_number(s.kappa);
    for (int i = 0; i < 3; ++i) e.field[i] = h[i];
  }
  return e;
}

int cmd_evolve(const Settings& s, const json& cfg) {
  const pt_evolution e = evolution_of(s);
  if (!s.rep.empty()) check_rep(s.rep);
  Loaded in;
  load(s.in, in);
  json report;
  report["config"] = cfg;
  json meta{{"config", cfg}, {"t", e.t}, {"flow", s.flow}};
  if (in.state) {
    pt_state* moved = nullptr;
    check(pt_state_evolve(in.state, &e, &moved));
    std::unique_ptr<pt_state, void (*)(pt_state*)> guard(moved, pt_state_free);
    const json before = state_report(in.state), after = state_report(moved);
    report["before"] = before;
    report["after"] = after;
    report["trace_drift"] = std::abs(after["trace"].get<double>() - before["trace"].get<double>());
    if (s.rep.empty()) {
      write_state(moved, s, meta);
    } else {
      std::size_t count = 0;
      const auto params = rep_params(s, count);
      pt_dist* out = nullptr;
      check(pt_transform(moved, s.rep.c_str(), params.empty() ? nullptr : params.data(), count, &out));
      std::unique_ptr<pt_dist, void (*)(pt_dist*)> g2(out, pt_dist_free);
      report["output"] = dist_report(out);
      write_dist(out, s, meta);
    }
  } else {
    pt_dist* out = nullptr;
    check(pt_dist_evolve(in.dist, &e, &out));
    std::unique_ptr<pt_dist, void (*)(pt_dist*)> guard(out, pt_dist_free);
    const json before = dist_report(in.dist), after = dist_report(out);
    report["before"] = before;
    report["after"] = after;
    if (before.contains("integrals")) {
      const auto b = before["integrals"], a = after["integrals"];
      report["normalization_drift"] =
          std::abs(a[2].get<double>() + a[3].get<double>() - b[2].get<double>() - b[3].get<double>());
    } else {
      report["normalization_drift"] =
          std::abs(after["normalization_deviation"].get<double>() - before["normalization_deviation"].get<double>());
    }
    write_dist(out, s, meta);
  }
  emit(report);
  return kPass;
}

int cmd_verify(const Settings& s, const json& cfg) {
  require_set(s.scenario, "scenario");
  std::vector<double> times = number_list(s.times);
  if (times.empty()) {
    if (s.scenario == "oscillator") times = {0.0, 0.3, 1.0, 2.0 * std::numbers::pi / 3.0};
    else times = {0.0, 0.5, 1.0, std::numbers::pi};
  }
  const double tol = s.tol.empty() ? 0.0 : parse_number(s.tol);
  if (!s.tol.empty() && !(tol > 0.0)) config_error("--tol must be positive");
  char* text = nullptr;
  int passed = 0;
  check(pt_verify(s.scenario.c_str(), times.data(), times.size(), tol, &text, &passed));
  json report = json::parse(take_string(text));
  report["config"] = cfg;
  if (!s.out.empty()) {
    std::ofstream f(s.out);
    if (!f) config_error("cannot open '" + s.out + "' for writing");
    f << report.dump(2) << '\n';
  }
  emit(report);
  return passed ? kPass : kVerifyFailed;
}

int cmd_export(const Settings& s, const json& cfg) {
  Loaded in;
  load(s.in, in);
  Settings o = s;
  if (o.format.empty()) o.format = "csv";
  if (in.state)
    write_state(in.state, o, json{{"config", cfg}});
  else
    write_dist(in.dist, o, json{{"config", cfg}});
  emit(json{{"config", cfg}, {"written", s.out}, {"format", o.format}});
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spin-1/2 probability representation: tomograms, quasidistributions and their evolution"};
  app.require_subcommand(1);
  Settings s;
  std::string state_name;
  std::vector<std::string> state_args;

  std::map<std::string, Command> commands;
  auto make = [&](const std::string& name, const std::string& help, const std::vector<std::string>& keys) {
    Command c;
    c.app = app.add_subcommand(name, help);
    c.options["config"] = c.app->add_option("--config", s.config, "JSON file with defaults for any option");
    for (const auto& k : keys) add(c, s, k, option_help().at(k));
    commands[name] = c;
    return c.app;
  };
  auto* st = make("state", "Build a named state", {"out", "grid", "spin", "format"});
  st->add_option("name", state_name, "fock | coherent | landau | scenario")->required();
  st->add_option("args", state_args, "n | re,im | n m | oscillator|landau");
  make("transform", "Change representation", {"in", "out", "rep", "theta", "munu", "format"});
  make("evolve", "Evolve a state or distribution",
       {"in", "out", "rep", "flow", "omega", "omega0", "kappa", "field", "t", "theta", "munu", "format"});
  make("verify", "Run a scenario check", {"scenario", "times", "tol", "out"});
  make("export", "Write plot-ready data", {"in", "out", "format"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "config error: " << e.what() << std::endl;
    return kConfigError;
  }

  try {
    for (auto& [name, cmd] : commands) {
      if (!cmd.app->parsed()) continue;
      apply_config(cmd, s);
      const json cfg = effective(cmd, s);
      if (name == "state") return cmd_state(s, state_name, state_args, cfg);
      if (name == "transform") return cmd_transform(s, cfg);
      if (name == "evolve") return cmd_evolve(s, cfg);
      if (name == "verify") return cmd_verify(s, cfg);
      if (name == "export") return cmd_export(s, cfg);
    }
  } catch (const Failure& f) {
    std::cerr << f.message << std::endl;
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << std::endl;
    return kNumericError;
  }
  return kConfigError;
}
