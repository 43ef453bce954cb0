#include "fdms/acceptance.hpp"
#include "fdms/csv.hpp"
#include "fdms/momentum.hpp"
#include "fdms/reconstruction.hpp"
#include "fdms/systems.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

namespace {

using nlohmann::ordered_json;

enum class LogLevel { off = 0, info = 1, debug = 2 };

LogLevel log_level() {
  const char* env = std::getenv("FDMS_LOG");
  if (!env) return LogLevel::off;
  const std::string v(env);
  if (v == "debug") return LogLevel::debug;
  if (v == "info") return LogLevel::info;
  return LogLevel::off;
}

void log_info(const std::string& msg) {
  if (log_level() >= LogLevel::info) std::cerr << "[fdms] " << msg << "\n";
}

void log_debug(const std::string& msg) {
  if (log_level() >= LogLevel::debug) std::cerr << "[fdms:debug] " << msg << "\n";
}

fdms::Vec parse_vector(const std::string& text) {
  fdms::Vec out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(',', start);
    const std::string tok = pos == std::string::npos
                                ? text.substr(start)
                                : text.substr(start, pos - start);
    out.push_back(fdms::parse_double(tok));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

fdms::ParamMap parse_params(const std::vector<std::string>& kvs) {
  fdms::ParamMap params;
  for (const std::string& kv : kvs) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw fdms::Error("parameter '" + kv + "' is not of the form key=value");
    params[kv.substr(0, eq)] = fdms::parse_double(kv.substr(eq + 1));
  }
  return params;
}

std::string join_params(const fdms::ParamMap& params) {
  std::string out;
  for (const auto& [k, v] : params) {
    if (!out.empty()) out += " ";
    out += k + "=" + fdms::format_double(v);
  }
  return out;
}

// Inputs shared by the trajectory-facing subcommands; a JSON config file can
// supply any of them, with command-line flags taking precedence.
struct SystemArgs {
  std::string system;
  std::vector<std::string> params;
  double h = 0.0;
  bool h_set = false;
  std::string config_path;

  std::optional<fdms::Vec> q0, q1;
  long steps = 0;
  bool steps_set = false;
};

void add_system_options(CLI::App* cmd, SystemArgs& args, bool with_seeds) {
  // Free the short -h so the time step can use --h.
  cmd->set_help_flag("--help", "print help and exit");
  cmd->add_option("--system", args.system, "registered system name");
  cmd->add_option("--param", args.params, "system parameter key=value")
      ->take_all();
  cmd->add_option_function<double>(
         "--h", [&args](double v) { args.h = v; args.h_set = true; },
         "time step");
  cmd->add_option("--config", args.config_path, "JSON config file");
  if (with_seeds) {
    cmd->add_option_function<std::string>(
        "--q0", [&args](const std::string& v) { args.q0 = parse_vector(v); },
        "initial point, comma separated");
    cmd->add_option_function<std::string>(
        "--q1", [&args](const std::string& v) { args.q1 = parse_vector(v); },
        "second point, comma separated");
    cmd->add_option_function<long>(
        "--steps", [&args](long v) { args.steps = v; args.steps_set = true; },
        "number of steps");
  }
}

fdms::BuiltinSystem resolve_system(SystemArgs& args) {
  fdms::ParamMap params;
  if (!args.config_path.empty()) {
    std::ifstream in(args.config_path);
    if (!in) throw fdms::Error("cannot open config '" + args.config_path + "'");
    ordered_json cfg;
    try {
      in >> cfg;
    } catch (const std::exception& e) {
      throw fdms::Error("config '" + args.config_path + "' is not valid JSON: " +
                        e.what());
    }
    if (args.system.empty() && cfg.contains("name"))
      args.system = cfg["name"].get<std::string>();
    if (cfg.contains("params"))
      for (const auto& [k, v] : cfg["params"].items())
        params[k] = v.get<double>();
    if (!args.h_set && cfg.contains("h")) {
      args.h = cfg["h"].get<double>();
      args.h_set = true;
    }
    if (!args.steps_set && cfg.contains("steps")) {
      args.steps = cfg["steps"].get<long>();
      args.steps_set = true;
    }
    if (cfg.contains("seeds")) {
      const auto& seeds = cfg["seeds"];
      if (!args.q0 && seeds.contains("q0"))
        args.q0 = seeds["q0"].get<fdms::Vec>();
      if (!args.q1 && seeds.contains("q1"))
        args.q1 = seeds["q1"].get<fdms::Vec>();
    }
    if (cfg.contains("dim") || cfg.contains("group_dim")) {
      // Validated after the system is built.
    }
    for (const auto& [k, v] : parse_params(args.params)) params[k] = v;

    if (args.system.empty()) throw fdms::Error("no system name given");
    if (!args.h_set) throw fdms::Error("no time step given (--h or config)");
    fdms::BuiltinSystem b = fdms::make_builtin(args.system, params, args.h);
    if (cfg.contains("dim") &&
        cfg["dim"].get<std::size_t>() != b.system.dim)
      throw fdms::Error("config dim " + cfg["dim"].dump() +
                        " does not match system dimension " +
                        std::to_string(b.system.dim));
    if (cfg.contains("group_dim") &&
        cfg["group_dim"].get<std::size_t>() != b.momentum_action.group_dim)
      throw fdms::Error("config group_dim " + cfg["group_dim"].dump() +
                        " does not match the registered group dimension " +
                        std::to_string(b.momentum_action.group_dim));
    return b;
  }

  if (args.system.empty()) throw fdms::Error("no system name given");
  if (!args.h_set) throw fdms::Error("no time step given (--h or config)");
  return fdms::make_builtin(args.system, parse_params(args.params), args.h);
}

const fdms::SymmetrySetup& require_setup(const fdms::BuiltinSystem& b) {
  if (!b.setup)
    throw fdms::Error("system '" + b.name + "' has no symmetry setup registered");
  return *b.setup;
}

int run_simulate(SystemArgs& args, const std::string& out_path) {
  fdms::BuiltinSystem b = resolve_system(args);
  if (!args.q0 || !args.q1) throw fdms::Error("simulate needs --q0 and --q1");
  if (!args.steps_set || args.steps < 1)
    throw fdms::Error("simulate needs --steps >= 1");
  log_info("simulate system=" + b.name + " h=" + fdms::format_double(b.h) +
           " steps=" + std::to_string(args.steps) + " params: " +
           join_params(b.params));
  const fdms::DiscreteCurve curve =
      fdms::trajectory(b.system, *args.q0, *args.q1,
                       static_cast<std::size_t>(args.steps));
  log_debug("final point " + fdms::format_double(curve.points.back()[0]));
  fdms::write_curve_csv(out_path, curve);
  log_info("wrote " + std::to_string(curve.points.size()) + " points to " +
           out_path);
  return 0;
}

int run_reduce(SystemArgs& args, const std::string& in_path,
               const std::string& out_path) {
  fdms::BuiltinSystem b = resolve_system(args);
  const fdms::SymmetrySetup& setup = require_setup(b);
  const fdms::DiscreteCurve curve = fdms::read_curve_csv(in_path);
  if (!curve.points.empty() && curve.points.front().size() != b.system.dim)
    throw fdms::Error("curve in '" + in_path + "' has dimension " +
                      std::to_string(curve.points.front().size()) +
                      ", system expects " + std::to_string(b.system.dim));
  log_info("reduce system=" + b.name + " pairs=" +
           std::to_string(curve.points.size() - 1));
  const fdms::ReducedCurve rc = fdms::reduce_trajectory(setup, curve);
  fdms::write_reduced_csv(out_path, rc, setup.shape_dim(), setup.group_dim);
  log_info("wrote " + std::to_string(rc.steps()) + " reduced rows to " + out_path);
  return 0;
}

int run_reconstruct(SystemArgs& args, const std::string& in_path,
                    const std::string& out_path) {
  fdms::BuiltinSystem b = resolve_system(args);
  const fdms::SymmetrySetup& setup = require_setup(b);
  if (!args.q0) throw fdms::Error("reconstruct needs --q0");
  const fdms::ReducedCurve rc =
      fdms::read_reduced_csv(in_path, setup.shape_dim(), setup.group_dim);
  log_info("reconstruct system=" + b.name + " rows=" + std::to_string(rc.steps()));
  const fdms::DiscreteCurve curve = fdms::reconstruct(setup, rc, *args.q0);
  fdms::write_curve_csv(out_path, curve);
  log_info("wrote " + std::to_string(curve.points.size()) + " points to " +
           out_path);
  return 0;
}

int run_momentum(SystemArgs& args, const std::string& in_path,
                 const std::string& out_path, const std::string& xi_text,
                 const std::string& report_path) {
  fdms::BuiltinSystem b = resolve_system(args);
  const fdms::DiscreteCurve curve = fdms::read_curve_csv(in_path);
  if (!curve.points.empty() && curve.points.front().size() != b.system.dim)
    throw fdms::Error("curve in '" + in_path + "' has dimension " +
                      std::to_string(curve.points.front().size()) +
                      ", system expects " + std::to_string(b.system.dim));
  fdms::AlgebraElem xi = b.default_xi;
  if (!xi_text.empty()) xi = parse_vector(xi_text);
  if (xi.size() != b.momentum_action.group_dim)
    throw fdms::Error("xi has length " + std::to_string(xi.size()) +
                      ", the registered action expects " +
                      std::to_string(b.momentum_action.group_dim));
  log_info("momentum system=" + b.name + " pairs=" +
           std::to_string(curve.points.size() - 1));
  const fdms::MomentumReport rep =
      fdms::drift_report(b.system, b.momentum_action, xi, curve);
  fdms::write_momentum_csv(out_path, rep);
  if (!report_path.empty()) {
    ordered_json j;
    j["system"] = b.name;
    j["xi"] = rep.xi;
    j["mu_estimate"] = rep.mu_estimate;
    j["max_drift_deviation"] = rep.max_drift_deviation;
    j["drift_uniform"] = rep.drift_uniform;
    j["transfer_violation"] = rep.transfer_violation;
    std::ofstream out(report_path);
    if (!out) throw fdms::Error("cannot open '" + report_path + "' for writing");
    out << j.dump(2) << "\n";
  }
  log_info("wrote momentum table to " + out_path);
  return 0;
}

int run_verify(const std::string& only, const std::string& out_path,
               double tolerance_scale) {
  log_info("verify only=" + (only.empty() ? std::string("<all>") : only) +
           " tolerance_scale=" + fdms::format_double(tolerance_scale));
  const std::vector<fdms::CriterionResult> results =
      fdms::run_acceptance(only, tolerance_scale);
  ordered_json j;
  j["criteria"] = ordered_json::array();
  bool all_pass = true;
  for (const fdms::CriterionResult& c : results) {
    ordered_json e;
    e["name"] = c.name;
    e["measured"] = c.measured;
    e["threshold"] = c.threshold;
    e["pass"] = c.pass;
    e["detail"] = c.detail;
    j["criteria"].push_back(e);
    all_pass = all_pass && c.pass;
    log_debug(c.name + (c.pass ? " pass" : " FAIL") + " measured=" +
              fdms::format_double(c.measured));
  }
  j["all_pass"] = all_pass;
  const std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw fdms::Error("cannot open '" + out_path + "' for writing");
    out << text;
  }
  return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"forced discrete mechanics toolkit"};
  app.require_subcommand(1);

  SystemArgs sim_args, red_args, rec_args, mom_args;
  std::string sim_out, red_in, red_out, rec_in, rec_out;
  std::string mom_in, mom_out, mom_xi, mom_report;
  std::string ver_only, ver_out;
  double ver_scale = 1.0;

  CLI::App* sim = app.add_subcommand("simulate", "solve a trajectory");
  add_system_options(sim, sim_args, true);
  sim->add_option("--out", sim_out, "output CSV path")->required();

  CLI::App* red = app.add_subcommand("reduce", "push a trajectory to the quotient");
  add_system_options(red, red_args, false);
  red->add_option("--in", red_in, "trajectory CSV")->required();
  red->add_option("--out", red_out, "output CSV path")->required();

  CLI::App* rec = app.add_subcommand("reconstruct", "lift a reduced curve");
  add_system_options(rec, rec_args, false);
  rec->add_option_function<std::string>(
      "--q0", [&rec_args](const std::string& v) { rec_args.q0 = parse_vector(v); },
      "seed point, comma separated");
  rec->add_option("--in", rec_in, "reduced CSV")->required();
  rec->add_option("--out", rec_out, "output CSV path")->required();

  CLI::App* mom = app.add_subcommand("momentum", "momentum bookkeeping on a curve");
  add_system_options(mom, mom_args, false);
  mom->add_option("--in", mom_in, "trajectory CSV")->required();
  mom->add_option("--out", mom_out, "output CSV path")->required();
  mom->add_option("--xi", mom_xi, "algebra element, comma separated");
  mom->add_option("--report", mom_report, "optional JSON summary path");

  CLI::App* ver = app.add_subcommand("verify", "run the built-in checks");
  ver->add_option("--only", ver_only, "run one named check");
  ver->add_option("--out", ver_out, "also write the JSON report here");
  ver->add_option("--tolerance-scale", ver_scale,
                  "multiply every gate (0 forces failure)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    // CLI11 returns 0 for --help; anything else is a usage error.
    return code == 0 ? 0 : 3;
  }

  try {
    if (sim->parsed()) return run_simulate(sim_args, sim_out);
    if (red->parsed()) return run_reduce(red_args, red_in, red_out);
    if (rec->parsed()) return run_reconstruct(rec_args, rec_in, rec_out);
    if (mom->parsed())
      return run_momentum(mom_args, mom_in, mom_out, mom_xi, mom_report);
    if (ver->parsed()) return run_verify(ver_only, ver_out, ver_scale);
  } catch (const fdms::NonConvergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const fdms::SingularJacobian& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
