#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <thread>

#include "vcavity/propagator.hpp"
#include "vcavity/sweep.hpp"

namespace vcavity::cli {

namespace {

struct Options {
  std::string out;
  std::string format = "csv";
  std::string config;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());

  std::string preset;
  double omega_scale = 1.0;

  std::vector<double> gamma0{0.1};
  std::vector<double> theta{0.0};
  std::vector<double> omega{0.0};
  double kappa = 1.0;
  std::string init = "maximal";
  double t_end = 10.0;
  std::size_t points = kPresetPoints;
  std::string summary;

  double dt = 1e-3;
};

// Flat "key = value" lines; '#' starts a comment. Keys are long flag names
// without the leading dashes.
std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::FileError::Missing(path);
  std::map<std::string, std::string> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string trimmed = CLI::detail::trim_copy(line);
    if (trimmed.empty()) continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos) {
      throw CLI::ConversionError(path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = CLI::detail::trim_copy(trimmed.substr(0, eq));
    std::string value = CLI::detail::trim_copy(trimmed.substr(eq + 1));
    if (key.rfind("--", 0) == 0) key.erase(0, 2);
    entries[key] = value;
  }
  return entries;
}

std::optional<std::string> find_config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

bool given_on_command_line(const std::vector<std::string>& args, const std::string& flag) {
  return std::any_of(args.begin(), args.end(),
                     [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw CLI::FileError("cannot open output file " + path);
      stream_ = &file_;
    }
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

int run_preset_cmd(const Options& opt, std::ostream& out) {
  const auto curves = run_preset(opt.preset, opt.jobs, opt.omega_scale);
  Output sink(opt.out, out);
  write_trajectory_csv(sink.stream(), curves);
  return kSuccess;
}

SweepSpec make_spec(const Options& opt) {
  SweepSpec spec;
  spec.gamma0 = opt.gamma0;
  spec.theta = opt.theta;
  spec.omega = opt.omega;
  spec.kappa = opt.kappa;
  spec.initial = parse_initial_state(opt.init);
  spec.init_label = opt.init;
  spec.t_end = opt.t_end;
  spec.points = opt.points;
  return spec;
}

int report_cells(const std::vector<SweepCell>& cells, std::ostream& err) {
  int status = kSuccess;
  for (const SweepCell& cell : cells) {
    if (!cell.error) continue;
    err << "cell gamma0=" << cell.params.gamma0 << " theta=" << cell.params.theta
        << " omega=" << cell.params.omega_dd << ": " << cell.error->what() << '\n';
    status = kValidationFailure;
  }
  return status;
}

int run_sweep_cmd(const Options& opt, std::ostream& out, std::ostream& err) {
  const SweepSpec spec = make_spec(opt);
  const auto cells = run_sweep(spec, opt.jobs);

  std::vector<Trajectory> curves;
  for (const SweepCell& cell : cells)
    if (cell.trajectory) curves.push_back(*cell.trajectory);
  {
    Output sink(opt.out, out);
    write_trajectory_csv(sink.stream(), curves);
  }
  if (!opt.summary.empty()) {
    Output summary(opt.summary, out);
    write_steady_csv(summary.stream(), cells, spec.init_label);
  }
  return report_cells(cells, err);
}

int run_steady_cmd(const Options& opt, bool t_end_given, std::ostream& out, std::ostream& err) {
  SweepSpec spec = make_spec(opt);
  if (!t_end_given) {
    // Long enough for the slowest decaying mode to fade, so the tail check
    // is meaningful.
    double horizon = 50.0;
    for (double g : spec.gamma0)
      for (double th : spec.theta)
        for (double om : spec.omega) {
          const double rate = slowest_decay_rate({g, spec.kappa, th, om});
          if (rate > 0.0) horizon = std::max(horizon, 20.0 / rate);
        }
    spec.t_end = horizon;
  }
  const auto cells = run_sweep(spec, opt.jobs);
  Output sink(opt.out, out);
  write_steady_csv(sink.stream(), cells, spec.init_label);
  return report_cells(cells, err);
}

int run_validate_cmd(const Options& opt, bool grid_given, std::ostream& out, std::ostream& err) {
  std::vector<ModelParams> grid;
  if (grid_given) {
    for (double g : opt.gamma0)
      for (double th : opt.theta)
        for (double om : opt.omega) grid.push_back({g, opt.kappa, th, om});
  } else {
    grid = default_validation_grid();
  }
  const auto cells = run_validation(grid, opt.t_end, opt.dt, opt.jobs);
  Output sink(opt.out, out);
  write_validation_csv(sink.stream(), cells, opt.dt);

  int status = kSuccess;
  for (const ValidationCell& cell : cells) {
    if (cell.passed) continue;
    status = kValidationFailure;
    err << "cell gamma0=" << cell.params.gamma0 << " theta=" << cell.params.theta
        << " omega=" << cell.params.omega_dd << ": "
        << (cell.error ? cell.error->what() : "max abs error " + format_number(cell.max_abs_error)) << '\n';
  }
  return status;
}

void add_grid_options(CLI::App* cmd, Options& opt) {
  cmd->add_option("--gamma0", opt.gamma0, "gamma0/kappa values")->delimiter(',');
  cmd->add_option("--theta", opt.theta, "interference parameter values")->delimiter(',');
  cmd->add_option("--omega", opt.omega, "dipole-dipole strengths (units of kappa)")->delimiter(',');
  cmd->add_option("--kappa", opt.kappa, "cavity decay rate")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Entanglement dynamics of two V-type atoms in a dissipative cavity"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--out", opt.out, "output path (default stdout)");
  app.add_option("--format", opt.format, "output format")->check(CLI::IsMember({"csv"}));
  app.add_option("--config", opt.config, "flat key = value file; command-line flags win");
  app.add_option("--jobs", opt.jobs, "worker threads")->check(CLI::PositiveNumber);

  auto* preset = app.add_subcommand("preset", "figure preset curves");
  preset->add_option("name", opt.preset, "fig2a ... fig8b")->required();
  preset->add_option("--omega-scale", opt.omega_scale, "multiply preset dipole-dipole strengths");

  auto* sweep = app.add_subcommand("sweep", "trajectories over a parameter grid");
  add_grid_options(sweep, opt);
  sweep->add_option("--init", opt.init, "maximal|partial|product or c1a,c1b,c2a,c2b");
  sweep->add_option("--t-end", opt.t_end, "final time (units of 1/kappa)");
  sweep->add_option("--points", opt.points, "time samples (>= 2)");
  sweep->add_option("--summary", opt.summary, "write per-cell steady values here");

  auto* validate = app.add_subcommand("validate", "cross-check the closed form against RK4");
  add_grid_options(validate, opt);
  validate->add_option("--dt", opt.dt, "RK4 step (units of 1/kappa)");
  validate->add_option("--t-end", opt.t_end, "final time (units of 1/kappa)");

  auto* steady = app.add_subcommand("steady", "analytic steady negativity");
  add_grid_options(steady, opt);
  steady->add_option("--init", opt.init, "maximal|partial|product or c1a,c1b,c2a,c2b");
  steady->add_option("--t-end", opt.t_end, "trajectory length for the tail check");
  steady->add_option("--points", opt.points, "time samples for the tail check");

  std::vector<std::string> args = raw_args;
  try {
    if (auto path = find_config_path(raw_args)) {
      CLI::App* selected = nullptr;
      for (auto* sub : {preset, sweep, validate, steady})
        if (std::find(raw_args.begin(), raw_args.end(), sub->get_name()) != raw_args.end()) selected = sub;
      for (const auto& [key, value] : read_config(*path)) {
        const std::string flag = "--" + key;
        const bool known = app.get_option_no_throw(flag) != nullptr ||
                           (selected != nullptr && selected->get_option_no_throw(flag) != nullptr);
        const bool anywhere = known || preset->get_option_no_throw(flag) || sweep->get_option_no_throw(flag) ||
                              validate->get_option_no_throw(flag) || steady->get_option_no_throw(flag);
        if (!anywhere || key == "config") throw CLI::ConversionError("unknown config key '" + key + "'");
        if (!known || given_on_command_line(raw_args, flag)) continue;
        args.push_back(flag);
        args.push_back(value);
      }
    }
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kBadArguments;
  }

  try {
    if (*preset) return run_preset_cmd(opt, out);
    if (*sweep) return run_sweep_cmd(opt, out, err);
    if (*validate) {
      const bool grid_given = validate->count("--gamma0") + validate->count("--theta") + validate->count("--omega") > 0;
      return run_validate_cmd(opt, grid_given, out, err);
    }
    if (*steady) return run_steady_cmd(opt, steady->count("--t-end") > 0, out, err);
  } catch (const Error& e) {
    err << e.what() << '\n';
    const bool bad_input = e.code() == ErrorCode::InvalidSpec || e.code() == ErrorCode::UnknownPreset;
    return bad_input ? kBadArguments : kValidationFailure;
  } catch (const CLI::Error& e) {
    err << e.what() << '\n';
    return kBadArguments;
  }
  return kBadArguments;
}

}  // namespace vcavity::cli
