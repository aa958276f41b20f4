#include "vcavity/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

#include "vcavity/negativity.hpp"
#include "vcavity/oracle.hpp"
#include "vcavity/propagator.hpp"

namespace vcavity {

namespace {

// Runs fn(i) for i in [0, n) on at most `jobs` threads. Results are written by
// index, so output order never depends on scheduling.
template <typename Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn&& fn) {
  const auto workers = static_cast<std::size_t>(std::clamp<unsigned>(jobs, 1u, 256u));
  if (workers == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < std::min(workers, n); ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
}

TrajectoryPoint sample(const AmplitudeSet& amps) {
  const Amplitudes& a = amps.amps;
  return {amps.time, negativity_closed_form(amps), amps.ground_population(),
          {std::norm(a.c1a), std::norm(a.c1b), std::norm(a.c2a), std::norm(a.c2b)}};
}

std::string trim_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

Trajectory compute_trajectory(const ModelParams& params, const InitialState& init, double t_end,
                              std::size_t n_points, std::string label) {
  require_valid(params, init);
  if (n_points < 2 || !(t_end > 0.0)) {
    throw Error(ErrorCode::InvalidSpec, "trajectory needs t_end > 0 and at least 2 points");
  }
  Trajectory out{std::move(label), params, {}};
  out.points.reserve(n_points);
  const double step = t_end / static_cast<double>(n_points - 1);
  for (std::size_t k = 0; k < n_points; ++k) {
    const double t = k + 1 == n_points ? t_end : static_cast<double>(k) * step;
    out.points.push_back(sample(propagate(params, init, t)));
  }
  // The closed form is the production path; the eigensolver route anchors the
  // first point so a regression in either shows up immediately.
  out.points.front().negativity = negativity(propagate(params, init, 0.0));
  return out;
}

// ---------------------------------------------------------------- presets

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (int fig = 2; fig <= 8; ++fig)
    for (char panel : {'a', 'b'}) names.push_back("fig" + std::to_string(fig) + panel);
  return names;
}

Preset make_preset(std::string_view name, double omega_scale) {
  const auto names = preset_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw Error(ErrorCode::UnknownPreset, "unknown preset '" + std::string(name) + "'");
  }
  const int fig = name[3] - '0';
  const bool weak = name[4] == 'a';

  Preset preset;
  preset.name = std::string(name);
  preset.t_end = weak ? 50.0 : 10.0;
  preset.points = kPresetPoints;
  switch (fig) {
    case 2: case 5: preset.init = NamedState::Maximal; break;
    case 3: case 6: preset.init = NamedState::Partial; break;
    default: preset.init = NamedState::Product; break;
  }

  ModelParams base;
  base.gamma0 = weak ? 0.1 : 10.0;
  if (fig == 8) {
    base.theta = 0.0;
    for (double omega : {0.0, 3.0, 6.0, 12.0}) {
      ModelParams p = base;
      p.omega_dd = omega * omega_scale;
      preset.curves.push_back({"omega=" + trim_number(omega), p});
    }
  } else {
    base.omega_dd = (fig >= 5 ? 12.0 : 0.0) * omega_scale;
    for (double theta : {0.0, 0.5, 0.9, 1.0}) {
      ModelParams p = base;
      p.theta = theta;
      preset.curves.push_back({"theta=" + trim_number(theta), p});
    }
  }
  return preset;
}

std::vector<Trajectory> run_preset(std::string_view name, unsigned jobs, double omega_scale) {
  const Preset preset = make_preset(name, omega_scale);
  const InitialState init = named_initial_state(preset.init);
  std::vector<Trajectory> out(preset.curves.size());
  parallel_for(out.size(), jobs, [&](std::size_t i) {
    out[i] = compute_trajectory(preset.curves[i].params, init, preset.t_end, preset.points, preset.curves[i].label);
  });
  return out;
}

// ----------------------------------------------------------------- sweeps

void check_spec(const SweepSpec& spec) {
  if (spec.gamma0.empty() || spec.theta.empty() || spec.omega.empty()) {
    throw Error(ErrorCode::InvalidSpec, "sweep grid is empty");
  }
  if (!(spec.t_end > 0.0) || !std::isfinite(spec.t_end)) {
    throw Error(ErrorCode::InvalidSpec, "t_end must be > 0");
  }
  if (spec.points < 2) throw Error(ErrorCode::InvalidSpec, "points must be >= 2");
}

std::vector<SweepCell> run_sweep(const SweepSpec& spec, unsigned jobs) {
  check_spec(spec);
  std::vector<SweepCell> cells;
  for (double g : spec.gamma0)
    for (double th : spec.theta)
      for (double om : spec.omega) cells.push_back({{g, spec.kappa, th, om}, {}, {}, {}, {}});

  parallel_for(cells.size(), jobs, [&](std::size_t i) {
    SweepCell& cell = cells[i];
    const ModelParams& p = cell.params;
    try {
      cell.trajectory = compute_trajectory(p, spec.initial, spec.t_end, spec.points,
                                           "gamma0=" + trim_number(p.gamma0) + " theta=" + trim_number(p.theta) +
                                               " omega=" + trim_number(p.omega_dd));
      cell.steady_negativity = negativity(steady_amplitudes(p, spec.initial));

      const auto& pts = cell.trajectory->points;
      const std::size_t tail = std::max<std::size_t>(1, pts.size() / 20);
      double worst = 0.0;
      for (std::size_t k = pts.size() - tail; k < pts.size(); ++k)
        worst = std::max(worst, std::abs(pts[k].negativity - *cell.steady_negativity));
      cell.tail_deviation = worst;
    } catch (const Error& e) {
      cell.error = e;
    }
  });
  return cells;
}

// ------------------------------------------------------------- validation

std::vector<ModelParams> default_validation_grid() {
  std::vector<ModelParams> grid;
  for (double g : {0.1, 10.0})
    for (double th : {0.0, 0.5, 0.9, 1.0})
      for (double om : {0.0, 6.0, 12.0}) grid.push_back({g, 1.0, th, om});
  return grid;
}

std::vector<ValidationCell> run_validation(const std::vector<ModelParams>& grid, double t_end, double dt,
                                           unsigned jobs, double tolerance) {
  std::vector<ValidationCell> cells(grid.size());
  parallel_for(grid.size(), jobs, [&](std::size_t i) {
    ValidationCell& cell = cells[i];
    cell.params = grid[i];
    try {
      for (NamedState s : {NamedState::Maximal, NamedState::Partial, NamedState::Product}) {
        cell.max_abs_error =
            std::max(cell.max_abs_error, cross_validate(grid[i], named_initial_state(s), t_end, dt));
      }
      cell.passed = cell.max_abs_error < tolerance;
    } catch (const Error& e) {
      cell.error = e;
    }
  });
  return cells;
}

// ------------------------------------------------------------------ text io

namespace {

std::string strip(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

double parse_real(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size()) throw Error(ErrorCode::InvalidSpec, "cannot parse number '" + s + "'");
  return v;
}

Complex parse_complex(const std::string& token) {
  if (token.empty()) throw Error(ErrorCode::InvalidSpec, "empty amplitude");
  const char last = token.back();
  if (last != 'i' && last != 'j') return parse_real(token);

  const std::string body = token.substr(0, token.size() - 1);
  // Split at the last sign that is not a leading sign or an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_of = [](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_real(s);
  };
  if (split == std::string::npos) return {0.0, imag_of(body)};
  return {parse_real(body.substr(0, split)), imag_of(body.substr(split))};
}

}  // namespace

InitialState parse_initial_state(std::string_view text) {
  const std::string s = strip(text);
  if (auto named = parse_named_state(s)) return named_initial_state(*named);

  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = s.find(',', start);
    parts.push_back(s.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (parts.size() != 4) {
    throw Error(ErrorCode::InvalidSpec,
                "initial state must be maximal|partial|product or four amplitudes c1a,c1b,c2a,c2b");
  }
  return {parse_complex(parts[0]), parse_complex(parts[1]), parse_complex(parts[2]), parse_complex(parts[3])};
}

std::string format_number(double value) {
  if (value == 0.0) value = 0.0;  // no "-0"
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

void write_trajectory_csv(std::ostream& os, const std::vector<Trajectory>& curves) {
  os << "t,curve_label,negativity,p,abs2_c1a,abs2_c1b,abs2_c2a,abs2_c2b\n";
  for (const Trajectory& curve : curves) {
    for (const TrajectoryPoint& pt : curve.points) {
      os << format_number(pt.t) << ',' << curve.label << ',' << format_number(pt.negativity) << ','
         << format_number(pt.p);
      for (double v : pt.abs2) os << ',' << format_number(v);
      os << '\n';
    }
  }
}

void write_steady_csv(std::ostream& os, const std::vector<SweepCell>& cells, std::string_view init_label) {
  os << "gamma0,kappa,theta,omega,init,regime,steady_negativity,tail_max_deviation,tail_ok,status\n";
  for (const SweepCell& cell : cells) {
    const ModelParams& p = cell.params;
    os << format_number(p.gamma0) << ',' << format_number(p.kappa) << ',' << format_number(p.theta) << ','
       << format_number(p.omega_dd) << ',' << init_label << ',' << to_string(classify_coupling(p)) << ','
       << (cell.steady_negativity ? format_number(*cell.steady_negativity) : "") << ','
       << (cell.tail_deviation ? format_number(*cell.tail_deviation) : "") << ','
       << (cell.tail_deviation ? (cell.tail_ok() ? "1" : "0") : "") << ','
       << (cell.error ? to_string(cell.error->code()) : "ok") << '\n';
  }
}

void write_validation_csv(std::ostream& os, const std::vector<ValidationCell>& cells, double dt) {
  os << "gamma0,kappa,theta,omega,dt,max_abs_error,status\n";
  for (const ValidationCell& cell : cells) {
    const ModelParams& p = cell.params;
    os << format_number(p.gamma0) << ',' << format_number(p.kappa) << ',' << format_number(p.theta) << ','
       << format_number(p.omega_dd) << ',' << format_number(dt) << ','
       << (cell.error ? "" : format_number(cell.max_abs_error)) << ','
       << (cell.error ? std::string(to_string(cell.error->code())) : (cell.passed ? "pass" : "fail")) << '\n';
  }
}

}  // namespace vcavity
