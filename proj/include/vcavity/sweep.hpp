#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vcavity/model.hpp"

namespace vcavity {

struct TrajectoryPoint {
  double t = 0.0;
  double negativity = 0.0;
  double p = 0.0;                 ///< ground (field) population
  std::array<double, 4> abs2{};   ///< |c1a|^2, |c1b|^2, |c2a|^2, |c2b|^2
};

struct Trajectory {
  std::string label;
  ModelParams params;
  std::vector<TrajectoryPoint> points;
};

/// Uniform grid of n_points samples on [0, t_end] using the closed form.
Trajectory compute_trajectory(const ModelParams& params, const InitialState& init, double t_end,
                              std::size_t n_points, std::string label = {});

// ---------------------------------------------------------------- presets

struct PresetCurve {
  std::string label;
  ModelParams params;
};

struct Preset {
  std::string name;
  NamedState init;
  double t_end;
  std::size_t points;
  std::vector<PresetCurve> curves;
};

inline constexpr std::size_t kPresetPoints = 2001;

/// fig2a ... fig8b. omega_scale multiplies the dipole-dipole strengths, for
/// reading the figure values in a different rate unit.
Preset make_preset(std::string_view name, double omega_scale = 1.0);
std::vector<std::string> preset_names();

std::vector<Trajectory> run_preset(std::string_view name, unsigned jobs = 1, double omega_scale = 1.0);

// ----------------------------------------------------------------- sweeps

struct SweepSpec {
  std::vector<double> gamma0;
  std::vector<double> theta;
  std::vector<double> omega;
  double kappa = 1.0;
  InitialState initial;
  std::string init_label;
  double t_end = 10.0;
  std::size_t points = kPresetPoints;
};

/// Throws InvalidSpec when the grid is empty, t_end <= 0 or points < 2.
void check_spec(const SweepSpec& spec);

struct SweepCell {
  ModelParams params;
  std::optional<Trajectory> trajectory;
  std::optional<double> steady_negativity;
  /// max |N(t) - steady| over the last 5% of the trajectory
  std::optional<double> tail_deviation;
  std::optional<Error> error;

  bool tail_ok() const { return tail_deviation && *tail_deviation <= 1e-2; }
};

/// Cartesian product in (gamma0, theta, omega) lexicographic order. Per-cell
/// failures are recorded in the cell and do not abort the others.
std::vector<SweepCell> run_sweep(const SweepSpec& spec, unsigned jobs = 1);

// ------------------------------------------------------------- validation

struct ValidationCell {
  ModelParams params;
  double max_abs_error = 0.0;
  std::optional<Error> error;
  bool passed = false;
};

inline constexpr double kValidationTolerance = 1e-5;

/// gamma0 in {0.1, 10} x theta in {0, 0.5, 0.9, 1} x omega in {0, 6, 12}.
std::vector<ModelParams> default_validation_grid();

/// Cross-validates each cell against the oracle for every named initial
/// state and keeps the worst error.
std::vector<ValidationCell> run_validation(const std::vector<ModelParams>& grid, double t_end, double dt,
                                           unsigned jobs = 1, double tolerance = kValidationTolerance);

// ------------------------------------------------------------------ text io

/// A preset name, or four comma-separated amplitudes c1a,c1b,c2a,c2b, each
/// real or complex ("0.5", "0.5i", "0.3-0.4i"). Throws InvalidSpec.
InitialState parse_initial_state(std::string_view text);

/// %.12g
std::string format_number(double value);

void write_trajectory_csv(std::ostream& os, const std::vector<Trajectory>& curves);
void write_steady_csv(std::ostream& os, const std::vector<SweepCell>& cells, std::string_view init_label);
void write_validation_csv(std::ostream& os, const std::vector<ValidationCell>& cells, double dt);

}  // namespace vcavity
