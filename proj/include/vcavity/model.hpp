#pragma once

#include <array>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace vcavity {

using Complex = std::complex<double>;

/// Failure categories shared by every module. Each thrown vcavity::Error
/// carries one of these so callers (the CLI, the bindings) can map them to
/// exit codes or Python exceptions without string matching.
enum class ErrorCode {
  NonFiniteInput,
  ThetaOutOfRange,
  NotNormalized,
  NonPositiveKappa,
  NegativeRate,
  NoSteadyState,
  NormViolation,
  NotHermitian,
  NoConvergence,
  StepTooLarge,
  UnknownPreset,
  InvalidSpec,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline constexpr double kNormTolerance = 1e-9;

/// Physical rates of the model. All rates are expressed in units of the
/// cavity decay rate, so kappa defaults to 1 and time is measured in 1/kappa.
/// The two upper levels are degenerate and resonant with the cavity, so no
/// frequencies appear here.
struct ModelParams {
  double gamma0 = 0.1;    ///< atomic relaxation rate
  double kappa = 1.0;     ///< cavity decay rate (the rate unit)
  double theta = 0.0;     ///< interference between the two decay channels, |theta| <= 1
  double omega_dd = 0.0;  ///< dipole-dipole coupling strength
};

/// Single-excitation amplitudes. Index 1/2 is the atom, a/b the excited level.
struct Amplitudes {
  Complex c1a{};
  Complex c1b{};
  Complex c2a{};
  Complex c2b{};

  double excited_norm() const {
    return std::norm(c1a) + std::norm(c1b) + std::norm(c2a) + std::norm(c2b);
  }

  std::array<Complex, 4> as_array() const { return {c1a, c1b, c2a, c2b}; }
  static Amplitudes from_array(const std::array<Complex, 4>& a) { return {a[0], a[1], a[2], a[3]}; }

  friend bool operator==(const Amplitudes&, const Amplitudes&) = default;
};

/// Amplitudes at t = 0; must be normalized (no initial ground population).
using InitialState = Amplitudes;

/// Amplitudes at some time t, plus the derived ground-state population.
struct AmplitudeSet {
  Amplitudes amps;
  double time = 0.0;

  /// Population of |C1,C2> (the excitation lives in the field), clamped to [0, 1].
  double ground_population() const;
};

enum class NamedState { Maximal, Partial, Product };

InitialState named_initial_state(NamedState name);
std::optional<NamedState> parse_named_state(std::string_view name);
std::string_view to_string(NamedState name);

/// Returns the first violated invariant, or nullopt when everything holds.
std::optional<Error> validate(const ModelParams& params);
std::optional<Error> validate(const ModelParams& params, const InitialState& init);

/// Throwing wrappers around validate().
void require_valid(const ModelParams& params);
void require_valid(const ModelParams& params, const InitialState& init);

enum class CouplingRegime { Weak, Crossover, Strong };

/// Labels gamma0/kappa against the 1/2 threshold; within 10% of 1/2 is a crossover.
CouplingRegime classify_coupling(const ModelParams& params);
std::string_view to_string(CouplingRegime regime);

}  // namespace vcavity
