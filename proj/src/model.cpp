#include "vcavity/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace vcavity {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::ThetaOutOfRange: return "ThetaOutOfRange";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NonPositiveKappa: return "NonPositiveKappa";
    case ErrorCode::NegativeRate: return "NegativeRate";
    case ErrorCode::NoSteadyState: return "NoSteadyState";
    case ErrorCode::NormViolation: return "NormViolation";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::UnknownPreset: return "UnknownPreset";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
  }
  return "Unknown";
}

double AmplitudeSet::ground_population() const {
  return std::clamp(1.0 - amps.excited_norm(), 0.0, 1.0);
}

InitialState named_initial_state(NamedState name) {
  switch (name) {
    case NamedState::Maximal: {
      const double r = std::sqrt(0.5);
      return {.c1a = 0.0, .c1b = r, .c2a = r, .c2b = 0.0};
    }
    case NamedState::Partial:
      return {.c1a = 0.0, .c1b = 0.5, .c2a = -std::sqrt(3.0) / 2.0, .c2b = 0.0};
    case NamedState::Product:
      return {.c1a = 0.0, .c1b = 1.0, .c2a = 0.0, .c2b = 0.0};
  }
  return {};
}

std::optional<NamedState> parse_named_state(std::string_view name) {
  if (name == "maximal") return NamedState::Maximal;
  if (name == "partial") return NamedState::Partial;
  if (name == "product") return NamedState::Product;
  return std::nullopt;
}

std::string_view to_string(NamedState name) {
  switch (name) {
    case NamedState::Maximal: return "maximal";
    case NamedState::Partial: return "partial";
    case NamedState::Product: return "product";
  }
  return "?";
}

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

std::optional<Error> validate(const ModelParams& params) {
  if (!std::isfinite(params.gamma0) || !std::isfinite(params.kappa) ||
      !std::isfinite(params.theta) || !std::isfinite(params.omega_dd)) {
    return Error(ErrorCode::NonFiniteInput, "model parameters must be finite");
  }
  if (params.kappa <= 0.0) {
    return Error(ErrorCode::NonPositiveKappa, "kappa must be > 0");
  }
  if (std::abs(params.theta) > 1.0) {
    std::ostringstream os;
    os << "theta = " << params.theta << " outside [-1, 1]";
    return Error(ErrorCode::ThetaOutOfRange, os.str());
  }
  if (params.gamma0 < 0.0 || params.omega_dd < 0.0) {
    return Error(ErrorCode::NegativeRate, "gamma0 and omega must be >= 0");
  }
  return std::nullopt;
}

std::optional<Error> validate(const ModelParams& params, const InitialState& init) {
  if (auto err = validate(params)) return err;
  for (const auto& c : init.as_array()) {
    if (!finite(c)) return Error(ErrorCode::NonFiniteInput, "initial amplitudes must be finite");
  }
  const double norm = init.excited_norm();
  if (std::abs(norm - 1.0) > kNormTolerance) {
    std::ostringstream os;
    os << "initial excited norm " << norm << " != 1";
    return Error(ErrorCode::NotNormalized, os.str());
  }
  return std::nullopt;
}

void require_valid(const ModelParams& params) {
  if (auto err = validate(params)) throw *err;
}

void require_valid(const ModelParams& params, const InitialState& init) {
  if (auto err = validate(params, init)) throw *err;
}

CouplingRegime classify_coupling(const ModelParams& params) {
  const double ratio = params.gamma0 / params.kappa;
  if (std::abs(ratio - 0.5) <= 0.05) return CouplingRegime::Crossover;
  return ratio < 0.5 ? CouplingRegime::Weak : CouplingRegime::Strong;
}

std::string_view to_string(CouplingRegime regime) {
  switch (regime) {
    case CouplingRegime::Weak: return "weak";
    case CouplingRegime::Crossover: return "crossover";
    case CouplingRegime::Strong: return "strong";
  }
  return "?";
}

}  // namespace vcavity
