#pragma once

#include "vcavity/model.hpp"

namespace vcavity {

/// Selects the symmetric (+) or interference-suppressed (-) channel,
/// i.e. the effective rate gamma0 * (1 + theta) or gamma0 * (1 - theta).
enum class Branch { Plus, Minus };

/// Mixing coefficients that map initial amplitude sums and differences to
/// amplitudes at time t.
struct PropagatorCoeffs {
  Complex q1;  ///< (G+ + G-) / 4
  Complex q2;  ///< (G+ - G-) / 4
  Complex q3;  ///< exp(-2i Omega t) / 2
};

/// Discriminant root of the channel. Principal branch: Re >= 0, and Im >= 0
/// when the real part vanishes.
Complex d_pm(const ModelParams& params, Branch branch);

/// Relaxation function of the symmetric amplitude combination in the given
/// channel: G(0) = 1, G'(0) = -2i Omega.
Complex g_pm(const ModelParams& params, Branch branch, double t);

PropagatorCoeffs q_coeffs(const ModelParams& params, double t);

/// Closed-form amplitudes at time t for a single-excitation initial state.
AmplitudeSet propagate(const ModelParams& params, const InitialState& init, double t);

/// t -> infinity limit of propagate() with the surviving global phase
/// exp(-2i Omega t) set to 1. Throws NoSteadyState when gamma0 == 0.
AmplitudeSet steady_amplitudes(const ModelParams& params, const InitialState& init);

/// Slowest decay rate among the decaying channel modes (units of kappa).
/// Zero when no channel decays.
double slowest_decay_rate(const ModelParams& params);

}  // namespace vcavity
