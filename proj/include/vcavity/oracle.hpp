#pragma once

#include <vector>

#include "vcavity/model.hpp"

namespace vcavity {

/// State of the memory-kernel equations in local form. The exponential kernel
/// exp(-kappa (t - t')) is carried exactly by the accumulators
///   z_m(t) = int_0^t exp(-kappa (t - t')) (C_1^m + C_2^m)(t') dt'.
struct OracleState {
  Amplitudes c;
  Complex z_a{};
  Complex z_b{};
  double t = 0.0;
};

struct OracleDerivative {
  Amplitudes dc;
  Complex dz_a{};
  Complex dz_b{};
};

OracleDerivative rhs(const OracleState& state, const ModelParams& params);

/// Upper bound on the RK4 step for the given parameters.
double max_stable_step(const ModelParams& params);

/// Fixed-step classical RK4 from t = 0 to t_end; samples at every multiple of
/// dt (the last sample lands on floor(t_end / dt) * dt). Throws StepTooLarge
/// when dt exceeds max_stable_step().
std::vector<AmplitudeSet> integrate(const ModelParams& params, const InitialState& init, double t_end,
                                    double dt);

/// Max over the sample grid and the four amplitudes of |analytic - numeric|.
double cross_validate(const ModelParams& params, const InitialState& init, double t_end, double dt);

/// Empirical convergence order log2(err(dt) / err(dt / 2)).
double richardson_order(const ModelParams& params, const InitialState& init, double t_end, double dt);

}  // namespace vcavity
