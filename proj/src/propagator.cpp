#include "vcavity/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vcavity {

namespace {

constexpr Complex kI{0.0, 1.0};

double channel_rate(const ModelParams& params, Branch branch) {
  const double sign = branch == Branch::Plus ? 1.0 : -1.0;
  return params.gamma0 * (1.0 + sign * params.theta);
}

// sinh(z) / z, accurate near the removable singularity.
Complex sinhc(Complex z) {
  if (std::abs(z) < 1e-4) {
    const Complex z2 = z * z;
    return 1.0 + z2 / 6.0 + z2 * z2 / 120.0;
  }
  return std::sinh(z) / z;
}

// Past this |Re(D t / 2)| the cosh/sinh form risks overflow before the
// envelope damps it; below it the split-exponential form cancels badly.
constexpr double kSplitThreshold = 20.0;

}  // namespace

Complex d_pm(const ModelParams& params, Branch branch) {
  const double kappa = params.kappa;
  const Complex drive = kappa + 2.0 * kI * params.omega_dd;
  const Complex disc =
      drive * drive - 4.0 * (2.0 * kI * params.omega_dd * kappa + kappa * channel_rate(params, branch));
  Complex root = std::sqrt(disc);
  if (root.real() == 0.0 && root.imag() < 0.0) root = -root;
  if (root.real() < 0.0) root = -root;
  return root;
}

Complex g_pm(const ModelParams& params, Branch branch, double t) {
  const double kappa = params.kappa;
  const Complex a = kappa - 2.0 * kI * params.omega_dd;
  const Complex envelope_rate = -(kappa + 2.0 * kI * params.omega_dd) / 2.0;
  const Complex d = d_pm(params, branch);

  if (std::abs(d) < 1e-8 * kappa) {
    return std::exp(envelope_rate * t) * (1.0 + a * t / 2.0);
  }

  const Complex x = d * t / 2.0;
  if (std::abs(x.real()) < kSplitThreshold) {
    return std::exp(envelope_rate * t) * (std::cosh(x) + a * (t / 2.0) * sinhc(x));
  }

  // Both exponents have non-positive real part for physical parameters.
  const Complex ratio = a / d;
  return 0.5 * (1.0 + ratio) * std::exp((d - kappa - 2.0 * kI * params.omega_dd) * t / 2.0) +
         0.5 * (1.0 - ratio) * std::exp((-d - kappa - 2.0 * kI * params.omega_dd) * t / 2.0);
}

PropagatorCoeffs q_coeffs(const ModelParams& params, double t) {
  const Complex gp = g_pm(params, Branch::Plus, t);
  const Complex gm = g_pm(params, Branch::Minus, t);
  return {(gp + gm) / 4.0, (gp - gm) / 4.0, std::exp(-2.0 * kI * params.omega_dd * t) / 2.0};
}

namespace {

Amplitudes apply_coeffs(const PropagatorCoeffs& q, const InitialState& c) {
  const Complex sum_a = c.c1a + c.c2a;
  const Complex sum_b = c.c1b + c.c2b;
  return {
      .c1a = q.q1 * sum_a + q.q2 * sum_b + q.q3 * (c.c1a - c.c2a),
      .c1b = q.q2 * sum_a + q.q1 * sum_b + q.q3 * (c.c1b - c.c2b),
      .c2a = q.q1 * sum_a + q.q2 * sum_b + q.q3 * (c.c2a - c.c1a),
      .c2b = q.q2 * sum_a + q.q1 * sum_b + q.q3 * (c.c2b - c.c1b),
  };
}

}  // namespace

AmplitudeSet propagate(const ModelParams& params, const InitialState& init, double t) {
  if (t == 0.0) return {init, 0.0};
  return {apply_coeffs(q_coeffs(params, t), init), t};
}

AmplitudeSet steady_amplitudes(const ModelParams& params, const InitialState& init) {
  require_valid(params);
  if (params.gamma0 == 0.0) {
    throw Error(ErrorCode::NoSteadyState, "gamma0 = 0: amplitudes never relax");
  }
  // A channel with zero effective rate keeps G = exp(-2i Omega t), which is
  // the stripped global phase; every other channel decays to zero.
  const double gp = channel_rate(params, Branch::Plus) == 0.0 ? 1.0 : 0.0;
  const double gm = channel_rate(params, Branch::Minus) == 0.0 ? 1.0 : 0.0;
  const PropagatorCoeffs q{(gp + gm) / 4.0, (gp - gm) / 4.0, 0.5};
  return {apply_coeffs(q, init), std::numeric_limits<double>::infinity()};
}

double slowest_decay_rate(const ModelParams& params) {
  double slowest = std::numeric_limits<double>::infinity();
  for (Branch branch : {Branch::Plus, Branch::Minus}) {
    if (channel_rate(params, branch) <= 0.0) continue;
    const Complex d = d_pm(params, branch);
    const Complex centre = -(params.kappa + 2.0 * kI * params.omega_dd) / 2.0;
    const double rate = std::min(-(centre + d / 2.0).real(), -(centre - d / 2.0).real());
    slowest = std::min(slowest, rate);
  }
  return std::isinf(slowest) ? 0.0 : slowest;
}

}  // namespace vcavity
