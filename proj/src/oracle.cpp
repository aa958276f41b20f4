#include "vcavity/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vcavity/propagator.hpp"

namespace vcavity {

namespace {

constexpr Complex kI{0.0, 1.0};

// Accuracy guard: dt * (fastest rate) must stay below this.
constexpr double kStepFactor = 0.05;

OracleState advance(const OracleState& s, const OracleDerivative& d, double h) {
  OracleState out;
  out.c = {s.c.c1a + h * d.dc.c1a, s.c.c1b + h * d.dc.c1b, s.c.c2a + h * d.dc.c2a, s.c.c2b + h * d.dc.c2b};
  out.z_a = s.z_a + h * d.dz_a;
  out.z_b = s.z_b + h * d.dz_b;
  out.t = s.t + h;
  return out;
}

OracleDerivative combine(const OracleDerivative& k1, const OracleDerivative& k2, const OracleDerivative& k3,
                         const OracleDerivative& k4) {
  auto mix = [](Complex a, Complex b, Complex c, Complex d) { return (a + 2.0 * b + 2.0 * c + d) / 6.0; };
  return {
      {mix(k1.dc.c1a, k2.dc.c1a, k3.dc.c1a, k4.dc.c1a), mix(k1.dc.c1b, k2.dc.c1b, k3.dc.c1b, k4.dc.c1b),
       mix(k1.dc.c2a, k2.dc.c2a, k3.dc.c2a, k4.dc.c2a), mix(k1.dc.c2b, k2.dc.c2b, k3.dc.c2b, k4.dc.c2b)},
      mix(k1.dz_a, k2.dz_a, k3.dz_a, k4.dz_a),
      mix(k1.dz_b, k2.dz_b, k3.dz_b, k4.dz_b),
  };
}

}  // namespace

OracleDerivative rhs(const OracleState& s, const ModelParams& params) {
  const double coupling = params.gamma0 * params.kappa / 2.0;
  const Complex rotation = -2.0 * kI * params.omega_dd;
  const Complex memory_a = -coupling * (s.z_a + params.theta * s.z_b);
  const Complex memory_b = -coupling * (s.z_b + params.theta * s.z_a);

  OracleDerivative d;
  d.dc.c1a = memory_a + rotation * s.c.c1a;
  d.dc.c2a = memory_a + rotation * s.c.c2a;
  d.dc.c1b = memory_b + rotation * s.c.c1b;
  d.dc.c2b = memory_b + rotation * s.c.c2b;
  d.dz_a = -params.kappa * s.z_a + (s.c.c1a + s.c.c2a);
  d.dz_b = -params.kappa * s.z_b + (s.c.c1b + s.c.c2b);
  return d;
}

double max_stable_step(const ModelParams& params) {
  const double fastest = std::max({params.kappa, params.gamma0, 2.0 * params.omega_dd, 1.0});
  return kStepFactor / fastest;
}

std::vector<AmplitudeSet> integrate(const ModelParams& params, const InitialState& init, double t_end,
                                    double dt) {
  require_valid(params, init);
  if (!(dt > 0.0) || dt > max_stable_step(params)) {
    std::ostringstream os;
    os << "dt = " << dt << " exceeds the limit " << max_stable_step(params);
    throw Error(ErrorCode::StepTooLarge, os.str());
  }
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
    throw Error(ErrorCode::InvalidSpec, "t_end must be finite and >= 0");
  }

  // Small tolerance so t_end = n * dt is not lost to rounding in the division.
  const auto steps = static_cast<std::size_t>(std::floor(t_end / dt * (1.0 + 1e-12)));
  std::vector<AmplitudeSet> out;
  out.reserve(steps + 1);

  OracleState s;
  s.c = init;
  out.push_back({s.c, 0.0});
  for (std::size_t n = 1; n <= steps; ++n) {
    const OracleDerivative k1 = rhs(s, params);
    const OracleDerivative k2 = rhs(advance(s, k1, dt / 2.0), params);
    const OracleDerivative k3 = rhs(advance(s, k2, dt / 2.0), params);
    const OracleDerivative k4 = rhs(advance(s, k3, dt), params);
    s = advance(s, combine(k1, k2, k3, k4), dt);
    s.t = static_cast<double>(n) * dt;
    out.push_back({s.c, s.t});
  }
  return out;
}

double cross_validate(const ModelParams& params, const InitialState& init, double t_end, double dt) {
  double worst = 0.0;
  for (const AmplitudeSet& numeric : integrate(params, init, t_end, dt)) {
    const auto exact = propagate(params, init, numeric.time).amps.as_array();
    const auto approx = numeric.amps.as_array();
    for (std::size_t i = 0; i < exact.size(); ++i) worst = std::max(worst, std::abs(exact[i] - approx[i]));
  }
  return worst;
}

double richardson_order(const ModelParams& params, const InitialState& init, double t_end, double dt) {
  const double coarse = cross_validate(params, init, t_end, dt);
  const double fine = cross_validate(params, init, t_end, dt / 2.0);
  return std::log2(coarse / fine);
}

}  // namespace vcavity
