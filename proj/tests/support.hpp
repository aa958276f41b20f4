#pragma once

#include <cmath>
#include <random>

#include "vcavity/model.hpp"

namespace vcavity::testing {

inline Complex random_complex(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  return {n(rng), n(rng)};
}

/// Uniform on the unit sphere of the four-amplitude space.
inline InitialState random_init(std::mt19937_64& rng) {
  Amplitudes a{random_complex(rng), random_complex(rng), random_complex(rng), random_complex(rng)};
  const double norm = std::sqrt(a.excited_norm());
  return {a.c1a / norm, a.c1b / norm, a.c2a / norm, a.c2b / norm};
}

/// Random single-excitation amplitudes with excited norm in [0, 1].
inline AmplitudeSet random_amplitudes(std::mt19937_64& rng) {
  const InitialState dir = random_init(rng);
  const double scale = std::sqrt(std::uniform_real_distribution<double>(0.0, 1.0)(rng));
  return {{dir.c1a * scale, dir.c1b * scale, dir.c2a * scale, dir.c2b * scale}, 0.0};
}

inline ModelParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ModelParams p;
  p.kappa = 1.0;
  p.gamma0 = std::pow(10.0, -2.0 + 3.0 * u(rng));  // 0.01 .. 10
  p.theta = -1.0 + 2.0 * u(rng);
  p.omega_dd = 12.0 * u(rng);
  return p;
}

}  // namespace vcavity::testing
