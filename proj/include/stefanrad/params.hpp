#pragma once

namespace stefanrad {

/// Model parameters of the two-phase wave. All positive except c >= 0.
struct WaveParams {
  double c = 0.0;      // wave speed
  double T_M = 1.0;    // melting temperature
  double alpha = 1.0;  // absorption coefficient
  double kappa = 1.0;  // liquid diffusivity
  double K = 1.0;      // conductivity ratio
  double L = 1.0;      // latent heat
};

/// Throws ConfigError naming the first invalid field. A negative speed is
/// rejected because no bounded wave exists for c < 0.
void validate(const WaveParams& p);

}  // namespace stefanrad
