#pragma once

// Synthetic signal generation: ground-truth displacement, the corresponding
// compensated (optionally impaired) IQ series, and a Markov-Gauss phase
// propagator used for model diagnostics and statistical tests.

#include <cstdint>

#include "pulsedemod/types.hpp"

namespace pulsedemod {

/// Additive receiver impairments applied when converting displacement to IQ.
/// Defaults give the ideal unit-amplitude, DC-free constellation.
struct Impairments {
    double noise_sigma = 0.0; // std-dev of independent Gaussian noise on I and Q
    double amplitude = 1.0;   // constellation radius, must be > 0
    double dc_i = 0.0;
    double dc_q = 0.0;
};

/// x_n = A_b sin(2 pi f_b t_n + phi_b) + A_h sin(2 pi f_h t_n + phi_h),
/// sampled at t_n = n / fs for n = 0 .. round(duration*fs) - 1.
DisplacementSeries synth_displacement(const VSParams& params, double sampling_rate_hz,
                                      double duration_s);

/// i_n = A cos(theta + 4 pi x_n / lambda) + dc_i + noise,
/// q_n = A sin(theta + 4 pi x_n / lambda) + dc_q + noise.
/// Noise draws are reproducible from the seed (I then Q, per sample).
IQSeries displacement_to_iq(const DisplacementSeries& x, const RadarConfig& cfg,
                            const Impairments& impairments = {}, std::uint64_t seed = 0);

/// Propagates the Markov-Gauss phase recursion for `count` values starting at
/// phi0, advancing `step_gap` sample indices per step:
///
///   phi_n = phi_m exp(-beta g) + G sqrt( sigma^2/(2 beta) [1 - exp(-2 beta g^2)] )
///
/// with g = step_gap and G a standard normal draw. The beta -> 0 limit is
/// taken analytically (the noise scale becomes sigma * g), which for g = 1 is
/// the plain random-walk form phi_n = phi_{n-1} + sigma G_{n-1}.
PhaseSeries mgm_propagate(double phi0_rad, const MGMParams& params, std::size_t step_gap,
                          std::size_t count);

/// Empirical mean/variance of the first differences plus the variance-shift
/// range upsilon = 0.5 +/- 2*mean(phi) (bounds ordered low <= high).
MGMDiagnostics mgm_diagnostics(const PhaseSeries& phase);

} // namespace pulsedemod
