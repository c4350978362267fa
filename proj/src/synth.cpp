#include "pulsedemod/synth.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "pulsedemod/errors.hpp"

namespace pulsedemod {

DisplacementSeries synth_displacement(const VSParams& params, double sampling_rate_hz,
                                      double duration_s) {
    if (!(sampling_rate_hz > 0.0) || !(duration_s > 0.0)) {
        throw std::invalid_argument("sampling rate and duration must be positive");
    }
    const auto n = static_cast<std::size_t>(std::llround(duration_s * sampling_rate_hz));
    if (n < 2) {
        throw std::invalid_argument("duration * sampling_rate must be >= 2 samples");
    }
    const double wb = 2.0 * kPi * params.breathing_frequency_hz();
    const double wh = 2.0 * kPi * params.heartbeat_frequency_hz();
    std::vector<double> x(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) / sampling_rate_hz;
        x[k] = params.breathing_amplitude_m() * std::sin(wb * t + params.breathing_phase_rad()) +
               params.heartbeat_amplitude_m() * std::sin(wh * t + params.heartbeat_phase_rad());
    }
    return DisplacementSeries(sampling_rate_hz, std::move(x));
}

IQSeries displacement_to_iq(const DisplacementSeries& x, const RadarConfig& cfg,
                            const Impairments& impairments, std::uint64_t seed) {
    if (!(impairments.amplitude > 0.0)) {
        throw std::invalid_argument("constellation amplitude must be positive");
    }
    if (!(impairments.noise_sigma >= 0.0)) {
        throw std::invalid_argument("noise sigma must be >= 0");
    }
    const double phase_per_meter = 4.0 * kPi / cfg.wavelength_m();
    const double theta = cfg.path_phase_rad();
    const bool noisy = impairments.noise_sigma > 0.0;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, noisy ? impairments.noise_sigma : 1.0);

    std::vector<IQSample> out(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double phi = theta + phase_per_meter * x.values()[k];
        double i = impairments.amplitude * std::cos(phi) + impairments.dc_i;
        double q = impairments.amplitude * std::sin(phi) + impairments.dc_q;
        if (noisy) {
            i += gauss(rng); // I drawn before Q, per sample
            q += gauss(rng);
        }
        out[k] = IQSample{i, q};
    }
    return IQSeries(x.sampling_rate_hz(), std::move(out));
}

PhaseSeries mgm_propagate(double phi0_rad, const MGMParams& params, std::size_t step_gap,
                          std::size_t count) {
    if (count < 1) {
        throw std::invalid_argument("count must be >= 1");
    }
    if (step_gap < 1) {
        throw std::invalid_argument("step gap must be >= 1");
    }
    const double g = static_cast<double>(step_gap);
    const double beta = params.beta();
    const double sigma = params.sigma_rad();

    double decay;
    double noise_scale;
    if (beta == 0.0) {
        // Analytic beta -> 0 limit: sigma^2/(2 beta) [1 - exp(-2 beta g^2)] -> sigma^2 g^2.
        decay = 1.0;
        noise_scale = sigma * g;
    } else {
        decay = std::exp(-beta * g);
        noise_scale = sigma * std::sqrt((1.0 - std::exp(-2.0 * beta * g * g)) / (2.0 * beta));
    }

    std::mt19937_64 rng(params.seed());
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<double> phi(count);
    phi[0] = phi0_rad;
    for (std::size_t k = 1; k < count; ++k) {
        const double noise = (sigma > 0.0) ? noise_scale * gauss(rng) : 0.0;
        phi[k] = phi[k - 1] * decay + noise;
    }
    return PhaseSeries(1.0, std::move(phi));
}

MGMDiagnostics mgm_diagnostics(const PhaseSeries& phase) {
    const std::vector<double>& v = phase.values();
    if (v.size() < 3) {
        throw NumericError("diagnostics need at least 3 phase samples");
    }
    const std::size_t nd = v.size() - 1;
    double mean_inc = 0.0;
    for (std::size_t k = 1; k < v.size(); ++k) {
        mean_inc += v[k] - v[k - 1];
    }
    mean_inc /= static_cast<double>(nd);
    double var_inc = 0.0;
    for (std::size_t k = 1; k < v.size(); ++k) {
        const double d = (v[k] - v[k - 1]) - mean_inc;
        var_inc += d * d;
    }
    var_inc /= static_cast<double>(nd);

    double mean_phi = 0.0;
    for (double p : v) {
        mean_phi += p;
    }
    mean_phi /= static_cast<double>(v.size());

    const double a = 0.5 - 2.0 * mean_phi;
    const double b = 0.5 + 2.0 * mean_phi;
    return MGMDiagnostics(mean_inc, var_inc, std::min(a, b), std::max(a, b));
}

} // namespace pulsedemod
