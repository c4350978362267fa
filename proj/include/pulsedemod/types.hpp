#pragma once

// Shared domain types for the bioradar vital-signs pipeline. Types are
// immutable after construction and every constructor enforces its invariants,
// so downstream code never re-validates.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pulsedemod {

inline constexpr double kSpeedOfLight = 299'792'458.0; // m/s
inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Samples with squared magnitude below this are treated as having undefined
// phase (deterministic failure instead of silent infinities).
inline constexpr double kMinSamplePower = 1e-24;

struct IQSample {
    double i = 0.0;
    double q = 0.0;
};

/// Carrier and geometry constants of the radar front end. The wavelength is
/// derived from the carrier, so wavelength * carrier == c by construction.
class RadarConfig {
public:
    explicit RadarConfig(double carrier_frequency_hz, double path_phase_rad = 0.0);

    double carrier_frequency_hz() const { return carrier_frequency_hz_; }
    double wavelength_m() const { return wavelength_m_; }
    /// Constant phase shift accumulated along the travel path (theta).
    double path_phase_rad() const { return path_phase_rad_; }

private:
    double carrier_frequency_hz_;
    double wavelength_m_;
    double path_phase_rad_;
};

/// Ground-truth cardiorespiratory motion parameters: two sinusoidal
/// components, breathing and heartbeat. Amplitudes are bounded by the
/// physical chest-wall micromotion range (combined peak <= 12 mm).
class VSParams {
public:
    VSParams(double breathing_amplitude_m, double breathing_frequency_hz,
             double heartbeat_amplitude_m, double heartbeat_frequency_hz,
             double breathing_phase_rad = 0.0, double heartbeat_phase_rad = 0.0);

    double breathing_amplitude_m() const { return breathing_amplitude_m_; }
    double breathing_frequency_hz() const { return breathing_frequency_hz_; }
    double heartbeat_amplitude_m() const { return heartbeat_amplitude_m_; }
    double heartbeat_frequency_hz() const { return heartbeat_frequency_hz_; }
    double breathing_phase_rad() const { return breathing_phase_rad_; }
    double heartbeat_phase_rad() const { return heartbeat_phase_rad_; }

private:
    double breathing_amplitude_m_;
    double breathing_frequency_hz_;
    double heartbeat_amplitude_m_;
    double heartbeat_frequency_hz_;
    double breathing_phase_rad_;
    double heartbeat_phase_rad_;
};

/// Uniformly sampled I/Q pairs. Values must be finite; demodulators
/// additionally require length >= 2.
class IQSeries {
public:
    IQSeries(double sampling_rate_hz, std::vector<IQSample> samples);

    double sampling_rate_hz() const { return sampling_rate_hz_; }
    const std::vector<IQSample>& samples() const { return samples_; }
    std::size_t size() const { return samples_.size(); }

private:
    double sampling_rate_hz_;
    std::vector<IQSample> samples_;
};

/// Demodulated phase in radians on the same time base as its source series.
class PhaseSeries {
public:
    PhaseSeries(double sampling_rate_hz, std::vector<double> values_rad);

    double sampling_rate_hz() const { return sampling_rate_hz_; }
    const std::vector<double>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }

private:
    double sampling_rate_hz_;
    std::vector<double> values_;
};

/// Chest-wall displacement in meters; the canonical ground truth from which
/// phase truth is derived as (4*pi/lambda) * x.
class DisplacementSeries {
public:
    DisplacementSeries(double sampling_rate_hz, std::vector<double> values_m);

    double sampling_rate_hz() const { return sampling_rate_hz_; }
    const std::vector<double>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }

private:
    double sampling_rate_hz_;
    std::vector<double> values_;
};

/// Parameters of the Markov-Gauss phase model: per-sample discrete factor
/// beta (larger beta, lower correlation between neighbours), Gauss process
/// scale sigma, and the RNG seed.
class MGMParams {
public:
    MGMParams(double beta, double sigma_rad, std::uint64_t seed);

    double beta() const { return beta_; }
    double sigma_rad() const { return sigma_rad_; }
    std::uint64_t seed() const { return seed_; }

private:
    double beta_;
    double sigma_rad_;
    std::uint64_t seed_;
};

/// Empirical first-difference moments of a phase series plus the moving
/// variance-shift range upsilon = 0.5 +/- 2*E(phi).
class MGMDiagnostics {
public:
    MGMDiagnostics(double increment_mean_rad, double increment_variance_rad2,
                   double upsilon_low, double upsilon_high);

    double increment_mean_rad() const { return increment_mean_rad_; }
    double increment_variance_rad2() const { return increment_variance_rad2_; }
    double upsilon_low() const { return upsilon_low_; }
    double upsilon_high() const { return upsilon_high_; }

private:
    double increment_mean_rad_;
    double increment_variance_rad2_;
    double upsilon_low_;
    double upsilon_high_;
};

/// Estimated linear-drift angle of a phase trajectory, with the sample-index
/// window the fit was computed over. |delta| < pi/2.
class DriftCorrection {
public:
    DriftCorrection(double delta_rad, std::size_t window_begin, std::size_t window_end);

    double delta_rad() const { return delta_rad_; }
    std::size_t window_begin() const { return window_begin_; }
    std::size_t window_end() const { return window_end_; }

private:
    double delta_rad_;
    std::size_t window_begin_;
    std::size_t window_end_;
};

/// Beat-to-beat intervals in milliseconds. By default construction enforces
/// the physiological plausibility band 250..3000 ms (20..240 bpm); pass
/// enforce_plausibility = false to accept any positive intervals.
class RRSeries {
public:
    explicit RRSeries(std::vector<double> intervals_ms, bool enforce_plausibility = true);

    const std::vector<double>& intervals_ms() const { return intervals_ms_; }
    std::size_t size() const { return intervals_ms_.size(); }

    static constexpr double kPlausibleMinMs = 250.0;
    static constexpr double kPlausibleMaxMs = 3000.0;

private:
    std::vector<double> intervals_ms_;
};

/// The five time-domain HRV indices. NNVGR is the mean RR interval; the
/// remaining four follow the standard time-domain definitions.
class HRVReport {
public:
    HRVReport(double nnvgr_ms, double sdnn_ms, double rmssd_ms, double sdsd_ms,
              double pnn50_pct);

    double nnvgr_ms() const { return nnvgr_ms_; }
    double sdnn_ms() const { return sdnn_ms_; }
    double rmssd_ms() const { return rmssd_ms_; }
    double sdsd_ms() const { return sdsd_ms_; }
    double pnn50_pct() const { return pnn50_pct_; }

private:
    double nnvgr_ms_;
    double sdnn_ms_;
    double rmssd_ms_;
    double sdsd_ms_;
    double pnn50_pct_;
};

/// Wall-clock measurements for one demodulation method: one time per timed
/// repetition (warmup runs excluded) plus the optional phase RMSE vs truth.
class BenchReport {
public:
    BenchReport(std::string method_name, std::size_t samples_processed,
                std::vector<double> wall_times_s,
                std::optional<double> rmse_vs_truth_rad = std::nullopt);

    const std::string& method_name() const { return method_name_; }
    std::size_t samples_processed() const { return samples_processed_; }
    const std::vector<double>& wall_times_s() const { return wall_times_s_; }
    std::optional<double> rmse_vs_truth_rad() const { return rmse_vs_truth_rad_; }

    double min_s() const;
    double median_s() const;
    double mean_s() const;

    /// Copy with the RMSE field set.
    BenchReport with_rmse(double rmse_rad) const;

private:
    std::string method_name_;
    std::size_t samples_processed_;
    std::vector<double> wall_times_s_;
    std::optional<double> rmse_vs_truth_rad_;
};

} // namespace pulsedemod
