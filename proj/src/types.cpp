#include "pulsedemod/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pulsedemod {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) {
        throw std::invalid_argument(msg);
    }
}

bool all_finite(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

} // namespace

RadarConfig::RadarConfig(double carrier_frequency_hz, double path_phase_rad)
    : carrier_frequency_hz_(carrier_frequency_hz),
      wavelength_m_(kSpeedOfLight / carrier_frequency_hz),
      path_phase_rad_(path_phase_rad) {
    require(std::isfinite(carrier_frequency_hz) && carrier_frequency_hz > 0.0,
            "carrier frequency must be positive");
    require(std::isfinite(path_phase_rad), "path phase must be finite");
}

VSParams::VSParams(double breathing_amplitude_m, double breathing_frequency_hz,
                   double heartbeat_amplitude_m, double heartbeat_frequency_hz,
                   double breathing_phase_rad, double heartbeat_phase_rad)
    : breathing_amplitude_m_(breathing_amplitude_m),
      breathing_frequency_hz_(breathing_frequency_hz),
      heartbeat_amplitude_m_(heartbeat_amplitude_m),
      heartbeat_frequency_hz_(heartbeat_frequency_hz),
      breathing_phase_rad_(breathing_phase_rad),
      heartbeat_phase_rad_(heartbeat_phase_rad) {
    constexpr double kMaxDisplacement = 12e-3; // chest-wall micromotion bound
    require(std::isfinite(breathing_amplitude_m) && breathing_amplitude_m >= 0.0 &&
                breathing_amplitude_m <= kMaxDisplacement,
            "breathing amplitude must be in [0, 12 mm]");
    require(std::isfinite(heartbeat_amplitude_m) && heartbeat_amplitude_m >= 0.0 &&
                heartbeat_amplitude_m <= kMaxDisplacement,
            "heartbeat amplitude must be in [0, 12 mm]");
    require(breathing_amplitude_m + heartbeat_amplitude_m <= kMaxDisplacement,
            "combined peak displacement must not exceed 12 mm");
    require(std::isfinite(breathing_frequency_hz) && breathing_frequency_hz > 0.0 &&
                breathing_frequency_hz < 0.7,
            "breathing frequency must be in (0, 0.7) Hz");
    require(std::isfinite(heartbeat_frequency_hz) && heartbeat_frequency_hz > 0.0 &&
                heartbeat_frequency_hz < 1.7,
            "heartbeat frequency must be in (0, 1.7) Hz");
    require(std::isfinite(breathing_phase_rad) && std::isfinite(heartbeat_phase_rad),
            "phases must be finite");
}

IQSeries::IQSeries(double sampling_rate_hz, std::vector<IQSample> samples)
    : sampling_rate_hz_(sampling_rate_hz), samples_(std::move(samples)) {
    require(std::isfinite(sampling_rate_hz) && sampling_rate_hz > 0.0,
            "sampling rate must be positive");
    for (const IQSample& s : samples_) {
        require(std::isfinite(s.i) && std::isfinite(s.q), "IQ samples must be finite");
    }
}

PhaseSeries::PhaseSeries(double sampling_rate_hz, std::vector<double> values_rad)
    : sampling_rate_hz_(sampling_rate_hz), values_(std::move(values_rad)) {
    require(std::isfinite(sampling_rate_hz) && sampling_rate_hz > 0.0,
            "sampling rate must be positive");
    require(all_finite(values_), "phase values must be finite");
}

DisplacementSeries::DisplacementSeries(double sampling_rate_hz, std::vector<double> values_m)
    : sampling_rate_hz_(sampling_rate_hz), values_(std::move(values_m)) {
    require(std::isfinite(sampling_rate_hz) && sampling_rate_hz > 0.0,
            "sampling rate must be positive");
    require(all_finite(values_), "displacement values must be finite");
}

MGMParams::MGMParams(double beta, double sigma_rad, std::uint64_t seed)
    : beta_(beta), sigma_rad_(sigma_rad), seed_(seed) {
    require(std::isfinite(beta) && beta >= 0.0, "beta must be >= 0");
    require(std::isfinite(sigma_rad) && sigma_rad >= 0.0, "sigma must be >= 0");
}

MGMDiagnostics::MGMDiagnostics(double increment_mean_rad, double increment_variance_rad2,
                               double upsilon_low, double upsilon_high)
    : increment_mean_rad_(increment_mean_rad),
      increment_variance_rad2_(increment_variance_rad2),
      upsilon_low_(upsilon_low),
      upsilon_high_(upsilon_high) {
    require(std::isfinite(increment_mean_rad) && std::isfinite(increment_variance_rad2),
            "diagnostics must be finite");
    require(increment_variance_rad2 >= 0.0, "increment variance must be >= 0");
    require(std::isfinite(upsilon_low) && std::isfinite(upsilon_high) &&
                upsilon_low <= upsilon_high,
            "upsilon bounds must satisfy low <= high");
}

DriftCorrection::DriftCorrection(double delta_rad, std::size_t window_begin,
                                 std::size_t window_end)
    : delta_rad_(delta_rad), window_begin_(window_begin), window_end_(window_end) {
    require(std::isfinite(delta_rad) && std::abs(delta_rad) < kPi / 2.0,
            "drift angle must satisfy |delta| < pi/2");
    require(window_begin < window_end, "drift window must be non-empty");
}

RRSeries::RRSeries(std::vector<double> intervals_ms, bool enforce_plausibility)
    : intervals_ms_(std::move(intervals_ms)) {
    for (double v : intervals_ms_) {
        require(std::isfinite(v) && v > 0.0, "RR intervals must be positive");
        if (enforce_plausibility) {
            require(v >= kPlausibleMinMs && v <= kPlausibleMaxMs,
                    "RR interval outside the plausible 250..3000 ms band");
        }
    }
}

HRVReport::HRVReport(double nnvgr_ms, double sdnn_ms, double rmssd_ms, double sdsd_ms,
                     double pnn50_pct)
    : nnvgr_ms_(nnvgr_ms),
      sdnn_ms_(sdnn_ms),
      rmssd_ms_(rmssd_ms),
      sdsd_ms_(sdsd_ms),
      pnn50_pct_(pnn50_pct) {
    require(std::isfinite(nnvgr_ms) && nnvgr_ms >= 0.0, "nnvgr must be >= 0");
    require(std::isfinite(sdnn_ms) && sdnn_ms >= 0.0, "sdnn must be >= 0");
    require(std::isfinite(rmssd_ms) && rmssd_ms >= 0.0, "rmssd must be >= 0");
    require(std::isfinite(sdsd_ms) && sdsd_ms >= 0.0, "sdsd must be >= 0");
    require(std::isfinite(pnn50_pct) && pnn50_pct >= 0.0 && pnn50_pct <= 100.0,
            "pnn50 must be in [0, 100]");
}

BenchReport::BenchReport(std::string method_name, std::size_t samples_processed,
                         std::vector<double> wall_times_s,
                         std::optional<double> rmse_vs_truth_rad)
    : method_name_(std::move(method_name)),
      samples_processed_(samples_processed),
      wall_times_s_(std::move(wall_times_s)),
      rmse_vs_truth_rad_(rmse_vs_truth_rad) {
    require(samples_processed_ >= 2, "samples processed must be >= 2");
    require(!wall_times_s_.empty(), "at least one wall time is required");
    for (double t : wall_times_s_) {
        require(std::isfinite(t) && t > 0.0, "wall times must be positive");
    }
    if (rmse_vs_truth_rad_) {
        require(std::isfinite(*rmse_vs_truth_rad_) && *rmse_vs_truth_rad_ >= 0.0,
                "rmse must be >= 0");
    }
}

double BenchReport::min_s() const {
    return *std::min_element(wall_times_s_.begin(), wall_times_s_.end());
}

double BenchReport::median_s() const {
    std::vector<double> t = wall_times_s_;
    std::sort(t.begin(), t.end());
    const std::size_t n = t.size();
    return (n % 2 == 1) ? t[n / 2] : 0.5 * (t[n / 2 - 1] + t[n / 2]);
}

double BenchReport::mean_s() const {
    return std::accumulate(wall_times_s_.begin(), wall_times_s_.end(), 0.0) /
           static_cast<double>(wall_times_s_.size());
}

BenchReport BenchReport::with_rmse(double rmse_rad) const {
    return BenchReport(method_name_, samples_processed_, wall_times_s_, rmse_rad);
}

} // namespace pulsedemod
