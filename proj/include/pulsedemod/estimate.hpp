#pragma once

// Extraction of breathing rate, heart rate, RR intervals and HRV indices
// from a measured phase series.

#include <optional>

#include "pulsedemod/types.hpp"

namespace pulsedemod {

/// Default analysis bands (Hz). Cardiorespiratory vibration stays below
/// 1.7 Hz; the split separates breathing from heartbeat.
inline constexpr double kBreathBandLowHz = 0.1;
inline constexpr double kBreathBandHighHz = 0.7;
inline constexpr double kHeartBandLowHz = 0.8;
inline constexpr double kHeartBandHighHz = 1.7;

/// Zero-phase FIR bandpass: Hamming windowed-sinc (>= 40 dB stopband)
/// applied forward and backward with odd-reflection padding. Output length
/// equals input length.
PhaseSeries bandpass(const PhaseSeries& series, double low_hz, double high_hz);

/// In-band magnitude-spectrum peak frequency: mean removal, cosine taper,
/// FFT, then quadratic interpolation of the three bins around the peak.
/// The series is prescaled by a power of two so the result is independent of
/// overall amplitude.
double estimate_rate_spectral(const PhaseSeries& series, double low_hz, double high_hz);

/// Local-maximum beat detector on a heart-band series: adaptive threshold
/// (0.3 x rolling RMS over 5 s) with a 1/(1.7 Hz * 1.2) refractory period.
/// Returns successive peak-time differences in ms.
RRSeries detect_heartbeats(const PhaseSeries& series);

/// The five time-domain indices. With d_k = rr_{k+1} - rr_k:
///   nnvgr = mean(rr)                sdnn = population std(rr)
///   rmssd = sqrt(mean(d^2))         sdsd = population std(d)
///   pnn50 = 100 * #{|d| > 50 ms} / #d
HRVReport hrv_indices(const RRSeries& rr);

/// Per-index relative errors |measured - reference| / reference; indices
/// whose reference value is zero are reported as undefined (nullopt).
struct HRVRelativeError {
    std::optional<double> nnvgr;
    std::optional<double> sdnn;
    std::optional<double> rmssd;
    std::optional<double> sdsd;
    std::optional<double> pnn50;
};

HRVRelativeError relative_error_radial(const HRVReport& reference, const HRVReport& measured);

} // namespace pulsedemod
