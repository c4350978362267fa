#pragma once

// The three phase demodulators under comparison plus drift compensation and
// phase-to-displacement conversion.
//
//  - demod_ad:   per-sample arctangent followed by unwrapping.
//  - demod_dacm: differentiate-and-cross-multiply, accumulated.
//  - demod_bert: recursive accumulation of the cross-multiply increment
//                M_{n-1} = (Q_n I_{n-1} - I_n Q_{n-1}) / (I_n^2 + Q_n^2);
//                constant work per sample, no trigonometric calls after the
//                initial sample.

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "pulsedemod/errors.hpp"
#include "pulsedemod/types.hpp"

namespace pulsedemod {

/// Arctangent demodulation. Two-argument mode (default) uses atan2 with a
/// 2*pi unwrap period; single-argument mode uses atan(q/i) with period pi.
PhaseSeries demod_ad(const IQSeries& iq, bool two_argument = true);

/// Adjusts successive differences by integer multiples of `period` so each
/// lands in (-period/2, period/2]; the first value is unchanged.
PhaseSeries unwrap(const PhaseSeries& phase, double period_rad);

/// Forward-difference DACM: phi_0 from atan2, then
/// phi_n = phi_{n-1} + [I_n (Q_n - Q_{n-1}) - Q_n (I_n - I_{n-1})] / (I_n^2 + Q_n^2).
PhaseSeries demod_dacm(const IQSeries& iq);

/// One step of the recursive demodulator: M = (Q_n I_{n-1} - I_n Q_{n-1}) / (I_n^2 + Q_n^2).
double bert_increment(IQSample prev, IQSample cur);

/// phi_0 = atan(Q_0 / I_0); phi_n = phi_{n-1} + M_{n-1}.
PhaseSeries demod_bert(const IQSeries& iq);

/// Least-squares line fit of phi against sample index over [window_begin,
/// window_end) (defaults to the full series); delta = atan(slope) with the
/// axes normalized so one sample step spans one radian.
DriftCorrection estimate_drift(const PhaseSeries& phase, std::size_t window_begin = 0,
                               std::size_t window_end = std::numeric_limits<std::size_t>::max());

/// Rotates the trajectory points (n, phi_n) by -delta about the first point:
/// phi'_n = (phi_n - phi_0) cos(delta) - n sin(delta) + phi_0. A pure linear
/// trend maps to a constant.
PhaseSeries compensate_drift(const PhaseSeries& phase, const DriftCorrection& corr);

/// x_n = lambda * phi_n / (4 pi).
DisplacementSeries phase_to_displacement(const PhaseSeries& phase, const RadarConfig& cfg);

namespace detail {

// Core recursion, templated on the sample type so tests can instantiate it
// with an operation-counting scalar and verify the no-trig-after-init claim.
// `Sample` must expose members .i and .q; atan is found by ADL.
template <class Sample>
auto bert_scan(const Sample* samples, std::size_t n) {
    using S = decltype(Sample{}.i);
    using std::atan;
    std::vector<S> out(n);
    const S min_power(kMinSamplePower);
    S den0 = samples[0].i * samples[0].i + samples[0].q * samples[0].q;
    if (!(den0 >= min_power)) {
        throw NumericError("undefined phase at sample 0");
    }
    S phi = atan(samples[0].q / samples[0].i);
    out[0] = phi;
    for (std::size_t k = 1; k < n; ++k) {
        S den = samples[k].i * samples[k].i + samples[k].q * samples[k].q;
        if (!(den >= min_power)) {
            throw NumericError("undefined increment at sample " + std::to_string(k));
        }
        S num = samples[k].q * samples[k - 1].i - samples[k].i * samples[k - 1].q;
        phi = phi + num / den;
        out[k] = phi;
    }
    return out;
}

} // namespace detail

} // namespace pulsedemod
