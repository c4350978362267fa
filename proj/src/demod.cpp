#include "pulsedemod/demod.hpp"

#include <cmath>
#include <stdexcept>

namespace pulsedemod {

namespace {

void check_demod_input(const IQSeries& iq) {
    if (iq.size() < 2) {
        throw std::invalid_argument("demodulation needs at least 2 samples");
    }
}

double sample_power(const IQSample& s) {
    return s.i * s.i + s.q * s.q;
}

} // namespace

PhaseSeries demod_ad(const IQSeries& iq, bool two_argument) {
    check_demod_input(iq);
    const std::vector<IQSample>& s = iq.samples();
    std::vector<double> phi(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (sample_power(s[k]) < kMinSamplePower) {
            throw NumericError("undefined phase at sample " + std::to_string(k));
        }
        phi[k] = two_argument ? std::atan2(s[k].q, s[k].i) : std::atan(s[k].q / s[k].i);
    }
    const double period = two_argument ? 2.0 * kPi : kPi;
    return unwrap(PhaseSeries(iq.sampling_rate_hz(), std::move(phi)), period);
}

PhaseSeries unwrap(const PhaseSeries& phase, double period_rad) {
    if (!(period_rad > 0.0)) {
        throw std::invalid_argument("unwrap period must be positive");
    }
    const std::vector<double>& v = phase.values();
    std::vector<double> out(v.size());
    if (!v.empty()) {
        out[0] = v[0];
        for (std::size_t k = 1; k < v.size(); ++k) {
            double d = v[k] - v[k - 1];
            // Map the difference into (-period/2, period/2].
            d -= period_rad * std::ceil(d / period_rad - 0.5);
            out[k] = out[k - 1] + d;
        }
    }
    return PhaseSeries(phase.sampling_rate_hz(), std::move(out));
}

PhaseSeries demod_dacm(const IQSeries& iq) {
    check_demod_input(iq);
    const std::vector<IQSample>& s = iq.samples();
    if (sample_power(s[0]) < kMinSamplePower) {
        throw NumericError("undefined phase at sample 0");
    }
    std::vector<double> out(s.size());
    double phi = std::atan2(s[0].q, s[0].i);
    out[0] = phi;
    for (std::size_t k = 1; k < s.size(); ++k) {
        const double den = sample_power(s[k]);
        if (den < kMinSamplePower) {
            throw NumericError("undefined increment at sample " + std::to_string(k));
        }
        const double dq = s[k].q - s[k - 1].q;
        const double di = s[k].i - s[k - 1].i;
        phi += (s[k].i * dq - s[k].q * di) / den;
        out[k] = phi;
    }
    return PhaseSeries(iq.sampling_rate_hz(), std::move(out));
}

double bert_increment(IQSample prev, IQSample cur) {
    const double den = sample_power(cur);
    if (den < kMinSamplePower) {
        throw NumericError("undefined increment: current sample has near-zero magnitude");
    }
    return (cur.q * prev.i - cur.i * prev.q) / den;
}

PhaseSeries demod_bert(const IQSeries& iq) {
    check_demod_input(iq);
    return PhaseSeries(iq.sampling_rate_hz(),
                       detail::bert_scan(iq.samples().data(), iq.size()));
}

DriftCorrection estimate_drift(const PhaseSeries& phase, std::size_t window_begin,
                               std::size_t window_end) {
    if (phase.size() < 10) {
        throw std::invalid_argument("drift estimation needs at least 10 samples");
    }
    window_end = std::min(window_end, phase.size());
    if (window_begin >= window_end || window_end - window_begin < 2) {
        throw std::invalid_argument("drift window must contain at least 2 samples");
    }
    const std::vector<double>& v = phase.values();
    const double m = static_cast<double>(window_end - window_begin);

    double mean_n = 0.0, mean_y = 0.0;
    for (std::size_t k = window_begin; k < window_end; ++k) {
        mean_n += static_cast<double>(k);
        mean_y += v[k];
    }
    mean_n /= m;
    mean_y /= m;

    double snn = 0.0, sny = 0.0;
    for (std::size_t k = window_begin; k < window_end; ++k) {
        const double dn = static_cast<double>(k) - mean_n;
        snn += dn * dn;
        sny += dn * (v[k] - mean_y);
    }
    const double slope = sny / snn; // rad per sample
    return DriftCorrection(std::atan(slope), window_begin, window_end);
}

PhaseSeries compensate_drift(const PhaseSeries& phase, const DriftCorrection& corr) {
    const std::vector<double>& v = phase.values();
    const double c = std::cos(corr.delta_rad());
    const double s = std::sin(corr.delta_rad());
    std::vector<double> out(v.size());
    if (!v.empty()) {
        const double phi0 = v[0];
        for (std::size_t k = 0; k < v.size(); ++k) {
            out[k] = (v[k] - phi0) * c - static_cast<double>(k) * s + phi0;
        }
    }
    return PhaseSeries(phase.sampling_rate_hz(), std::move(out));
}

DisplacementSeries phase_to_displacement(const PhaseSeries& phase, const RadarConfig& cfg) {
    const double meters_per_radian = cfg.wavelength_m() / (4.0 * kPi);
    std::vector<double> x(phase.size());
    for (std::size_t k = 0; k < phase.size(); ++k) {
        x[k] = meters_per_radian * phase.values()[k];
    }
    return DisplacementSeries(phase.sampling_rate_hz(), std::move(x));
}

} // namespace pulsedemod
