#include "pulsedemod/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "pulsedemod/errors.hpp"

namespace pulsedemod {

namespace {

// Hamming-windowed sinc bandpass. Transition width is the smaller of the
// lower edge and half the band, which keeps the stopband (~53 dB for a
// Hamming window) clear of the neighbouring physiological band.
std::vector<double> design_bandpass(double fs, double low, double high) {
    const double transition = std::min(low, (high - low) / 2.0);
    auto taps = static_cast<std::size_t>(std::ceil(3.3 * fs / transition));
    if (taps % 2 == 0) {
        ++taps;
    }
    const double mid = static_cast<double>(taps - 1) / 2.0;
    auto sinc = [](double v) { return v == 0.0 ? 1.0 : std::sin(kPi * v) / (kPi * v); };
    std::vector<double> h(taps);
    for (std::size_t k = 0; k < taps; ++k) {
        const double n = static_cast<double>(k) - mid;
        const double lp_high = 2.0 * high / fs * sinc(2.0 * high / fs * n);
        const double lp_low = 2.0 * low / fs * sinc(2.0 * low / fs * n);
        const double w =
            0.54 - 0.46 * std::cos(2.0 * kPi * static_cast<double>(k) / static_cast<double>(taps - 1));
        h[k] = (lp_high - lp_low) * w;
    }
    return h;
}

// Convolution with symmetric h, 'same' alignment.
std::vector<double> convolve_same(const std::vector<double>& x, const std::vector<double>& h) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
    const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(h.size());
    const std::ptrdiff_t half = m / 2;
    std::vector<double> y(x.size(), 0.0);
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        double acc = 0.0;
        const std::ptrdiff_t j0 = std::max<std::ptrdiff_t>(0, k - (m - 1 - half));
        const std::ptrdiff_t j1 = std::min<std::ptrdiff_t>(n - 1, k + half);
        for (std::ptrdiff_t j = j0; j <= j1; ++j) {
            acc += x[j] * h[half + j - k];
        }
        y[k] = acc;
    }
    return y;
}

// In-place radix-2 FFT (decimation in time).
void fft(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) {
            j ^= bit;
        }
        j ^= bit;
        if (i < j) {
            std::swap(a[i], a[j]);
        }
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * kPi / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

double population_std(const std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) {
        mean += x;
    }
    mean /= static_cast<double>(v.size());
    double var = 0.0;
    for (double x : v) {
        var += (x - mean) * (x - mean);
    }
    return std::sqrt(var / static_cast<double>(v.size()));
}

} // namespace

PhaseSeries bandpass(const PhaseSeries& series, double low_hz, double high_hz) {
    const double fs = series.sampling_rate_hz();
    if (!(0.0 < low_hz && low_hz < high_hz && high_hz < fs / 2.0)) {
        throw std::invalid_argument("bandpass band must satisfy 0 < low < high < fs/2");
    }
    const std::vector<double>& x = series.values();
    const std::vector<double> h = design_bandpass(fs, low_hz, high_hz);
    const std::size_t pad = h.size() / 2 + 1;
    if (x.size() < 2 || pad >= x.size()) {
        throw NumericError("record too short for the requested band");
    }

    // Odd reflection about the endpoints keeps the forward-backward pass
    // free of edge steps.
    std::vector<double> padded;
    padded.reserve(x.size() + 2 * pad);
    for (std::size_t k = pad; k >= 1; --k) {
        padded.push_back(2.0 * x.front() - x[k]);
    }
    padded.insert(padded.end(), x.begin(), x.end());
    for (std::size_t k = 0; k < pad; ++k) {
        padded.push_back(2.0 * x.back() - x[x.size() - 2 - k]);
    }

    std::vector<double> y = convolve_same(padded, h);
    std::reverse(y.begin(), y.end());
    y = convolve_same(y, h);
    std::reverse(y.begin(), y.end());

    std::vector<double> out(y.begin() + static_cast<std::ptrdiff_t>(pad),
                            y.begin() + static_cast<std::ptrdiff_t>(pad + x.size()));
    return PhaseSeries(fs, std::move(out));
}

double estimate_rate_spectral(const PhaseSeries& series, double low_hz, double high_hz) {
    const double fs = series.sampling_rate_hz();
    if (!(0.0 < low_hz && low_hz < high_hz && high_hz < fs / 2.0)) {
        throw std::invalid_argument("band must satisfy 0 < low < high < fs/2");
    }
    const std::size_t n = series.size();
    if (static_cast<double>(n) / fs < 3.0 / low_hz) {
        throw NumericError("record shorter than three periods of the band's lower edge");
    }

    const std::vector<double>& v = series.values();
    double mean = 0.0;
    for (double x : v) {
        mean += x;
    }
    mean /= static_cast<double>(n);

    double max_abs = 0.0;
    for (double x : v) {
        max_abs = std::max(max_abs, std::abs(x - mean));
    }
    if (max_abs == 0.0) {
        throw NumericError("no peak: series is constant");
    }
    // Exact power-of-two prescale makes the result amplitude-independent.
    const double scale = std::exp2(-std::ceil(std::log2(max_abs)));

    std::size_t nfft = 1;
    while (nfft < n) {
        nfft <<= 1;
    }
    std::vector<std::complex<double>> spec(nfft, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const double taper =
            0.5 - 0.5 * std::cos(2.0 * kPi * static_cast<double>(k) / static_cast<double>(n - 1));
        spec[k] = (v[k] - mean) * scale * taper;
    }
    fft(spec);

    const double bin_hz = fs / static_cast<double>(nfft);
    const std::size_t k_lo = static_cast<std::size_t>(std::ceil(low_hz / bin_hz));
    const std::size_t k_hi =
        std::min(static_cast<std::size_t>(std::floor(high_hz / bin_hz)), nfft / 2);
    if (k_lo > k_hi) {
        throw NumericError("no peak: band contains no spectrum bins");
    }

    std::size_t peak = k_lo;
    double peak_mag = -1.0;
    for (std::size_t k = k_lo; k <= k_hi; ++k) {
        const double mag = std::norm(spec[k]);
        if (mag > peak_mag) {
            peak_mag = mag;
            peak = k;
        }
    }
    if (peak_mag <= 0.0) {
        throw NumericError("no peak: spectrum is zero in band");
    }

    // Quadratic refinement on log magnitude of the three bins around the peak.
    double offset = 0.0;
    if (peak > 0 && peak + 1 <= nfft / 2) {
        const double la = std::log(std::norm(spec[peak - 1]) + 1e-300);
        const double lb = std::log(peak_mag);
        const double lc = std::log(std::norm(spec[peak + 1]) + 1e-300);
        const double den = la - 2.0 * lb + lc;
        if (den < 0.0) {
            offset = 0.5 * (la - lc) / den;
            offset = std::clamp(offset, -0.5, 0.5);
        }
    }
    const double f = (static_cast<double>(peak) + offset) * bin_hz;
    return std::clamp(f, low_hz, high_hz);
}

RRSeries detect_heartbeats(const PhaseSeries& series) {
    const double fs = series.sampling_rate_hz();
    const std::vector<double>& v = series.values();
    const std::size_t n = v.size();
    if (n < 3) {
        throw NumericError("insufficient beats: series too short");
    }

    // Centered rolling RMS over 5 s via prefix sums of squares.
    const std::size_t win = std::max<std::size_t>(1, std::min<std::size_t>(
        n, static_cast<std::size_t>(std::llround(5.0 * fs))));
    std::vector<double> prefix(n + 1, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        prefix[k + 1] = prefix[k] + v[k] * v[k];
    }
    auto rolling_rms = [&](std::size_t k) {
        const std::size_t lo = (k >= win / 2) ? k - win / 2 : 0;
        const std::size_t hi = std::min(n, lo + win);
        const std::size_t m = hi - lo;
        return std::sqrt((prefix[hi] - prefix[lo]) / static_cast<double>(m));
    };

    const auto refractory =
        static_cast<std::size_t>(std::llround(fs / (1.7 * 1.2)));
    std::vector<std::size_t> peaks;
    for (std::size_t k = 1; k + 1 < n; ++k) {
        if (v[k] > v[k - 1] && v[k] >= v[k + 1] && v[k] >= 0.3 * rolling_rms(k)) {
            if (peaks.empty() || k - peaks.back() >= refractory) {
                peaks.push_back(k);
            }
        }
    }
    if (peaks.size() < 3) {
        throw NumericError("insufficient beats: fewer than 3 peaks detected");
    }

    std::vector<double> intervals(peaks.size() - 1);
    for (std::size_t k = 1; k < peaks.size(); ++k) {
        intervals[k - 1] = 1000.0 * static_cast<double>(peaks[k] - peaks[k - 1]) / fs;
    }
    try {
        return RRSeries(std::move(intervals));
    } catch (const std::invalid_argument& e) {
        throw NumericError(std::string("implausible beat intervals: ") + e.what());
    }
}

HRVReport hrv_indices(const RRSeries& rr) {
    const std::vector<double>& v = rr.intervals_ms();
    if (v.size() < 3) {
        throw NumericError("HRV indices need at least 3 RR intervals");
    }
    double nnvgr = 0.0;
    for (double x : v) {
        nnvgr += x;
    }
    nnvgr /= static_cast<double>(v.size());
    const double sdnn = population_std(v);

    std::vector<double> d(v.size() - 1);
    for (std::size_t k = 1; k < v.size(); ++k) {
        d[k - 1] = v[k] - v[k - 1];
    }
    double mean_sq = 0.0;
    std::size_t over50 = 0;
    for (double x : d) {
        mean_sq += x * x;
        if (std::abs(x) > 50.0) {
            ++over50;
        }
    }
    mean_sq /= static_cast<double>(d.size());
    const double rmssd = std::sqrt(mean_sq);
    const double sdsd = population_std(d);
    const double pnn50 = 100.0 * static_cast<double>(over50) / static_cast<double>(d.size());
    return HRVReport(nnvgr, sdnn, rmssd, sdsd, pnn50);
}

HRVRelativeError relative_error_radial(const HRVReport& reference, const HRVReport& measured) {
    auto rel = [](double ref, double meas) -> std::optional<double> {
        if (ref == 0.0) {
            return std::nullopt;
        }
        return std::abs(meas - ref) / ref;
    };
    HRVRelativeError out;
    out.nnvgr = rel(reference.nnvgr_ms(), measured.nnvgr_ms());
    out.sdnn = rel(reference.sdnn_ms(), measured.sdnn_ms());
    out.rmssd = rel(reference.rmssd_ms(), measured.rmssd_ms());
    out.sdsd = rel(reference.sdsd_ms(), measured.sdsd_ms());
    out.pnn50 = rel(reference.pnn50_pct(), measured.pnn50_pct());
    return out;
}

} // namespace pulsedemod
