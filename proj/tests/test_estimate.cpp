#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "pulsedemod/errors.hpp"
#include "pulsedemod/estimate.hpp"

using namespace pulsedemod;

namespace {

PhaseSeries tone(double freq_hz, double fs, double dur_s, double amplitude = 1.0) {
    std::vector<double> v(static_cast<std::size_t>(dur_s * fs));
    for (std::size_t k = 0; k < v.size(); ++k) {
        v[k] = amplitude * std::sin(2.0 * kPi * freq_hz * static_cast<double>(k) / fs);
    }
    return PhaseSeries(fs, std::move(v));
}

double rms(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) {
        acc += x * x;
    }
    return std::sqrt(acc / static_cast<double>(v.size()));
}

// Plain two-pass restatement of the five index definitions, kept independent
// of the library implementation.
struct BruteHrv {
    double nnvgr, sdnn, rmssd, sdsd, pnn50;
};

BruteHrv brute_hrv(const std::vector<double>& rr) {
    BruteHrv out{};
    double sum = 0.0;
    for (double x : rr) sum += x;
    out.nnvgr = sum / static_cast<double>(rr.size());
    double ss = 0.0;
    for (double x : rr) ss += (x - out.nnvgr) * (x - out.nnvgr);
    out.sdnn = std::sqrt(ss / static_cast<double>(rr.size()));

    std::vector<double> d;
    for (std::size_t k = 1; k < rr.size(); ++k) d.push_back(rr[k] - rr[k - 1]);
    double sq = 0.0, dm = 0.0;
    std::size_t big = 0;
    for (double x : d) {
        sq += x * x;
        dm += x;
        if (std::abs(x) > 50.0) ++big;
    }
    out.rmssd = std::sqrt(sq / static_cast<double>(d.size()));
    dm /= static_cast<double>(d.size());
    double dss = 0.0;
    for (double x : d) dss += (x - dm) * (x - dm);
    out.sdsd = std::sqrt(dss / static_cast<double>(d.size()));
    out.pnn50 = 100.0 * static_cast<double>(big) / static_cast<double>(d.size());
    return out;
}

} // namespace

TEST_CASE("bandpass keeps the in-band tone and rejects the out-of-band tone") {
    const double fs = 100.0;
    const PhaseSeries in_band = tone(0.25, fs, 120.0);
    const PhaseSeries out_band = tone(1.2, fs, 120.0);

    const PhaseSeries kept = bandpass(in_band, 0.1, 0.5);
    CHECK(kept.size() == in_band.size());
    CHECK(rms(kept.values()) / rms(in_band.values()) == doctest::Approx(1.0).epsilon(0.02));

    const PhaseSeries cut = bandpass(out_band, 0.1, 0.5);
    const double atten_db =
        20.0 * std::log10(rms(cut.values()) / rms(out_band.values()));
    CHECK(atten_db <= -40.0);
}

TEST_CASE("bandpass of a zero series is zero") {
    const PhaseSeries zero(100.0, std::vector<double>(2000, 0.0));
    const PhaseSeries out = bandpass(zero, 0.8, 1.7);
    for (double v : out.values()) {
        CHECK(v == 0.0);
    }
}

TEST_CASE("bandpass validates the band against Nyquist") {
    const PhaseSeries s = tone(0.25, 100.0, 30.0);
    CHECK_THROWS_AS(bandpass(s, 0.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(bandpass(s, 0.5, 0.2), std::invalid_argument);
    CHECK_THROWS_AS(bandpass(s, 0.5, 60.0), std::invalid_argument);
}

TEST_CASE("spectral rate estimate hits a pure tone to 1e-3 Hz") {
    const PhaseSeries s = tone(0.25, 100.0, 120.0);
    CHECK(std::abs(estimate_rate_spectral(s, 0.1, 0.7) - 0.25) < 1e-3);
}

TEST_CASE("spectral rate estimate separates two tones by band") {
    const double fs = 100.0;
    std::vector<double> v(static_cast<std::size_t>(120.0 * fs));
    for (std::size_t k = 0; k < v.size(); ++k) {
        const double t = static_cast<double>(k) / fs;
        v[k] = 4.0 * std::sin(2.0 * kPi * 0.25 * t) + 0.3 * std::sin(2.0 * kPi * 1.2 * t);
    }
    const PhaseSeries s(fs, std::move(v));
    CHECK(std::abs(estimate_rate_spectral(s, 0.8, 1.7) - 1.2) < 1e-2);
    CHECK(std::abs(estimate_rate_spectral(s, 0.1, 0.7) - 0.25) < 1e-3);
}

TEST_CASE("spectral rate estimate fails cleanly on a constant series") {
    const PhaseSeries s(100.0, std::vector<double>(12000, 3.0));
    CHECK_THROWS_AS(estimate_rate_spectral(s, 0.1, 0.7), NumericError);
}

TEST_CASE("spectral rate estimate rejects too-short records") {
    const PhaseSeries s = tone(0.25, 100.0, 10.0); // < 3 periods of 0.1 Hz
    CHECK_THROWS_AS(estimate_rate_spectral(s, 0.1, 0.7), NumericError);
}

TEST_CASE("spectral rate estimate is amplitude invariant") {
    const PhaseSeries base = tone(0.31, 100.0, 120.0);
    const double f0 = estimate_rate_spectral(base, 0.1, 0.7);

    SUBCASE("power-of-two scaling is bit-identical") {
        for (double a : {2.0, 0.25, 1024.0}) {
            std::vector<double> v = base.values();
            for (double& x : v) {
                x *= a;
            }
            CHECK(estimate_rate_spectral(PhaseSeries(100.0, v), 0.1, 0.7) == f0);
        }
    }
    SUBCASE("arbitrary scaling matches to near machine precision") {
        std::vector<double> v = base.values();
        for (double& x : v) {
            x *= 3.7;
        }
        CHECK(std::abs(estimate_rate_spectral(PhaseSeries(100.0, v), 0.1, 0.7) - f0) < 1e-9);
    }
}

TEST_CASE("beat detection on pure tones") {
    SUBCASE("1.0 Hz tone gives 29 intervals of 1000 ms") {
        const RRSeries rr = detect_heartbeats(tone(1.0, 100.0, 30.0));
        CHECK(rr.size() == 29);
        for (double v : rr.intervals_ms()) {
            CHECK(std::abs(v - 1000.0) <= 10.0); // one sample period
        }
    }
    SUBCASE("1.2 Hz tone gives ~833.3 ms intervals") {
        const RRSeries rr = detect_heartbeats(tone(1.2, 100.0, 30.0));
        double mean = 0.0;
        for (double v : rr.intervals_ms()) {
            mean += v;
        }
        mean /= static_cast<double>(rr.size());
        CHECK(std::abs(mean - 1000.0 / 1.2) <= 10.0);
    }
    SUBCASE("zero series has no beats") {
        const PhaseSeries zero(100.0, std::vector<double>(3000, 0.0));
        CHECK_THROWS_AS(detect_heartbeats(zero), NumericError);
    }
}

TEST_CASE("hrv indices on the constant sequence are zero") {
    const HRVReport r = hrv_indices(RRSeries({800.0, 800.0, 800.0}));
    CHECK(r.nnvgr_ms() == 800.0);
    CHECK(r.sdnn_ms() == 0.0);
    CHECK(r.rmssd_ms() == 0.0);
    CHECK(r.sdsd_ms() == 0.0);
    CHECK(r.pnn50_pct() == 0.0);
}

TEST_CASE("hrv indices match the hand-computed example") {
    const HRVReport r = hrv_indices(RRSeries({800.0, 860.0, 865.0}));
    CHECK(r.pnn50_pct() == 50.0);
    CHECK(r.rmssd_ms() == doctest::Approx(std::sqrt((3600.0 + 25.0) / 2.0)).epsilon(1e-12));
    CHECK(r.nnvgr_ms() == doctest::Approx((800.0 + 860.0 + 865.0) / 3.0).epsilon(1e-12));
}

TEST_CASE("hrv indices equal a brute-force restatement on random sequences") {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<std::size_t> len(3, 500);
    std::uniform_real_distribution<double> val(400.0, 1500.0);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<double> rr(len(rng));
        for (double& x : rr) {
            x = val(rng);
        }
        const BruteHrv ref = brute_hrv(rr);
        const HRVReport got = hrv_indices(RRSeries(rr));
        CHECK(got.pnn50_pct() >= 0.0);
        CHECK(got.pnn50_pct() <= 100.0);
        CHECK(got.sdnn_ms() >= 0.0);
        CHECK(got.rmssd_ms() >= 0.0);
        CHECK(got.sdsd_ms() >= 0.0);
        CHECK(got.nnvgr_ms() == doctest::Approx(ref.nnvgr).epsilon(1e-12));
        CHECK(got.sdnn_ms() == doctest::Approx(ref.sdnn).epsilon(1e-12));
        CHECK(got.rmssd_ms() == doctest::Approx(ref.rmssd).epsilon(1e-12));
        CHECK(got.sdsd_ms() == doctest::Approx(ref.sdsd).epsilon(1e-12));
        CHECK(got.pnn50_pct() == ref.pnn50);

        // population-moment identity: rmssd^2 = sdsd^2 + mean(d)^2
        double dm = 0.0;
        for (std::size_t k = 1; k < rr.size(); ++k) {
            dm += rr[k] - rr[k - 1];
        }
        dm /= static_cast<double>(rr.size() - 1);
        const double lhs = got.rmssd_ms() * got.rmssd_ms();
        const double rhs = got.sdsd_ms() * got.sdsd_ms() + dm * dm;
        CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(lhs, 1.0));
    }
}

TEST_CASE("hrv indices need at least 3 intervals") {
    CHECK_THROWS_AS(hrv_indices(RRSeries({800.0, 820.0})), NumericError);
}

TEST_CASE("relative hrv errors") {
    const HRVReport ref(800.0, 50.0, 30.0, 25.0, 10.0);
    SUBCASE("identical reports give all zeros") {
        const HRVRelativeError e = relative_error_radial(ref, ref);
        CHECK(*e.nnvgr == 0.0);
        CHECK(*e.sdnn == 0.0);
        CHECK(*e.rmssd == 0.0);
        CHECK(*e.sdsd == 0.0);
        CHECK(*e.pnn50 == 0.0);
    }
    SUBCASE("sdnn 55 against 50 is a 10% error") {
        const HRVReport measured(800.0, 55.0, 30.0, 25.0, 10.0);
        const HRVRelativeError e = relative_error_radial(ref, measured);
        CHECK(*e.sdnn == doctest::Approx(0.10).epsilon(1e-12));
    }
    SUBCASE("a zero reference index is undefined") {
        const HRVReport zero_ref(800.0, 50.0, 30.0, 25.0, 0.0);
        const HRVReport measured(800.0, 50.0, 30.0, 25.0, 5.0);
        const HRVRelativeError e = relative_error_radial(zero_ref, measured);
        CHECK(!e.pnn50.has_value());
        CHECK(e.nnvgr.has_value());
    }
}
