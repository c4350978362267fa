// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Build in Release; several criteria assert wall-clock
// budgets and one compares optimized demodulator kernels.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pulsedemod/bench.hpp"
#include "pulsedemod/compensate.hpp"
#include "pulsedemod/demod.hpp"
#include "pulsedemod/estimate.hpp"
#include "pulsedemod/io.hpp"
#include "pulsedemod/synth.hpp"

using namespace pulsedemod;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Check {
    std::string label;
    bool ok;
};

struct Criterion {
    int id;
    std::string title;
    double budget_s;
    std::vector<Check> checks;
    double elapsed_s = 0.0;
    std::string note;

    void expect(bool ok, const std::string& label) { checks.push_back({label, ok}); }
    bool passed() const {
        for (const Check& c : checks) {
            if (!c.ok) {
                return false;
            }
        }
        return true;
    }
};

double ols_slope(const std::vector<double>& y) {
    const std::size_t n = y.size();
    double mn = 0.0, my = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        mn += static_cast<double>(k);
        my += y[k];
    }
    mn /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double snn = 0.0, sny = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double dn = static_cast<double>(k) - mn;
        snn += dn * dn;
        sny += dn * (y[k] - my);
    }
    return sny / snn;
}

double pearson_r(const std::vector<double>& y) {
    const std::size_t n = y.size();
    double mn = 0.0, my = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        mn += static_cast<double>(k);
        my += y[k];
    }
    mn /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double snn = 0.0, sny = 0.0, syy = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double dn = static_cast<double>(k) - mn;
        const double dy = y[k] - my;
        snn += dn * dn;
        sny += dn * dy;
        syy += dy * dy;
    }
    return sny / std::sqrt(snn * syy);
}

PhaseSeries truth_phase(const DisplacementSeries& x, const RadarConfig& cfg) {
    std::vector<double> phi(x.size());
    const double k = 4.0 * kPi / cfg.wavelength_m();
    for (std::size_t j = 0; j < x.size(); ++j) {
        phi[j] = k * x.values()[j];
    }
    return PhaseSeries(x.sampling_rate_hz(), std::move(phi));
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), f, v);
    return buf;
}

// ---------------------------------------------------------------------------

void criterion1(Criterion& c) {
    const VSParams params(4e-3, 0.25, 3e-4, 1.2);
    const RadarConfig cfg(24e9);
    const DisplacementSeries x = synth_displacement(params, 500.0, 60.0);
    const IQSeries iq = displacement_to_iq(x, cfg);
    const PhaseSeries truth = truth_phase(x, cfg);

    const double rmse_ad = rmse(demod_ad(iq), truth);
    const double rmse_dacm = rmse(demod_dacm(iq), truth);
    const PhaseSeries bert_d = demod_bert(iq);
    const PhaseSeries bert_c = compensate_drift(bert_d, estimate_drift(bert_d));
    const double rmse_d = rmse(bert_d, truth);
    const double rmse_c = rmse(bert_c, truth);

    const DisplacementSeries xc = phase_to_displacement(bert_c, cfg);
    double peak = 0.0, acc = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        peak = std::max(peak, std::abs(x.values()[k]));
        const double d = xc.values()[k] - x.values()[k];
        acc += d * d;
    }
    const double disp_rmse = std::sqrt(acc / static_cast<double>(x.size()));

    c.expect(rmse_ad < 1e-3, "ad phase rmse " + fmt("%.3e", rmse_ad) + " < 1e-3 rad");
    c.expect(rmse_dacm < 1e-3, "dacm phase rmse " + fmt("%.3e", rmse_dacm) + " < 1e-3 rad");
    c.expect(disp_rmse < 0.05 * peak, "bert-c displacement rmse " + fmt("%.3e", disp_rmse) +
                                          " < 5% of peak (" + fmt("%.3e", 0.05 * peak) + ")");
    c.expect(rmse_c < rmse_d, "bert-c rmse " + fmt("%.3e", rmse_c) + " < bert-d rmse " +
                                  fmt("%.3e", rmse_d));
    c.note = "noise-free recursion error is a trendless +-7e-5 rad oscillation; the "
             "whole-record line fit detrends the breathing sinusoid instead (slope " +
             fmt("%.2e", std::tan(estimate_drift(bert_d).delta_rad())) +
             " rad/sample), so compensation adds a ramp here rather than removing drift";
}

void criterion2(Criterion& c) {
    const std::size_t n = 100000;
    for (double eps : {0.001, 0.01, 0.1}) {
        std::vector<IQSample> s(n);
        for (std::size_t k = 0; k < n; ++k) {
            const double a = eps * static_cast<double>(k);
            s[k] = IQSample{std::cos(a), std::sin(a)};
        }
        const PhaseSeries out = demod_bert(IQSeries(500.0, std::move(s)));
        double worst_excess = -1e300;
        double terminal = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double kk = static_cast<double>(k);
            const double err = std::abs(out.values()[k] - eps * kk);
            // Math bound n eps^3/6 plus a machine-epsilon allowance for the
            // accumulated rounding of a 1e5-step scan (9 orders below the
            // terminal bound).
            const double bound = kk * eps * eps * eps / 6.0 +
                                 64.0 * 2.220446049250313e-16 * (1.0 + std::sqrt(kk));
            worst_excess = std::max(worst_excess, err - bound);
            terminal = err;
        }
        c.expect(worst_excess <= 0.0,
                 "eps=" + fmt("%.3g", eps) + ": |err(n)| <= n*eps^3/6 at every n (terminal " +
                     fmt("%.3e", terminal) + " vs bound " +
                     fmt("%.3e", static_cast<double>(n - 1) * eps * eps * eps / 6.0) + ")");
    }
}

void criterion3(Criterion& c) {
    const std::size_t n = 1000000;
    const VSParams params(4e-3, 0.25, 3e-4, 1.2);
    const DisplacementSeries x = synth_displacement(params, 500.0, static_cast<double>(n) / 500.0);
    const IQSeries iq = displacement_to_iq(x, RadarConfig(24e9));

    // Alternating passes of single-method timed blocks decorrelate slow
    // machine-state drift from method identity; each block stays strictly
    // sequential. 4 x 5 = 20 timed repetitions per method after warmup.
    const int passes = 4, reps_per_pass = 5;
    std::vector<double> t_ad, t_dacm, t_bert;
    for (int p = 0; p < passes; ++p) {
        const int warmup = (p == 0) ? 2 : 1;
        for (double t : time_method(Method::AD, iq, reps_per_pass, warmup).wall_times_s()) {
            t_ad.push_back(t);
        }
        for (double t : time_method(Method::DACM, iq, reps_per_pass, warmup).wall_times_s()) {
            t_dacm.push_back(t);
        }
        for (double t : time_method(Method::BertD, iq, reps_per_pass, warmup).wall_times_s()) {
            t_bert.push_back(t);
        }
    }
    auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        const std::size_t m = v.size();
        return (m % 2 == 1) ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
    };
    const double med_ad = median(t_ad);
    const double med_dacm = median(t_dacm);
    const double med_bert = median(t_bert);

    c.expect(med_bert < med_ad, "median bert " + fmt("%.4f", med_bert * 1e3) + " ms < ad " +
                                    fmt("%.4f", med_ad * 1e3) + " ms");
    c.expect(med_bert < med_dacm,
             "median bert < dacm " + fmt("%.4f", med_dacm * 1e3) + " ms");
    c.note = "measured speedups on this machine: " + fmt("%.1f", med_ad / med_bert) +
             "x vs ad, " + fmt("%.2f", med_dacm / med_bert) +
             "x vs dacm (reported reference points: 19x and 46x; absolute ratios are "
             "hardware-dependent, only the ordering is asserted)";
}

void criterion4(Criterion& c) {
    const VSParams params(4e-3, 0.25, 3e-4, 1.2);
    const RadarConfig cfg(24e9);
    const DisplacementSeries x = synth_displacement(params, 500.0, 120.0);
    Impairments imp;
    imp.noise_sigma = 0.05;
    const IQSeries iq = displacement_to_iq(x, cfg, imp, 7);

    const PhaseSeries bert_d = demod_bert(iq);
    const PhaseSeries bert_c = compensate_drift(bert_d, estimate_drift(bert_d));
    const double br = estimate_rate_spectral(bert_c, kBreathBandLowHz, kBreathBandHighHz);
    const double hr = estimate_rate_spectral(bert_c, kHeartBandLowHz, kHeartBandHighHz);
    c.expect(std::abs(br - 0.25) < 0.005,
             "BR " + fmt("%.5f", br) + " Hz within 0.005 of 0.25");
    c.expect(std::abs(hr - 1.2) < 0.02, "HR " + fmt("%.5f", hr) + " Hz within 0.02 of 1.2");
}

void criterion5(Criterion& c) {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::size_t> len(3, 500);
    std::uniform_real_distribution<double> val(300.0, 2000.0);
    double worst_rel = 0.0;
    double worst_identity = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> rr(len(rng));
        for (double& v : rr) {
            v = val(rng);
        }
        // Brute-force restatement of the five definitions.
        const std::size_t m = rr.size();
        double mean = 0.0;
        for (double v : rr) mean += v;
        mean /= static_cast<double>(m);
        double ss = 0.0;
        for (double v : rr) ss += (v - mean) * (v - mean);
        const double sdnn = std::sqrt(ss / static_cast<double>(m));
        std::vector<double> d(m - 1);
        for (std::size_t k = 1; k < m; ++k) d[k - 1] = rr[k] - rr[k - 1];
        double sq = 0.0, dmean = 0.0;
        std::size_t big = 0;
        for (double v : d) {
            sq += v * v;
            dmean += v;
            if (std::abs(v) > 50.0) ++big;
        }
        const double rmssd = std::sqrt(sq / static_cast<double>(d.size()));
        dmean /= static_cast<double>(d.size());
        double dss = 0.0;
        for (double v : d) dss += (v - dmean) * (v - dmean);
        const double sdsd = std::sqrt(dss / static_cast<double>(d.size()));
        const double pnn50 = 100.0 * static_cast<double>(big) / static_cast<double>(d.size());

        const HRVReport got = hrv_indices(RRSeries(rr, false));
        auto rel = [](double a, double b) {
            const double scale = std::max({std::abs(a), std::abs(b), 1e-30});
            return std::abs(a - b) / scale;
        };
        worst_rel = std::max({worst_rel, rel(got.nnvgr_ms(), mean), rel(got.sdnn_ms(), sdnn),
                              rel(got.rmssd_ms(), rmssd), rel(got.sdsd_ms(), sdsd),
                              rel(got.pnn50_pct(), pnn50)});
        const double lhs = got.rmssd_ms() * got.rmssd_ms();
        const double rhs = got.sdsd_ms() * got.sdsd_ms() + dmean * dmean;
        worst_identity = std::max(worst_identity, std::abs(lhs - rhs) / std::max(lhs, 1e-30));
    }
    c.expect(worst_rel <= 1e-12,
             "hrv vs brute force: worst relative deviation " + fmt("%.2e", worst_rel) +
                 " <= 1e-12 over 1000 sequences");
    c.expect(worst_identity <= 1e-9, "rmssd^2 = sdsd^2 + mean(d)^2 within " +
                                         fmt("%.2e", worst_identity) + " <= 1e-9 relative");
}

void criterion6(Criterion& c) {
    const VSParams params(0.0, 0.25, 3e-4, 1.2);
    const RadarConfig cfg(24e9);
    const DisplacementSeries x = synth_displacement(params, 100.0, 30.0);
    const PhaseSeries heart = bandpass(truth_phase(x, cfg), kHeartBandLowHz, kHeartBandHighHz);
    const RRSeries rr = detect_heartbeats(heart);
    double mean = 0.0;
    for (double v : rr.intervals_ms()) {
        mean += v;
    }
    mean /= static_cast<double>(rr.size());
    const double sample_ms = 1000.0 / 100.0;
    c.expect(std::abs(mean - 1000.0 / 1.2) <= sample_ms,
             "mean RR " + fmt("%.2f", mean) + " ms within one sample period of 833.33");
    const HRVReport report = hrv_indices(rr);
    c.expect(report.pnn50_pct() == 0.0, "pnn50 " + fmt("%.1f", report.pnn50_pct()) + " == 0");
}

void criterion7(Criterion& c) {
    const int seeds = 200;
    const std::size_t steps = 10000;
    const double sigma = 0.1;
    std::vector<std::vector<double>> walks;
    walks.reserve(seeds);
    for (int s = 0; s < seeds; ++s) {
        walks.push_back(mgm_propagate(0.0, MGMParams(0.0, sigma, static_cast<std::uint64_t>(s + 1)),
                                      1, steps)
                            .values());
    }
    std::vector<double> variance(steps);
    for (std::size_t k = 0; k < steps; ++k) {
        double m = 0.0;
        for (const auto& w : walks) {
            m += w[k];
        }
        m /= seeds;
        double v = 0.0;
        for (const auto& w : walks) {
            v += (w[k] - m) * (w[k] - m);
        }
        variance[k] = v / seeds;
    }
    const double slope = ols_slope(variance);
    const double r = pearson_r(variance);
    c.expect(std::abs(slope - sigma * sigma) <= 0.1 * sigma * sigma,
             "variance slope " + fmt("%.5f", slope) + " within 10% of sigma^2 = 0.01");
    c.expect(r >= 0.99, "variance grows linearly (corr " + fmt("%.4f", r) + " >= 0.99)");
}

void criterion8(Criterion& c) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    std::uniform_real_distribution<double> off(-0.5, 0.5);
    std::uniform_real_distribution<double> radius(0.5, 2.0);
    std::uniform_real_distribution<double> arc(0.5, 2.0 * kPi);

    bool rotate_ok = true, dc_ok = true;
    for (int trial = 0; trial < 100; ++trial) {
        const double r = radius(rng);
        const double a0 = angle(rng);
        const double span = arc(rng);
        const double cx = off(rng), cy = off(rng);
        std::vector<IQSample> s(64);
        for (std::size_t k = 0; k < s.size(); ++k) {
            const double a = a0 + span * static_cast<double>(k) / static_cast<double>(s.size());
            s[k] = IQSample{cx + r * std::cos(a), cy + r * std::sin(a)};
        }
        const IQSeries iq(100.0, std::move(s));

        const double theta = angle(rng);
        const IQSeries fwd = rotate(iq, theta);
        const IQSeries back = rotate(fwd, -theta);
        for (std::size_t k = 0; k < iq.size(); ++k) {
            rotate_ok = rotate_ok &&
                        std::abs(back.samples()[k].i - iq.samples()[k].i) < 1e-12 &&
                        std::abs(back.samples()[k].q - iq.samples()[k].q) < 1e-12;
            const IQSample& p = iq.samples()[k];
            const IQSample& q = fwd.samples()[k];
            rotate_ok = rotate_ok &&
                        std::abs(std::hypot(p.i, p.q) - std::hypot(q.i, q.q)) < 1e-12;
        }

        const DcRemoval fit = remove_dc(iq);
        const DcRemoval again = remove_dc(fit.series);
        dc_ok = dc_ok && std::abs(fit.center_i - cx) < 1e-6 && std::abs(fit.center_q - cy) < 1e-6;
        dc_ok = dc_ok && std::abs(again.center_i) < 1e-9 && std::abs(again.center_q) < 1e-9;
    }
    c.expect(rotate_ok, "rotate round-trip and magnitude preservation on 100 constellations");
    c.expect(dc_ok, "dc fit recovers the center and is idempotent on 100 constellations");
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(PULSEDEMOD_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    if (status == -1) {
        return -1;
    }
    return WEXITSTATUS(status);
}

void criterion9(Criterion& c) {
    const fs::path dir =
        fs::temp_directory_path() / ("pulsedemod_acc_" + std::to_string(std::random_device{}()));
    fs::create_directories(dir);
    const std::string iq = (dir / "iq.csv").string();
    const std::string phase = (dir / "phase.csv").string();
    const std::string est = (dir / "est.json").string();

    const int rc1 = run_cli("synth --ab 4e-3 --fb 0.25 --ah 3e-4 --fh 1.2 --fs 500 --dur 120"
                            " --fc 24e9 --noise 0.05 --seed 7 -o " + iq);
    const int rc2 = run_cli("demod " + iq + " --method bert-c -o " + phase);
    const int rc3 = run_cli("estimate " + phase + " --json -o " + est);
    c.expect(rc1 == 0 && rc2 == 0 && rc3 == 0,
             "synth/demod/estimate pipeline exit codes 0 (" + std::to_string(rc1) + "," +
                 std::to_string(rc2) + "," + std::to_string(rc3) + ")");

    bool schema_ok = false;
    double br = 0.0, hr = 0.0;
    try {
        std::ifstream in(est);
        json j;
        in >> j;
        schema_ok = j.is_object() && j.size() == 2 && j.contains("br_hz") && j.contains("hr_hz") &&
                    j["br_hz"].is_number() && j["hr_hz"].is_number();
        if (schema_ok) {
            br = j["br_hz"].get<double>();
            hr = j["hr_hz"].get<double>();
        }
    } catch (const std::exception&) {
        schema_ok = false;
    }
    c.expect(schema_ok, "estimate JSON carries exactly {br_hz, hr_hz}");
    c.expect(std::abs(br - 0.25) < 0.005,
             "file-based BR " + fmt("%.5f", br) + " within 0.005 of 0.25");
    c.expect(std::abs(hr - 1.2) < 0.02, "file-based HR " + fmt("%.5f", hr) + " within 0.02 of 1.2");

    c.expect(run_cli("demod --bogus-flag x") == 1, "usage error exits 1");
    c.expect(run_cli("demod " + (dir / "missing.csv").string() + " -o " + phase) == 2,
             "missing input exits 2");
    {
        const std::string err_file = (dir / "stderr.txt").string();
        std::system((std::string(PULSEDEMOD_CLI_PATH) + " demod " +
                     (dir / "missing.csv").string() + " -o " + phase + " >/dev/null 2>" +
                     err_file)
                        .c_str());
        std::ifstream err(err_file);
        std::string first_line;
        std::getline(err, first_line);
        c.expect(first_line.rfind("error:", 0) == 0,
                 "failure messages carry the single-line 'error:' prefix");
    }
    {
        std::ofstream z(dir / "zero.csv");
        z << "i,q\n1,0\n0,0\n1,0\n";
    }
    c.expect(run_cli("demod " + (dir / "zero.csv").string() + " --fs 100 --method bert -o " +
                     phase) == 3,
             "undefined phase exits 3");

    const int rc_bench = run_cli("bench --synth-default --n 20000 --methods ad,dacm,bert"
                                 " --reps 3 --warmup 1 -o " + (dir / "bench.json").string());
    bool bench_schema = false;
    try {
        std::ifstream in(dir / "bench.json");
        json j;
        in >> j;
        bench_schema = rc_bench == 0 && j.is_array() && j.size() == 3;
        for (const json& e : j) {
            bench_schema = bench_schema && e.size() == 4 && e.contains("method") &&
                           e.contains("n") && e.contains("times_s") && e.contains("rmse_rad");
        }
    } catch (const std::exception&) {
        bench_schema = false;
    }
    c.expect(bench_schema, "bench JSON entries carry exactly {method, n, times_s, rmse_rad}");

    std::error_code ec;
    fs::remove_all(dir, ec);
}

} // namespace

int main() {
    std::vector<Criterion> criteria{
        {1, "end-to-end noise-free recovery", 5.0, {}},
        {2, "recursive demodulator error bound on ramps", 5.0, {}},
        {3, "speedup ordering on 1e6 samples", 60.0, {}},
        {4, "BR/HR accuracy on the noisy scenario", 10.0, {}},
        {5, "HRV oracle equivalence", 10.0, {}},
        {6, "beat detection on the heart component", 5.0, {}},
        {7, "random-walk variance growth", 30.0, {}},
        {8, "compensation invariants", 5.0, {}},
        {9, "CLI contract", 15.0, {}},
    };
    const std::vector<std::function<void(Criterion&)>> runners{
        criterion1, criterion2, criterion3, criterion4, criterion5,
        criterion6, criterion7, criterion8, criterion9};

    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Criterion& c = criteria[k];
        const auto t0 = std::chrono::steady_clock::now();
        try {
            runners[k](c);
        } catch (const std::exception& e) {
            c.expect(false, std::string("unexpected exception: ") + e.what());
        }
        const auto t1 = std::chrono::steady_clock::now();
        c.elapsed_s = std::chrono::duration<double>(t1 - t0).count();
        c.expect(c.elapsed_s < c.budget_s,
                 "runtime " + fmt("%.2f", c.elapsed_s) + " s within " +
                     fmt("%.0f", c.budget_s) + " s");

        const bool ok = c.passed();
        failures += ok ? 0 : 1;
        std::printf("criterion %d (%s): %s [%.2f s]\n", c.id, c.title.c_str(),
                    ok ? "PASS" : "FAIL", c.elapsed_s);
        for (const Check& chk : c.checks) {
            std::printf("    [%s] %s\n", chk.ok ? "ok" : "FAIL", chk.label.c_str());
        }
        if (!c.note.empty()) {
            std::printf("    note: %s\n", c.note.c_str());
        }
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failures),
                criteria.size());
    return failures == 0 ? 0 : 1;
}
