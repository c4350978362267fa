#include "pulsedemod/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pulsedemod/bench.hpp"
#include "pulsedemod/compensate.hpp"
#include "pulsedemod/demod.hpp"
#include "pulsedemod/errors.hpp"
#include "pulsedemod/estimate.hpp"
#include "pulsedemod/io.hpp"
#include "pulsedemod/synth.hpp"
#include "pulsedemod/types.hpp"

namespace pulsedemod {

namespace {

using nlohmann::json;

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag_seed) {
    if (flag_seed) {
        return *flag_seed;
    }
    if (const char* env = std::getenv("PULSEDEMOD_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw std::invalid_argument("PULSEDEMOD_SEED is not an unsigned integer");
        }
    }
    return 0;
}

bool is_binary_path(const std::filesystem::path& p) {
    return p.extension() == ".bin";
}

IQRecord load_iq(const std::filesystem::path& input, const std::string& sidecar,
                 std::optional<double> fs, std::optional<double> fc) {
    if (is_binary_path(input)) {
        const std::filesystem::path side = sidecar.empty()
                                               ? std::filesystem::path(input.string() + ".json")
                                               : std::filesystem::path(sidecar);
        return read_iq_binary(input, side);
    }
    return read_iq_csv(input, fs, fc);
}

std::vector<Method> parse_method_list(const std::string& csv) {
    std::vector<Method> out;
    std::size_t start = 0;
    while (start <= csv.size()) {
        const std::size_t comma = csv.find(',', start);
        const std::string name =
            csv.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!name.empty()) {
            const auto m = parse_method(name);
            if (!m) {
                throw std::invalid_argument("unknown method '" + name + "'");
            }
            out.push_back(*m);
        }
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

json hrv_to_json(const HRVReport& r) {
    return json{{"nnvgr", r.nnvgr_ms()},
                {"sdnn", r.sdnn_ms()},
                {"rmssd", r.rmssd_ms()},
                {"sdsd", r.sdsd_ms()},
                {"pnn50", r.pnn50_pct()}};
}

json comparison_to_json(const ComparisonReport& report) {
    json out = json::array();
    for (const BenchReport& e : report.entries) {
        json entry{{"method", e.method_name()},
                   {"n", e.samples_processed()},
                   {"times_s", e.wall_times_s()}};
        if (e.rmse_vs_truth_rad()) {
            entry["rmse_rad"] = *e.rmse_vs_truth_rad();
        }
        out.push_back(std::move(entry));
    }
    return out;
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) {
        throw ParseError("cannot write '" + out_path + "'");
    }
    out << j.dump(2) << "\n";
}

struct SynthOptions {
    double ab = 4e-3, fb = 0.25, ah = 3e-4, fh = 1.2;
    double pb = 0.0, ph = 0.0;
    double fs = 500.0, dur = 60.0, fc = 24e9, theta = 0.0;
    double noise = 0.0, amp = 1.0, dc_i = 0.0, dc_q = 0.0;
    std::optional<std::uint64_t> seed;
    std::string out, truth, sidecar;
};

void run_synth(const SynthOptions& o) {
    const VSParams params(o.ab, o.fb, o.ah, o.fh, o.pb, o.ph);
    const RadarConfig radar(o.fc, o.theta);
    const DisplacementSeries x = synth_displacement(params, o.fs, o.dur);
    const Impairments imp{o.noise, o.amp, o.dc_i, o.dc_q};
    const IQSeries iq = displacement_to_iq(x, radar, imp, resolve_seed(o.seed));
    const std::filesystem::path out_path(o.out);
    if (is_binary_path(out_path)) {
        const std::filesystem::path side = o.sidecar.empty()
                                               ? std::filesystem::path(o.out + ".json")
                                               : std::filesystem::path(o.sidecar);
        write_iq_binary(out_path, side, iq, o.fc);
    } else {
        write_iq_csv(out_path, iq);
    }
    if (!o.truth.empty()) {
        write_displacement_csv(o.truth, x);
    }
}

struct DemodOptions {
    std::string input, sidecar, out;
    std::string method = "bert";
    std::optional<double> fs, fc;
    bool remove_dc_flag = false;
    bool auto_rotate = false;
    std::optional<double> theta;
    bool single_atan = false;
    std::optional<std::size_t> drift_begin, drift_end;
};

void run_demod(const DemodOptions& o) {
    const auto method = parse_method(o.method);
    if (!method) {
        throw std::invalid_argument("unknown method '" + o.method + "'");
    }
    IQRecord record = load_iq(o.input, o.sidecar, o.fs, o.fc);
    IQSeries iq = std::move(record.series);
    if (o.remove_dc_flag) {
        iq = remove_dc(iq).series;
    }
    if (o.theta) {
        iq = rotate(iq, *o.theta);
    } else if (o.auto_rotate) {
        iq = rotate(iq, estimate_rotation(iq));
    }

    PhaseSeries phase(1.0, {0.0});
    switch (*method) {
    case Method::AD:
        phase = demod_ad(iq, !o.single_atan);
        break;
    case Method::DACM:
        phase = demod_dacm(iq);
        break;
    case Method::BertD:
        phase = demod_bert(iq);
        break;
    case Method::BertC: {
        PhaseSeries raw = demod_bert(iq);
        const std::size_t begin = o.drift_begin.value_or(0);
        const std::size_t end = o.drift_end.value_or(raw.size());
        phase = compensate_drift(raw, estimate_drift(raw, begin, end));
        break;
    }
    }
    write_phase_csv(o.out, phase);
}

struct EstimateOptions {
    std::string input;
    std::optional<double> fs;
    std::vector<double> br_band{kBreathBandLowHz, kBreathBandHighHz};
    std::vector<double> hr_band{kHeartBandLowHz, kHeartBandHighHz};
    bool as_json = false;
    std::string out;
};

void run_estimate(const EstimateOptions& o) {
    const PhaseSeries phase = read_phase_csv(o.input, o.fs);
    const double br = estimate_rate_spectral(phase, o.br_band[0], o.br_band[1]);
    const double hr = estimate_rate_spectral(phase, o.hr_band[0], o.hr_band[1]);
    if (o.as_json) {
        emit(json{{"br_hz", br}, {"hr_hz", hr}}, o.out);
    } else {
        char line[128];
        std::snprintf(line, sizeof(line), "BR %.6f Hz\nHR %.6f Hz\n", br, hr);
        std::cout << line;
    }
}

struct HrvOptions {
    std::string input;
    std::string type = "phase"; // phase | rr | rr-ts
    std::optional<double> fs;
    std::vector<double> hr_band{kHeartBandLowHz, kHeartBandHighHz};
    std::string reference;
    std::string reference_type = "rr";
    bool no_bounds = false;
    std::string out;
};

RRSeries load_rr(const std::string& path, const std::string& type, bool enforce) {
    if (type == "rr") {
        return read_reference_rr(path, RRFormat::Intervals, enforce);
    }
    if (type == "rr-ts") {
        return read_reference_rr(path, RRFormat::Timestamps, enforce);
    }
    throw std::invalid_argument("unknown RR input type '" + type + "'");
}

void run_hrv(const HrvOptions& o) {
    HRVReport measured = [&] {
        if (o.type == "phase") {
            const PhaseSeries phase = read_phase_csv(o.input, o.fs);
            const PhaseSeries heart = bandpass(phase, o.hr_band[0], o.hr_band[1]);
            return hrv_indices(detect_heartbeats(heart));
        }
        return hrv_indices(load_rr(o.input, o.type, !o.no_bounds));
    }();

    json out{{"hrv", hrv_to_json(measured)}};
    if (!o.reference.empty()) {
        const HRVReport ref = hrv_indices(load_rr(o.reference, o.reference_type, !o.no_bounds));
        const HRVRelativeError rel = relative_error_radial(ref, measured);
        auto field = [](const std::optional<double>& v) {
            return v ? json(*v) : json("undefined");
        };
        out["relative_error"] = json{{"nnvgr", field(rel.nnvgr)},
                                     {"sdnn", field(rel.sdnn)},
                                     {"rmssd", field(rel.rmssd)},
                                     {"sdsd", field(rel.sdsd)},
                                     {"pnn50", field(rel.pnn50)}};
    }
    emit(out, o.out);
}

struct BenchOptions {
    std::string input, sidecar, truth;
    bool synth_default = false;
    std::size_t n = 1'000'000;
    double fs = 500.0;
    double fc = 24e9;
    double noise = 0.0;
    std::optional<std::uint64_t> seed;
    std::string methods = "ad,dacm,bert-d,bert-c";
    int reps = 7;
    int warmup = 2;
    std::string out;
};

void run_bench(const BenchOptions& o) {
    const std::vector<Method> methods = parse_method_list(o.methods);
    if (methods.empty()) {
        emit(json::array(), o.out);
        return;
    }

    if (o.synth_default) {
        const VSParams params(4e-3, 0.25, 3e-4, 1.2);
        const RadarConfig radar(o.fc);
        const double dur = static_cast<double>(o.n) / o.fs;
        const DisplacementSeries x = synth_displacement(params, o.fs, dur);
        const Impairments imp{o.noise, 1.0, 0.0, 0.0};
        const IQSeries iq = displacement_to_iq(x, radar, imp, resolve_seed(o.seed));
        const double k = 4.0 * kPi / radar.wavelength_m();
        std::vector<double> truth_phase(x.size());
        for (std::size_t idx = 0; idx < x.size(); ++idx) {
            truth_phase[idx] = k * x.values()[idx];
        }
        const PhaseSeries truth(o.fs, std::move(truth_phase));
        emit(comparison_to_json(compare_methods(iq, truth, methods, o.reps, o.warmup)), o.out);
        return;
    }

    if (o.input.empty()) {
        throw std::invalid_argument("bench needs --input or --synth-default");
    }
    IQRecord record = load_iq(o.input, o.sidecar, o.fs, o.fc);
    if (!o.truth.empty()) {
        // Truth file carries displacement; convert to phase with the carrier.
        const DisplacementSeries x = read_displacement_csv(o.truth);
        const RadarConfig radar(record.metadata.carrier_frequency_hz());
        const double k = 4.0 * kPi / radar.wavelength_m();
        std::vector<double> truth_phase(x.size());
        for (std::size_t idx = 0; idx < x.size(); ++idx) {
            truth_phase[idx] = k * x.values()[idx];
        }
        const PhaseSeries truth(x.sampling_rate_hz(), std::move(truth_phase));
        emit(comparison_to_json(
                 compare_methods(record.series, truth, methods, o.reps, o.warmup)),
             o.out);
        return;
    }
    ComparisonReport report;
    for (Method m : methods) {
        report.entries.push_back(time_method(m, record.series, o.reps, o.warmup));
    }
    emit(comparison_to_json(report), o.out);
}

} // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"pulsedemod: bioradar vital-signs measurement and benchmark tool"};
    app.require_subcommand(1);

    SynthOptions synth_opts;
    auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic IQ record");
    synth_cmd->add_option("--ab", synth_opts.ab, "breathing amplitude (m)");
    synth_cmd->add_option("--fb", synth_opts.fb, "breathing frequency (Hz)");
    synth_cmd->add_option("--ah", synth_opts.ah, "heartbeat amplitude (m)");
    synth_cmd->add_option("--fh", synth_opts.fh, "heartbeat frequency (Hz)");
    synth_cmd->add_option("--pb", synth_opts.pb, "breathing phase (rad)");
    synth_cmd->add_option("--ph", synth_opts.ph, "heartbeat phase (rad)");
    synth_cmd->add_option("--fs", synth_opts.fs, "sampling rate (Hz)");
    synth_cmd->add_option("--dur", synth_opts.dur, "duration (s)");
    synth_cmd->add_option("--fc", synth_opts.fc, "carrier frequency (Hz)");
    synth_cmd->add_option("--theta", synth_opts.theta, "path phase shift (rad)");
    synth_cmd->add_option("--noise", synth_opts.noise, "IQ noise sigma");
    synth_cmd->add_option("--amp", synth_opts.amp, "constellation amplitude");
    synth_cmd->add_option("--dc-i", synth_opts.dc_i, "I DC offset");
    synth_cmd->add_option("--dc-q", synth_opts.dc_q, "Q DC offset");
    synth_cmd->add_option("--seed", synth_opts.seed, "RNG seed (default: PULSEDEMOD_SEED or 0)");
    synth_cmd->add_option("-o,--out", synth_opts.out, "output IQ file (.csv or .bin)")->required();
    synth_cmd->add_option("--truth", synth_opts.truth, "ground-truth displacement CSV");
    synth_cmd->add_option("--sidecar", synth_opts.sidecar, "sidecar path for binary output");
    synth_cmd->callback([&] { run_synth(synth_opts); });

    DemodOptions demod_opts;
    auto* demod_cmd = app.add_subcommand("demod", "demodulate an IQ record to phase");
    demod_cmd->add_option("input", demod_opts.input, "IQ file (.csv or .bin)")->required();
    demod_cmd->add_option("--sidecar", demod_opts.sidecar, "sidecar for binary input");
    demod_cmd->add_option("--method", demod_opts.method, "ad | dacm | bert | bert-c");
    demod_cmd->add_option("--fs", demod_opts.fs, "sampling rate for headerless CSV (Hz)");
    demod_cmd->add_option("--fc", demod_opts.fc, "carrier frequency (Hz)");
    demod_cmd->add_flag("--remove-dc", demod_opts.remove_dc_flag, "fit and subtract DC offset");
    demod_cmd->add_flag("--rotate", demod_opts.auto_rotate, "estimate and remove path phase");
    demod_cmd->add_option("--theta", demod_opts.theta, "rotate by this angle (rad)");
    demod_cmd->add_flag("--single-atan", demod_opts.single_atan,
                        "single-argument arctangent for ad (period pi)");
    demod_cmd->add_option("--drift-begin", demod_opts.drift_begin, "drift fit window start");
    demod_cmd->add_option("--drift-end", demod_opts.drift_end, "drift fit window end");
    demod_cmd->add_option("-o,--out", demod_opts.out, "output phase CSV")->required();
    demod_cmd->callback([&] { run_demod(demod_opts); });

    EstimateOptions est_opts;
    auto* est_cmd = app.add_subcommand("estimate", "estimate BR and HR from a phase record");
    est_cmd->add_option("input", est_opts.input, "phase CSV")->required();
    est_cmd->add_option("--fs", est_opts.fs, "sampling rate for headerless CSV (Hz)");
    est_cmd->add_option("--br-band", est_opts.br_band, "breathing band (Hz)")->expected(2);
    est_cmd->add_option("--hr-band", est_opts.hr_band, "heart band (Hz)")->expected(2);
    est_cmd->add_flag("--json", est_opts.as_json, "emit JSON");
    est_cmd->add_option("-o,--out", est_opts.out, "write JSON here instead of stdout");
    est_cmd->callback([&] { run_estimate(est_opts); });

    HrvOptions hrv_opts;
    auto* hrv_cmd = app.add_subcommand("hrv", "compute HRV indices");
    hrv_cmd->add_option("input", hrv_opts.input, "phase CSV or RR file")->required();
    hrv_cmd->add_option("--type", hrv_opts.type, "phase | rr | rr-ts");
    hrv_cmd->add_option("--fs", hrv_opts.fs, "sampling rate for headerless CSV (Hz)");
    hrv_cmd->add_option("--hr-band", hrv_opts.hr_band, "heart band (Hz)")->expected(2);
    hrv_cmd->add_option("--reference", hrv_opts.reference, "reference RR file");
    hrv_cmd->add_option("--reference-type", hrv_opts.reference_type, "rr | rr-ts");
    hrv_cmd->add_flag("--no-rr-bounds", hrv_opts.no_bounds,
                      "disable the 250..3000 ms plausibility check");
    hrv_cmd->add_option("-o,--out", hrv_opts.out, "write JSON here instead of stdout");
    hrv_cmd->callback([&] { run_hrv(hrv_opts); });

    BenchOptions bench_opts;
    auto* bench_cmd = app.add_subcommand("bench", "compare demodulators (time + RMSE)");
    bench_cmd->add_option("--input", bench_opts.input, "IQ file (.csv or .bin)");
    bench_cmd->add_option("--sidecar", bench_opts.sidecar, "sidecar for binary input");
    bench_cmd->add_option("--truth", bench_opts.truth, "ground-truth displacement CSV");
    bench_cmd->add_flag("--synth-default", bench_opts.synth_default,
                        "benchmark on the default synthetic scenario");
    bench_cmd->add_option("--n", bench_opts.n, "sample count for --synth-default");
    bench_cmd->add_option("--fs", bench_opts.fs, "sampling rate (Hz)");
    bench_cmd->add_option("--fc", bench_opts.fc, "carrier frequency (Hz)");
    bench_cmd->add_option("--noise", bench_opts.noise, "IQ noise sigma for --synth-default");
    bench_cmd->add_option("--seed", bench_opts.seed, "RNG seed");
    bench_cmd->add_option("--methods", bench_opts.methods, "comma list: ad,dacm,bert,bert-c");
    bench_cmd->add_option("--reps", bench_opts.reps, "timed repetitions");
    bench_cmd->add_option("--warmup", bench_opts.warmup, "warmup runs");
    bench_cmd->add_option("-o,--out", bench_opts.out, "write JSON here instead of stdout");
    bench_cmd->callback([&] { run_bench(bench_opts); });

    try {
        app.parse(argc, argv);
        return 0;
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        std::cout << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::cerr << app.help();
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace pulsedemod
