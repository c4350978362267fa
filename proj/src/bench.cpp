#include "pulsedemod/bench.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "pulsedemod/demod.hpp"

namespace pulsedemod {

const char* method_name(Method m) {
    switch (m) {
    case Method::AD:
        return "ad";
    case Method::DACM:
        return "dacm";
    case Method::BertD:
        return "bert-d";
    case Method::BertC:
        return "bert-c";
    }
    return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
    if (name == "ad") {
        return Method::AD;
    }
    if (name == "dacm") {
        return Method::DACM;
    }
    if (name == "bert" || name == "bert-d") {
        return Method::BertD;
    }
    if (name == "bert-c") {
        return Method::BertC;
    }
    return std::nullopt;
}

double rmse(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("rmse needs equal-length series");
    }
    if (a.empty()) {
        throw std::invalid_argument("rmse needs at least one sample");
    }
    double acc = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(a.size()));
}

double rmse(const PhaseSeries& a, const PhaseSeries& b) {
    return rmse(std::span<const double>(a.values()), std::span<const double>(b.values()));
}

namespace {

PhaseSeries run_method(Method method, const IQSeries& iq) {
    switch (method) {
    case Method::AD:
        return demod_ad(iq);
    case Method::DACM:
        return demod_dacm(iq);
    case Method::BertD:
        return demod_bert(iq);
    case Method::BertC: {
        // Drift compensation is part of the usable output of the recursive
        // method, so it stays inside the timed region.
        PhaseSeries raw = demod_bert(iq);
        return compensate_drift(raw, estimate_drift(raw));
    }
    }
    throw std::invalid_argument("unknown method id");
}

} // namespace

BenchReport time_method(Method method, const IQSeries& iq, int repetitions, int warmup,
                        PhaseSeries* last_output) {
    if (repetitions < 3) {
        throw std::invalid_argument("benchmark needs at least 3 repetitions");
    }
    if (warmup < 1) {
        throw std::invalid_argument("benchmark needs at least 1 warmup run");
    }
    using clock = std::chrono::steady_clock;

    for (int r = 0; r < warmup; ++r) {
        PhaseSeries out = run_method(method, iq);
        (void)out;
    }
    std::vector<double> times;
    times.reserve(static_cast<std::size_t>(repetitions));
    PhaseSeries out(1.0, {0.0});
    for (int r = 0; r < repetitions; ++r) {
        const auto t0 = clock::now();
        out = run_method(method, iq);
        const auto t1 = clock::now();
        times.push_back(std::chrono::duration<double>(t1 - t0).count());
    }
    if (last_output != nullptr) {
        *last_output = std::move(out);
    }
    return BenchReport(method_name(method), iq.size(), std::move(times));
}

ComparisonReport compare_methods(const IQSeries& iq, const PhaseSeries& truth,
                                 const std::vector<Method>& methods, int repetitions,
                                 int warmup) {
    if (truth.size() != iq.size()) {
        throw std::invalid_argument("truth length must match the IQ series");
    }
    ComparisonReport report;
    report.entries.reserve(methods.size());
    for (Method m : methods) {
        PhaseSeries out(1.0, {0.0});
        BenchReport bench = time_method(m, iq, repetitions, warmup, &out);
        report.entries.push_back(bench.with_rmse(rmse(out, truth)));
    }
    return report;
}

} // namespace pulsedemod
