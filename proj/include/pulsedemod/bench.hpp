#pragma once

// Accuracy (RMSE) and wall-clock comparison harness for the demodulators.
// Timing uses a monotonic clock; warmup runs are excluded from statistics;
// methods are timed one after another, never concurrently.

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pulsedemod/types.hpp"

namespace pulsedemod {

enum class Method {
    AD,    // arctangent + unwrap
    DACM,  // differentiate and cross-multiply
    BertD, // raw recursion (with drift)
    BertC, // recursion + drift compensation (compensation included in timing)
};

const char* method_name(Method m);
std::optional<Method> parse_method(std::string_view name);

/// sqrt(mean((a_n - b_n)^2)); lengths must match and be >= 1.
double rmse(std::span<const double> a, std::span<const double> b);
double rmse(const PhaseSeries& a, const PhaseSeries& b);

/// Runs the selected demodulator warmup + repetitions times on the same
/// input and records one wall time per timed repetition. The output of the
/// last run is written to *last_output when non-null (for RMSE computation).
BenchReport time_method(Method method, const IQSeries& iq, int repetitions, int warmup,
                        PhaseSeries* last_output = nullptr);

struct ComparisonReport {
    std::vector<BenchReport> entries;
};

/// Benchmarks every requested method against the ground-truth phase:
/// wall-time statistics plus phase RMSE vs truth per method.
ComparisonReport compare_methods(const IQSeries& iq, const PhaseSeries& truth,
                                 const std::vector<Method>& methods, int repetitions,
                                 int warmup = 1);

} // namespace pulsedemod
