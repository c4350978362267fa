#pragma once

// File ingestion and emission.
//
//  IQ CSV     header "t,i,q" or "i,q"; UTF-8, '.' decimal separator. A "t"
//             column must be uniformly spaced (1 ppm) and yields the rate.
//  IQ binary  little-endian float32, interleaved I then Q, with a JSON
//             sidecar { "n": <count>, "fs_hz": <rate>, "fc_hz": <carrier> }.
//  Phase CSV  header "t,phi" or "phi".
//  Truth CSV  header "t,x" (displacement in meters).
//  RR files   one interval in ms per line, or beat timestamps in seconds.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pulsedemod/types.hpp"

namespace pulsedemod {

class RecordMetadata {
public:
    RecordMetadata(double sampling_rate_hz, double carrier_frequency_hz,
                   std::vector<std::string> channel_labels = {}, std::string source_note = {});

    double sampling_rate_hz() const { return sampling_rate_hz_; }
    double carrier_frequency_hz() const { return carrier_frequency_hz_; }
    const std::vector<std::string>& channel_labels() const { return channel_labels_; }
    const std::string& source_note() const { return source_note_; }

private:
    double sampling_rate_hz_;
    double carrier_frequency_hz_;
    std::vector<std::string> channel_labels_;
    std::string source_note_;
};

struct IQRecord {
    IQSeries series;
    RecordMetadata metadata;
};

/// Parse errors carry 1-based line numbers. Files without a "t" column need
/// fs_hint; fc_hint defaults to the 24 GHz CW carrier when absent.
IQRecord read_iq_csv(const std::filesystem::path& path, std::optional<double> fs_hint = {},
                     std::optional<double> fc_hint = {});

IQRecord read_iq_binary(const std::filesystem::path& data_path,
                        const std::filesystem::path& sidecar_path);

enum class RRFormat {
    Intervals,  // milliseconds per line
    Timestamps, // beat times in seconds per line, strictly increasing
};

RRSeries read_reference_rr(const std::filesystem::path& path, RRFormat format,
                           bool enforce_plausibility = true);

PhaseSeries read_phase_csv(const std::filesystem::path& path, std::optional<double> fs_hint = {});

DisplacementSeries read_displacement_csv(const std::filesystem::path& path,
                                         std::optional<double> fs_hint = {});

void write_iq_csv(const std::filesystem::path& path, const IQSeries& iq);
void write_iq_binary(const std::filesystem::path& data_path,
                     const std::filesystem::path& sidecar_path, const IQSeries& iq,
                     double carrier_frequency_hz);
void write_phase_csv(const std::filesystem::path& path, const PhaseSeries& phase);
void write_displacement_csv(const std::filesystem::path& path, const DisplacementSeries& x);

} // namespace pulsedemod
