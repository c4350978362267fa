#include "pulsedemod/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pulsedemod/errors.hpp"

namespace pulsedemod {

namespace {

constexpr double kDefaultCarrierHz = 24e9;

std::string strip(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) {
        s.pop_back();
    }
    std::size_t b = 0;
    while (b < s.size() && (s[b] == ' ' || s[b] == '\t')) {
        ++b;
    }
    return s.substr(b);
}

double parse_cell(const std::string& cell, std::size_t line_no) {
    const std::string c = strip(cell);
    double value = 0.0;
    const char* first = c.data();
    const char* last = c.data() + c.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || c.empty()) {
        throw ParseError("line " + std::to_string(line_no) + ": non-numeric cell '" + c + "'");
    }
    if (!std::isfinite(value)) {
        throw ParseError("line " + std::to_string(line_no) + ": non-finite value");
    }
    return value;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) {
        out.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

// Verifies uniform sample spacing (1 ppm) and returns the derived rate.
double rate_from_timestamps(const std::vector<double>& t) {
    const double dt0 = t[1] - t[0];
    if (!(dt0 > 0.0)) {
        throw ParseError("non-uniform timestamps: non-increasing time column");
    }
    for (std::size_t k = 1; k < t.size(); ++k) {
        const double dt = t[k] - t[k - 1];
        if (std::abs(dt - dt0) > 1e-6 * dt0) {
            throw ParseError("non-uniform timestamps at line " + std::to_string(k + 2));
        }
    }
    const double span = t.back() - t.front();
    return static_cast<double>(t.size() - 1) / span;
}

void append_number(std::string& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

struct CsvColumns {
    bool has_time = false;
    std::vector<double> time;
    std::vector<std::vector<double>> cols;
};

CsvColumns read_numeric_csv(const std::filesystem::path& path,
                            const std::vector<std::string>& header_with_time,
                            const std::vector<std::string>& header_bare) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open '" + path.string() + "'");
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("empty file '" + path.string() + "'");
    }
    const std::string header = strip(line);
    auto join = [](const std::vector<std::string>& v) {
        std::string s;
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (k > 0) {
                s += ',';
            }
            s += v[k];
        }
        return s;
    };
    CsvColumns out;
    std::size_t ncols = 0;
    if (header == join(header_with_time)) {
        out.has_time = true;
        ncols = header_with_time.size() - 1;
    } else if (header == join(header_bare)) {
        out.has_time = false;
        ncols = header_bare.size();
    } else {
        throw ParseError("line 1: expected header '" + join(header_with_time) + "' or '" +
                         join(header_bare) + "', got '" + header + "'");
    }
    out.cols.resize(ncols);

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string body = strip(line);
        if (body.empty()) {
            continue;
        }
        const std::vector<std::string> cells = split_csv(body);
        const std::size_t expect = ncols + (out.has_time ? 1 : 0);
        if (cells.size() != expect) {
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(expect) + " columns, got " +
                             std::to_string(cells.size()));
        }
        std::size_t c = 0;
        if (out.has_time) {
            out.time.push_back(parse_cell(cells[c++], line_no));
        }
        for (std::size_t j = 0; j < ncols; ++j) {
            out.cols[j].push_back(parse_cell(cells[c++], line_no));
        }
    }
    if (out.cols[0].size() < 2) {
        throw ParseError("file '" + path.string() + "' holds fewer than 2 data rows");
    }
    return out;
}

double resolve_rate(const CsvColumns& data, std::optional<double> fs_hint,
                    const std::filesystem::path& path) {
    if (data.has_time) {
        return rate_from_timestamps(data.time);
    }
    if (!fs_hint) {
        throw ParseError("file '" + path.string() +
                         "' has no time column; a sampling rate must be supplied");
    }
    if (!(*fs_hint > 0.0)) {
        throw ParseError("supplied sampling rate must be positive");
    }
    return *fs_hint;
}

} // namespace

RecordMetadata::RecordMetadata(double sampling_rate_hz, double carrier_frequency_hz,
                               std::vector<std::string> channel_labels, std::string source_note)
    : sampling_rate_hz_(sampling_rate_hz),
      carrier_frequency_hz_(carrier_frequency_hz),
      channel_labels_(std::move(channel_labels)),
      source_note_(std::move(source_note)) {
    if (!(sampling_rate_hz > 0.0)) {
        throw std::invalid_argument("metadata sampling rate must be positive");
    }
    if (!(carrier_frequency_hz > 0.0)) {
        throw std::invalid_argument("metadata carrier frequency must be positive");
    }
}

IQRecord read_iq_csv(const std::filesystem::path& path, std::optional<double> fs_hint,
                     std::optional<double> fc_hint) {
    const CsvColumns data = read_numeric_csv(path, {"t", "i", "q"}, {"i", "q"});
    const double fs = resolve_rate(data, fs_hint, path);
    std::vector<IQSample> samples(data.cols[0].size());
    for (std::size_t k = 0; k < samples.size(); ++k) {
        samples[k] = IQSample{data.cols[0][k], data.cols[1][k]};
    }
    return IQRecord{IQSeries(fs, std::move(samples)),
                    RecordMetadata(fs, fc_hint.value_or(kDefaultCarrierHz), {"i", "q"},
                                   path.string())};
}

IQRecord read_iq_binary(const std::filesystem::path& data_path,
                        const std::filesystem::path& sidecar_path) {
    std::ifstream side(sidecar_path);
    if (!side) {
        throw ParseError("cannot open sidecar '" + sidecar_path.string() + "'");
    }
    nlohmann::json j;
    try {
        side >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("sidecar '" + sidecar_path.string() + "': " + e.what());
    }
    if (!j.contains("n") || !j.contains("fs_hz") || !j.contains("fc_hz")) {
        throw ParseError("sidecar must declare n, fs_hz and fc_hz");
    }
    const auto n = j["n"].get<std::uint64_t>();
    const auto fs = j["fs_hz"].get<double>();
    const auto fc = j["fc_hz"].get<double>();

    std::ifstream in(data_path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open '" + data_path.string() + "'");
    }
    in.seekg(0, std::ios::end);
    const auto bytes = static_cast<std::uint64_t>(in.tellg());
    in.seekg(0, std::ios::beg);
    if (bytes != n * 2 * sizeof(float)) {
        throw ParseError("size mismatch: sidecar declares " + std::to_string(n) +
                         " samples (" + std::to_string(n * 2 * sizeof(float)) +
                         " bytes) but file holds " + std::to_string(bytes) + " bytes");
    }
    std::vector<unsigned char> raw(bytes);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(bytes));
    if (!in) {
        throw ParseError("truncated read from '" + data_path.string() + "'");
    }
    auto read_f32le = [&raw](std::uint64_t idx) {
        const unsigned char* b = raw.data() + idx * 4;
        const std::uint32_t u = static_cast<std::uint32_t>(b[0]) |
                                (static_cast<std::uint32_t>(b[1]) << 8) |
                                (static_cast<std::uint32_t>(b[2]) << 16) |
                                (static_cast<std::uint32_t>(b[3]) << 24);
        float f;
        std::memcpy(&f, &u, sizeof(f));
        return static_cast<double>(f);
    };
    std::vector<IQSample> samples(n);
    for (std::uint64_t k = 0; k < n; ++k) {
        samples[k] = IQSample{read_f32le(2 * k), read_f32le(2 * k + 1)};
    }
    return IQRecord{IQSeries(fs, std::move(samples)),
                    RecordMetadata(fs, fc, {"i", "q"}, data_path.string())};
}

RRSeries read_reference_rr(const std::filesystem::path& path, RRFormat format,
                           bool enforce_plausibility) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open '" + path.string() + "'");
    }
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string body = strip(line);
        if (body.empty()) {
            continue;
        }
        values.push_back(parse_cell(body, line_no));
    }
    if (format == RRFormat::Intervals) {
        return RRSeries(std::move(values), enforce_plausibility);
    }
    if (values.size() < 2) {
        throw ParseError("timestamp mode needs at least 2 beat times");
    }
    std::vector<double> intervals(values.size() - 1);
    for (std::size_t k = 1; k < values.size(); ++k) {
        if (!(values[k] > values[k - 1])) {
            throw ParseError("non-monotonic timestamps at line " + std::to_string(k + 1));
        }
        intervals[k - 1] = 1000.0 * (values[k] - values[k - 1]);
    }
    return RRSeries(std::move(intervals), enforce_plausibility);
}

PhaseSeries read_phase_csv(const std::filesystem::path& path, std::optional<double> fs_hint) {
    const CsvColumns data = read_numeric_csv(path, {"t", "phi"}, {"phi"});
    const double fs = resolve_rate(data, fs_hint, path);
    return PhaseSeries(fs, data.cols[0]);
}

DisplacementSeries read_displacement_csv(const std::filesystem::path& path,
                                         std::optional<double> fs_hint) {
    const CsvColumns data = read_numeric_csv(path, {"t", "x"}, {"x"});
    const double fs = resolve_rate(data, fs_hint, path);
    return DisplacementSeries(fs, data.cols[0]);
}

void write_iq_csv(const std::filesystem::path& path, const IQSeries& iq) {
    std::ofstream out(path);
    if (!out) {
        throw ParseError("cannot write '" + path.string() + "'");
    }
    std::string buf = "t,i,q\n";
    const double dt = 1.0 / iq.sampling_rate_hz();
    for (std::size_t k = 0; k < iq.size(); ++k) {
        append_number(buf, static_cast<double>(k) * dt);
        buf += ',';
        append_number(buf, iq.samples()[k].i);
        buf += ',';
        append_number(buf, iq.samples()[k].q);
        buf += '\n';
        if (buf.size() > (1u << 20)) {
            out << buf;
            buf.clear();
        }
    }
    out << buf;
}

void write_iq_binary(const std::filesystem::path& data_path,
                     const std::filesystem::path& sidecar_path, const IQSeries& iq,
                     double carrier_frequency_hz) {
    std::ofstream out(data_path, std::ios::binary);
    if (!out) {
        throw ParseError("cannot write '" + data_path.string() + "'");
    }
    auto write_f32le = [&out](double v) {
        const auto f = static_cast<float>(v);
        std::uint32_t u;
        std::memcpy(&u, &f, sizeof(u));
        const unsigned char b[4] = {
            static_cast<unsigned char>(u & 0xff), static_cast<unsigned char>((u >> 8) & 0xff),
            static_cast<unsigned char>((u >> 16) & 0xff),
            static_cast<unsigned char>((u >> 24) & 0xff)};
        out.write(reinterpret_cast<const char*>(b), 4);
    };
    for (const IQSample& s : iq.samples()) {
        write_f32le(s.i);
        write_f32le(s.q);
    }
    nlohmann::json j;
    j["n"] = iq.size();
    j["fs_hz"] = iq.sampling_rate_hz();
    j["fc_hz"] = carrier_frequency_hz;
    std::ofstream side(sidecar_path);
    if (!side) {
        throw ParseError("cannot write '" + sidecar_path.string() + "'");
    }
    side << j.dump(2) << '\n';
}

namespace {

void write_two_column_csv(const std::filesystem::path& path, const char* header,
                          const std::vector<double>& values, double fs) {
    std::ofstream out(path);
    if (!out) {
        throw ParseError("cannot write '" + path.string() + "'");
    }
    std::string buf = header;
    buf += '\n';
    const double dt = 1.0 / fs;
    for (std::size_t k = 0; k < values.size(); ++k) {
        append_number(buf, static_cast<double>(k) * dt);
        buf += ',';
        append_number(buf, values[k]);
        buf += '\n';
        if (buf.size() > (1u << 20)) {
            out << buf;
            buf.clear();
        }
    }
    out << buf;
}

} // namespace

void write_phase_csv(const std::filesystem::path& path, const PhaseSeries& phase) {
    write_two_column_csv(path, "t,phi", phase.values(), phase.sampling_rate_hz());
}

void write_displacement_csv(const std::filesystem::path& path, const DisplacementSeries& x) {
    write_two_column_csv(path, "t,x", x.values(), x.sampling_rate_hz());
}

} // namespace pulsedemod
