#include "wavekit/signal_io.hpp"

#include "wavekit/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace wavekit {

namespace {

std::uint16_t le16(std::span<const std::uint8_t> b, std::size_t at) {
    return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

std::uint32_t le32(std::span<const std::uint8_t> b, std::size_t at) {
    return static_cast<std::uint32_t>(b[at]) | (static_cast<std::uint32_t>(b[at + 1]) << 8) |
           (static_cast<std::uint32_t>(b[at + 2]) << 16) | (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

void put16(Bytes& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put32(Bytes& out, std::uint32_t v) {
    for (int s = 0; s < 32; s += 8) out.push_back(static_cast<std::uint8_t>((v >> s) & 0xff));
}

void put_tag(Bytes& out, const char* tag) { out.insert(out.end(), tag, tag + 4); }

bool tag_is(std::span<const std::uint8_t> b, std::size_t at, const char* tag) {
    return std::equal(tag, tag + 4, b.begin() + static_cast<std::ptrdiff_t>(at));
}

[[noreturn]] void bad_wav(const std::string& why) { throw Error(ErrorCode::MalformedWav, why); }
[[noreturn]] void bad_pgm(const std::string& why) { throw Error(ErrorCode::MalformedPgm, why); }

struct PgmCursor {
    std::span<const std::uint8_t> bytes;
    std::size_t pos = 0;

    static bool is_space(std::uint8_t c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f'; }

    void skip_space_and_comments() {
        while (pos < bytes.size()) {
            if (is_space(bytes[pos])) {
                ++pos;
            } else if (bytes[pos] == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
            } else {
                break;
            }
        }
    }

    unsigned long number(const char* what) {
        skip_space_and_comments();
        const std::size_t start = pos;
        while (pos < bytes.size() && bytes[pos] >= '0' && bytes[pos] <= '9') ++pos;
        if (pos == start || pos - start > 9) bad_pgm(std::string("bad ") + what + " field");
        unsigned long v = 0;
        for (std::size_t i = start; i < pos; ++i) v = v * 10 + (bytes[i] - '0');
        return v;
    }
};

std::string csv_header_1d() { return "level,band,index,value\n"; }

void append_1d_rows(std::string& out, int level, const char* band, std::span<const double> values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        out += std::to_string(level);
        out += ',';
        out += band;
        out += ',';
        out += std::to_string(i);
        out += ',';
        out += format_double(values[i]);
        out += '\n';
    }
}

void append_2d_rows(std::string& out, int level, const char* band, const Matrix& m) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out += std::to_string(level);
            out += ',';
            out += band;
            out += ',';
            out += std::to_string(r);
            out += ',';
            out += std::to_string(c);
            out += ',';
            out += format_double(m(r, c));
            out += '\n';
        }
    }
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto p = line.find(sep, start);
        fields.push_back(line.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start));
        if (p == std::string_view::npos) break;
        start = p + 1;
    }
    return fields;
}

template <typename T>
T parse_field(std::string_view s, std::size_t line_no) {
    T v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw Error(ErrorCode::MalformedCsv, "line " + std::to_string(line_no) + ": bad field '" + std::string(s) + "'");
    return v;
}

nlohmann::ordered_json finite_or_flag(double v) { return std::isfinite(v) ? nlohmann::ordered_json(v) : nullptr; }

} // namespace

AudioBuffer read_wav(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 12 || !tag_is(bytes, 0, "RIFF") || !tag_is(bytes, 8, "WAVE")) bad_wav("missing RIFF/WAVE header");
    const std::uint64_t riff_end = std::uint64_t{le32(bytes, 4)} + 8;
    if (riff_end > bytes.size()) bad_wav("RIFF size exceeds file size");

    bool have_fmt = false;
    std::uint16_t channels = 0;
    std::uint16_t bits = 0;
    std::uint16_t block_align = 0;
    AudioBuffer buf;
    std::size_t pos = 12;
    while (pos + 8 <= riff_end) {
        const std::uint32_t size = le32(bytes, pos + 4);
        const std::size_t body = pos + 8;
        if (body + std::uint64_t{size} > riff_end) bad_wav("chunk overruns the file");
        if (tag_is(bytes, pos, "fmt ")) {
            if (size < 16) bad_wav("fmt chunk too short");
            const std::uint16_t format = le16(bytes, body);
            channels = le16(bytes, body + 2);
            buf.sample_rate = le32(bytes, body + 4);
            block_align = le16(bytes, body + 12);
            bits = le16(bytes, body + 14);
            if (format != 1) throw Error(ErrorCode::UnsupportedEncoding, "audio format " + std::to_string(format) + " is not PCM");
            if (bits != 16) throw Error(ErrorCode::UnsupportedEncoding, std::to_string(bits) + "-bit samples");
            if (channels != 1 && channels != 2)
                throw Error(ErrorCode::UnsupportedEncoding, std::to_string(channels) + " channels");
            if (block_align != channels * 2) bad_wav("block align does not match channel count");
            have_fmt = true;
        } else if (tag_is(bytes, pos, "data")) {
            if (!have_fmt) bad_wav("data chunk before fmt chunk");
            if (size % block_align != 0) bad_wav("data chunk is not a whole number of frames");
            const std::size_t frames = size / block_align;
            if (frames == 0) bad_wav("no samples");
            buf.samples.resize(frames);
            for (std::size_t f = 0; f < frames; ++f) {
                double acc = 0.0;
                for (std::size_t ch = 0; ch < channels; ++ch) {
                    const auto raw = static_cast<std::int16_t>(le16(bytes, body + f * block_align + ch * 2));
                    acc += static_cast<double>(raw) / 32768.0;
                }
                buf.samples[f] = acc / channels;
            }
            buf.source_bit_depth = bits;
            return buf;
        }
        pos = body + size + (size & 1u);
    }
    bad_wav("no data chunk");
}

Bytes write_wav(const AudioBuffer& buffer, int bit_depth) {
    if (bit_depth != 16) throw Error(ErrorCode::UnsupportedEncoding, std::to_string(bit_depth) + "-bit output");
    const auto data_size = static_cast<std::uint32_t>(buffer.samples.size() * 2);
    Bytes out;
    out.reserve(44 + data_size);
    put_tag(out, "RIFF");
    put32(out, 36 + data_size);
    put_tag(out, "WAVE");
    put_tag(out, "fmt ");
    put32(out, 16);
    put16(out, 1);
    put16(out, 1);
    put32(out, buffer.sample_rate);
    put32(out, buffer.sample_rate * 2);
    put16(out, 2);
    put16(out, 16);
    put_tag(out, "data");
    put32(out, data_size);
    for (double s : buffer.samples) {
        const double scaled = std::clamp(std::round(s * 32768.0), -32768.0, 32767.0);
        put16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(scaled)));
    }
    return out;
}

GrayImage read_pgm(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') bad_pgm("missing P5 magic");
    PgmCursor cur{bytes, 2};
    const unsigned long cols = cur.number("width");
    const unsigned long rows = cur.number("height");
    const unsigned long maxval = cur.number("maxval");
    if (cols == 0 || rows == 0) bad_pgm("zero image dimension");
    if (maxval != 255) throw Error(ErrorCode::UnsupportedMaxval, "maxval " + std::to_string(maxval));
    if (cur.pos >= bytes.size() || !PgmCursor::is_space(bytes[cur.pos])) bad_pgm("missing separator after maxval");
    ++cur.pos;
    const std::size_t n = static_cast<std::size_t>(rows) * cols;
    if (bytes.size() - cur.pos < n) bad_pgm("pixel data truncated");
    GrayImage img(rows, cols);
    std::copy_n(bytes.begin() + static_cast<std::ptrdiff_t>(cur.pos), n, img.pixels.begin());
    return img;
}

Bytes write_pgm(const GrayImage& image) {
    const std::string header = "P5\n" + std::to_string(image.cols) + " " + std::to_string(image.rows) + "\n255\n";
    Bytes out(header.begin(), header.end());
    out.insert(out.end(), image.pixels.begin(), image.pixels.end());
    return out;
}

Bytes read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
    Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw Error(ErrorCode::IoFailure, "read failed for " + path.string());
    return data;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoFailure, "cannot create " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::IoFailure, "write failed for " + path.string());
}

void write_text(const std::filesystem::path& path, std::string_view text) {
    write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

nlohmann::ordered_json report_json(const QualityReport& report, std::string_view wavelet, int levels) {
    nlohmann::ordered_json j;
    j["wavelet"] = wavelet;
    j["levels"] = levels;
    if (!report.infinite_snr()) j["snr_db"] = report.snr_db;
    j["mse"] = report.mse;
    j["entropy_bits"] = report.entropy_bits;
    if (!report.infinite_psnr()) j["psnr_db"] = report.psnr_db;
    j["histogram_mean"] = report.histogram_mean;
    j["infinite_snr"] = report.infinite_snr();
    j["infinite_psnr"] = report.infinite_psnr();
    return j;
}

nlohmann::ordered_json report_json(const CompressionReport& report) {
    nlohmann::ordered_json j;
    j["wavelet"] = report.wavelet.name();
    j["levels"] = report.levels;
    j["threshold"] = report.threshold;
    j["policy"] = report.policy == ThresholdPolicy::DetailsOnly ? "details" : "all";
    j["zero_count"] = report.zero_count;
    j["coefficient_count"] = report.coefficient_count;
    j["zero_percentage"] = report.zero_percentage;
    j["implied_ratio"] = finite_or_flag(report.implied_ratio());
    if (!report.infinite_psnr()) j["psnr_db"] = report.psnr_db;
    j["infinite_psnr"] = report.infinite_psnr();
    j["retained_energy_percent"] = report.retained_energy_percent;
    return j;
}

void write_report(const nlohmann::ordered_json& report, const std::filesystem::path& path) {
    write_text(path, report.dump(2) + "\n");
}

std::string format_double(double v) {
    char buf[40];
    const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf, static_cast<std::size_t>(n));
}

std::string coeff_csv(const Decomposition1D& d) {
    std::string out = csv_header_1d();
    for (int j = 0; j < d.levels; ++j) append_1d_rows(out, j + 1, "detail", d.details[j]);
    append_1d_rows(out, d.levels, "approx", d.approx);
    return out;
}

std::string coeff_csv(const DyadicCwtDecomposition& d) {
    std::string out = csv_header_1d();
    for (int j = 0; j < d.levels; ++j) append_1d_rows(out, j + 1, "detail", d.bands[j]);
    append_1d_rows(out, d.levels, "approx", d.residual_lowpass);
    return out;
}

std::string coeff_csv(const Decomposition2D& d) {
    std::string out = "level,band,row,col,value\n";
    for (int j = 0; j < d.levels; ++j) {
        const auto& lvl = d.detail_levels[j];
        append_2d_rows(out, j + 1, "lh", lvl.lh);
        append_2d_rows(out, j + 1, "hl", lvl.hl);
        append_2d_rows(out, j + 1, "hh", lvl.hh);
    }
    append_2d_rows(out, d.levels, "ll", d.ll_final);
    return out;
}

void write_coeff_csv(const Decomposition1D& d, const std::filesystem::path& path) { write_text(path, coeff_csv(d)); }
void write_coeff_csv(const Decomposition2D& d, const std::filesystem::path& path) { write_text(path, coeff_csv(d)); }

std::vector<CoeffRow> read_coeff_csv(std::string_view text) {
    std::vector<CoeffRow> rows;
    std::size_t line_no = 0;
    std::size_t columns = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (line_no == 1) {
            if (line == "level,band,index,value")
                columns = 4;
            else if (line == "level,band,row,col,value")
                columns = 5;
            else
                throw Error(ErrorCode::MalformedCsv, "unrecognized header '" + std::string(line) + "'");
            continue;
        }
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != columns)
            throw Error(ErrorCode::MalformedCsv, "line " + std::to_string(line_no) + ": expected " +
                                                     std::to_string(columns) + " fields");
        CoeffRow r;
        r.level = parse_field<int>(f[0], line_no);
        r.band = std::string(f[1]);
        r.row = parse_field<std::size_t>(f[2], line_no);
        if (columns == 5) r.col = parse_field<std::size_t>(f[3], line_no);
        r.value = parse_field<double>(f.back(), line_no);
        rows.push_back(std::move(r));
    }
    if (columns == 0) throw Error(ErrorCode::MalformedCsv, "empty input");
    return rows;
}

} // namespace wavekit
