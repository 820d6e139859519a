#pragma once

#include "wavekit/compressor.hpp"
#include "wavekit/continuous_wavelets.hpp"
#include "wavekit/image.hpp"
#include "wavekit/quality_metrics.hpp"
#include "wavekit/transform1d.hpp"
#include "wavekit/transform2d.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wavekit {

using Bytes = std::vector<std::uint8_t>;

struct AudioBuffer {
    std::vector<double> samples; ///< mono, in [-1, 1)
    std::uint32_t sample_rate = 0;
    int source_bit_depth = 16;
};

/// RIFF/WAVE, PCM 16-bit, mono or stereo (stereo is averaged to mono).
AudioBuffer read_wav(std::span<const std::uint8_t> bytes);
/// Mono PCM with a 44-byte canonical header. Only bit_depth 16 is supported.
Bytes write_wav(const AudioBuffer& buffer, int bit_depth = 16);

/// Binary P5 with maxval 255. Header comments are accepted on read.
GrayImage read_pgm(std::span<const std::uint8_t> bytes);
Bytes write_pgm(const GrayImage& image);

Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
void write_text(const std::filesystem::path& path, std::string_view text);

/// Report JSON. Infinite SNR/PSNR are flagged and the value omitted.
nlohmann::ordered_json report_json(const QualityReport& report, std::string_view wavelet, int levels);
nlohmann::ordered_json report_json(const CompressionReport& report);
void write_report(const nlohmann::ordered_json& report, const std::filesystem::path& path);

/// Coefficient dumps. 1D and continuous: "level,band,index,value" with band
/// in {approx, detail}; 2D: "level,band,row,col,value" with band in
/// {ll, lh, hl, hh}. Values use 17 significant digits.
std::string coeff_csv(const Decomposition1D& d);
std::string coeff_csv(const Decomposition2D& d);
std::string coeff_csv(const DyadicCwtDecomposition& d);
void write_coeff_csv(const Decomposition1D& d, const std::filesystem::path& path);
void write_coeff_csv(const Decomposition2D& d, const std::filesystem::path& path);

struct CoeffRow {
    int level = 0;
    std::string band;
    std::size_t row = 0; ///< the index column for 1D dumps
    std::size_t col = 0;
    double value = 0.0;
};

/// Parses either dump layout. Throws MalformedCsv.
std::vector<CoeffRow> read_coeff_csv(std::string_view text);

/// printf "%.17g"; parses back to the identical double.
std::string format_double(double v);

} // namespace wavekit
