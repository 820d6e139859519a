#pragma once

#include "wavekit/matrix.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <utility>

namespace wavekit {

/// Mean of squared differences. Throws ShapeMismatch / EmptyData.
double mse(std::span<const double> reference, std::span<const double> processed);

/// 10 log10(sum ref^2 / sum (ref - proc)^2); +infinity when the error is
/// exactly zero. Throws ZeroReference when the reference has no energy.
double snr_db(std::span<const double> reference, std::span<const double> processed);

/// 10 log10(max_value^2 / mse); +infinity when mse == 0.
double psnr_db(std::span<const double> reference, std::span<const double> processed, double max_value);

struct HistogramRange {
    double lo = 0.0;
    double hi = 0.0;
};

/// Counts of `data` clipped to [lo, hi] in `bins` equal-width bins; the top
/// edge falls in the last bin.
std::vector<std::size_t> histogram(std::span<const double> data, std::size_t bins, HistogramRange range);

/// Shannon entropy in bits of the normalized histogram.
double entropy_bits(std::span<const double> data, std::size_t bins, HistogramRange range);

/// Mean bin count, i.e. N / bins for clipped data.
double histogram_mean(std::span<const double> data, std::size_t bins, HistogramRange range);

struct QualityConfig {
    std::size_t bins = 256;
    std::optional<HistogramRange> range; ///< default: reference min/max
    double max_value = 255.0;

    /// 8-bit images: range [0, 255], peak 255.
    static QualityConfig for_image();
    /// Audio-like signals: range and peak taken from the reference.
    static QualityConfig for_signal(std::span<const double> reference);
};

struct QualityReport {
    double snr_db = 0.0;
    double mse = 0.0;
    double entropy_bits = 0.0; ///< of the processed data
    double psnr_db = 0.0;
    double histogram_mean = 0.0;
    std::size_t bins = 256;
    double max_value = 255.0;

    bool infinite_snr() const noexcept;
    bool infinite_psnr() const noexcept;
};

QualityReport quality_report(std::span<const double> reference, std::span<const double> processed,
                             const QualityConfig& config);

inline QualityReport quality_report(const Matrix& reference, const Matrix& processed, const QualityConfig& config) {
    return quality_report(reference.values(), processed.values(), config);
}

} // namespace wavekit
