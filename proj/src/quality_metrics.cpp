#include "wavekit/quality_metrics.hpp"

#include "wavekit/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace wavekit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_pair(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw Error(ErrorCode::ShapeMismatch, std::to_string(a.size()) + " vs " + std::to_string(b.size()) + " samples");
    if (a.empty()) throw Error(ErrorCode::EmptyData, "no samples");
}

double squared_error(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

void check_histogram_args(std::span<const double> data, std::size_t bins, HistogramRange range) {
    if (data.empty()) throw Error(ErrorCode::EmptyData, "no samples to histogram");
    if (bins < 2) throw Error(ErrorCode::InvalidArgument, "need at least 2 bins");
    if (!(range.hi > range.lo)) throw Error(ErrorCode::InvalidArgument, "histogram range is empty");
}

} // namespace

double mse(std::span<const double> reference, std::span<const double> processed) {
    check_pair(reference, processed);
    return squared_error(reference, processed) / static_cast<double>(reference.size());
}

double snr_db(std::span<const double> reference, std::span<const double> processed) {
    check_pair(reference, processed);
    double signal = 0.0;
    for (double v : reference) signal += v * v;
    if (signal == 0.0) throw Error(ErrorCode::ZeroReference, "reference has zero energy");
    const double noise = squared_error(reference, processed);
    if (noise == 0.0) return kInf;
    return 10.0 * std::log10(signal / noise);
}

double psnr_db(std::span<const double> reference, std::span<const double> processed, double max_value) {
    if (!(max_value > 0.0)) throw Error(ErrorCode::InvalidArgument, "max_value must be positive");
    const double m = mse(reference, processed);
    if (m == 0.0) return kInf;
    return 10.0 * std::log10(max_value * max_value / m);
}

std::vector<std::size_t> histogram(std::span<const double> data, std::size_t bins, HistogramRange range) {
    check_histogram_args(data, bins, range);
    std::vector<std::size_t> counts(bins, 0);
    const double width = (range.hi - range.lo) / static_cast<double>(bins);
    for (double v : data) {
        const double clipped = std::clamp(v, range.lo, range.hi);
        auto idx = static_cast<std::size_t>((clipped - range.lo) / width);
        counts[std::min(idx, bins - 1)] += 1;
    }
    return counts;
}

double entropy_bits(std::span<const double> data, std::size_t bins, HistogramRange range) {
    const auto counts = histogram(data, bins, range);
    const double n = static_cast<double>(data.size());
    double h = 0.0;
    for (std::size_t c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / n;
        h -= p * std::log2(p);
    }
    return h;
}

double histogram_mean(std::span<const double> data, std::size_t bins, HistogramRange range) {
    const auto counts = histogram(data, bins, range);
    double total = 0.0;
    for (std::size_t c : counts) total += static_cast<double>(c);
    return total / static_cast<double>(bins);
}

QualityConfig QualityConfig::for_image() { return {256, HistogramRange{0.0, 255.0}, 255.0}; }

QualityConfig QualityConfig::for_signal(std::span<const double> reference) {
    if (reference.empty()) throw Error(ErrorCode::EmptyData, "no samples");
    const auto [lo, hi] = std::ranges::minmax(reference);
    const double peak = std::max(std::fabs(lo), std::fabs(hi));
    return {256, HistogramRange{lo, hi}, peak > 0.0 ? peak : 1.0};
}

bool QualityReport::infinite_snr() const noexcept { return std::isinf(snr_db); }
bool QualityReport::infinite_psnr() const noexcept { return std::isinf(psnr_db); }

QualityReport quality_report(std::span<const double> reference, std::span<const double> processed,
                             const QualityConfig& config) {
    check_pair(reference, processed);
    HistogramRange range;
    if (config.range) {
        range = *config.range;
    } else {
        const auto [lo, hi] = std::ranges::minmax(reference);
        range = {lo, hi};
    }
    // A constant reference gives an empty range; widen it so the data lands in one bin.
    if (!(range.hi > range.lo)) range.hi = range.lo + 1.0;

    QualityReport r;
    r.bins = config.bins;
    r.max_value = config.max_value;
    r.mse = mse(reference, processed);
    r.snr_db = snr_db(reference, processed);
    r.psnr_db = psnr_db(reference, processed, config.max_value);
    r.entropy_bits = entropy_bits(processed, config.bins, range);
    r.histogram_mean = histogram_mean(processed, config.bins, range);
    return r;
}

} // namespace wavekit
