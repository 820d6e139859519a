#include "wavekit/compressor.hpp"

#include "wavekit/error.hpp"
#include "wavekit/quality_metrics.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace wavekit {

namespace {

void check_threshold(double threshold) {
    if (!(threshold >= 0.0)) throw Error(ErrorCode::InvalidArgument, "threshold must be >= 0");
}

void shrink(std::span<double> values, double threshold) {
    for (double& v : values)
        if (std::fabs(v) <= threshold) v = 0.0;
}

double energy(std::span<const double> values) {
    double e = 0.0;
    for (double v : values) e += v * v;
    return e;
}

double total_energy(const Decomposition2D& d) {
    double e = energy(d.ll_final.values());
    for (const auto& lvl : d.detail_levels) e += energy(lvl.lh.values()) + energy(lvl.hl.values()) + energy(lvl.hh.values());
    return e;
}

std::size_t zeros_in(std::span<const double> values) {
    std::size_t n = 0;
    for (double v : values) n += (v == 0.0) ? 1 : 0;
    return n;
}

} // namespace

ThresholdPolicy parse_policy(std::string_view text) {
    if (text == "details") return ThresholdPolicy::DetailsOnly;
    if (text == "all") return ThresholdPolicy::AllBands;
    throw Error(ErrorCode::InvalidArgument, "unknown threshold policy '" + std::string(text) + "'");
}

Decomposition2D hard_threshold(Decomposition2D d, double threshold, ThresholdPolicy policy) {
    check_threshold(threshold);
    for (auto& lvl : d.detail_levels) {
        shrink(lvl.lh.values(), threshold);
        shrink(lvl.hl.values(), threshold);
        shrink(lvl.hh.values(), threshold);
    }
    if (policy == ThresholdPolicy::AllBands) shrink(d.ll_final.values(), threshold);
    return d;
}

Decomposition1D hard_threshold(Decomposition1D d, double threshold, ThresholdPolicy policy) {
    check_threshold(threshold);
    for (auto& detail : d.details) shrink(detail, threshold);
    if (policy == ThresholdPolicy::AllBands) shrink(d.approx, threshold);
    return d;
}

double ZeroCount::percent() const noexcept {
    return total == 0 ? 0.0 : 100.0 * static_cast<double>(zeros) / static_cast<double>(total);
}

ZeroCount count_zeros(const Decomposition2D& d) {
    ZeroCount c;
    c.zeros = zeros_in(d.ll_final.values());
    for (const auto& lvl : d.detail_levels)
        c.zeros += zeros_in(lvl.lh.values()) + zeros_in(lvl.hl.values()) + zeros_in(lvl.hh.values());
    c.total = d.coefficient_count();
    return c;
}

double zero_percentage(const Decomposition2D& d) { return count_zeros(d).percent(); }

bool CompressionReport::infinite_psnr() const noexcept { return std::isinf(psnr_db); }

double CompressionReport::implied_ratio() const noexcept {
    const std::size_t nonzero = coefficient_count - zero_count;
    if (nonzero == 0) return std::numeric_limits<double>::infinity();
    return static_cast<double>(coefficient_count) / static_cast<double>(nonzero);
}

CompressionReport compress2d(const GrayImage& image, const WaveletId& wavelet, int levels, double threshold,
                             ThresholdPolicy policy, ExtensionMode ext) {
    check_threshold(threshold);
    const Matrix original = to_matrix(image);
    const Decomposition2D full = decompose2d(original, wavelet, levels, ext);
    const Decomposition2D kept = hard_threshold(full, threshold, policy);

    CompressionReport r;
    r.wavelet = wavelet;
    r.levels = levels;
    r.threshold = threshold;
    r.policy = policy;
    const ZeroCount zc = count_zeros(kept);
    r.zero_count = zc.zeros;
    r.coefficient_count = zc.total;
    r.zero_percentage = zc.percent();
    const double before = total_energy(full);
    r.retained_energy_percent = before > 0.0 ? 100.0 * total_energy(kept) / before : 100.0;
    r.output = quantize(reconstruct2d(kept));
    r.psnr_db = psnr_db(original.values(), to_matrix(r.output).values(), 255.0);
    return r;
}

} // namespace wavekit
