#pragma once

#include "wavekit/image.hpp"
#include "wavekit/transform1d.hpp"
#include "wavekit/transform2d.hpp"

#include <cstddef>

namespace wavekit {

enum class ThresholdPolicy { DetailsOnly, AllBands };

ThresholdPolicy parse_policy(std::string_view text);

/// Hard shrinkage: coefficients with |c| <= threshold become 0, the rest are
/// left untouched. Throws InvalidArgument for a negative or NaN threshold.
Decomposition2D hard_threshold(Decomposition2D d, double threshold, ThresholdPolicy policy);
Decomposition1D hard_threshold(Decomposition1D d, double threshold, ThresholdPolicy policy);

struct ZeroCount {
    std::size_t zeros = 0;
    std::size_t total = 0;
    double percent() const noexcept;
};

/// Exact zeros over every stored band (ll_final included).
ZeroCount count_zeros(const Decomposition2D& d);
double zero_percentage(const Decomposition2D& d);

struct CompressionReport {
    WaveletId wavelet;
    int levels = 0;
    double threshold = 0.0;
    ThresholdPolicy policy = ThresholdPolicy::DetailsOnly;
    std::size_t zero_count = 0;
    std::size_t coefficient_count = 0;
    double zero_percentage = 0.0;
    double psnr_db = 0.0; ///< +infinity when the output equals the input
    double retained_energy_percent = 0.0;
    GrayImage output;

    bool infinite_psnr() const noexcept;
    /// coefficients / nonzero coefficients; +infinity when everything is zero.
    double implied_ratio() const noexcept;
};

/// decompose2d -> hard_threshold -> reconstruct2d -> clamp and round to 8 bit.
CompressionReport compress2d(const GrayImage& image, const WaveletId& wavelet, int levels, double threshold,
                             ThresholdPolicy policy = ThresholdPolicy::DetailsOnly,
                             ExtensionMode ext = ExtensionMode::Periodic);

} // namespace wavekit
