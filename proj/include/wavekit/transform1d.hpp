#pragma once

#include "wavekit/wavelet_filters.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace wavekit {

/// Boundary handling. Periodic is exactly invertible; Symmetric (half-sample
/// mirror) only reconstructs the interior exactly.
enum class ExtensionMode { Periodic, Symmetric };

std::string_view to_string(ExtensionMode mode) noexcept;
ExtensionMode parse_extension(std::string_view text);

struct LevelCoefficients {
    std::vector<double> approx;
    std::vector<double> detail;
};

/// Stage-L pyramid. details[0] is the finest level, details[levels-1] the
/// coarsest; `approx` is the level-L approximation. Inputs are padded by
/// periodic wrap to `padded_length` (a multiple of 2^levels) before analysis.
struct Decomposition1D {
    WaveletId wavelet;
    int levels = 0;
    std::vector<double> approx;
    std::vector<std::vector<double>> details;
    std::size_t original_length = 0;
    std::size_t padded_length = 0;
    ExtensionMode extension = ExtensionMode::Periodic;
};

/// One analysis stage: filter with dec_lo/dec_hi and keep every other output.
/// Periodic needs an even length >= 2; Symmetric yields ceil(n/2) outputs.
LevelCoefficients analyze_level(std::span<const double> signal, const FilterBank& fb, ExtensionMode ext);

/// Inverse of analyze_level. Under Periodic out_length must be twice the
/// coefficient length; under Symmetric it must be 2n or 2n-1.
std::vector<double> synthesize_level(std::span<const double> approx, std::span<const double> detail,
                                     const FilterBank& fb, ExtensionMode ext, std::size_t out_length);

Decomposition1D decompose(std::span<const double> signal, const WaveletId& wavelet, int levels,
                          ExtensionMode ext = ExtensionMode::Periodic);

/// Same as above with a prebuilt filter bank (avoids rebuilding it in sweeps).
Decomposition1D decompose(std::span<const double> signal, const FilterBank& fb, int levels,
                          ExtensionMode ext = ExtensionMode::Periodic);

std::vector<double> reconstruct(const Decomposition1D& d);

/// Periodic wrap to the next multiple of `multiple`.
std::vector<double> pad_periodic(std::span<const double> signal, std::size_t multiple);

} // namespace wavekit
