#pragma once

#include "wavekit/image.hpp"
#include "wavekit/matrix.hpp"
#include "wavekit/transform1d.hpp"

#include <cstddef>
#include <vector>

namespace wavekit {

/// Band naming, with "rows" meaning the pass that filters along each row:
///   ll = lowpass rows, lowpass columns
///   lh = lowpass rows, highpass columns (responds to horizontal edges)
///   hl = highpass rows, lowpass columns (responds to vertical edges)
///   hh = highpass rows, highpass columns
struct DetailBands {
    Matrix lh;
    Matrix hl;
    Matrix hh;
};

struct SubbandSet {
    Matrix ll;
    Matrix lh;
    Matrix hl;
    Matrix hh;
};

struct Decomposition2D {
    WaveletId wavelet;
    int levels = 0;
    Matrix ll_final;
    std::vector<DetailBands> detail_levels; ///< finest first
    std::size_t original_rows = 0;
    std::size_t original_cols = 0;
    std::size_t padded_rows = 0;
    std::size_t padded_cols = 0;
    ExtensionMode extension = ExtensionMode::Periodic;

    std::size_t coefficient_count() const noexcept;
};

SubbandSet analyze_level2d(const Matrix& image, const FilterBank& fb, ExtensionMode ext);

Matrix synthesize_level2d(const SubbandSet& s, const FilterBank& fb, ExtensionMode ext, std::size_t out_rows,
                          std::size_t out_cols);

Decomposition2D decompose2d(const Matrix& image, const WaveletId& wavelet, int levels,
                            ExtensionMode ext = ExtensionMode::Periodic);
Decomposition2D decompose2d(const Matrix& image, const FilterBank& fb, int levels,
                            ExtensionMode ext = ExtensionMode::Periodic);

Matrix reconstruct2d(const Decomposition2D& d);

/// Periodic wrap of each axis up to a multiple of `multiple`.
Matrix pad_periodic(const Matrix& image, std::size_t multiple);

enum class MosaicNormalization { PerBand, Global };

/// Nested-quadrant display: ll_final top-left; per level lh top-right,
/// hl bottom-left, hh bottom-right. Each band (PerBand) or the whole set of
/// coefficients (Global) is mapped affinely min->0, max->255; a zero-range
/// band maps to 128. Output has the padded dimensions.
GrayImage render_mosaic(const Decomposition2D& d, MosaicNormalization normalization = MosaicNormalization::PerBand);

} // namespace wavekit
