#pragma once

#include "wavekit/matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace wavekit {

/// 8-bit grayscale raster, row-major.
struct GrayImage {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::uint8_t> pixels;

    GrayImage() = default;
    GrayImage(std::size_t r, std::size_t c, std::uint8_t fill = 0) : rows(r), cols(c), pixels(r * c, fill) {}

    std::uint8_t& operator()(std::size_t r, std::size_t c) noexcept { return pixels[r * cols + c]; }
    std::uint8_t operator()(std::size_t r, std::size_t c) const noexcept { return pixels[r * cols + c]; }

    friend bool operator==(const GrayImage&, const GrayImage&) = default;
};

Matrix to_matrix(const GrayImage& img);

/// Clamp to [0, 255], then round half away from zero.
GrayImage quantize(const Matrix& m);

} // namespace wavekit
