#include "wavekit/image.hpp"

#include <algorithm>
#include <cmath>

namespace wavekit {

Matrix to_matrix(const GrayImage& img) {
    Matrix m(img.rows, img.cols);
    std::ranges::transform(img.pixels, m.values().begin(), [](std::uint8_t v) { return static_cast<double>(v); });
    return m;
}

GrayImage quantize(const Matrix& m) {
    GrayImage img(m.rows(), m.cols());
    std::ranges::transform(m.values(), img.pixels.begin(), [](double v) {
        return static_cast<std::uint8_t>(std::round(std::clamp(v, 0.0, 255.0)));
    });
    return img;
}

} // namespace wavekit
