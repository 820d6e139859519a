// Writes the bundled 256x256 test image: a synthetic fingerprint (curved
// ridges inside an elliptical pad on a light background) with mild sensor
// noise. Noise comes from mt19937 words mapped by hand rather than from
// <random> distributions, whose output varies between standard libraries.
#include "wavekit/image.hpp"
#include "wavekit/signal_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <numbers>
#include <random>

namespace {

constexpr int kSize = 256;
constexpr double kPeriod = 9.0;     // ridge spacing in pixels
constexpr double kContrast = 95.0;  // ridge amplitude around the pad mean
constexpr double kNoise = 4.0;      // +- uniform sensor noise
constexpr double kBackground = 236.0;

double unit(std::mt19937& g) { return static_cast<double>(g() >> 8) / 16777216.0; }

} // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: make_fingerprint OUT.pgm\n";
        return 2;
    }
    std::mt19937 gen(20240917u);
    wavekit::GrayImage img(kSize, kSize);
    const double cx = 128.0, cy = 140.0;
    for (int r = 0; r < kSize; ++r) {
        for (int c = 0; c < kSize; ++c) {
            const double dx = c - cx, dy = (r - cy) * 1.25;
            const double radius = std::hypot(dx, dy);
            // Loop-like pattern: rings around a core, bent by a slow swirl.
            const double swirl = 2.2 * std::sin(std::atan2(dy, dx) * 2.0 + radius / 40.0);
            const double phase = 2.0 * std::numbers::pi * (radius / kPeriod) + swirl + 0.004 * dx * dy / kPeriod;
            const double ridge = std::cos(phase);

            const double ex = (c - 128.0) / 98.0, ey = (r - 132.0) / 118.0;
            const double edge = std::sqrt(ex * ex + ey * ey);
            const double pad = std::clamp((1.0 - edge) / 0.08, 0.0, 1.0);

            const double pressure = 0.75 + 0.25 * std::sin(c / 37.0) * std::cos(r / 29.0);
            const double inked = 150.0 - kContrast * pressure * ridge;
            double v = kBackground * (1.0 - pad) + inked * pad;
            v += kNoise * (2.0 * unit(gen) - 1.0);
            img(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) =
                static_cast<std::uint8_t>(std::clamp(std::round(v), 0.0, 255.0));
        }
    }
    wavekit::write_file(argv[1], wavekit::write_pgm(img));
    return 0;
}
