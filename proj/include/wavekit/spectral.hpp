#pragma once

#include "wavekit/matrix.hpp"

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace wavekit {

using Complex = std::complex<double>;

/// Unnormalized forward DFT, any length >= 1.
std::vector<Complex> fft_forward(std::span<const Complex> x);
std::vector<Complex> fft_forward(std::span<const double> x);

/// Inverse DFT with the 1/N factor, so fft_inverse(fft_forward(x)) == x.
std::vector<Complex> fft_inverse(std::span<const Complex> spectrum);

/// Orthonormal DCT-II and its inverse (DCT-III). Parseval holds.
std::vector<double> dct_forward(std::span<const double> x);
std::vector<double> dct_inverse(std::span<const double> coefficients);

/// Separable 2D versions (rows, then columns).
Matrix dct2d_forward(const Matrix& image);
Matrix dct2d_inverse(const Matrix& coefficients);
std::vector<Complex> fft2d_forward(const Matrix& image); ///< row-major, rows x cols
std::vector<Complex> fft2d_inverse(std::span<const Complex> spectrum, std::size_t rows, std::size_t cols);

enum class SpectralKind { DCT, FFT };

/// A whole-signal transform with four split points that stand in for the
/// octave structure of a stage-4 wavelet pyramid: [0, N/16) is the
/// "approximation", then [N/16, N/8), [N/8, N/4), [N/4, N/2), [N/2, N).
///
/// For the FFT, bin k is placed by its folded frequency 2 * min(k, N - k) so
/// that conjugate bins share a band and partial inverses stay real.
struct SpectralDecomposition {
    SpectralKind kind = SpectralKind::DCT;
    std::vector<double> dct;  ///< set when kind == DCT
    std::vector<Complex> fft; ///< set when kind == FFT
    std::size_t length = 0;
    std::array<std::size_t, 4> band_boundaries{};

    /// 0 for the approximation band, 1..4 for detail bands (1 = finest).
    int band_of(std::size_t index) const noexcept;
};

SpectralDecomposition spectral_analyze(std::span<const double> signal, SpectralKind kind);
std::vector<double> spectral_synthesize(const SpectralDecomposition& d);

/// Each entry is a copy of the decomposition with every coefficient outside
/// its band set to zero. details[0] is the finest band.
struct SpectralStageSplit {
    SpectralDecomposition approx;
    std::array<SpectralDecomposition, 4> details;
};

SpectralStageSplit spectral_stage_split(const SpectralDecomposition& d);
SpectralDecomposition reassemble(const SpectralStageSplit& split);

} // namespace wavekit
