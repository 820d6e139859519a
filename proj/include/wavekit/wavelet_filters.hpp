#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wavekit {

enum class WaveletFamily { Haar, Daubechies, Symlet, Coiflet, Biorthogonal };

/// Names a discrete wavelet. Text form is the toolbox convention:
/// "haar", "db4", "sym8", "coif2", "bior4.4".
///
/// For biorthogonal banks `order` is the reconstruction order and
/// `dual_order` the decomposition order, so "bior2.4" has order 2 and
/// dual_order 4. Other families leave dual_order at 0; Haar leaves both at 0.
struct WaveletId {
    WaveletFamily family = WaveletFamily::Haar;
    int order = 0;
    int dual_order = 0;

    static WaveletId haar() { return {}; }
    static WaveletId daubechies(int n) { return {WaveletFamily::Daubechies, n, 0}; }
    static WaveletId symlet(int n) { return {WaveletFamily::Symlet, n, 0}; }
    static WaveletId coiflet(int n) { return {WaveletFamily::Coiflet, n, 0}; }
    static WaveletId biorthogonal(int rec, int dec) { return {WaveletFamily::Biorthogonal, rec, dec}; }

    /// Throws Error(UnsupportedWavelet) for unknown names or orders.
    static WaveletId parse(std::string_view text);

    std::string name() const;
    bool is_supported() const noexcept;

    friend bool operator==(const WaveletId&, const WaveletId&) = default;
};

/// Four FIR filters of a two-channel perfect-reconstruction bank.
///
/// Taps follow the convolution convention of the common toolboxes:
///
///   approx[i] = sum_k dec_lo[k] * x[2i + dec_lo_anchor - k]
///   detail[i] = sum_k dec_hi[k] * x[2i + dec_hi_anchor - k]
///   x[2i + rec_lo_shift + j] += approx[i] * rec_lo[j]
///   x[2i + rec_hi_shift + j] += detail[i] * rec_hi[j]
///
/// For orthogonal banks the anchors are L-1 and the shifts 0, which makes the
/// Haar approximation the pairwise (x[2i] + x[2i+1]) / sqrt(2). Biorthogonal
/// banks keep their unequal lengths; the anchors/shifts carry the alignment.
struct FilterBank {
    WaveletId id;
    std::vector<double> dec_lo;
    std::vector<double> dec_hi;
    std::vector<double> rec_lo;
    std::vector<double> rec_hi;
    int dec_lo_anchor = 0;
    int dec_hi_anchor = 0;
    int rec_lo_shift = 0;
    int rec_hi_shift = 0;
    bool orthogonal = true;

    std::size_t max_length() const noexcept;
};

/// Deterministic: the same id always yields bitwise-identical taps.
FilterBank get_filterbank(const WaveletId& id);

/// g[k] = (-1)^k h[L-1-k].
std::vector<double> qmf(std::span<const double> lowpass);

/// Largest m such that the centered moments p = 0..m-1 of `highpass` vanish.
///
/// Moment p is sum_k (k - (L-1)/2)^p g[k]. It counts as vanishing when its
/// magnitude is at most `tolerance` times sum_k |(k - (L-1)/2)^p g[k]|; the
/// relative form keeps the test meaningful for long filters, where the raw
/// index powers reach 1e30 and swamp any absolute threshold.
int count_vanishing_moments(std::span<const double> highpass, double tolerance);

struct OrthonormalityReport {
    double norm_error = 0.0;        ///< | sum h[k]^2 - 1 |
    double max_shift_product = 0.0; ///< max over m != 0 of | sum h[k] h[k+2m] |
    double max_violation() const noexcept;
    bool passes(double tolerance) const noexcept { return max_violation() <= tolerance; }
};

/// Throws Error(NotOrthogonalFamily) for biorthogonal banks.
OrthonormalityReport check_orthonormality(const FilterBank& fb);

} // namespace wavekit
