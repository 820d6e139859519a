#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wavekit {

/// Non-FIR wavelets realized as undecimated octave-band filters in the
/// frequency domain. Text forms: "morlet", "morlet6.5", "cauchy", "cauchy2",
/// "shannon".
struct ContinuousWaveletId {
    enum class Kind { Morlet, Cauchy, Shannon };

    Kind kind = Kind::Morlet;
    double center_frequency = 5.0; ///< Morlet omega0, radians/sample at scale 1
    int cauchy_order = 1;

    static ContinuousWaveletId morlet(double omega0 = 5.0) { return {Kind::Morlet, omega0, 1}; }
    static ContinuousWaveletId cauchy(int p = 1) { return {Kind::Cauchy, 5.0, p}; }
    static ContinuousWaveletId shannon() { return {Kind::Shannon, 5.0, 1}; }

    /// Throws Error(UnsupportedWavelet); also rejects omega0 < 5 and p < 1.
    static ContinuousWaveletId parse(std::string_view text);
    std::string name() const;
};

/// Mother-wavelet frequency response at omega >= 0 (real signals use |omega|):
///   Morlet   exp(-(omega - omega0)^2 / 2)
///   Cauchy   omega^p exp(-omega)
///   Shannon  1 on (pi, 2pi], else 0
double mother_response(const ContinuousWaveletId& w, double omega);

/// Response of band j (1-based) at normalized frequency omega in [0, pi]:
/// mother_response(2^j * omega).
double band_response(const ContinuousWaveletId& w, int band, double omega);

/// Residual lowpass that claims what lies below the coarsest band. Shannon:
/// indicator of [0, pi / 2^levels]. Morlet/Cauchy: flat (1) below the
/// coarsest band's peak, then the coarsest band's response scaled to 1 at
/// its peak.
double residual_response(const ContinuousWaveletId& w, int levels, double omega);

struct DyadicCwtDecomposition {
    ContinuousWaveletId wavelet;
    int levels = 0;
    std::vector<std::vector<double>> bands; ///< bands[j-1] is band j, full length
    std::vector<double> residual_lowpass;
    std::size_t length = 0;
};

/// The signal is one period of a circular sequence. Requires length >= 2^levels.
DyadicCwtDecomposition dyadic_cwt_analyze(std::span<const double> signal, const ContinuousWaveletId& w,
                                          int levels);

/// Frame-normalized adjoint synthesis: sum of band spectra times their
/// (real) responses, divided by the frame sum S(omega) floored at
/// 1e-6 * max S. Throws Error(DegenerateFrame) when S vanishes everywhere.
std::vector<double> dyadic_cwt_synthesize(const DyadicCwtDecomposition& d);

/// S(omega_k) on the DFT grid of length n.
std::vector<double> frame_sum(const ContinuousWaveletId& w, int levels, std::size_t n);

} // namespace wavekit
