#include "wavekit/continuous_wavelets.hpp"

#include "wavekit/error.hpp"
#include "wavekit/spectral.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

namespace wavekit {

namespace {

constexpr double kPi = std::numbers::pi;

double peak_frequency(const ContinuousWaveletId& w) {
    return w.kind == ContinuousWaveletId::Kind::Morlet ? w.center_frequency : static_cast<double>(w.cauchy_order);
}

// Folded normalized frequency of DFT bin k, in [0, pi].
double bin_frequency(std::size_t k, std::size_t n) {
    const std::size_t m = std::min(k, n - k);
    return std::min(kPi, 2.0 * kPi * static_cast<double>(m) / static_cast<double>(n));
}

std::vector<Complex> filtered(std::span<const Complex> spectrum, std::span<const double> response) {
    std::vector<Complex> out(spectrum.size());
    for (std::size_t k = 0; k < spectrum.size(); ++k) out[k] = spectrum[k] * response[k];
    return out;
}

std::vector<double> real_part(std::span<const Complex> x) {
    std::vector<double> out(x.size());
    std::ranges::transform(x, out.begin(), [](Complex c) { return c.real(); });
    return out;
}

std::vector<double> sampled(std::size_t n, auto&& response) {
    std::vector<double> r(n);
    for (std::size_t k = 0; k < n; ++k) r[k] = response(bin_frequency(k, n));
    return r;
}

[[noreturn]] void unsupported(std::string_view text) {
    throw Error(ErrorCode::UnsupportedWavelet, "unknown continuous wavelet '" + std::string(text) + "'");
}

} // namespace

ContinuousWaveletId ContinuousWaveletId::parse(std::string_view text) {
    std::string s(text);
    std::ranges::transform(s, s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    const std::string_view v = s;
    if (v == "shannon") return shannon();
    if (v.starts_with("morlet")) {
        double omega0 = 5.0;
        const auto rest = v.substr(6);
        if (!rest.empty()) {
            auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), omega0);
            if (ec != std::errc{} || ptr != rest.data() + rest.size()) unsupported(text);
        }
        if (!(omega0 >= 5.0) || !std::isfinite(omega0)) unsupported(text);
        return morlet(omega0);
    }
    if (v.starts_with("cauchy")) {
        int p = 1;
        const auto rest = v.substr(6);
        if (!rest.empty()) {
            auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), p);
            if (ec != std::errc{} || ptr != rest.data() + rest.size()) unsupported(text);
        }
        if (p < 1 || p > 64) unsupported(text);
        return cauchy(p);
    }
    unsupported(text);
}

std::string ContinuousWaveletId::name() const {
    switch (kind) {
    case Kind::Shannon: return "shannon";
    case Kind::Cauchy: return cauchy_order == 1 ? "cauchy" : "cauchy" + std::to_string(cauchy_order);
    case Kind::Morlet: {
        if (center_frequency == 5.0) return "morlet";
        char buf[32];
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, center_frequency);
        return "morlet" + std::string(buf, ptr);
    }
    }
    return "?";
}

double mother_response(const ContinuousWaveletId& w, double omega) {
    omega = std::fabs(omega);
    switch (w.kind) {
    case ContinuousWaveletId::Kind::Morlet: {
        const double d = omega - w.center_frequency;
        return std::exp(-0.5 * d * d);
    }
    case ContinuousWaveletId::Kind::Cauchy:
        return std::pow(omega, w.cauchy_order) * std::exp(-omega);
    case ContinuousWaveletId::Kind::Shannon:
        return (omega > kPi && omega <= 2.0 * kPi) ? 1.0 : 0.0;
    }
    return 0.0;
}

double band_response(const ContinuousWaveletId& w, int band, double omega) {
    return mother_response(w, std::ldexp(omega, band));
}

double residual_response(const ContinuousWaveletId& w, int levels, double omega) {
    omega = std::fabs(omega);
    if (w.kind == ContinuousWaveletId::Kind::Shannon) return std::ldexp(omega, levels) <= kPi ? 1.0 : 0.0;
    const double peak = std::ldexp(peak_frequency(w), -levels);
    if (omega <= peak) return 1.0;
    return band_response(w, levels, omega) / band_response(w, levels, peak);
}

std::vector<double> frame_sum(const ContinuousWaveletId& w, int levels, std::size_t n) {
    return sampled(n, [&](double omega) {
        double s = 0.0;
        for (int j = 1; j <= levels; ++j) {
            const double r = band_response(w, j, omega);
            s += r * r;
        }
        const double low = residual_response(w, levels, omega);
        return s + low * low;
    });
}

DyadicCwtDecomposition dyadic_cwt_analyze(std::span<const double> signal, const ContinuousWaveletId& w, int levels) {
    if (levels < 1 || levels > 30)
        throw Error(ErrorCode::InvalidArgument, "levels must be in 1..30, got " + std::to_string(levels));
    if (signal.size() < (std::size_t{1} << levels))
        throw Error(ErrorCode::SignalTooShort, std::to_string(levels) + " octave bands need at least " +
                                                   std::to_string(std::size_t{1} << levels) + " samples");
    const std::size_t n = signal.size();
    const auto spectrum = fft_forward(signal);

    DyadicCwtDecomposition d;
    d.wavelet = w;
    d.levels = levels;
    d.length = n;
    d.bands.reserve(levels);
    for (int j = 1; j <= levels; ++j) {
        const auto response = sampled(n, [&](double omega) { return band_response(w, j, omega); });
        d.bands.push_back(real_part(fft_inverse(filtered(spectrum, response))));
    }
    const auto low = sampled(n, [&](double omega) { return residual_response(w, levels, omega); });
    d.residual_lowpass = real_part(fft_inverse(filtered(spectrum, low)));
    return d;
}

std::vector<double> dyadic_cwt_synthesize(const DyadicCwtDecomposition& d) {
    const std::size_t n = d.length;
    if (d.levels < 1 || d.bands.size() != static_cast<std::size_t>(d.levels) || d.residual_lowpass.size() != n ||
        std::ranges::any_of(d.bands, [n](const auto& b) { return b.size() != n; }))
        throw Error(ErrorCode::MalformedDecomposition, "band count or length does not match the decomposition");

    const auto s = frame_sum(d.wavelet, d.levels, n);
    const double smax = *std::ranges::max_element(s);
    if (!(smax > 0.0)) throw Error(ErrorCode::DegenerateFrame, "frame sum is zero at every frequency");
    const double floor = 1e-6 * smax;

    std::vector<Complex> acc(n, Complex{});
    auto add = [&](std::span<const double> coeffs, auto&& response) {
        const auto spectrum = fft_forward(coeffs);
        for (std::size_t k = 0; k < n; ++k) acc[k] += spectrum[k] * response(bin_frequency(k, n));
    };
    for (int j = 1; j <= d.levels; ++j)
        add(d.bands[j - 1], [&](double omega) { return band_response(d.wavelet, j, omega); });
    add(d.residual_lowpass, [&](double omega) { return residual_response(d.wavelet, d.levels, omega); });
    for (std::size_t k = 0; k < n; ++k) acc[k] /= std::max(s[k], floor);
    return real_part(fft_inverse(acc));
}

} // namespace wavekit
