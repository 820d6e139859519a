#include "wavekit/transform1d.hpp"

#include "wavekit/error.hpp"

#include <string>

namespace wavekit {

namespace {

std::ptrdiff_t wrap(std::ptrdiff_t idx, std::ptrdiff_t n) {
    const std::ptrdiff_t m = idx % n;
    return m < 0 ? m + n : m;
}

// Half-sample symmetric: ... x1 x0 | x0 x1 ... x(n-1) | x(n-1) x(n-2) ...
std::ptrdiff_t reflect(std::ptrdiff_t idx, std::ptrdiff_t n) {
    const std::ptrdiff_t m = wrap(idx, 2 * n);
    return m < n ? m : 2 * n - 1 - m;
}

void filter_downsample(std::span<const double> x, std::span<const double> taps, int anchor,
                       ExtensionMode ext, std::span<double> out) {
    const auto n = static_cast<std::ptrdiff_t>(x.size());
    const auto len = static_cast<std::ptrdiff_t>(taps.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const std::ptrdiff_t base = 2 * static_cast<std::ptrdiff_t>(i) + anchor;
        double acc = 0.0;
        for (std::ptrdiff_t k = 0; k < len; ++k) {
            const std::ptrdiff_t idx = base - k;
            const std::ptrdiff_t src = ext == ExtensionMode::Periodic ? wrap(idx, n) : reflect(idx, n);
            acc += taps[k] * x[src];
        }
        out[i] = acc;
    }
}

void upsample_accumulate(std::span<const double> coeffs, std::span<const double> taps, int shift,
                         ExtensionMode ext, std::span<double> out) {
    const auto n = static_cast<std::ptrdiff_t>(out.size());
    const auto len = static_cast<std::ptrdiff_t>(taps.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const double c = coeffs[i];
        const std::ptrdiff_t base = 2 * static_cast<std::ptrdiff_t>(i) + shift;
        for (std::ptrdiff_t j = 0; j < len; ++j) {
            const std::ptrdiff_t pos = base + j;
            if (ext == ExtensionMode::Periodic) {
                out[wrap(pos, n)] += c * taps[j];
            } else if (pos >= 0 && pos < n) {
                out[pos] += c * taps[j];
            }
        }
    }
}

std::size_t pow2(int e) { return std::size_t{1} << e; }

} // namespace

std::string_view to_string(ExtensionMode mode) noexcept {
    return mode == ExtensionMode::Periodic ? "periodic" : "symmetric";
}

ExtensionMode parse_extension(std::string_view text) {
    if (text == "periodic") return ExtensionMode::Periodic;
    if (text == "symmetric") return ExtensionMode::Symmetric;
    throw Error(ErrorCode::InvalidArgument, "unknown extension mode '" + std::string(text) + "'");
}

LevelCoefficients analyze_level(std::span<const double> signal, const FilterBank& fb, ExtensionMode ext) {
    if (signal.size() < 2)
        throw Error(ErrorCode::SignalTooShort, "need at least 2 samples, got " + std::to_string(signal.size()));
    if (ext == ExtensionMode::Periodic && signal.size() % 2 != 0)
        throw Error(ErrorCode::OddLengthPeriodic, "periodic analysis of odd length " + std::to_string(signal.size()));
    const std::size_t half = (signal.size() + 1) / 2;
    LevelCoefficients out{std::vector<double>(half), std::vector<double>(half)};
    filter_downsample(signal, fb.dec_lo, fb.dec_lo_anchor, ext, out.approx);
    filter_downsample(signal, fb.dec_hi, fb.dec_hi_anchor, ext, out.detail);
    return out;
}

std::vector<double> synthesize_level(std::span<const double> approx, std::span<const double> detail,
                                     const FilterBank& fb, ExtensionMode ext, std::size_t out_length) {
    if (approx.size() != detail.size())
        throw Error(ErrorCode::LengthMismatch, "approx has " + std::to_string(approx.size()) +
                                                   " coefficients, detail has " + std::to_string(detail.size()));
    const std::size_t n = approx.size();
    const bool ok = ext == ExtensionMode::Periodic ? out_length == 2 * n
                                                   : (out_length == 2 * n || out_length + 1 == 2 * n);
    if (n == 0 || !ok)
        throw Error(ErrorCode::LengthMismatch, "cannot synthesize " + std::to_string(out_length) +
                                                   " samples from " + std::to_string(n) + " coefficient pairs");
    std::vector<double> out(out_length, 0.0);
    upsample_accumulate(approx, fb.rec_lo, fb.rec_lo_shift, ext, out);
    upsample_accumulate(detail, fb.rec_hi, fb.rec_hi_shift, ext, out);
    return out;
}

std::vector<double> pad_periodic(std::span<const double> signal, std::size_t multiple) {
    const std::size_t n = signal.size();
    const std::size_t target = (n + multiple - 1) / multiple * multiple;
    std::vector<double> out(target);
    for (std::size_t i = 0; i < target; ++i) out[i] = signal[i % n];
    return out;
}

Decomposition1D decompose(std::span<const double> signal, const WaveletId& wavelet, int levels,
                          ExtensionMode ext) {
    return decompose(signal, get_filterbank(wavelet), levels, ext);
}

Decomposition1D decompose(std::span<const double> signal, const FilterBank& fb, int levels, ExtensionMode ext) {
    if (levels < 1 || levels > 30)
        throw Error(ErrorCode::InvalidArgument, "levels must be in 1..30, got " + std::to_string(levels));
    if (signal.size() < 2) throw Error(ErrorCode::SignalTooShort, "need at least 2 samples");
    const std::size_t block = pow2(levels);
    if (signal.size() < block)
        throw Error(ErrorCode::TooManyLevels, std::to_string(levels) + " levels need at least " +
                                                  std::to_string(block) + " samples");

    Decomposition1D d;
    d.wavelet = fb.id;
    d.levels = levels;
    d.original_length = signal.size();
    d.extension = ext;
    std::vector<double> running = pad_periodic(signal, block);
    d.padded_length = running.size();
    if (ext == ExtensionMode::Symmetric && d.padded_length / block < fb.dec_lo.size())
        throw Error(ErrorCode::TooManyLevels, "coarsest level shorter than the " + fb.id.name() + " filter");

    d.details.reserve(levels);
    for (int level = 0; level < levels; ++level) {
        auto [approx, detail] = analyze_level(running, fb, ext);
        d.details.push_back(std::move(detail));
        running = std::move(approx);
    }
    d.approx = std::move(running);
    return d;
}

std::vector<double> reconstruct(const Decomposition1D& d) {
    if (d.levels < 1 || d.details.size() != static_cast<std::size_t>(d.levels) || d.padded_length == 0 ||
        d.padded_length % pow2(d.levels) != 0 || d.original_length > d.padded_length)
        throw Error(ErrorCode::MalformedDecomposition, "inconsistent level bookkeeping");
    if (d.approx.size() != d.padded_length / pow2(d.levels))
        throw Error(ErrorCode::MalformedDecomposition, "approximation length does not match levels");
    for (int j = 0; j < d.levels; ++j)
        if (d.details[j].size() != d.padded_length / pow2(j + 1))
            throw Error(ErrorCode::MalformedDecomposition, "detail level " + std::to_string(j + 1) + " has wrong length");

    const FilterBank fb = get_filterbank(d.wavelet);
    std::vector<double> running = d.approx;
    for (int j = d.levels - 1; j >= 0; --j)
        running = synthesize_level(running, d.details[j], fb, d.extension, 2 * running.size());
    running.resize(d.original_length);
    return running;
}

} // namespace wavekit
