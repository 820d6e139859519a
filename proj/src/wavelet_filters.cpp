#include "wavekit/wavelet_filters.hpp"

#include "wavekit/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <span>

#include "filter_tables.inc"

namespace wavekit {

namespace {

bool parse_int(std::string_view text, int& out) {
    if (text.empty()) return false;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, out);
    return ec == std::errc{} && ptr == end;
}

std::string lowercase(std::string_view text) {
    std::string s(text);
    std::ranges::transform(s, s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

[[noreturn]] void unsupported(std::string_view text) {
    throw Error(ErrorCode::UnsupportedWavelet, "unknown wavelet '" + std::string(text) + "'");
}

const detail::BiorthogonalTable* find_biorthogonal(int rec, int dec) {
    for (const auto& t : detail::kBiorthogonal)
        if (t.rec_order == rec && t.dec_order == dec) return &t;
    return nullptr;
}

FilterBank orthogonal_bank(const WaveletId& id, std::span<const double> scaling) {
    FilterBank fb;
    fb.id = id;
    fb.orthogonal = true;
    fb.dec_lo.assign(scaling.rbegin(), scaling.rend());
    fb.dec_hi = qmf(fb.dec_lo);
    fb.rec_lo.assign(fb.dec_lo.rbegin(), fb.dec_lo.rend());
    fb.rec_hi.assign(fb.dec_hi.rbegin(), fb.dec_hi.rend());
    const int last = static_cast<int>(scaling.size()) - 1;
    fb.dec_lo_anchor = last;
    fb.dec_hi_anchor = last;
    fb.rec_lo_shift = 0;
    fb.rec_hi_shift = 0;
    return fb;
}

// Analysis lowpass h sits on [0, Lh-1]; the dual lowpass is centered on the
// same point, i.e. on [s, s+Lt-1] with s = (Lh-Lt)/2. The highpass pair is
// g(n) = (-1)^(n+1) dual(1-n) and dual_g(n) = (-1)^(n+1) h(1-n), which keeps
// the Haar-compatible sign of qmf() for bior1.1.
FilterBank biorthogonal_bank(const WaveletId& id, const detail::BiorthogonalTable& t) {
    const int lh = static_cast<int>(t.dec_lo.size());
    const int lt = static_cast<int>(t.rec_lo.size());
    const int s = (lh - lt) / 2;
    auto sign = [](int n) { return (n % 2 == 0) ? -1.0 : 1.0; }; // (-1)^(n+1)
    auto h = [&](int n) { return (n >= 0 && n < lh) ? t.dec_lo[n] : 0.0; };
    auto dual = [&](int m) { return (m >= s && m < s + lt) ? t.rec_lo[m - s] : 0.0; };

    FilterBank fb;
    fb.id = id;
    fb.orthogonal = false;
    fb.dec_lo.assign(t.dec_lo.rbegin(), t.dec_lo.rend());
    fb.dec_lo_anchor = lh - 1;

    fb.dec_hi_anchor = 1 - s;
    fb.dec_hi.resize(lt);
    for (int k = 0; k < lt; ++k) {
        const int n = fb.dec_hi_anchor - k;
        fb.dec_hi[k] = sign(n) * dual(1 - n);
    }

    fb.rec_lo.assign(t.rec_lo.begin(), t.rec_lo.end());
    fb.rec_lo_shift = s;

    fb.rec_hi_shift = 2 - lh;
    fb.rec_hi.resize(lh);
    for (int j = 0; j < lh; ++j) {
        const int n = fb.rec_hi_shift + j;
        fb.rec_hi[j] = sign(n) * h(1 - n);
    }
    return fb;
}

} // namespace

WaveletId WaveletId::parse(std::string_view text) {
    const std::string s = lowercase(text);
    const std::string_view v = s;
    WaveletId id;
    int n = 0;
    if (v == "haar") {
        id = haar();
    } else if (v.starts_with("db") && parse_int(v.substr(2), n)) {
        id = daubechies(n);
    } else if (v.starts_with("sym") && parse_int(v.substr(3), n)) {
        id = symlet(n);
    } else if (v.starts_with("coif") && parse_int(v.substr(4), n)) {
        id = coiflet(n);
    } else if (v.starts_with("bior")) {
        const auto rest = v.substr(4);
        const auto dot = rest.find('.');
        int d = 0;
        if (dot == std::string_view::npos || !parse_int(rest.substr(0, dot), n) ||
            !parse_int(rest.substr(dot + 1), d))
            unsupported(text);
        id = biorthogonal(n, d);
    } else {
        unsupported(text);
    }
    if (!id.is_supported()) unsupported(text);
    return id;
}

std::string WaveletId::name() const {
    switch (family) {
    case WaveletFamily::Haar: return "haar";
    case WaveletFamily::Daubechies: return "db" + std::to_string(order);
    case WaveletFamily::Symlet: return "sym" + std::to_string(order);
    case WaveletFamily::Coiflet: return "coif" + std::to_string(order);
    case WaveletFamily::Biorthogonal:
        return "bior" + std::to_string(order) + "." + std::to_string(dual_order);
    }
    return "?";
}

bool WaveletId::is_supported() const noexcept {
    switch (family) {
    case WaveletFamily::Haar: return order == 0 && dual_order == 0;
    case WaveletFamily::Daubechies: return dual_order == 0 && order >= 1 && order <= 10;
    case WaveletFamily::Symlet: return dual_order == 0 && order >= 2 && order <= 25;
    case WaveletFamily::Coiflet: return dual_order == 0 && order >= 1 && order <= 5;
    case WaveletFamily::Biorthogonal: return find_biorthogonal(order, dual_order) != nullptr;
    }
    return false;
}

std::size_t FilterBank::max_length() const noexcept {
    return std::max({dec_lo.size(), dec_hi.size(), rec_lo.size(), rec_hi.size()});
}

FilterBank get_filterbank(const WaveletId& id) {
    if (!id.is_supported()) unsupported(id.name());
    switch (id.family) {
    case WaveletFamily::Haar: return orthogonal_bank(id, detail::kDaubechies[1]);
    case WaveletFamily::Daubechies: return orthogonal_bank(id, detail::kDaubechies[id.order]);
    case WaveletFamily::Symlet: return orthogonal_bank(id, detail::kSymlets[id.order]);
    case WaveletFamily::Coiflet: return orthogonal_bank(id, detail::kCoiflets[id.order]);
    case WaveletFamily::Biorthogonal:
        return biorthogonal_bank(id, *find_biorthogonal(id.order, id.dual_order));
    }
    unsupported(id.name());
}

std::vector<double> qmf(std::span<const double> lowpass) {
    const std::size_t len = lowpass.size();
    std::vector<double> g(len);
    for (std::size_t k = 0; k < len; ++k) {
        const double v = lowpass[len - 1 - k];
        g[k] = (k % 2 == 0) ? v : -v;
    }
    return g;
}

int count_vanishing_moments(std::span<const double> highpass, double tolerance) {
    const std::size_t len = highpass.size();
    const long double center = static_cast<long double>(len - 1) / 2.0L;
    int m = 0;
    while (static_cast<std::size_t>(m) < len) {
        long double sum = 0.0L;
        long double scale = 0.0L;
        for (std::size_t k = 0; k < len; ++k) {
            const long double term =
                std::pow(static_cast<long double>(k) - center, static_cast<long double>(m)) * highpass[k];
            sum += term;
            scale += std::fabs(term);
        }
        if (scale == 0.0L || std::fabs(sum) > tolerance * scale) break;
        ++m;
    }
    return m;
}

double OrthonormalityReport::max_violation() const noexcept {
    return std::max(norm_error, max_shift_product);
}

OrthonormalityReport check_orthonormality(const FilterBank& fb) {
    if (!fb.orthogonal)
        throw Error(ErrorCode::NotOrthogonalFamily, fb.id.name() + " is biorthogonal");
    const auto& h = fb.dec_lo;
    const std::size_t len = h.size();
    OrthonormalityReport report;
    long double energy = 0.0L;
    for (double v : h) energy += static_cast<long double>(v) * v;
    report.norm_error = static_cast<double>(std::fabs(energy - 1.0L));
    for (std::size_t shift = 2; shift < len; shift += 2) {
        long double acc = 0.0L;
        for (std::size_t k = 0; k + shift < len; ++k) acc += static_cast<long double>(h[k]) * h[k + shift];
        report.max_shift_product = std::max(report.max_shift_product, static_cast<double>(std::fabs(acc)));
    }
    return report;
}

} // namespace wavekit
