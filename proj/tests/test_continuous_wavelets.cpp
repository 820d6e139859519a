#include "test_support.hpp"

#include "wavekit/continuous_wavelets.hpp"
#include "wavekit/error.hpp"
#include "wavekit/spectral.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace wavekit;
using testing::energy;
using testing::max_abs_diff;
using testing::random_vector;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> cosine(std::size_t n, double omega, double phase = 0.0) {
    std::vector<double> x(n);
    for (std::size_t t = 0; t < n; ++t) x[t] = std::cos(omega * static_cast<double>(t) + phase);
    return x;
}

int loudest_band(const DyadicCwtDecomposition& d) {
    int best = 0;
    double best_e = -1.0;
    for (int j = 1; j <= d.levels; ++j) {
        const double e = energy(d.bands[j - 1]);
        if (e > best_e) {
            best_e = e;
            best = j;
        }
    }
    return best;
}

double rms(std::span<const double> v) { return std::sqrt(energy(v) / static_cast<double>(v.size())); }

std::vector<double> rotate_right(const std::vector<double>& v, std::size_t s) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[(i + s) % v.size()] = v[i];
    return out;
}

} // namespace

TEST_CASE("continuous wavelet names") {
    CHECK(ContinuousWaveletId::parse("morlet").kind == ContinuousWaveletId::Kind::Morlet);
    CHECK(ContinuousWaveletId::parse("morlet").center_frequency == 5.0);
    CHECK(ContinuousWaveletId::parse("Morlet6.5").center_frequency == 6.5);
    CHECK(ContinuousWaveletId::parse("cauchy").cauchy_order == 1);
    CHECK(ContinuousWaveletId::parse("cauchy3").cauchy_order == 3);
    CHECK(ContinuousWaveletId::parse("shannon").kind == ContinuousWaveletId::Kind::Shannon);
    for (const char* name : {"morlet", "morlet6.5", "cauchy", "cauchy2", "shannon"})
        CHECK(ContinuousWaveletId::parse(name).name() == name);
    for (const char* bad : {"morlet4", "morletx", "cauchy0", "cauchy-1", "shannon2", "mexh", ""}) {
        CAPTURE(bad);
        try {
            (void)ContinuousWaveletId::parse(bad);
            FAIL("accepted");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::UnsupportedWavelet);
        }
    }
}

TEST_CASE("mother responses") {
    const auto m = ContinuousWaveletId::morlet();
    CHECK(mother_response(m, 5.0) == 1.0);
    CHECK(mother_response(m, 6.0) == doctest::Approx(std::exp(-0.5)));
    CHECK(mother_response(m, -5.0) == 1.0);
    const auto c = ContinuousWaveletId::cauchy(2);
    CHECK(mother_response(c, 2.0) == doctest::Approx(4.0 * std::exp(-2.0)));
    CHECK(mother_response(c, 0.0) == 0.0);
    const auto s = ContinuousWaveletId::shannon();
    CHECK(mother_response(s, kPi) == 0.0);
    CHECK(mother_response(s, 1.5 * kPi) == 1.0);
    CHECK(mother_response(s, 2.0 * kPi) == 1.0);
    CHECK(mother_response(s, 2.5 * kPi) == 0.0);
    // band j looks at the mother response at 2^j omega
    CHECK(band_response(m, 2, 1.25) == 1.0);
}

TEST_CASE("Morlet tone at omega0/4 peaks in band 2") {
    const auto d = dyadic_cwt_analyze(cosine(1024, 5.0 / 4.0), ContinuousWaveletId::morlet(5.0), 4);
    CHECK(loudest_band(d) == 2);
}

TEST_CASE("Morlet band centers: tone at 2^-j omega0 lands in band j") {
    for (int j = 1; j <= 3; ++j) {
        CAPTURE(j);
        const auto d = dyadic_cwt_analyze(cosine(2048, std::ldexp(5.0, -j), 0.3), ContinuousWaveletId::morlet(), 4);
        CHECK(loudest_band(d) == j);
    }
}

TEST_CASE("Shannon partitions the spectrum") {
    const auto w = ContinuousWaveletId::shannon();
    const auto x = random_vector(512, 42);
    const auto d = dyadic_cwt_analyze(x, w, 4);
    double e = energy(d.residual_lowpass);
    for (const auto& b : d.bands) e += energy(b);
    CHECK(std::fabs(e - energy(x)) < 1e-9);

    SUBCASE("responses are disjoint indicators that sum to one") {
        for (std::size_t k = 0; k <= 256; ++k) {
            const double omega = kPi * static_cast<double>(k) / 256.0;
            double total = residual_response(w, 4, omega);
            int active = total > 0.0 ? 1 : 0;
            for (int j = 1; j <= 4; ++j) {
                const double r = band_response(w, j, omega);
                total += r;
                active += r > 0.0 ? 1 : 0;
            }
            CHECK(active == 1);
            CHECK(total == 1.0);
        }
    }
}

TEST_CASE("zero in, zero out") {
    for (const auto& w : {ContinuousWaveletId::morlet(), ContinuousWaveletId::cauchy(), ContinuousWaveletId::shannon()}) {
        const auto d = dyadic_cwt_analyze(std::vector<double>(64, 0.0), w, 4);
        for (const auto& b : d.bands)
            for (double v : b) CHECK(v == 0.0);
        CHECK(std::ranges::all_of(dyadic_cwt_synthesize(d), [](double v) { return v == 0.0; }));
    }
}

TEST_CASE("Shannon round trip is exact") {
    const auto x = random_vector(256, 5);
    const auto y = dyadic_cwt_synthesize(dyadic_cwt_analyze(x, ContinuousWaveletId::shannon(), 4));
    CHECK(max_abs_diff(x, y) < 1e-9);
}

TEST_CASE("frame sum matches a direct evaluation of the responses") {
    for (const auto& w : {ContinuousWaveletId::morlet(), ContinuousWaveletId::cauchy(2), ContinuousWaveletId::shannon()}) {
        const std::size_t n = 64;
        const auto s = frame_sum(w, 4, n);
        for (std::size_t k = 0; k < n; ++k) {
            const double omega = 2.0 * kPi * static_cast<double>(std::min(k, n - k)) / static_cast<double>(n);
            double expect = std::pow(residual_response(w, 4, omega), 2);
            for (int j = 1; j <= 4; ++j) expect += std::pow(mother_response(w, std::ldexp(omega, j)), 2);
            CHECK(s[k] == doctest::Approx(expect).epsilon(1e-12));
        }
    }
}

TEST_CASE("Morlet round trip of an in-band chirp") {
    // Windowed chirp across band 1. Morlet octaves leave gaps in the frame
    // sum, so the sweep stays inside one covered stretch.
    const std::size_t n = 4096;
    const auto w = ContinuousWaveletId::morlet();
    const auto s = frame_sum(w, 4, n);
    const double smax = *std::ranges::max_element(s);

    const double w0 = 1.95, w1 = 3.05;
    std::vector<double> x(n);
    for (std::size_t t = 0; t < n; ++t) {
        const double u = static_cast<double>(t) / static_cast<double>(n);
        const double phase = static_cast<double>(n) * (w0 * u + 0.5 * (w1 - w0) * u * u);
        const double window = 0.5 - 0.5 * std::cos(2.0 * kPi * u);
        x[t] = window * std::cos(phase);
    }
    // confirm the oracle premise: nearly all energy sits where S > 0.1 max S
    const auto spectrum = fft_forward(x);
    double inside = 0.0, total = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double p = std::norm(spectrum[k]);
        total += p;
        if (s[k] > 0.1 * smax) inside += p;
    }
    CHECK(inside / total > 0.9999);

    const auto y = dyadic_cwt_synthesize(dyadic_cwt_analyze(x, w, 4));
    std::vector<double> err(n);
    for (std::size_t i = 0; i < n; ++i) err[i] = y[i] - x[i];
    CHECK(rms(err) / rms(x) < 0.01);
}

TEST_CASE("Cauchy reconstruction of a low-frequency tone") {
    const auto x = cosine(512, 2.0 * kPi * 20.0 / 512.0);
    const auto y = dyadic_cwt_synthesize(dyadic_cwt_analyze(x, ContinuousWaveletId::cauchy(), 4));
    CHECK(max_abs_diff(x, y) < 1e-9);
}

TEST_CASE("analysis is linear and shift covariant") {
    const auto x = random_vector(256, 1), y = random_vector(256, 2);
    std::vector<double> z(256);
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = 2.0 * x[i] - 0.5 * y[i];
    for (const auto& w : {ContinuousWaveletId::morlet(), ContinuousWaveletId::cauchy(3), ContinuousWaveletId::shannon()}) {
        const auto dx = dyadic_cwt_analyze(x, w, 4), dy = dyadic_cwt_analyze(y, w, 4), dz = dyadic_cwt_analyze(z, w, 4);
        for (int j = 0; j < 4; ++j)
            for (std::size_t i = 0; i < 256; ++i)
                CHECK(std::fabs(dz.bands[j][i] - (2.0 * dx.bands[j][i] - 0.5 * dy.bands[j][i])) < 1e-9);

        const auto ds = dyadic_cwt_analyze(rotate_right(x, 37), w, 4);
        for (int j = 0; j < 4; ++j) CHECK(max_abs_diff(ds.bands[j], rotate_right(dx.bands[j], 37)) < 1e-9);
        CHECK(max_abs_diff(ds.residual_lowpass, rotate_right(dx.residual_lowpass, 37)) < 1e-9);
    }
}

TEST_CASE("CWT errors") {
    try {
        dyadic_cwt_analyze(random_vector(8, 1), ContinuousWaveletId::morlet(), 4);
        FAIL("accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SignalTooShort);
    }
    auto d = dyadic_cwt_analyze(random_vector(64, 1), ContinuousWaveletId::morlet(), 3);
    d.bands.pop_back();
    try {
        dyadic_cwt_synthesize(d);
        FAIL("accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MalformedDecomposition);
    }
}
