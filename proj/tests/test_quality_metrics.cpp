#include "test_support.hpp"

#include "wavekit/error.hpp"
#include "wavekit/quality_metrics.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

using namespace wavekit;
using testing::random_vector;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error thrown");
    return ErrorCode::IoFailure;
}

// Naive oracles in long double.
long double oracle_mse(std::span<const double> a, std::span<const double> b) {
    long double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (static_cast<long double>(a[i]) - b[i]) * (static_cast<long double>(a[i]) - b[i]);
    return s / a.size();
}

long double oracle_snr(std::span<const double> a, std::span<const double> b) {
    long double sig = 0, err = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sig += static_cast<long double>(a[i]) * a[i];
        err += (static_cast<long double>(a[i]) - b[i]) * (static_cast<long double>(a[i]) - b[i]);
    }
    return 10.0L * std::log10(sig / err);
}

long double oracle_entropy(std::span<const double> data, std::size_t bins, double lo, double hi) {
    // bin = number of interior edges at or below the clipped value
    std::map<std::size_t, std::size_t> counts;
    const long double width = (static_cast<long double>(hi) - lo) / bins;
    for (double v : data) {
        const long double c = std::clamp<long double>(v, lo, hi);
        std::size_t b = 0;
        while (b + 1 < bins && c >= lo + width * (b + 1)) ++b;
        ++counts[b];
    }
    long double h = 0;
    for (auto [b, n] : counts) {
        const long double p = static_cast<long double>(n) / data.size();
        h -= p * std::log2(p);
    }
    return h;
}

} // namespace

TEST_CASE("mse examples") {
    const auto x = random_vector(50, 1);
    CHECK(mse(x, x) == 0.0);
    CHECK(mse(std::vector<double>{0, 0}, std::vector<double>{3, 4}) == 12.5);
    const auto y = random_vector(50, 2);
    CHECK(mse(x, y) == mse(y, x));
}

TEST_CASE("snr examples") {
    const auto x = random_vector(64, 3);
    CHECK(std::isinf(snr_db(x, x)));
    CHECK(snr_db(x, x) > 0);
    // error power = signal power / 100
    std::vector<double> ref{3.0, 4.0}, proc{3.3, 4.4};
    CHECK(snr_db(ref, proc) == doctest::Approx(20.0).epsilon(1e-12));
}

TEST_CASE("psnr examples") {
    const std::vector<double> a{0, 0, 0, 0}, b{255, 255, 255, 255};
    CHECK(psnr_db(a, b, 255.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    const std::vector<double> c{10, 20, 30, 40}, d{11, 19, 31, 39};
    CHECK(psnr_db(c, d, 255.0) == doctest::Approx(10.0 * std::log10(65025.0)).epsilon(1e-13));
    CHECK(psnr_db(c, d, 255.0) == doctest::Approx(48.13).epsilon(1e-4));
    CHECK(std::isinf(psnr_db(c, c, 255.0)));
}

TEST_CASE("entropy examples") {
    CHECK(entropy_bits(std::vector<double>(100, 0.3), 256, {0.0, 1.0}) == 0.0);

    std::vector<double> uniform(256 * 3);
    for (std::size_t i = 0; i < uniform.size(); ++i) uniform[i] = static_cast<double>(i % 256) + 0.5;
    CHECK(std::fabs(entropy_bits(uniform, 256, {0.0, 256.0}) - 8.0) < 1e-12);

    const std::vector<double> split{0.1, 0.9, 0.9, 0.9};
    CHECK(entropy_bits(split, 2, {0.0, 1.0}) == doctest::Approx(0.811278).epsilon(1e-6));
    CHECK(std::fabs(entropy_bits(split, 2, {0.0, 1.0}) - (2.0 - 0.75 * std::log2(3.0))) < 1e-15);
}

TEST_CASE("histogram clipping and the top edge") {
    const std::vector<double> v{-5.0, 0.0, 0.49, 0.5, 1.0, 7.0};
    const auto h = histogram(v, 2, {0.0, 1.0});
    CHECK(h == std::vector<std::size_t>{3, 3});
}

TEST_CASE("histogram mean") {
    CHECK(histogram_mean(random_vector(256, 1), 256, {-1.0, 1.0}) == 1.0);
    const auto a = random_vector(1000, 2), b = random_vector(1000, 3, 50.0, 60.0);
    CHECK(histogram_mean(a, 256, {-1.0, 1.0}) == histogram_mean(b, 256, {-1.0, 1.0}));
    // scale check for a ~1.87M-sample recording
    CHECK(1871690.0 / 256.0 == doctest::Approx(7311.3).epsilon(1e-4));
}

TEST_CASE("metrics agree with naive oracles on 100 random pairs") {
    std::mt19937 gen(7);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 16 + gen() % 500;
        const auto ref = random_vector(n, gen(), -3.0, 3.0);
        auto proc = ref;
        const double noise = std::ldexp(1.0, -static_cast<int>(gen() % 20));
        const auto jitter = random_vector(n, gen(), -noise, noise);
        for (std::size_t i = 0; i < n; ++i) proc[i] += jitter[i];

        CHECK(std::fabs(mse(ref, proc) - static_cast<double>(oracle_mse(ref, proc))) < 1e-9);
        CHECK(std::fabs(snr_db(ref, proc) - static_cast<double>(oracle_snr(ref, proc))) < 1e-9);
        CHECK(std::fabs(psnr_db(ref, proc, 3.0) - static_cast<double>(10.0L * std::log10(9.0L / oracle_mse(ref, proc)))) <
              1e-9);
        CHECK(std::fabs(entropy_bits(proc, 256, {-3.0, 3.0}) - static_cast<double>(oracle_entropy(proc, 256, -3.0, 3.0))) <
              1e-9);
    }
}

TEST_CASE("metric invariants") {
    const auto ref = random_vector(300, 11);
    const auto e = random_vector(300, 12);
    double last_snr = INFINITY, last_psnr = INFINITY, last_mse = 0.0;
    for (double scale : {1e-6, 1e-4, 1e-2, 1.0}) {
        auto proc = ref;
        for (std::size_t i = 0; i < proc.size(); ++i) proc[i] += scale * e[i];
        const double m = mse(ref, proc);
        CHECK(m >= 0.0);
        CHECK(m > last_mse);
        CHECK(snr_db(ref, proc) < last_snr);
        CHECK(psnr_db(ref, proc, 1.0) < last_psnr);
        last_mse = m;
        last_snr = snr_db(ref, proc);
        last_psnr = psnr_db(ref, proc, 1.0);
    }

    auto shuffled = ref;
    std::shuffle(shuffled.begin(), shuffled.end(), std::mt19937(3));
    const double h = entropy_bits(ref, 64, {-1.0, 1.0});
    CHECK(h == entropy_bits(shuffled, 64, {-1.0, 1.0}));
    CHECK(h <= 6.0);
    CHECK(h >= 0.0);
}

TEST_CASE("quality report") {
    const auto x = random_vector(512, 21);
    const QualityConfig cfg = QualityConfig::for_signal(x);
    const auto same = quality_report(x, x, cfg);
    CHECK(same.mse == 0.0);
    CHECK(same.infinite_snr());
    CHECK(same.infinite_psnr());
    CHECK(same.entropy_bits == entropy_bits(x, 256, *cfg.range));
    CHECK(same.histogram_mean == 2.0);
    CHECK(same.bins == 256);

    auto y = x;
    y[3] += 0.01;
    const auto r = quality_report(x, y, cfg);
    CHECK_FALSE(r.infinite_snr());
    CHECK(r.mse == doctest::Approx(1e-4 / 512.0));

    SUBCASE("image defaults") {
        const QualityConfig img = QualityConfig::for_image();
        CHECK(img.max_value == 255.0);
        CHECK(img.range->lo == 0.0);
        CHECK(img.range->hi == 255.0);
    }
    SUBCASE("signal defaults follow the reference") {
        CHECK(cfg.range->lo == *std::ranges::min_element(x));
        CHECK(cfg.range->hi == *std::ranges::max_element(x));
    }
    SUBCASE("constant reference still yields a report") {
        const std::vector<double> c(10, 2.0);
        auto q = quality_report(c, c, QualityConfig::for_signal(c));
        CHECK(q.entropy_bits == 0.0);
    }
}

TEST_CASE("metric errors") {
    const std::vector<double> a{1, 2, 3}, b{1, 2};
    CHECK(code_of([&] { (void)mse(a, b); }) == ErrorCode::ShapeMismatch);
    CHECK(code_of([&] { (void)mse(std::vector<double>{}, std::vector<double>{}); }) == ErrorCode::EmptyData);
    CHECK(code_of([&] { (void)snr_db(std::vector<double>{0, 0}, std::vector<double>{1, 1}); }) ==
          ErrorCode::ZeroReference);
    CHECK(code_of([&] { (void)entropy_bits(std::vector<double>{}, 8, {0, 1}); }) == ErrorCode::EmptyData);
    CHECK(code_of([&] { (void)entropy_bits(a, 1, {0, 1}); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([&] { (void)entropy_bits(a, 8, {1, 1}); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([&] { (void)psnr_db(a, a, 0.0); }) == ErrorCode::InvalidArgument);
}
