#include "test_support.hpp"

#include "wavekit/error.hpp"
#include "wavekit/signal_io.hpp"
#include "wavekit/transform2d.hpp"

#include <doctest.h>

#include <cmath>

using namespace wavekit;
using testing::energy;
using testing::max_abs_diff;
using testing::random_matrix;

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

double coefficient_energy(const Decomposition2D& d) {
    double e = energy(d.ll_final.values());
    for (const auto& l : d.detail_levels) e += energy(l.lh.values()) + energy(l.hl.values()) + energy(l.hh.values());
    return e;
}

double max_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return INFINITY;
    return max_abs_diff(a.values(), b.values());
}

// Direct double sum over both filters, no intermediate row pass.
// `along_cols` filters the column index (the "rows" pass), `along_rows` the row index.
Matrix brute_band(const Matrix& x, const std::vector<double>& along_cols, int anchor_c,
                  const std::vector<double>& along_rows, int anchor_r) {
    const int R = static_cast<int>(x.rows()), C = static_cast<int>(x.cols());
    Matrix out(x.rows() / 2, x.cols() / 2);
    for (int i = 0; i < R / 2; ++i)
        for (int j = 0; j < C / 2; ++j) {
            double acc = 0.0;
            for (int a = 0; a < static_cast<int>(along_rows.size()); ++a)
                for (int b = 0; b < static_cast<int>(along_cols.size()); ++b) {
                    const int r = ((2 * i + anchor_r - a) % R + R) % R;
                    const int c = ((2 * j + anchor_c - b) % C + C) % C;
                    acc += along_rows[a] * along_cols[b] * x(r, c);
                }
            out(i, j) = acc;
        }
    return out;
}

} // namespace

TEST_CASE("haar on a constant image") {
    Matrix img(8, 8, 5.0);
    const auto s = analyze_level2d(img, get_filterbank(WaveletId::haar()), ExtensionMode::Periodic);
    CHECK(s.ll.rows() == 4);
    CHECK(s.ll.cols() == 4);
    for (double v : s.ll.values()) CHECK(v == doctest::Approx(10.0).epsilon(1e-15));
    for (const Matrix* m : {&s.lh, &s.hl, &s.hh})
        for (double v : m->values()) CHECK(std::fabs(v) < 1e-14);

    SUBCASE("zeroed details give the constant back") {
        SubbandSet z = s;
        for (Matrix* m : {&z.lh, &z.hl, &z.hh}) *m = Matrix(4, 4, 0.0);
        CHECK(max_diff(img, synthesize_level2d(z, get_filterbank(WaveletId::haar()), ExtensionMode::Periodic, 8, 8)) <
              1e-14);
    }
}

TEST_CASE("constant columns, alternating rows: one detail band takes it all") {
    // value depends on the row index only, alternating +-1
    Matrix img(8, 8);
    for (std::size_t r = 0; r < 8; ++r)
        for (std::size_t c = 0; c < 8; ++c) img(r, c) = (r % 2 == 0) ? 1.0 : -1.0;
    const auto s = analyze_level2d(img, get_filterbank(WaveletId::haar()), ExtensionMode::Periodic);
    const double total = energy(img.values());
    CHECK(energy(s.ll.values()) < 1e-24);
    CHECK(energy(s.hl.values()) < 1e-24);
    CHECK(energy(s.hh.values()) < 1e-24);
    // horizontal stripes: lowpass along rows, highpass along columns
    CHECK(energy(s.lh.values()) == doctest::Approx(total).epsilon(1e-14));

    const auto t = analyze_level2d(img.transposed(), get_filterbank(WaveletId::haar()), ExtensionMode::Periodic);
    CHECK(energy(t.hl.values()) == doctest::Approx(total).epsilon(1e-14));
}

TEST_CASE("single level 2D Parseval and round trips") {
    const Matrix img = random_matrix(64, 64, 4);
    const auto s = analyze_level2d(img, get_filterbank(WaveletId::daubechies(4)), ExtensionMode::Periodic);
    const double e = energy(s.ll.values()) + energy(s.lh.values()) + energy(s.hl.values()) + energy(s.hh.values());
    CHECK(std::fabs(e - energy(img.values())) < 1e-8);

    const Matrix a = random_matrix(32, 32, 5);
    const FilterBank haar = get_filterbank(WaveletId::haar());
    CHECK(max_diff(a, synthesize_level2d(analyze_level2d(a, haar, ExtensionMode::Periodic), haar,
                                         ExtensionMode::Periodic, 32, 32)) < 1e-12);
    const FilterBank b44 = get_filterbank(WaveletId::biorthogonal(4, 4));
    CHECK(max_diff(img, synthesize_level2d(analyze_level2d(img, b44, ExtensionMode::Periodic), b44,
                                           ExtensionMode::Periodic, 64, 64)) < 1e-10);
}

TEST_CASE("separable analysis equals the direct 2D sum") {
    const Matrix x = random_matrix(8, 8, 6);
    for (const auto& id : {WaveletId::haar(), WaveletId::daubechies(2), WaveletId::biorthogonal(2, 2)}) {
        CAPTURE(id.name());
        const FilterBank fb = get_filterbank(id);
        const auto s = analyze_level2d(x, fb, ExtensionMode::Periodic);
        const int lo = fb.dec_lo_anchor, hi = fb.dec_hi_anchor;
        CHECK(max_diff(s.ll, brute_band(x, fb.dec_lo, lo, fb.dec_lo, lo)) < 1e-12);
        CHECK(max_diff(s.lh, brute_band(x, fb.dec_lo, lo, fb.dec_hi, hi)) < 1e-12);
        CHECK(max_diff(s.hl, brute_band(x, fb.dec_hi, hi, fb.dec_lo, lo)) < 1e-12);
        CHECK(max_diff(s.hh, brute_band(x, fb.dec_hi, hi, fb.dec_hi, hi)) < 1e-12);
    }
}

TEST_CASE("decompose2d pyramid shapes") {
    const Matrix img = random_matrix(256, 256, 7);
    const auto d = decompose2d(img, WaveletId::haar(), 4);
    CHECK(d.ll_final.rows() == 16);
    CHECK(d.ll_final.cols() == 16);
    REQUIRE(d.detail_levels.size() == 4);
    for (std::size_t j = 0; j < 4; ++j) {
        const std::size_t n = 128u >> j;
        for (const Matrix* m : {&d.detail_levels[j].lh, &d.detail_levels[j].hl, &d.detail_levels[j].hh}) {
            CHECK(m->rows() == n);
            CHECK(m->cols() == n);
        }
    }
    CHECK(d.coefficient_count() == 256u * 256u);
}

TEST_CASE("stage-4 2D energy and delta image") {
    const Matrix img = random_matrix(128, 128, 8);
    CHECK(std::fabs(coefficient_energy(decompose2d(img, WaveletId::daubechies(2), 4)) - energy(img.values())) < 1e-8);

    Matrix delta(64, 64, 0.0);
    delta(17, 40) = 1.0;
    for (const auto& id : {WaveletId::haar(), WaveletId::daubechies(5), WaveletId::coiflet(1)}) {
        const auto d = decompose2d(delta, id, 4);
        CHECK(std::fabs(coefficient_energy(d) - 1.0) < 1e-10);
        CHECK(max_diff(delta, reconstruct2d(d)) < 1e-10);
    }
}

TEST_CASE("2D perfect reconstruction over families, levels and sizes") {
    for (std::size_t n : {64u, 128u, 256u}) {
        const Matrix img = random_matrix(n, n, static_cast<unsigned>(n), 0.0, 255.0);
        for (const auto& id : testing::all_wavelets()) {
            const FilterBank fb = get_filterbank(id);
            for (int levels : {2, 3, 4}) {
                CAPTURE(id.name());
                CAPTURE(n);
                CAPTURE(levels);
                CHECK(max_diff(img, reconstruct2d(decompose2d(img, fb, levels))) < 1e-8);
            }
        }
    }
}

TEST_CASE("transposing the image swaps lh and hl") {
    const Matrix img = random_matrix(64, 32, 9);
    for (const auto& id : {WaveletId::daubechies(3), WaveletId::biorthogonal(4, 4)}) {
        const auto d = decompose2d(img, id, 3);
        const auto t = decompose2d(img.transposed(), id, 3);
        CHECK(max_diff(t.ll_final, d.ll_final.transposed()) < 1e-10);
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(max_diff(t.detail_levels[j].lh, d.detail_levels[j].hl.transposed()) < 1e-10);
            CHECK(max_diff(t.detail_levels[j].hl, d.detail_levels[j].lh.transposed()) < 1e-10);
            CHECK(max_diff(t.detail_levels[j].hh, d.detail_levels[j].hh.transposed()) < 1e-10);
        }
    }
}

TEST_CASE("non-square and odd sizes are padded per axis and cropped back") {
    const Matrix img = random_matrix(30, 51, 10);
    const auto d = decompose2d(img, WaveletId::symlet(4), 2);
    CHECK(d.padded_rows == 32);
    CHECK(d.padded_cols == 52);
    CHECK(d.original_rows == 30);
    CHECK(d.original_cols == 51);
    CHECK(max_diff(img, reconstruct2d(d)) < 1e-10);

    const Matrix p = pad_periodic(img, 4);
    CHECK(p.rows() == 32);
    CHECK(p(30, 0) == img(0, 0));
    CHECK(p(31, 51) == img(1, 0));
}

TEST_CASE("symmetric extension reconstructs the interior of an image") {
    const Matrix img = random_matrix(96, 96, 12, 0.0, 255.0);
    const auto d = decompose2d(img, WaveletId::daubechies(3), 2, ExtensionMode::Symmetric);
    const Matrix y = reconstruct2d(d);
    const std::size_t m = get_filterbank(WaveletId::daubechies(3)).max_length() << 2;
    double worst = 0.0;
    for (std::size_t r = m; r + m < 96; ++r)
        for (std::size_t c = m; c + m < 96; ++c) worst = std::max(worst, std::fabs(img(r, c) - y(r, c)));
    CHECK(worst < 1e-9);
}

TEST_CASE("mosaic layout") {
    SUBCASE("constant image, one level: flat bands are mid-gray") {
        const auto d = decompose2d(Matrix(16, 16, 3.0), WaveletId::haar(), 1);
        const GrayImage m = render_mosaic(d);
        CHECK(m.rows == 16);
        CHECK(m.cols == 16);
        for (std::size_t r = 0; r < 8; ++r)
            for (std::size_t c = 0; c < 8; ++c) CHECK(m(r, c) == 128);
    }

    SUBCASE("mosaic takes the padded size") {
        const auto d = decompose2d(random_matrix(30, 50, 1), WaveletId::haar(), 3);
        const GrayImage m = render_mosaic(d, MosaicNormalization::Global);
        CHECK(m.rows == 32);
        CHECK(m.cols == 56);
    }

    SUBCASE("three levels on the bundled image give 1 + 3x3 tiles") {
        const GrayImage img = read_pgm(read_file(WAVEKIT_DATA_DIR "/fingerprint256.pgm"));
        auto d = decompose2d(to_matrix(img), WaveletId::daubechies(4), 3);
        // Ramp every band so each tile spans exactly 0 at its first pixel to 255 at its last.
        auto ramp = [](Matrix& m) {
            for (std::size_t i = 0; i < m.values().size(); ++i) m.values()[i] = static_cast<double>(i);
        };
        ramp(d.ll_final);
        for (auto& l : d.detail_levels) {
            ramp(l.lh);
            ramp(l.hl);
            ramp(l.hh);
        }
        const GrayImage m = render_mosaic(d);
        struct Tile {
            std::size_t r0, c0, n;
        };
        std::vector<Tile> tiles{{0, 0, 32}};
        for (std::size_t n : {32u, 64u, 128u}) {
            tiles.push_back({0, n, n});
            tiles.push_back({n, 0, n});
            tiles.push_back({n, n, n});
        }
        CHECK(tiles.size() == 10);
        std::size_t area = 0;
        for (const auto& t : tiles) {
            CHECK(m(t.r0, t.c0) == 0);
            CHECK(m(t.r0 + t.n - 1, t.c0 + t.n - 1) == 255);
            area += t.n * t.n;
        }
        CHECK(area == 256u * 256u);
    }
}

TEST_CASE("2D errors") {
    const FilterBank fb = get_filterbank(WaveletId::haar());
    CHECK(code_of([&] { analyze_level2d(Matrix(1, 8), fb, ExtensionMode::Periodic); }) == ErrorCode::ImageTooSmall);
    CHECK(code_of([&] { decompose2d(Matrix(8, 8), WaveletId::haar(), 4); }) == ErrorCode::TooManyLevels);
    SubbandSet s = analyze_level2d(random_matrix(8, 8, 1), fb, ExtensionMode::Periodic);
    s.hh = Matrix(3, 4);
    CHECK(code_of([&] { synthesize_level2d(s, fb, ExtensionMode::Periodic, 8, 8); }) == ErrorCode::DimensionMismatch);
    auto d = decompose2d(random_matrix(32, 32, 1), WaveletId::haar(), 2);
    d.detail_levels[0].lh = Matrix(15, 16);
    CHECK(code_of([&] { reconstruct2d(d); }) == ErrorCode::MalformedDecomposition);
}
