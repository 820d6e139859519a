#include "wavekit/transform2d.hpp"

#include "wavekit/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace wavekit {

namespace {

std::string dims(std::size_t r, std::size_t c) { return std::to_string(r) + "x" + std::to_string(c); }

std::vector<double> column(const Matrix& m, std::size_t c) {
    std::vector<double> out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) out[r] = m(r, c);
    return out;
}

void set_column(Matrix& m, std::size_t c, std::span<const double> v) {
    for (std::size_t r = 0; r < m.rows(); ++r) m(r, c) = v[r];
}

// Column pass over a row-filtered half: returns (low, high) along columns.
std::pair<Matrix, Matrix> analyze_columns(const Matrix& half, const FilterBank& fb, ExtensionMode ext) {
    const std::size_t out_rows = (half.rows() + 1) / 2;
    Matrix low(out_rows, half.cols());
    Matrix high(out_rows, half.cols());
    for (std::size_t c = 0; c < half.cols(); ++c) {
        const auto col = column(half, c);
        const auto [a, d] = analyze_level(col, fb, ext);
        set_column(low, c, a);
        set_column(high, c, d);
    }
    return {std::move(low), std::move(high)};
}

Matrix synthesize_columns(const Matrix& low, const Matrix& high, const FilterBank& fb, ExtensionMode ext,
                          std::size_t out_rows) {
    Matrix out(out_rows, low.cols());
    for (std::size_t c = 0; c < low.cols(); ++c) {
        const auto col = synthesize_level(column(low, c), column(high, c), fb, ext, out_rows);
        set_column(out, c, col);
    }
    return out;
}

bool same_dims(const Matrix& a, const Matrix& b) { return a.rows() == b.rows() && a.cols() == b.cols(); }

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void include(const Matrix& m) {
        for (double v : m.values()) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
};

void blit(GrayImage& out, const Matrix& band, std::size_t r0, std::size_t c0, Range range) {
    const double span = range.hi - range.lo;
    for (std::size_t r = 0; r < band.rows(); ++r) {
        for (std::size_t c = 0; c < band.cols(); ++c) {
            double v = 128.0;
            if (span > 0.0) v = std::round((band(r, c) - range.lo) / span * 255.0);
            out(r0 + r, c0 + c) = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
        }
    }
}

} // namespace

std::size_t Decomposition2D::coefficient_count() const noexcept {
    std::size_t n = ll_final.size();
    for (const auto& lvl : detail_levels) n += lvl.lh.size() + lvl.hl.size() + lvl.hh.size();
    return n;
}

SubbandSet analyze_level2d(const Matrix& image, const FilterBank& fb, ExtensionMode ext) {
    if (image.rows() < 2 || image.cols() < 2)
        throw Error(ErrorCode::ImageTooSmall, "image " + dims(image.rows(), image.cols()) + " is below 2x2");
    if (ext == ExtensionMode::Periodic && (image.rows() % 2 != 0 || image.cols() % 2 != 0))
        throw Error(ErrorCode::ImageTooSmall, "periodic analysis needs even dimensions, got " +
                                                  dims(image.rows(), image.cols()));

    const std::size_t half_cols = (image.cols() + 1) / 2;
    Matrix row_low(image.rows(), half_cols);
    Matrix row_high(image.rows(), half_cols);
    for (std::size_t r = 0; r < image.rows(); ++r) {
        const auto [a, d] = analyze_level(image.row(r), fb, ext);
        std::ranges::copy(a, row_low.row(r).begin());
        std::ranges::copy(d, row_high.row(r).begin());
    }
    auto [ll, lh] = analyze_columns(row_low, fb, ext);
    auto [hl, hh] = analyze_columns(row_high, fb, ext);
    return {std::move(ll), std::move(lh), std::move(hl), std::move(hh)};
}

Matrix synthesize_level2d(const SubbandSet& s, const FilterBank& fb, ExtensionMode ext, std::size_t out_rows,
                          std::size_t out_cols) {
    if (!same_dims(s.ll, s.lh) || !same_dims(s.ll, s.hl) || !same_dims(s.ll, s.hh))
        throw Error(ErrorCode::DimensionMismatch, "subbands differ in size");
    if ((out_rows + 1) / 2 != s.ll.rows() || (out_cols + 1) / 2 != s.ll.cols() ||
        (ext == ExtensionMode::Periodic && (out_rows % 2 != 0 || out_cols % 2 != 0)))
        throw Error(ErrorCode::DimensionMismatch, "subbands " + dims(s.ll.rows(), s.ll.cols()) +
                                                      " cannot produce " + dims(out_rows, out_cols));

    const Matrix row_low = synthesize_columns(s.ll, s.lh, fb, ext, out_rows);
    const Matrix row_high = synthesize_columns(s.hl, s.hh, fb, ext, out_rows);
    Matrix out(out_rows, out_cols);
    for (std::size_t r = 0; r < out_rows; ++r) {
        const auto row = synthesize_level(row_low.row(r), row_high.row(r), fb, ext, out_cols);
        std::ranges::copy(row, out.row(r).begin());
    }
    return out;
}

Matrix pad_periodic(const Matrix& image, std::size_t multiple) {
    const std::size_t rows = (image.rows() + multiple - 1) / multiple * multiple;
    const std::size_t cols = (image.cols() + multiple - 1) / multiple * multiple;
    Matrix out(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) out(r, c) = image(r % image.rows(), c % image.cols());
    return out;
}

Decomposition2D decompose2d(const Matrix& image, const WaveletId& wavelet, int levels, ExtensionMode ext) {
    return decompose2d(image, get_filterbank(wavelet), levels, ext);
}

Decomposition2D decompose2d(const Matrix& image, const FilterBank& fb, int levels, ExtensionMode ext) {
    if (levels < 1 || levels > 30)
        throw Error(ErrorCode::InvalidArgument, "levels must be in 1..30, got " + std::to_string(levels));
    if (image.rows() < 2 || image.cols() < 2)
        throw Error(ErrorCode::ImageTooSmall, "image " + dims(image.rows(), image.cols()) + " is below 2x2");
    const std::size_t block = std::size_t{1} << levels;
    if (image.rows() < block || image.cols() < block)
        throw Error(ErrorCode::TooManyLevels, std::to_string(levels) + " levels need at least " +
                                                  dims(block, block) + " pixels");

    Decomposition2D d;
    d.wavelet = fb.id;
    d.levels = levels;
    d.extension = ext;
    d.original_rows = image.rows();
    d.original_cols = image.cols();
    Matrix running = pad_periodic(image, block);
    d.padded_rows = running.rows();
    d.padded_cols = running.cols();
    if (ext == ExtensionMode::Symmetric &&
        std::min(d.padded_rows, d.padded_cols) / block < fb.dec_lo.size())
        throw Error(ErrorCode::TooManyLevels, "coarsest level smaller than the " + fb.id.name() + " filter");

    d.detail_levels.reserve(levels);
    for (int level = 0; level < levels; ++level) {
        SubbandSet s = analyze_level2d(running, fb, ext);
        d.detail_levels.push_back({std::move(s.lh), std::move(s.hl), std::move(s.hh)});
        running = std::move(s.ll);
    }
    d.ll_final = std::move(running);
    return d;
}

Matrix reconstruct2d(const Decomposition2D& d) {
    if (d.levels < 1 || d.detail_levels.size() != static_cast<std::size_t>(d.levels))
        throw Error(ErrorCode::MalformedDecomposition, "detail level count does not match levels");
    const std::size_t block = std::size_t{1} << d.levels;
    if (d.padded_rows % block != 0 || d.padded_cols % block != 0 || d.original_rows > d.padded_rows ||
        d.original_cols > d.padded_cols || d.ll_final.rows() != d.padded_rows / block ||
        d.ll_final.cols() != d.padded_cols / block)
        throw Error(ErrorCode::MalformedDecomposition, "ll_final does not match the recorded dimensions");
    for (int j = 0; j < d.levels; ++j) {
        const auto& lvl = d.detail_levels[j];
        const std::size_t r = d.padded_rows >> (j + 1);
        const std::size_t c = d.padded_cols >> (j + 1);
        for (const Matrix* m : {&lvl.lh, &lvl.hl, &lvl.hh})
            if (m->rows() != r || m->cols() != c)
                throw Error(ErrorCode::MalformedDecomposition, "level " + std::to_string(j + 1) + " band is " +
                                                                   dims(m->rows(), m->cols()) + ", expected " +
                                                                   dims(r, c));
    }

    const FilterBank fb = get_filterbank(d.wavelet);
    Matrix running = d.ll_final;
    for (int j = d.levels - 1; j >= 0; --j) {
        const auto& lvl = d.detail_levels[j];
        running = synthesize_level2d({running, lvl.lh, lvl.hl, lvl.hh}, fb, d.extension, 2 * running.rows(),
                                     2 * running.cols());
    }
    if (running.rows() == d.original_rows && running.cols() == d.original_cols) return running;
    Matrix out(d.original_rows, d.original_cols);
    for (std::size_t r = 0; r < d.original_rows; ++r)
        for (std::size_t c = 0; c < d.original_cols; ++c) out(r, c) = running(r, c);
    return out;
}

GrayImage render_mosaic(const Decomposition2D& d, MosaicNormalization normalization) {
    GrayImage out(d.padded_rows, d.padded_cols);
    Range global;
    if (normalization == MosaicNormalization::Global) {
        global.include(d.ll_final);
        for (const auto& lvl : d.detail_levels) {
            global.include(lvl.lh);
            global.include(lvl.hl);
            global.include(lvl.hh);
        }
    }
    auto range_of = [&](const Matrix& m) {
        if (normalization == MosaicNormalization::Global) return global;
        Range r;
        r.include(m);
        return r;
    };

    blit(out, d.ll_final, 0, 0, range_of(d.ll_final));
    for (const auto& lvl : d.detail_levels) {
        const std::size_t r = lvl.lh.rows();
        const std::size_t c = lvl.lh.cols();
        blit(out, lvl.lh, 0, c, range_of(lvl.lh));
        blit(out, lvl.hl, r, 0, range_of(lvl.hl));
        blit(out, lvl.hh, r, c, range_of(lvl.hh));
    }
    return out;
}

} // namespace wavekit
