#include "wavekit/spectral.hpp"

#include "wavekit/error.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

namespace wavekit {

namespace {

// FFTW's planner is not reentrant; execution on a private plan is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

template <typename T>
struct FftwBuffer {
    explicit FftwBuffer(std::size_t n) : n(n), data(static_cast<T*>(fftw_malloc(sizeof(T) * std::max<std::size_t>(n, 1)))) {}
    ~FftwBuffer() { fftw_free(data); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;
    std::size_t n;
    T* data;
};

class Plan {
public:
    explicit Plan(fftw_plan p) : plan_(p) {}
    ~Plan() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan_);
    }
    Plan(const Plan&) = delete;
    Plan& operator=(const Plan&) = delete;
    void execute() const { fftw_execute(plan_); }

private:
    fftw_plan plan_;
};

std::vector<Complex> run_dft(std::span<const Complex> x, int sign) {
    const std::size_t n = x.size();
    if (n == 0) return {};
    FftwBuffer<fftw_complex> in(n), out(n);
    fftw_plan raw;
    {
        std::lock_guard lock(planner_mutex());
        raw = fftw_plan_dft_1d(static_cast<int>(n), in.data, out.data, sign, FFTW_ESTIMATE);
    }
    Plan plan(raw);
    for (std::size_t i = 0; i < n; ++i) {
        in.data[i][0] = x[i].real();
        in.data[i][1] = x[i].imag();
    }
    plan.execute();
    std::vector<Complex> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = {out.data[i][0], out.data[i][1]};
    return y;
}

std::vector<double> run_r2r(std::span<const double> x, fftw_r2r_kind kind) {
    const std::size_t n = x.size();
    FftwBuffer<double> in(n), out(n);
    fftw_plan raw;
    {
        std::lock_guard lock(planner_mutex());
        raw = fftw_plan_r2r_1d(static_cast<int>(n), in.data, out.data, kind, FFTW_ESTIMATE);
    }
    Plan plan(raw);
    std::copy(x.begin(), x.end(), in.data);
    plan.execute();
    return {out.data, out.data + n};
}

template <typename Fn>
Matrix separable(const Matrix& m, Fn&& transform) {
    Matrix tmp(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const auto row = transform(m.row(r));
        std::ranges::copy(row, tmp.row(r).begin());
    }
    Matrix out(m.rows(), m.cols());
    std::vector<double> col(m.rows());
    for (std::size_t c = 0; c < m.cols(); ++c) {
        for (std::size_t r = 0; r < m.rows(); ++r) col[r] = tmp(r, c);
        const auto t = transform(std::span<const double>(col));
        for (std::size_t r = 0; r < m.rows(); ++r) out(r, c) = t[r];
    }
    return out;
}

template <typename Fn>
std::vector<Complex> separable_complex(std::span<const Complex> x, std::size_t rows, std::size_t cols, Fn&& transform) {
    std::vector<Complex> tmp(rows * cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const auto row = transform(x.subspan(r * cols, cols));
        std::ranges::copy(row, tmp.begin() + static_cast<std::ptrdiff_t>(r * cols));
    }
    std::vector<Complex> col(rows);
    for (std::size_t c = 0; c < cols; ++c) {
        for (std::size_t r = 0; r < rows; ++r) col[r] = tmp[r * cols + c];
        const auto t = transform(std::span<const Complex>(col));
        for (std::size_t r = 0; r < rows; ++r) tmp[r * cols + c] = t[r];
    }
    return tmp;
}

} // namespace

std::vector<Complex> fft_forward(std::span<const Complex> x) { return run_dft(x, FFTW_FORWARD); }

std::vector<Complex> fft_forward(std::span<const double> x) {
    std::vector<Complex> c(x.begin(), x.end());
    return run_dft(c, FFTW_FORWARD);
}

std::vector<Complex> fft_inverse(std::span<const Complex> spectrum) {
    auto y = run_dft(spectrum, FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(y.size());
    for (auto& v : y) v *= scale;
    return y;
}

// FFTW's REDFT10 is 2 * sum x[n] cos(pi k (2n+1) / 2N); REDFT01 is its
// unnormalized inverse. Scale both to the orthonormal pair.
std::vector<double> dct_forward(std::span<const double> x) {
    const std::size_t n = x.size();
    if (n == 0) return {};
    auto y = run_r2r(x, FFTW_REDFT10);
    const double s0 = std::sqrt(1.0 / (4.0 * static_cast<double>(n)));
    const double sk = std::sqrt(1.0 / (2.0 * static_cast<double>(n)));
    y[0] *= s0;
    for (std::size_t k = 1; k < n; ++k) y[k] *= sk;
    return y;
}

std::vector<double> dct_inverse(std::span<const double> coefficients) {
    const std::size_t n = coefficients.size();
    if (n == 0) return {};
    std::vector<double> c(coefficients.begin(), coefficients.end());
    c[0] *= std::sqrt(1.0 / static_cast<double>(n));
    const double sk = std::sqrt(1.0 / (2.0 * static_cast<double>(n)));
    for (std::size_t k = 1; k < n; ++k) c[k] *= sk;
    // REDFT01: y[j] = c[0] + 2 sum_{k>=1} c[k] cos(pi k (2j+1) / 2N)
    auto y = run_r2r(c, FFTW_REDFT01);
    return y;
}

Matrix dct2d_forward(const Matrix& image) {
    return separable(image, [](std::span<const double> v) { return dct_forward(v); });
}

Matrix dct2d_inverse(const Matrix& coefficients) {
    return separable(coefficients, [](std::span<const double> v) { return dct_inverse(v); });
}

std::vector<Complex> fft2d_forward(const Matrix& image) {
    std::vector<Complex> x(image.values().begin(), image.values().end());
    return separable_complex(x, image.rows(), image.cols(), [](std::span<const Complex> v) { return fft_forward(v); });
}

std::vector<Complex> fft2d_inverse(std::span<const Complex> spectrum, std::size_t rows, std::size_t cols) {
    if (spectrum.size() != rows * cols)
        throw Error(ErrorCode::DimensionMismatch, "spectrum size does not match " + std::to_string(rows) + "x" +
                                                      std::to_string(cols));
    return separable_complex(spectrum, rows, cols, [](std::span<const Complex> v) { return fft_inverse(v); });
}

int SpectralDecomposition::band_of(std::size_t index) const noexcept {
    std::size_t position = index;
    if (kind == SpectralKind::FFT) position = 2 * std::min(index, length - index);
    if (position < band_boundaries[0]) return 0;
    if (position < band_boundaries[1]) return 4;
    if (position < band_boundaries[2]) return 3;
    if (position < band_boundaries[3]) return 2;
    return 1;
}

SpectralDecomposition spectral_analyze(std::span<const double> signal, SpectralKind kind) {
    if (signal.empty()) throw Error(ErrorCode::SignalTooShort, "empty signal");
    SpectralDecomposition d;
    d.kind = kind;
    d.length = signal.size();
    d.band_boundaries = {d.length / 16, d.length / 8, d.length / 4, d.length / 2};
    if (kind == SpectralKind::DCT)
        d.dct = dct_forward(signal);
    else
        d.fft = fft_forward(signal);
    return d;
}

std::vector<double> spectral_synthesize(const SpectralDecomposition& d) {
    if (d.kind == SpectralKind::DCT) return dct_inverse(d.dct);
    const auto x = fft_inverse(d.fft);
    std::vector<double> out(x.size());
    std::ranges::transform(x, out.begin(), [](Complex c) { return c.real(); });
    return out;
}

SpectralStageSplit spectral_stage_split(const SpectralDecomposition& d) {
    if (d.length < 16)
        throw Error(ErrorCode::SignalTooShort, "stage split needs at least 16 coefficients, got " +
                                                   std::to_string(d.length));
    auto masked = [&](int band) {
        SpectralDecomposition m = d;
        for (std::size_t k = 0; k < d.length; ++k) {
            if (d.band_of(k) == band) continue;
            if (d.kind == SpectralKind::DCT)
                m.dct[k] = 0.0;
            else
                m.fft[k] = 0.0;
        }
        return m;
    };
    SpectralStageSplit split{masked(0), {masked(1), masked(2), masked(3), masked(4)}};
    return split;
}

SpectralDecomposition reassemble(const SpectralStageSplit& split) {
    SpectralDecomposition d = split.approx;
    for (const auto& band : split.details) {
        if (d.kind == SpectralKind::DCT)
            for (std::size_t k = 0; k < d.length; ++k) d.dct[k] += band.dct[k];
        else
            for (std::size_t k = 0; k < d.length; ++k) d.fft[k] += band.fft[k];
    }
    return d;
}

} // namespace wavekit
