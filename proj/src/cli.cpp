#include "wavekit/cli.hpp"

#include "wavekit/compressor.hpp"
#include "wavekit/continuous_wavelets.hpp"
#include "wavekit/error.hpp"
#include "wavekit/quality_metrics.hpp"
#include "wavekit/signal_io.hpp"
#include "wavekit/spectral.hpp"
#include "wavekit/transform1d.hpp"
#include "wavekit/transform2d.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

namespace wavekit::cli {

namespace fs = std::filesystem;

namespace {

struct Options {
    std::vector<std::string> inputs;
    std::string wavelet = "db4";
    int levels = 4;
    double threshold = 30.0;
    std::optional<double> analysis_threshold;
    std::string extension = "periodic";
    std::string policy = "details";
    std::optional<std::string> sweep;
    std::optional<std::string> out;
    std::size_t bins = 256;
    std::string format = "md";
    std::string kind = "quality";
    unsigned threads = 1;
};

// A name from the command line resolved to one of the three transform kinds.
struct Transform {
    std::variant<WaveletId, ContinuousWaveletId, SpectralKind> id;
    std::string name;

    const WaveletId* dwt() const { return std::get_if<WaveletId>(&id); }
    const ContinuousWaveletId* cwt() const { return std::get_if<ContinuousWaveletId>(&id); }
    const SpectralKind* spectral() const { return std::get_if<SpectralKind>(&id); }
};

Transform parse_transform(const std::string& text) {
    std::string lower = text;
    std::ranges::transform(lower, lower.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "dct") return {SpectralKind::DCT, "dct"};
    if (lower == "fft") return {SpectralKind::FFT, "fft"};
    try {
        const WaveletId id = WaveletId::parse(text);
        return {id, id.name()};
    } catch (const Error& e) {
        if (e.code() != ErrorCode::UnsupportedWavelet) throw;
    }
    try {
        const ContinuousWaveletId cw = ContinuousWaveletId::parse(text);
        return {cw, cw.name()};
    } catch (const Error& e) {
        if (e.code() != ErrorCode::UnsupportedWavelet) throw;
    }
    throw Error(ErrorCode::UnsupportedWavelet, "unsupported wavelet '" + text + "'");
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> items;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

std::string fixed(double v, int precision) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", precision, v);
    return buf;
}

std::string scientific(double v, int precision) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", precision, v);
    return buf;
}

std::string compact(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

// Runs f(0..n-1) on up to `threads` workers. Results must go to per-index
// slots; the first failing index (in index order) is rethrown.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& f) {
    std::vector<std::exception_ptr> errors(n);
    auto guarded = [&](std::size_t i) {
        try {
            f(i);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) guarded(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, n));
        for (unsigned t = 0; t < workers; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) guarded(i);
            });
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

struct Input {
    std::string path;
    std::string stem;
    std::optional<AudioBuffer> audio;
    std::optional<GrayImage> image;
};

Input load_input(const std::string& path) {
    const Bytes bytes = read_file(path);
    Input in;
    in.path = path;
    in.stem = fs::path(path).stem().string();
    if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5')
        in.image = read_pgm(bytes);
    else
        in.audio = read_wav(bytes);
    return in;
}

AudioBuffer load_wav(const std::string& path) { return read_wav(read_file(path)); }
GrayImage load_pgm(const std::string& path) { return read_pgm(read_file(path)); }

fs::path output_dir(const Options& o) {
    const fs::path dir = o.out.value_or(".");
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::IoFailure, "cannot create output directory '" + dir.string() + "'");
    return dir;
}

void shrink(std::vector<double>& v, double t) {
    for (double& x : v)
        if (std::fabs(x) <= t) x = 0.0;
}

// Forward transform, optional hard threshold on the detail content, inverse.
std::vector<double> process_signal(std::span<const double> x, const Transform& t, const Options& o,
                                   std::optional<double> threshold) {
    const ExtensionMode ext = parse_extension(o.extension);
    const ThresholdPolicy policy = parse_policy(o.policy);
    if (const auto* id = t.dwt()) {
        Decomposition1D d = decompose(x, *id, o.levels, ext);
        if (threshold) d = hard_threshold(std::move(d), *threshold, policy);
        return reconstruct(d);
    }
    if (const auto* cw = t.cwt()) {
        DyadicCwtDecomposition d = dyadic_cwt_analyze(x, *cw, o.levels);
        if (threshold) {
            for (auto& band : d.bands) shrink(band, *threshold);
            if (policy == ThresholdPolicy::AllBands) shrink(d.residual_lowpass, *threshold);
        }
        return dyadic_cwt_synthesize(d);
    }
    SpectralDecomposition d = spectral_analyze(x, *t.spectral());
    if (threshold) {
        for (std::size_t k = 0; k < d.length; ++k) {
            if (policy == ThresholdPolicy::DetailsOnly && d.band_of(k) == 0) continue;
            if (d.kind == SpectralKind::DCT) {
                if (std::fabs(d.dct[k]) <= *threshold) d.dct[k] = 0.0;
            } else if (std::abs(d.fft[k]) <= *threshold) {
                d.fft[k] = 0.0;
            }
        }
    }
    return spectral_synthesize(d);
}

Matrix process_image(const Matrix& m, const Transform& t, const Options& o, std::optional<double> threshold) {
    if (const auto* id = t.dwt()) {
        Decomposition2D d = decompose2d(m, *id, o.levels, parse_extension(o.extension));
        if (threshold) d = hard_threshold(std::move(d), *threshold, parse_policy(o.policy));
        return reconstruct2d(d);
    }
    if (const auto* kind = t.spectral()) {
        if (*kind == SpectralKind::DCT) {
            Matrix c = dct2d_forward(m);
            if (threshold)
                for (double& v : c.values())
                    if (std::fabs(v) <= *threshold) v = 0.0;
            return dct2d_inverse(c);
        }
        std::vector<Complex> c = fft2d_forward(m);
        if (threshold)
            for (auto& v : c)
                if (std::abs(v) <= *threshold) v = 0.0;
        const std::vector<Complex> back = fft2d_inverse(c, m.rows(), m.cols());
        Matrix out(m.rows(), m.cols());
        for (std::size_t i = 0; i < back.size(); ++i) out.values()[i] = back[i].real();
        return out;
    }
    throw Error(ErrorCode::UnsupportedWavelet, "'" + t.name + "' has no 2D form; use a discrete wavelet, dct or fft");
}

QualityConfig signal_config(std::span<const double> reference, const Options& o) {
    QualityConfig c = QualityConfig::for_signal(reference);
    c.bins = o.bins;
    return c;
}

QualityConfig image_config(const Options& o) {
    QualityConfig c = QualityConfig::for_image();
    c.bins = o.bins;
    return c;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

std::string band_csv_1d(int level, const char* band, std::span<const double> values) {
    std::string s = "level,band,index,value\n";
    for (std::size_t i = 0; i < values.size(); ++i)
        s += std::to_string(level) + ',' + band + ',' + std::to_string(i) + ',' + format_double(values[i]) + '\n';
    return s;
}

std::string band_csv_2d(int level, const char* band, const Matrix& m) {
    std::string s = "level,band,row,col,value\n";
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            s += std::to_string(level) + ',' + band + ',' + std::to_string(r) + ',' + std::to_string(c) + ',' +
                 format_double(m(r, c)) + '\n';
    return s;
}

std::string prefix(const std::string& stem, const Transform& t) { return stem + "_" + t.name; }

// ---------------------------------------------------------------- analyze1d

void analyze1d(const Options& o) {
    const Transform t = parse_transform(o.wavelet);
    const AudioBuffer in = load_wav(o.inputs.front());
    const fs::path dir = output_dir(o);
    const std::string base = prefix(fs::path(o.inputs.front()).stem().string(), t);
    const std::span<const double> x = in.samples;

    std::vector<double> recon;
    if (const auto* id = t.dwt()) {
        Decomposition1D d = decompose(x, *id, o.levels, parse_extension(o.extension));
        if (o.analysis_threshold) d = hard_threshold(std::move(d), *o.analysis_threshold, parse_policy(o.policy));
        for (int j = 1; j <= d.levels; ++j) {
            std::string csv = band_csv_1d(j, "detail", d.details[j - 1]);
            if (j == d.levels) csv += band_csv_1d(j, "approx", d.approx).substr(csv.find('\n') + 1);
            write_text(dir / (base + "_level" + std::to_string(j) + ".csv"), csv);
        }
        recon = reconstruct(d);
    } else if (const auto* cw = t.cwt()) {
        DyadicCwtDecomposition d = dyadic_cwt_analyze(x, *cw, o.levels);
        if (o.analysis_threshold)
            for (auto& band : d.bands) shrink(band, *o.analysis_threshold);
        for (int j = 1; j <= d.levels; ++j) {
            std::string csv = band_csv_1d(j, "detail", d.bands[j - 1]);
            if (j == d.levels) csv += band_csv_1d(j, "approx", d.residual_lowpass).substr(csv.find('\n') + 1);
            write_text(dir / (base + "_level" + std::to_string(j) + ".csv"), csv);
        }
        recon = dyadic_cwt_synthesize(d);
    } else {
        const SpectralDecomposition d = spectral_analyze(x, *t.spectral());
        std::string csv = d.kind == SpectralKind::DCT ? "band,index,value\n" : "band,index,re,im\n";
        for (std::size_t k = 0; k < d.length; ++k) {
            csv += std::to_string(d.band_of(k)) + ',' + std::to_string(k) + ',';
            if (d.kind == SpectralKind::DCT)
                csv += format_double(d.dct[k]) + '\n';
            else
                csv += format_double(d.fft[k].real()) + ',' + format_double(d.fft[k].imag()) + '\n';
        }
        write_text(dir / (base + "_spectrum.csv"), csv);
        recon = process_signal(x, t, o, o.analysis_threshold);
    }

    // The report compares against what actually lands in the WAV file.
    AudioBuffer out{recon, in.sample_rate, 16};
    const Bytes wav = write_wav(out);
    write_file(dir / (base + "_reconstruction.wav"), wav);
    const std::vector<double> written = read_wav(wav).samples;

    auto json = report_json(quality_report(x, written, signal_config(x, o)), t.name, o.levels);
    json["max_abs_error"] = max_abs_diff(x, recon);
    json["extension"] = o.extension;
    write_report(json, dir / (base + "_report.json"));
}

// ---------------------------------------------------------------- analyze2d

void analyze2d(const Options& o) {
    const Transform t = parse_transform(o.wavelet);
    const auto* id = t.dwt();
    if (!id) throw Error(ErrorCode::UnsupportedWavelet, "analyze2d needs a discrete wavelet, got '" + t.name + "'");
    const GrayImage img = load_pgm(o.inputs.front());
    const fs::path dir = output_dir(o);
    const std::string base = prefix(fs::path(o.inputs.front()).stem().string(), t);
    const Matrix m = to_matrix(img);

    Decomposition2D d = decompose2d(m, *id, o.levels, parse_extension(o.extension));
    if (o.analysis_threshold) d = hard_threshold(std::move(d), *o.analysis_threshold, parse_policy(o.policy));
    write_file(dir / (base + "_mosaic.pgm"), write_pgm(render_mosaic(d)));
    for (int j = 1; j <= d.levels; ++j) {
        const auto& lvl = d.detail_levels[j - 1];
        const std::string stem = base + "_level" + std::to_string(j) + "_";
        write_text(dir / (stem + "lh.csv"), band_csv_2d(j, "lh", lvl.lh));
        write_text(dir / (stem + "hl.csv"), band_csv_2d(j, "hl", lvl.hl));
        write_text(dir / (stem + "hh.csv"), band_csv_2d(j, "hh", lvl.hh));
    }
    write_text(dir / (base + "_level" + std::to_string(d.levels) + "_ll.csv"), band_csv_2d(d.levels, "ll", d.ll_final));

    const Matrix recon = reconstruct2d(d);
    const GrayImage out = quantize(recon);
    write_file(dir / (base + "_reconstruction.pgm"), write_pgm(out));

    auto json = report_json(quality_report(m, to_matrix(out), image_config(o)), t.name, o.levels);
    json["max_abs_error"] = max_abs_diff(m.values(), recon.values());
    json["extension"] = o.extension;
    write_report(json, dir / (base + "_report.json"));
}

// ---------------------------------------------------------------- compress

std::string sweep_csv(const std::vector<CompressionReport>& reports) {
    std::string header = "wavelet", zeros = "zero_percentage", psnr = "psnr_db", energy = "retained_energy_percent";
    for (const auto& r : reports) {
        header += ',' + r.wavelet.name();
        zeros += ',' + fixed(r.zero_percentage, 6);
        psnr += ',' + fixed(r.psnr_db, 6);
        energy += ',' + fixed(r.retained_energy_percent, 6);
    }
    return header + '\n' + zeros + '\n' + psnr + '\n' + energy + '\n';
}

void compress(const Options& o) {
    std::vector<std::string> names = o.sweep ? split_list(*o.sweep) : std::vector<std::string>{o.wavelet};
    if (names.empty()) throw Error(ErrorCode::UnsupportedWavelet, "empty wavelet list");
    std::vector<WaveletId> ids;
    for (const auto& n : names) {
        const Transform t = parse_transform(n);
        if (!t.dwt()) throw Error(ErrorCode::UnsupportedWavelet, "compress needs a discrete wavelet, got '" + t.name + "'");
        ids.push_back(*t.dwt());
    }
    const GrayImage img = load_pgm(o.inputs.front());
    const fs::path dir = output_dir(o);
    const std::string stem = fs::path(o.inputs.front()).stem().string();
    const ThresholdPolicy policy = parse_policy(o.policy);
    const ExtensionMode ext = parse_extension(o.extension);

    std::vector<CompressionReport> reports(ids.size());
    parallel_for(ids.size(), o.threads,
                 [&](std::size_t i) { reports[i] = compress2d(img, ids[i], o.levels, o.threshold, policy, ext); });

    for (const auto& r : reports) {
        const std::string base = stem + "_" + r.wavelet.name() + "_t" + compact(o.threshold);
        write_file(dir / (base + "_compressed.pgm"), write_pgm(r.output));
        write_report(report_json(r), dir / (base + "_report.json"));
    }
    if (o.sweep) write_text(dir / (stem + "_t" + compact(o.threshold) + "_sweep.csv"), sweep_csv(reports));
}

// ---------------------------------------------------------------- table

struct Row {
    std::string input;
    std::string wavelet;
    QualityReport quality;
    CompressionReport compression;
};

std::string render_table(const std::vector<Row>& rows, const Options& o) {
    const bool quality = o.kind == "quality";
    std::string s;
    if (o.format == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& r : rows) {
            nlohmann::ordered_json j;
            j["input"] = r.input;
            if (quality) {
                j.update(report_json(r.quality, r.wavelet, o.levels));
            } else {
                j.update(report_json(r.compression));
                j.erase("psnr_db");
                if (!r.compression.infinite_psnr()) j["psnr_db"] = r.compression.psnr_db;
            }
            arr.push_back(j);
        }
        return arr.dump(2) + '\n';
    }

    std::vector<std::string> head;
    std::vector<std::vector<std::string>> body;
    if (quality) {
        head = {"input", "wavelet", "snr_db", "mse", "entropy_bits", "psnr_db"};
        for (const auto& r : rows)
            body.push_back({r.input, r.wavelet, fixed(r.quality.snr_db, 4), scientific(r.quality.mse, 6),
                            fixed(r.quality.entropy_bits, 6), fixed(r.quality.psnr_db, 4)});
    } else {
        head = {"input", "wavelet", "zero_percentage", "zero_count", "coefficient_count", "psnr_db",
                "retained_energy_percent"};
        for (const auto& r : rows) {
            const auto& c = r.compression;
            body.push_back({r.input, r.wavelet, fixed(c.zero_percentage, 4), std::to_string(c.zero_count),
                            std::to_string(c.coefficient_count), fixed(c.psnr_db, 4),
                            fixed(c.retained_energy_percent, 4)});
        }
    }

    auto join = [](const std::vector<std::string>& cells, const std::string& sep) {
        std::string line;
        for (std::size_t i = 0; i < cells.size(); ++i) line += (i ? sep : "") + cells[i];
        return line;
    };
    if (o.format == "csv") {
        s = join(head, ",") + '\n';
        for (const auto& b : body) s += join(b, ",") + '\n';
        return s;
    }
    s = "| " + join(head, " | ") + " |\n|";
    for (std::size_t i = 0; i < head.size(); ++i) s += i < 2 ? "---|" : "---:|";
    s += '\n';
    for (const auto& b : body) s += "| " + join(b, " | ") + " |\n";
    return s;
}

void table(const Options& o, std::ostream& out) {
    std::vector<std::string> names = o.sweep ? split_list(*o.sweep) : std::vector<std::string>{};
    if (names.empty()) throw Error(ErrorCode::UnsupportedWavelet, "empty wavelet list (pass --sweep-wavelets)");
    std::vector<Transform> transforms;
    for (const auto& n : names) transforms.push_back(parse_transform(n));

    std::vector<Input> inputs;
    for (const auto& p : o.inputs) inputs.push_back(load_input(p));

    const bool quality = o.kind == "quality";
    std::vector<Row> rows(inputs.size() * transforms.size());
    parallel_for(rows.size(), o.threads, [&](std::size_t k) {
        const Input& in = inputs[k / transforms.size()];
        const Transform& t = transforms[k % transforms.size()];
        Row& row = rows[k];
        row.input = fs::path(in.path).filename().string();
        row.wavelet = t.name;
        if (!quality) {
            if (!in.image) throw Error(ErrorCode::InvalidArgument, "compression tables need PGM inputs");
            if (!t.dwt()) throw Error(ErrorCode::UnsupportedWavelet, "compression needs a discrete wavelet");
            row.compression = compress2d(*in.image, *t.dwt(), o.levels, o.threshold, parse_policy(o.policy),
                                         parse_extension(o.extension));
            row.compression.output = {};
        } else if (in.image) {
            const Matrix m = to_matrix(*in.image);
            row.quality = quality_report(m, process_image(m, t, o, o.analysis_threshold), image_config(o));
        } else {
            const std::span<const double> x = in.audio->samples;
            row.quality = quality_report(x, process_signal(x, t, o, o.analysis_threshold), signal_config(x, o));
        }
    });

    const std::string text = render_table(rows, o);
    if (o.out)
        write_text(output_dir(o) / ("table_" + o.kind + "." + o.format), text);
    else
        out << text;
}

// ---------------------------------------------------------------- stages

// Quality against stage count: details thresholded at every level 1..L.
void stages(const Options& o, std::ostream& out) {
    const Transform t = parse_transform(o.wavelet);
    const Input in = load_input(o.inputs.front());
    std::string csv = "levels,mse,snr_db,psnr_db,entropy_bits\n";
    std::vector<QualityReport> reports(static_cast<std::size_t>(o.levels));
    parallel_for(reports.size(), o.threads, [&](std::size_t i) {
        Options stage = o;
        stage.levels = static_cast<int>(i) + 1;
        if (in.image) {
            const Matrix m = to_matrix(*in.image);
            reports[i] = quality_report(m, process_image(m, t, stage, o.threshold), image_config(o));
        } else {
            const std::span<const double> x = in.audio->samples;
            reports[i] = quality_report(x, process_signal(x, t, stage, o.threshold), signal_config(x, o));
        }
    });
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        csv += std::to_string(i + 1) + ',' + scientific(r.mse, 9) + ',' + fixed(r.snr_db, 6) + ',' +
               fixed(r.psnr_db, 6) + ',' + fixed(r.entropy_bits, 6) + '\n';
    }
    if (o.out)
        write_text(output_dir(o) / (in.stem + "_" + t.name + "_stages.csv"), csv);
    else
        out << csv;
}

int exit_code_for(const Error& e) {
    return e.code() == ErrorCode::UnsupportedWavelet ? kExitUnsupportedWavelet : kExitIoOrParse;
}

} // namespace

int run(int argc, const char* const* argv) {
    Options o;
    CLI::App app{"Wavelet analysis, comparison and compression of signals and images"};
    app.name("wavekit");
    app.require_subcommand(1);

    auto common = [&](CLI::App* sub, bool multi_input) {
        if (multi_input)
            sub->add_option("inputs", o.inputs, "Input WAV or PGM files")->required()->check(CLI::ExistingFile);
        else
            sub->add_option("input", o.inputs, "Input file")->required()->expected(1)->check(CLI::ExistingFile);
        sub->add_option("--wavelet,-w", o.wavelet, "haar, dbN, symN, coifN, biorN.M, morlet, cauchy, shannon, dct, fft")
            ->capture_default_str();
        sub->add_option("--levels,-l", o.levels, "Analysis stages")->check(CLI::Range(1, 8))->capture_default_str();
        sub->add_option("--extension", o.extension)
            ->check(CLI::IsMember({"periodic", "symmetric"}))
            ->capture_default_str();
        sub->add_option("--policy", o.policy, "Which bands are thresholded")
            ->check(CLI::IsMember({"details", "all"}))
            ->capture_default_str();
        sub->add_option("--out,-o", o.out, "Output directory");
        sub->add_option("--bins", o.bins, "Histogram bins for entropy")->check(CLI::Range(1, 1 << 20))->capture_default_str();
        sub->add_option("--threads", o.threads, "Worker threads for sweeps")->check(CLI::Range(1, 256))->capture_default_str();
    };

    auto* a1 = app.add_subcommand("analyze1d", "Decompose and reconstruct a WAV file");
    common(a1, false);
    a1->add_option("--threshold", o.analysis_threshold, "Optional hard threshold before reconstruction")
        ->check(CLI::NonNegativeNumber);

    auto* a2 = app.add_subcommand("analyze2d", "Decompose and reconstruct a PGM image");
    common(a2, false);
    a2->add_option("--threshold", o.analysis_threshold, "Optional hard threshold before reconstruction")
        ->check(CLI::NonNegativeNumber);

    auto* cp = app.add_subcommand("compress", "Hard-threshold compression of a PGM image");
    common(cp, false);
    cp->add_option("--threshold,-t", o.threshold)->check(CLI::NonNegativeNumber)->capture_default_str();
    cp->add_option("--sweep-wavelets", o.sweep, "Comma-separated wavelet list");

    auto* tb = app.add_subcommand("table", "Comparison table over wavelets");
    common(tb, true);
    tb->add_option("--sweep-wavelets", o.sweep, "Comma-separated wavelet list, one row each");
    tb->add_option("--kind", o.kind)->check(CLI::IsMember({"quality", "compression"}))->capture_default_str();
    tb->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv", "md"}))->capture_default_str();
    tb->add_option("--threshold,-t", o.threshold, "Compression threshold")->check(CLI::NonNegativeNumber)->capture_default_str();
    tb->add_option("--quality-threshold", o.analysis_threshold, "Optional threshold for quality rows")
        ->check(CLI::NonNegativeNumber);

    auto* st = app.add_subcommand("stages", "Quality after thresholding at 1..levels stages");
    common(st, false);
    st->add_option("--threshold,-t", o.threshold)->check(CLI::NonNegativeNumber)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitIoOrParse;
    }

    try {
        if (*a1) analyze1d(o);
        else if (*a2) analyze2d(o);
        else if (*cp) compress(o);
        else if (*tb) table(o, std::cout);
        else if (*st) stages(o, std::cout);
    } catch (const Error& e) {
        std::cerr << "wavekit: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "wavekit: " << e.what() << '\n';
        return kExitIoOrParse;
    }
    return kExitOk;
}

int run(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"wavekit"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data());
}

} // namespace wavekit::cli
