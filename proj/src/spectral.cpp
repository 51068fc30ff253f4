#include "scrollmat/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "scrollmat/errors.hpp"

namespace scrollmat {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

void fft_radix2(std::complex<double>* a, int n) {
    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j |= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    std::vector<std::complex<double>> twiddle(static_cast<std::size_t>(n) / 2);
    for (int len = 2; len <= n; len <<= 1) {
        const int half = len / 2;
        for (int k = 0; k < half; ++k) {
            twiddle[k] = std::polar(1.0, -two_pi * k / len);
        }
        for (int i = 0; i < n; i += len) {
            for (int k = 0; k < half; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + half] * twiddle[k];
                a[i + k] = u + v;
                a[i + k + half] = u - v;
            }
        }
    }
}

void dft_direct(const std::complex<double>* in, std::complex<double>* out, int n) {
    std::vector<std::complex<double>> roots(n);
    for (int t = 0; t < n; ++t) {
        roots[t] = std::polar(1.0, -two_pi * t / n);
    }
    for (int k = 0; k < n; ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (int j = 0; j < n; ++j) {
            acc += in[j] * roots[(static_cast<long long>(j) * k) % n];
        }
        out[k] = acc;
    }
}

void transform_1d(std::vector<std::complex<double>>& line) {
    const int n = static_cast<int>(line.size());
    if (n == 1) return;
    if (is_pow2(n)) {
        fft_radix2(line.data(), n);
    } else {
        std::vector<std::complex<double>> out(n);
        dft_direct(line.data(), out.data(), n);
        line = std::move(out);
    }
}

struct RunningStat {
    double sum = 0.0;
    long long count = 0;
    void add(double v) {
        sum += v;
        ++count;
    }
    double mean() const { return count > 0 ? sum / count : 0.0; }
};

} // namespace

ComplexSpectrum dft2(const SaturationMatrix& m) {
    const int w = m.width;
    const int h = m.height;
    if (w < 1 || h < 1) fail("invalid_argument", "cannot transform an empty matrix");

    ComplexSpectrum s;
    s.width = w;
    s.height = h;
    s.values.resize(static_cast<std::size_t>(w) * h);

    std::vector<std::complex<double>> line(static_cast<std::size_t>(w));
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) line[x] = {m.at(x, y), 0.0};
        transform_1d(line);
        for (int u = 0; u < w; ++u) s.at(u, y) = line[u];
    }
    line.resize(static_cast<std::size_t>(h));
    for (int u = 0; u < w; ++u) {
        for (int y = 0; y < h; ++y) line[y] = s.at(u, y);
        transform_1d(line);
        for (int v = 0; v < h; ++v) s.at(u, v) = line[v];
    }
    return s;
}

LogSpectrum log_spectrum(const ComplexSpectrum& s) {
    LogSpectrum out;
    out.width = s.width;
    out.height = s.height;
    out.values.resize(s.values.size());
    const int sx = s.width / 2;
    const int sy = s.height / 2;
    for (int v = 0; v < s.height; ++v) {
        const int y = (v + sy) % s.height;
        for (int u = 0; u < s.width; ++u) {
            const int x = (u + sx) % s.width;
            out.at(x, y) = std::log1p(std::abs(s.at(u, v)));
        }
    }
    return out;
}

FeatureVector grid_features(const LogSpectrum& ls, int n, CellStat stat) {
    if (n < 1) fail("invalid_argument", "grid division must be at least 1");
    if (n > ls.width || n > ls.height) {
        fail("invalid_argument", "grid division exceeds spectrum dimensions");
    }
    // Bands as equal as possible, the remainder spread over the first bands.
    auto band_starts = [n](int extent) {
        std::vector<int> starts(n + 1, 0);
        const int base = extent / n;
        const int rem = extent % n;
        for (int i = 0; i < n; ++i) {
            starts[i + 1] = starts[i] + base + (i < rem ? 1 : 0);
        }
        return starts;
    };
    const std::vector<int> rows = band_starts(ls.height);
    const std::vector<int> cols = band_starts(ls.width);

    FeatureVector fv;
    fv.kind = stat == CellStat::mean ? FeatureKind::grid_mean : FeatureKind::grid_sd;
    fv.values.reserve(static_cast<std::size_t>(n) * n);
    for (int bi = 0; bi < n; ++bi) {
        for (int bj = 0; bj < n; ++bj) {
            RunningStat rs;
            for (int y = rows[bi]; y < rows[bi + 1]; ++y) {
                for (int x = cols[bj]; x < cols[bj + 1]; ++x) {
                    rs.add(ls.at(x, y));
                }
            }
            if (stat == CellStat::mean) {
                fv.values.push_back(rs.mean());
            } else {
                const double mu = rs.mean();
                double acc = 0.0;
                for (int y = rows[bi]; y < rows[bi + 1]; ++y) {
                    for (int x = cols[bj]; x < cols[bj + 1]; ++x) {
                        const double d = ls.at(x, y) - mu;
                        acc += d * d;
                    }
                }
                fv.values.push_back(std::sqrt(acc / rs.count));
            }
        }
    }
    return fv;
}

FeatureVector ring_features(const LogSpectrum& ls, int rings, CellStat stat) {
    if (rings < 1) fail("invalid_argument", "ring count must be at least 1");
    const int cx = ls.width / 2;
    const int cy = ls.height / 2;
    const double outer = std::min(ls.width, ls.height) / 2.0;
    const double ring_width = outer / rings;

    std::vector<std::vector<double>> members(rings);
    for (int y = 0; y < ls.height; ++y) {
        for (int x = 0; x < ls.width; ++x) {
            const double r = std::hypot(double(x - cx), double(y - cy));
            if (r >= outer) continue;
            const int idx = std::min(static_cast<int>(r / ring_width), rings - 1);
            members[idx].push_back(ls.at(x, y));
        }
    }

    FeatureVector fv;
    fv.kind = stat == CellStat::mean ? FeatureKind::ring_mean : FeatureKind::ring_sd;
    fv.values.reserve(rings);
    for (int j = 0; j < rings; ++j) {
        if (members[j].empty()) {
            fail("empty_ring", "ring " + std::to_string(j) + " contains no spectrum bins");
        }
        // Accumulate in value order so any traversal of the same ring (for
        // instance over a transposed spectrum) sums to the identical double.
        std::sort(members[j].begin(), members[j].end());
        double mu = 0.0;
        for (double v : members[j]) mu += v;
        mu /= members[j].size();
        if (stat == CellStat::mean) {
            fv.values.push_back(mu);
        } else {
            double acc = 0.0;
            for (double v : members[j]) acc += (v - mu) * (v - mu);
            fv.values.push_back(std::sqrt(acc / members[j].size()));
        }
    }
    return fv;
}

FeatureVector weighted_bin_features(const ComplexSpectrum& s, int bins) {
    if (bins < 1) fail("invalid_argument", "bin count must be at least 1");
    FeatureVector fv;
    fv.kind = FeatureKind::weighted_bin;
    fv.values.assign(bins, 0.0);
    const double bin_width = two_pi / bins;
    double total = 0.0;
    for (const std::complex<double>& z : s.values) {
        const double mag = std::abs(z);
        if (mag == 0.0) continue;
        double phase = std::atan2(z.imag(), z.real());
        if (phase < 0.0) phase += two_pi;
        const int idx = std::min(static_cast<int>(phase / bin_width), bins - 1);
        const double weight = std::log1p(mag);
        fv.values[idx] += weight;
        total += weight;
    }
    if (total <= 0.0) {
        fail("undefined_normalization",
             "all spectrum bins are zero; phase histogram cannot be normalized");
    }
    for (double& v : fv.values) v /= total;
    return fv;
}

std::array<FeatureVector, 5> featurize_patch(const SamplePatch& p, const SpectralConfig& cfg) {
    if (p.values.width != cfg.patch || p.values.height != cfg.patch) {
        fail("invalid_argument",
             "patch must be " + std::to_string(cfg.patch) + "x" + std::to_string(cfg.patch));
    }
    const ComplexSpectrum spectrum = dft2(p.values);
    const LogSpectrum ls = log_spectrum(spectrum);

    std::array<FeatureVector, 5> out = {
        grid_features(ls, cfg.grid_n, CellStat::mean),
        grid_features(ls, cfg.grid_n, CellStat::sd),
        ring_features(ls, cfg.ring_count, CellStat::mean),
        ring_features(ls, cfg.ring_count, CellStat::sd),
        weighted_bin_features(spectrum, cfg.bin_count),
    };
    for (FeatureVector& fv : out) {
        fv.fragment_id = p.fragment_id;
        fv.sample_index = p.sample_index;
        fv.label = p.label;
        fv.set = p.set;
    }
    return out;
}

} // namespace scrollmat
