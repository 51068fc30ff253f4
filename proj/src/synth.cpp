#include "scrollmat/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include <json.hpp>

#include "scrollmat/errors.hpp"

namespace scrollmat {

namespace {

constexpr double kPi = 3.14159265358979323846;

double next_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// splitmix64 finalizer; drives the hash-based lattice noise so field lookups
// are independent of evaluation order.
std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double lattice(std::uint64_t seed, std::int64_t i, std::int64_t j, std::uint64_t salt) {
    std::uint64_t h = mix(seed ^ salt);
    h = mix(h ^ static_cast<std::uint64_t>(i));
    h = mix(h ^ static_cast<std::uint64_t>(j));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

double smooth(double t) { return t * t * t * (t * (t * 6.0 - 15.0) + 10.0); }

// Value noise in [0,1] with correlation length `scale`.
double value_noise(std::uint64_t seed, double x, double y, double scale, std::uint64_t salt) {
    const double fx = x / scale, fy = y / scale;
    const std::int64_t ix = static_cast<std::int64_t>(std::floor(fx));
    const std::int64_t iy = static_cast<std::int64_t>(std::floor(fy));
    const double tx = smooth(fx - ix);
    const double ty = smooth(fy - iy);
    const double v00 = lattice(seed, ix, iy, salt);
    const double v10 = lattice(seed, ix + 1, iy, salt);
    const double v01 = lattice(seed, ix, iy + 1, salt);
    const double v11 = lattice(seed, ix + 1, iy + 1, salt);
    const double top = v00 + (v10 - v00) * tx;
    const double bot = v01 + (v11 - v01) * tx;
    return top + (bot - top) * ty;
}

double value_noise_1d(std::uint64_t seed, double x, double scale, std::uint64_t salt) {
    const double fx = x / scale;
    const std::int64_t ix = static_cast<std::int64_t>(std::floor(fx));
    const double tx = smooth(fx - ix);
    const double v0 = lattice(seed, ix, 0, salt);
    const double v1 = lattice(seed, ix + 1, 0, salt);
    return v0 + (v1 - v0) * tx;
}

Rgb hsv_to_rgb(double h, double s, double v) {
    const double c = v * s;
    const double hp = h / 60.0;
    const double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
    double r = 0.0, g = 0.0, b = 0.0;
    if (hp < 1.0) { r = c; g = x; }
    else if (hp < 2.0) { r = x; g = c; }
    else if (hp < 3.0) { g = c; b = x; }
    else if (hp < 4.0) { g = x; b = c; }
    else if (hp < 5.0) { r = x; b = c; }
    else { r = c; b = x; }
    const double m = v - c;
    auto byte = [](double f) {
        return static_cast<std::uint8_t>(std::lround(std::clamp(f, 0.0, 1.0) * 255.0));
    };
    return {byte(r + m), byte(g + m), byte(b + m)};
}

double clamp01(double v) { return std::clamp(v, 0.05, 0.95); }

void paint_holes(const SynthSpec& spec, std::mt19937_64& rng, Raster& image,
                 BinaryMask& fragment) {
    const int size = spec.size;
    const double target_area = spec.hole_fraction * size * size;
    if (target_area < 1.0) return;
    const double r_lo = size / 56.0, r_hi = size / 32.0;
    const int margin = 6;
    const Rgb hole_color{11, 10, 12};

    double placed = 0.0;
    int attempts = 0;
    while (placed < target_area && attempts < 10000) {
        ++attempts;
        const double r = r_lo + next_unit(rng) * (r_hi - r_lo);
        const double lo = margin + r, hi = size - 1.0 - margin - r;
        if (hi <= lo) break;
        const double cx = lo + next_unit(rng) * (hi - lo);
        const double cy = lo + next_unit(rng) * (hi - lo);
        if (placed + kPi * r * r > target_area * 1.15 && placed > 0.0) continue;
        const int x0 = static_cast<int>(std::floor(cx - r)), x1 = static_cast<int>(std::ceil(cx + r));
        const int y0 = static_cast<int>(std::floor(cy - r)), y1 = static_cast<int>(std::ceil(cy + r));
        for (int y = y0; y <= y1; ++y) {
            for (int x = x0; x <= x1; ++x) {
                const double dx = x - cx, dy = y - cy;
                if (dx * dx + dy * dy > r * r) continue;
                if (fragment.at(x, y)) {
                    fragment.set(x, y, false);
                    image.at(x, y) = hole_color;
                }
            }
        }
        placed += kPi * r * r;
    }
}

void paint_glyphs(const SynthSpec& spec, std::mt19937_64& rng, Raster& image,
                  const BinaryMask& fragment, BinaryMask& text) {
    const int size = spec.size;
    const long long target = static_cast<long long>(spec.text_coverage * size * size);
    if (target < 1) return;
    const Rgb ink{32, 26, 22};
    const int margin = 8;

    long long covered = 0;
    int attempts = 0;
    while (covered < target && attempts < 20000) {
        ++attempts;
        const double x0 = margin + next_unit(rng) * (size - 2 * margin);
        const double y0 = margin + next_unit(rng) * (size - 2 * margin);
        const double len = size / 24.0 + next_unit(rng) * (size / 10.0);
        const double angle = next_unit(rng) * 2.0 * kPi;
        const double ux = std::cos(angle), uy = std::sin(angle);
        const int steps = static_cast<int>(len * 2.0);
        for (int s = 0; s <= steps; ++s) {
            const double px = x0 + ux * (s * 0.5);
            const double py = y0 + uy * (s * 0.5);
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    const int ix = static_cast<int>(std::lround(px)) + dx;
                    const int iy = static_cast<int>(std::lround(py)) + dy;
                    if (ix < 0 || iy < 0 || ix >= size || iy >= size) continue;
                    if (!fragment.at(ix, iy) || text.at(ix, iy)) continue;
                    text.set(ix, iy, true);
                    image.at(ix, iy) = ink;
                    ++covered;
                }
            }
        }
    }
}

} // namespace

SynthResult generate(const SynthSpec& spec) {
    if (spec.size < 512) fail("invalid_argument", "synthetic size must be at least 512");
    if (spec.hole_fraction < 0.0 || spec.hole_fraction > 0.3) {
        fail("invalid_argument", "hole fraction must lie in [0, 0.3]");
    }
    if (spec.text_coverage < 0.0 || spec.text_coverage > 0.2) {
        fail("invalid_argument", "text coverage must lie in [0, 0.2]");
    }
    if (spec.kind == SynthKind::papyrus_like && spec.stripe_period < 4) {
        fail("invalid_argument", "stripe period must be at least 4");
    }
    if (spec.kind == SynthKind::parchment_like && spec.noise_scale < 2.0) {
        fail("invalid_argument", "noise scale must be at least 2");
    }

    const int size = spec.size;
    const std::uint64_t seed = spec.seed;
    Raster clean(size, size);

    const double hue = 28.0; // brown
    if (spec.kind == SynthKind::papyrus_like) {
        const double period = spec.stripe_period;
        const double jitter = 0.15;
        // The fiber grid is not aligned with the image origin: each surface
        // gets its own global stripe phases.
        const double phase_h = 2.0 * kPi * lattice(seed, 0, 0, 0xA6);
        const double phase_v = 2.0 * kPi * lattice(seed, 1, 1, 0xA7);
        for (int y = 0; y < size; ++y) {
            const double jh =
                phase_h + jitter * (2.0 * value_noise_1d(seed, y, 4.0 * period, 0xA1) - 1.0);
            for (int x = 0; x < size; ++x) {
                const double jv =
                    phase_v + jitter * (2.0 * value_noise_1d(seed, x, 4.0 * period, 0xA2) - 1.0);
                const double amp =
                    0.28 * (0.85 + 0.30 * value_noise(seed, x, y, 6.0, 0xA3));
                const double stripes = (std::sin(2.0 * kPi * x / period + jh) +
                                        std::sin(2.0 * kPi * y / period + jv)) /
                                       2.0;
                const double grain = 0.02 * (2.0 * lattice(seed, x, y, 0xA4) - 1.0);
                const double s = clamp01(0.45 + amp * stripes + grain);
                const double v = 0.72 + 0.05 * (2.0 * value_noise(seed, x, y, 48.0, 0xA5) - 1.0);
                clean.at(x, y) = hsv_to_rgb(hue, s, v);
            }
        }
    } else {
        const double scale = spec.noise_scale;
        for (int y = 0; y < size; ++y) {
            for (int x = 0; x < size; ++x) {
                const double field = 0.65 * value_noise(seed, x, y, scale, 0xB1) +
                                     0.35 * value_noise(seed, x, y, scale / 2.0, 0xB2);
                const double grain = 0.02 * (2.0 * lattice(seed, x, y, 0xB3) - 1.0);
                const double s = clamp01(0.45 + 0.28 * (2.0 * field - 1.0) + grain);
                const double v = 0.72 + 0.05 * (2.0 * value_noise(seed, x, y, 48.0, 0xB4) - 1.0);
                clean.at(x, y) = hsv_to_rgb(hue, s, v);
            }
        }
    }

    SynthResult out{clean, BinaryMask(size, size, MaskKind::fragment),
                    BinaryMask(size, size, MaskKind::text), clean};
    for (int y = 0; y < size; ++y) {
        for (int x = 0; x < size; ++x) out.fragment_mask.set(x, y, true);
    }

    std::mt19937_64 rng(seed);
    paint_holes(spec, rng, out.image, out.fragment_mask);
    paint_glyphs(spec, rng, out.image, out.fragment_mask, out.text_mask);
    return out;
}

std::string to_string(SynthKind k) {
    return k == SynthKind::papyrus_like ? "papyrus_like" : "parchment_like";
}

SynthKind parse_synth_kind(std::string_view text) {
    if (text == "papyrus_like") return SynthKind::papyrus_like;
    if (text == "parchment_like") return SynthKind::parchment_like;
    fail("parse", "unknown synthetic kind: " + std::string(text));
}

Material material_of(SynthKind k) {
    return k == SynthKind::papyrus_like ? Material::papyrus : Material::parchment;
}

std::vector<CorpusEntry> load_corpus_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail("io", "cannot open corpus spec: " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        fail("parse", "corpus spec " + path.string() + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array()) {
        fail("parse", "corpus spec must be an object with an \"entries\" array");
    }

    std::vector<CorpusEntry> entries;
    for (const auto& item : doc["entries"]) {
        CorpusEntry entry;
        try {
            entry.id = item.at("id").get<std::string>();
            if (item.contains("set")) {
                entry.set = parse_image_set(item["set"].get<std::string>());
            }
            entry.spec.kind = parse_synth_kind(item.at("kind").get<std::string>());
            entry.spec.seed = item.at("seed").get<std::uint64_t>();
            if (item.contains("size")) entry.spec.size = item["size"].get<int>();
            if (item.contains("stripe_period")) {
                entry.spec.stripe_period = item["stripe_period"].get<int>();
            }
            if (item.contains("noise_scale")) {
                entry.spec.noise_scale = item["noise_scale"].get<double>();
            }
            if (item.contains("hole_fraction")) {
                entry.spec.hole_fraction = item["hole_fraction"].get<double>();
            }
            if (item.contains("text_coverage")) {
                entry.spec.text_coverage = item["text_coverage"].get<double>();
            }
        } catch (const nlohmann::json::exception& e) {
            fail("parse", "corpus entry: " + std::string(e.what()));
        }
        entries.push_back(std::move(entry));
    }
    if (entries.empty()) fail("parse", "corpus spec has no entries");
    return entries;
}

} // namespace scrollmat
