#include "scrollmat/segmentation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <unordered_set>
#include <vector>

#include "scrollmat/errors.hpp"

namespace scrollmat {

namespace {

// Uniform double in [0,1) from the top 53 bits of the generator output.
double next_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double sq_dist(const Rgb& p, const std::array<double, 3>& c) {
    const double dr = p.r - c[0];
    const double dg = p.g - c[1];
    const double db = p.b - c[2];
    return dr * dr + dg * dg + db * db;
}

int count_distinct_colors(const Raster& r, int limit) {
    std::unordered_set<std::uint32_t> seen;
    for (const Rgb& p : r.pixels()) {
        seen.insert((std::uint32_t{p.r} << 16) | (std::uint32_t{p.g} << 8) | p.b);
        if (static_cast<int>(seen.size()) >= limit) return limit;
    }
    return static_cast<int>(seen.size());
}

} // namespace

std::vector<BinaryMask> kmeans_segment(const Raster& r, const KmeansParams& params) {
    const int k = params.k;
    if (k < 2) fail("invalid_argument", "cluster count must be at least 2");
    if (count_distinct_colors(r, k) < k) {
        fail("clustering", "cluster count exceeds number of distinct colors");
    }

    const auto& px = r.pixels();
    const std::size_t n = px.size();
    std::mt19937_64 rng(params.seed);

    // k-means++ seeding: first center uniform, the rest proportional to the
    // squared distance from the nearest chosen center.
    std::vector<std::array<double, 3>> centers;
    centers.reserve(k);
    {
        const Rgb& first = px[rng() % n];
        centers.push_back({double(first.r), double(first.g), double(first.b)});
    }
    std::vector<double> best_d2(n, 0.0);
    for (int j = 1; j < k; ++j) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double d = sq_dist(px[i], centers[0]);
            for (std::size_t c = 1; c < centers.size(); ++c) {
                d = std::min(d, sq_dist(px[i], centers[c]));
            }
            best_d2[i] = d;
            total += d;
        }
        if (total <= 0.0) {
            fail("clustering", "cluster count exceeds number of distinct colors");
        }
        const double target = next_unit(rng) * total;
        double acc = 0.0;
        std::size_t pick = n - 1;
        for (std::size_t i = 0; i < n; ++i) {
            acc += best_d2[i];
            if (acc > target) {
                pick = i;
                break;
            }
        }
        centers.push_back({double(px[pick].r), double(px[pick].g), double(px[pick].b)});
    }

    // Lloyd iterations until assignments stabilize.
    std::vector<std::uint8_t> assign(n, 0);
    for (int iter = 0; iter < params.max_iterations; ++iter) {
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            int best = 0;
            double best_d = sq_dist(px[i], centers[0]);
            for (int c = 1; c < k; ++c) {
                const double d = sq_dist(px[i], centers[c]);
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            if (assign[i] != best) {
                assign[i] = static_cast<std::uint8_t>(best);
                changed = true;
            }
        }
        if (!changed && iter > 0) break;
        std::vector<std::array<double, 3>> sums(k, {0.0, 0.0, 0.0});
        std::vector<long long> counts(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            sums[assign[i]][0] += px[i].r;
            sums[assign[i]][1] += px[i].g;
            sums[assign[i]][2] += px[i].b;
            ++counts[assign[i]];
        }
        for (int c = 0; c < k; ++c) {
            if (counts[c] > 0) {
                centers[c] = {sums[c][0] / counts[c], sums[c][1] / counts[c],
                              sums[c][2] / counts[c]};
            }
        }
    }

    // The cluster holding most of the border is the plate background.
    const int w = r.width();
    const int h = r.height();
    std::vector<long long> border_count(k, 0);
    auto tally = [&](int x, int y) { ++border_count[assign[std::size_t(y) * w + x]]; };
    for (int x = 0; x < w; ++x) {
        tally(x, 0);
        if (h > 1) tally(x, h - 1);
    }
    for (int y = 1; y + 1 < h; ++y) {
        tally(0, y);
        if (w > 1) tally(w - 1, y);
    }
    const int background =
        int(std::max_element(border_count.begin(), border_count.end()) - border_count.begin());

    // 8-connected components of everything that is not background.
    std::vector<std::int32_t> comp(n, -1);
    struct Component {
        long long area = 0;
        std::size_t first_pixel = 0;
        int id = 0;
    };
    std::vector<Component> comps;
    std::vector<std::size_t> stack;
    for (std::size_t start = 0; start < n; ++start) {
        if (assign[start] == background || comp[start] >= 0) continue;
        const int id = static_cast<int>(comps.size());
        Component c{0, start, id};
        comp[start] = id;
        stack.push_back(start);
        while (!stack.empty()) {
            const std::size_t i = stack.back();
            stack.pop_back();
            ++c.area;
            const int x = static_cast<int>(i % w);
            const int y = static_cast<int>(i / w);
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    const int nx = x + dx, ny = y + dy;
                    if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                    const std::size_t j = std::size_t(ny) * w + nx;
                    if (assign[j] != background && comp[j] < 0) {
                        comp[j] = id;
                        stack.push_back(j);
                    }
                }
            }
        }
        comps.push_back(c);
    }

    std::erase_if(comps, [&](const Component& c) { return c.area < params.min_component_area; });
    std::sort(comps.begin(), comps.end(), [](const Component& a, const Component& b) {
        if (a.area != b.area) return a.area > b.area;
        return a.first_pixel < b.first_pixel;
    });

    std::vector<BinaryMask> masks;
    masks.reserve(comps.size());
    for (const Component& c : comps) {
        BinaryMask m(w, h, MaskKind::fragment);
        for (std::size_t i = 0; i < n; ++i) {
            if (comp[i] == c.id) m.set(int(i % w), int(i / w), true);
        }
        masks.push_back(std::move(m));
    }
    return masks;
}

Rect largest_inscribed_rectangle(const BinaryMask& m) {
    const int w = m.width();
    const int h = m.height();

    std::vector<int> heights(w, 0);
    std::vector<int> left(w), right(w), stack;
    Rect best{};
    long long best_area = 0;
    auto consider = [&](const Rect& cand) {
        const long long area = cand.area();
        if (area > best_area ||
            (area == best_area && (cand.y < best.y || (cand.y == best.y && (cand.x < best.x ||
             (cand.x == best.x && cand.h < best.h)))))) {
            best = cand;
            best_area = area;
        }
    };

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            heights[x] = m.at(x, y) ? heights[x] + 1 : 0;
        }
        // For each column, the maximal run [left, right] at its full height.
        stack.clear();
        for (int x = 0; x < w; ++x) {
            while (!stack.empty() && heights[stack.back()] >= heights[x]) stack.pop_back();
            left[x] = stack.empty() ? 0 : stack.back() + 1;
            stack.push_back(x);
        }
        stack.clear();
        for (int x = w - 1; x >= 0; --x) {
            while (!stack.empty() && heights[stack.back()] >= heights[x]) stack.pop_back();
            right[x] = stack.empty() ? w - 1 : stack.back() - 1;
            stack.push_back(x);
        }
        for (int x = 0; x < w; ++x) {
            if (heights[x] == 0) continue;
            consider(Rect{left[x], y - heights[x] + 1, right[x] - left[x] + 1, heights[x]});
        }
    }

    if (best_area == 0) fail("empty_mask", "cannot inscribe a rectangle in an empty mask");
    return best;
}

std::vector<Point> sample_positions(const Rect& area, int per_side, int patch) {
    if (per_side < 1 || patch < 1) {
        fail("invalid_argument", "grid and patch size must be positive");
    }
    if (area.w < patch || area.h < patch) {
        fail("fragment_too_small",
             "sample area " + std::to_string(area.w) + "x" + std::to_string(area.h) +
                 " cannot hold a " + std::to_string(patch) + "-pixel patch");
    }
    auto offset = [&](int i, int extent) {
        if (per_side == 1) return 0;
        const double step = static_cast<double>(i) * (extent - patch) / (per_side - 1);
        return static_cast<int>(std::floor(step + 0.5));
    };
    std::vector<Point> out;
    out.reserve(static_cast<std::size_t>(per_side) * per_side);
    for (int gy = 0; gy < per_side; ++gy) {
        for (int gx = 0; gx < per_side; ++gx) {
            out.push_back({area.x + offset(gx, area.w), area.y + offset(gy, area.h)});
        }
    }
    return out;
}

std::vector<SamplePatch> extract_patches(const FragmentRecord& fragment,
                                         const std::vector<Point>& positions, int patch) {
    const SaturationMatrix sat = to_saturation(fragment.raster);
    std::vector<SamplePatch> out;
    out.reserve(positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i) {
        const Point p = positions[i];
        if (p.x < 0 || p.y < 0 || p.x + patch > sat.width || p.y + patch > sat.height) {
            fail("invalid_argument", "sample position out of fragment bounds");
        }
        SamplePatch sp;
        sp.values.width = patch;
        sp.values.height = patch;
        sp.values.values.resize(static_cast<std::size_t>(patch) * patch);
        for (int y = 0; y < patch; ++y) {
            for (int x = 0; x < patch; ++x) {
                sp.values.at(x, y) = sat.at(p.x + x, p.y + y);
            }
        }
        sp.fragment_id = fragment.fragment_id;
        sp.sample_index = static_cast<int>(i);
        sp.label = fragment.label;
        sp.set = fragment.set;
        out.push_back(std::move(sp));
    }
    return out;
}

} // namespace scrollmat
