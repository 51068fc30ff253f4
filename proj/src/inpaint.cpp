#include "scrollmat/inpaint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>
#include <vector>

#include "scrollmat/errors.hpp"

namespace scrollmat {

namespace {

struct Candidate {
    long long ssd = std::numeric_limits<long long>::max();
    int y = -1;
    int x = -1;
    bool valid() const { return y >= 0; }
    bool better_than(const Candidate& o) const {
        if (ssd != o.ssd) return ssd < o.ssd;
        if (y != o.y) return y < o.y;
        return x < o.x;
    }
};

struct FillContext {
    int w = 0;
    int h = 0;
    int ps = 0;
    int half = 0;
    Raster img;
    std::vector<std::uint8_t> known; // source or already filled
    std::vector<std::uint8_t> fill;  // still to synthesize
    std::vector<double> conf;
    std::vector<double> gray;
    std::vector<long long> integral; // (w+1)*(h+1) sums of `known`
    long long remaining = 0;

    explicit FillContext(const Raster& target) : img(target) {}

    std::size_t idx(int x, int y) const { return static_cast<std::size_t>(y) * w + x; }

    void rebuild_integral() {
        const std::size_t stride = w + 1;
        for (int y = 0; y < h; ++y) {
            long long row = 0;
            for (int x = 0; x < w; ++x) {
                row += known[idx(x, y)];
                integral[(y + 1) * stride + (x + 1)] = integral[y * stride + (x + 1)] + row;
            }
        }
    }

    // Sum of `known` over the ps x ps window with top-left (x, y).
    long long window_known(int x, int y) const {
        const std::size_t stride = w + 1;
        return integral[(y + ps) * stride + (x + ps)] - integral[y * stride + (x + ps)] -
               integral[(y + ps) * stride + x] + integral[y * stride + x];
    }

    double confidence_at(int px, int py) const {
        const int x0 = std::max(0, px - half), x1 = std::min(w - 1, px + half);
        const int y0 = std::max(0, py - half), y1 = std::min(h - 1, py + half);
        double acc = 0.0;
        for (int y = y0; y <= y1; ++y) {
            for (int x = x0; x <= x1; ++x) {
                if (known[idx(x, y)]) acc += conf[idx(x, y)];
            }
        }
        return acc / (static_cast<double>(ps) * ps);
    }

    // Strongest image gradient over the window's known pixels, rotated 90
    // degrees: the isophote entering the front.
    void isophote_at(int px, int py, double& ix, double& iy) const {
        double best_mag = -1.0;
        double bx = 0.0, by = 0.0;
        const int x0 = std::max(0, px - half), x1 = std::min(w - 1, px + half);
        const int y0 = std::max(0, py - half), y1 = std::min(h - 1, py + half);
        for (int y = y0; y <= y1; ++y) {
            for (int x = x0; x <= x1; ++x) {
                if (!known[idx(x, y)]) continue;
                const bool l = x > 0 && known[idx(x - 1, y)];
                const bool r = x + 1 < w && known[idx(x + 1, y)];
                const bool u = y > 0 && known[idx(x, y - 1)];
                const bool d = y + 1 < h && known[idx(x, y + 1)];
                double gx = 0.0, gy = 0.0;
                if (l && r) gx = (gray[idx(x + 1, y)] - gray[idx(x - 1, y)]) / 2.0;
                else if (r) gx = gray[idx(x + 1, y)] - gray[idx(x, y)];
                else if (l) gx = gray[idx(x, y)] - gray[idx(x - 1, y)];
                if (u && d) gy = (gray[idx(x, y + 1)] - gray[idx(x, y - 1)]) / 2.0;
                else if (d) gy = gray[idx(x, y + 1)] - gray[idx(x, y)];
                else if (u) gy = gray[idx(x, y)] - gray[idx(x, y - 1)];
                const double mag = gx * gx + gy * gy;
                if (mag > best_mag) {
                    best_mag = mag;
                    bx = gx;
                    by = gy;
                }
            }
        }
        ix = -by;
        iy = bx;
    }

    double data_term(int px, int py) const {
        auto fill_at = [&](int x, int y) -> double {
            if (x < 0 || y < 0 || x >= w || y >= h) return 0.0;
            return fill[idx(x, y)];
        };
        double nx = (fill_at(px + 1, py) - fill_at(px - 1, py)) / 2.0;
        double ny = (fill_at(px, py + 1) - fill_at(px, py - 1)) / 2.0;
        const double norm = std::hypot(nx, ny);
        if (norm == 0.0) return 0.0;
        nx /= norm;
        ny /= norm;
        double ix = 0.0, iy = 0.0;
        isophote_at(px, py, ix, iy);
        return std::abs(ix * nx + iy * ny);
    }
};

double gray_of(Rgb p) { return (p.r + p.g + p.b) / (3.0 * 255.0); }

// SSD over the target window's known pixels against the candidate window at
// (sx, sy), aborting once `bound` is exceeded. Offsets are patch-relative.
long long patch_ssd(const FillContext& ctx, const std::vector<std::array<int, 2>>& offsets,
                    int px, int py, int sx, int sy, long long bound) {
    long long acc = 0;
    for (const auto& [dx, dy] : offsets) {
        const Rgb& t = ctx.img.at(px + dx, py + dy);
        const Rgb& s = ctx.img.at(sx + ctx.half + dx, sy + ctx.half + dy);
        const int dr = int(t.r) - s.r;
        const int dg = int(t.g) - s.g;
        const int db = int(t.b) - s.b;
        acc += dr * dr + dg * dg + db * db;
        if (acc > bound) return acc;
    }
    return acc;
}

Candidate scan_rows(const FillContext& ctx, const std::vector<std::array<int, 2>>& offsets,
                    int px, int py, int y_begin, int y_end) {
    Candidate best;
    const long long full = static_cast<long long>(ctx.ps) * ctx.ps;
    for (int sy = y_begin; sy < y_end; ++sy) {
        for (int sx = 0; sx + ctx.ps <= ctx.w; ++sx) {
            if (ctx.window_known(sx, sy) != full) continue;
            const long long ssd = patch_ssd(ctx, offsets, px, py, sx, sy, best.ssd);
            if (ssd < best.ssd) best = {ssd, sy, sx};
        }
    }
    return best;
}

} // namespace

Raster fill_regions(const FillJob& job, FillStats* stats) {
    const int w = job.target.width();
    const int h = job.target.height();
    if (job.fill_region.width() != w || job.fill_region.height() != h ||
        job.source_region.width() != w || job.source_region.height() != h) {
        fail("dimension_mismatch", "fill job masks must match the target raster");
    }
    if (job.patch_size < 3 || job.patch_size % 2 == 0) {
        fail("invalid_argument", "patch size must be odd and at least 3");
    }

    FillContext ctx(job.target);
    ctx.w = w;
    ctx.h = h;
    ctx.ps = job.patch_size;
    ctx.half = job.patch_size / 2;
    ctx.known.assign(static_cast<std::size_t>(w) * h, 0);
    ctx.fill.assign(static_cast<std::size_t>(w) * h, 0);
    ctx.conf.assign(static_cast<std::size_t>(w) * h, 0.0);
    ctx.gray.resize(static_cast<std::size_t>(w) * h);
    ctx.integral.assign(static_cast<std::size_t>(w + 1) * (h + 1), 0);

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t i = ctx.idx(x, y);
            const bool in_fill = job.fill_region.at(x, y);
            const bool in_source = job.source_region.at(x, y);
            if (in_fill && in_source) {
                fail("invalid_argument", "fill and source regions must be disjoint");
            }
            ctx.fill[i] = in_fill ? 1 : 0;
            ctx.known[i] = in_source ? 1 : 0;
            ctx.conf[i] = in_source ? 1.0 : 0.0;
            ctx.gray[i] = gray_of(ctx.img.at(x, y));
            if (in_fill) ++ctx.remaining;
        }
    }
    if (ctx.remaining == 0) return ctx.img;

    if (ctx.ps > w || ctx.ps > h) {
        fail("fill", "no valid source window: patch exceeds image dimensions");
    }
    ctx.rebuild_integral();
    {
        const long long full = static_cast<long long>(ctx.ps) * ctx.ps;
        bool any = false;
        for (int sy = 0; !any && sy + ctx.ps <= h; ++sy) {
            for (int sx = 0; sx + ctx.ps <= w; ++sx) {
                if (ctx.window_known(sx, sy) == full) {
                    any = true;
                    break;
                }
            }
        }
        if (!any) fail("fill", "no valid source window inside the source region");
    }

    const int workers = std::max(1, job.workers);
    std::vector<Point> front;
    std::vector<std::array<int, 2>> offsets;

    while (ctx.remaining > 0) {
        front.clear();
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                if (!ctx.fill[ctx.idx(x, y)]) continue;
                bool adjacent = false;
                for (int dy = -1; dy <= 1 && !adjacent; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        const int nx = x + dx, ny = y + dy;
                        if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                        if (ctx.known[ctx.idx(nx, ny)]) {
                            adjacent = true;
                            break;
                        }
                    }
                }
                if (adjacent) front.push_back({x, y});
            }
        }
        if (front.empty()) {
            fail("fill", "fill front stuck with " + std::to_string(ctx.remaining) +
                             " pixels remaining");
        }

        Point target = front.front();
        double best_priority = -1.0;
        double best_conf = -1.0;
        for (const Point& p : front) {
            const double c = ctx.confidence_at(p.x, p.y);
            const double priority = c * ctx.data_term(p.x, p.y);
            const bool better =
                priority > best_priority ||
                (priority == best_priority &&
                 (c > best_conf || (c == best_conf && (p.y < target.y ||
                  (p.y == target.y && p.x < target.x)))));
            if (better) {
                best_priority = priority;
                best_conf = c;
                target = p;
            }
        }
        const double target_conf = ctx.confidence_at(target.x, target.y);

        // Offsets of the target window's known pixels, patch-relative.
        offsets.clear();
        for (int dy = -ctx.half; dy <= ctx.half; ++dy) {
            for (int dx = -ctx.half; dx <= ctx.half; ++dx) {
                const int tx = target.x + dx, ty = target.y + dy;
                if (tx < 0 || ty < 0 || tx >= w || ty >= h) continue;
                if (ctx.known[ctx.idx(tx, ty)]) offsets.push_back({dx, dy});
            }
        }

        ctx.rebuild_integral();
        const int rows = h - ctx.ps + 1;
        Candidate best;
        if (workers <= 1 || rows < 2 * workers) {
            best = scan_rows(ctx, offsets, target.x, target.y, 0, rows);
        } else {
            // Chunked scan with a deterministic merge; per-chunk minima are
            // order-independent.
            std::vector<Candidate> partial(workers);
            std::vector<std::thread> pool;
            const int chunk = (rows + workers - 1) / workers;
            for (int t = 0; t < workers; ++t) {
                const int y0 = t * chunk;
                const int y1 = std::min(rows, y0 + chunk);
                if (y0 >= y1) continue;
                pool.emplace_back([&, t, y0, y1] {
                    partial[t] = scan_rows(ctx, offsets, target.x, target.y, y0, y1);
                });
            }
            for (std::thread& th : pool) th.join();
            for (const Candidate& c : partial) {
                if (c.valid() && (!best.valid() || c.better_than(best))) best = c;
            }
        }
        if (!best.valid()) {
            fail("fill", "no valid source window inside the source region");
        }

        for (int dy = -ctx.half; dy <= ctx.half; ++dy) {
            for (int dx = -ctx.half; dx <= ctx.half; ++dx) {
                const int tx = target.x + dx, ty = target.y + dy;
                if (tx < 0 || ty < 0 || tx >= w || ty >= h) continue;
                const std::size_t i = ctx.idx(tx, ty);
                if (!ctx.fill[i]) continue;
                const Rgb src = ctx.img.at(best.x + ctx.half + dx, best.y + ctx.half + dy);
                ctx.img.at(tx, ty) = src;
                ctx.gray[i] = gray_of(src);
                ctx.fill[i] = 0;
                ctx.known[i] = 1;
                ctx.conf[i] = target_conf;
                --ctx.remaining;
            }
        }
        if (stats) {
            ++stats->iterations;
            stats->remaining_history.push_back(ctx.remaining);
        }
    }
    return ctx.img;
}

ResidualReport residual_check(const Raster& filled, const BinaryMask& fill_region,
                              double threshold, int window) {
    if (fill_region.width() != filled.width() || fill_region.height() != filled.height()) {
        fail("dimension_mismatch", "fill region must match the raster");
    }
    if (window < 1 || window % 2 == 0) {
        fail("invalid_argument", "median window must be odd and positive");
    }
    const SaturationMatrix sat = to_saturation(filled);
    const int half = window / 2;

    ResidualReport report;
    report.threshold = threshold;
    report.window = window;

    std::vector<double> neighborhood;
    for (int y = 0; y < filled.height(); ++y) {
        for (int x = 0; x < filled.width(); ++x) {
            if (!fill_region.at(x, y)) continue;
            ++report.fill_pixels;
            neighborhood.clear();
            const int x0 = std::max(0, x - half), x1 = std::min(filled.width() - 1, x + half);
            const int y0 = std::max(0, y - half), y1 = std::min(filled.height() - 1, y + half);
            for (int yy = y0; yy <= y1; ++yy) {
                for (int xx = x0; xx <= x1; ++xx) {
                    if (!fill_region.at(xx, yy)) neighborhood.push_back(sat.at(xx, yy));
                }
            }
            if (neighborhood.empty()) {
                for (int yy = y0; yy <= y1; ++yy) {
                    for (int xx = x0; xx <= x1; ++xx) {
                        neighborhood.push_back(sat.at(xx, yy));
                    }
                }
            }
            const std::size_t mid = (neighborhood.size() - 1) / 2;
            std::nth_element(neighborhood.begin(), neighborhood.begin() + mid,
                             neighborhood.end());
            if (std::abs(sat.at(x, y) - neighborhood[mid]) > threshold) {
                ++report.deviating_pixels;
            }
        }
    }
    report.fraction =
        report.fill_pixels > 0 ? double(report.deviating_pixels) / report.fill_pixels : 0.0;
    return report;
}

} // namespace scrollmat
