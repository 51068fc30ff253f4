#include "scrollmat/image.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "scrollmat/errors.hpp"

namespace scrollmat {

Raster::Raster(int width, int height, Rgb fill, std::string source_id)
    : width_(width), height_(height), source_id_(std::move(source_id)) {
    if (width < 1 || height < 1) {
        fail("invalid_argument", "raster dimensions must be at least 1x1");
    }
    pixels_.assign(static_cast<std::size_t>(width) * height, fill);
}

BinaryMask::BinaryMask(int width, int height, MaskKind kind, bool value)
    : width_(width), height_(height), kind_(kind) {
    if (width < 1 || height < 1) {
        fail("invalid_argument", "mask dimensions must be at least 1x1");
    }
    bits_.assign(static_cast<std::size_t>(width) * height, value ? 1 : 0);
}

long long BinaryMask::count() const {
    return std::accumulate(bits_.begin(), bits_.end(), 0LL);
}

double saturation(Rgb p) {
    const int mx = std::max({p.r, p.g, p.b});
    if (mx == 0) return 0.0;
    const int mn = std::min({p.r, p.g, p.b});
    return static_cast<double>(mx - mn) / mx;
}

SaturationMatrix to_saturation(const Raster& r) {
    SaturationMatrix out;
    out.width = r.width();
    out.height = r.height();
    out.values.resize(r.pixels().size());
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        out.values[i] = saturation(r.pixels()[i]);
    }
    return out;
}

BinaryMask dilate_mask(const BinaryMask& m) {
    const int w = m.width();
    const int h = m.height();
    BinaryMask out(w, h, m.kind());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!m.at(x, y)) continue;
            const int x0 = std::max(0, x - 1), x1 = std::min(w - 1, x + 1);
            const int y0 = std::max(0, y - 1), y1 = std::min(h - 1, y + 1);
            for (int yy = y0; yy <= y1; ++yy) {
                for (int xx = x0; xx <= x1; ++xx) {
                    out.set(xx, yy, true);
                }
            }
        }
    }
    return out;
}

BinaryMask union_masks(const BinaryMask& a, const BinaryMask& b) {
    if (a.width() != b.width() || a.height() != b.height()) {
        fail("dimension_mismatch", "mask union requires matching dimensions");
    }
    BinaryMask out(a.width(), a.height(), MaskKind::fill);
    for (int y = 0; y < a.height(); ++y) {
        for (int x = 0; x < a.width(); ++x) {
            out.set(x, y, a.at(x, y) || b.at(x, y));
        }
    }
    return out;
}

BinaryMask interior_holes(const BinaryMask& region) {
    const int w = region.width();
    const int h = region.height();
    // Flood the unset background from the border; whatever unset area is left
    // is enclosed by the region.
    std::vector<std::uint8_t> outside(static_cast<std::size_t>(w) * h, 0);
    std::queue<Point> frontier;
    auto push = [&](int x, int y) {
        const std::size_t i = static_cast<std::size_t>(y) * w + x;
        if (!outside[i] && !region.at(x, y)) {
            outside[i] = 1;
            frontier.push({x, y});
        }
    };
    for (int x = 0; x < w; ++x) {
        push(x, 0);
        push(x, h - 1);
    }
    for (int y = 0; y < h; ++y) {
        push(0, y);
        push(w - 1, y);
    }
    while (!frontier.empty()) {
        const Point p = frontier.front();
        frontier.pop();
        if (p.x > 0) push(p.x - 1, p.y);
        if (p.x + 1 < w) push(p.x + 1, p.y);
        if (p.y > 0) push(p.x, p.y - 1);
        if (p.y + 1 < h) push(p.x, p.y + 1);
    }
    BinaryMask holes(w, h, MaskKind::fill);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            holes.set(x, y, !region.at(x, y) && !outside[static_cast<std::size_t>(y) * w + x]);
        }
    }
    return holes;
}

namespace {

void check_crop(int w, int h, const Rect& box) {
    if (box.w < 1 || box.h < 1 || box.x < 0 || box.y < 0 || box.x + box.w > w ||
        box.y + box.h > h) {
        fail("invalid_argument", "crop rectangle exceeds image bounds");
    }
}

} // namespace

Raster crop(const Raster& r, const Rect& box) {
    check_crop(r.width(), r.height(), box);
    Raster out(box.w, box.h, Rgb{}, r.source_id());
    for (int y = 0; y < box.h; ++y) {
        for (int x = 0; x < box.w; ++x) {
            out.at(x, y) = r.at(box.x + x, box.y + y);
        }
    }
    return out;
}

BinaryMask crop(const BinaryMask& m, const Rect& box) {
    check_crop(m.width(), m.height(), box);
    BinaryMask out(box.w, box.h, m.kind());
    for (int y = 0; y < box.h; ++y) {
        for (int x = 0; x < box.w; ++x) {
            out.set(x, y, m.at(box.x + x, box.y + y));
        }
    }
    return out;
}

} // namespace scrollmat
