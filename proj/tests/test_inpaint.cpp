#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "oracles.hpp"
#include "scrollmat/errors.hpp"
#include "scrollmat/image.hpp"
#include "scrollmat/inpaint.hpp"

using namespace scrollmat;

namespace {

Raster random_raster(std::mt19937_64& rng, int w, int h) {
    Raster r(w, h);
    for (Rgb& p : r.pixels()) {
        p = {static_cast<std::uint8_t>(rng() % 256), static_cast<std::uint8_t>(rng() % 256),
             static_cast<std::uint8_t>(rng() % 256)};
    }
    return r;
}

// Vertical stripes: 4 columns of `a`, then 4 of `b`, repeating.
Raster striped_raster(int w, int h, Rgb a = {200, 180, 150}, Rgb b = {90, 60, 40}) {
    Raster r(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) r.at(x, y) = (x % 8 < 4) ? a : b;
    }
    return r;
}

BinaryMask rect_mask(int w, int h, const Rect& box, MaskKind kind = MaskKind::fill) {
    BinaryMask m(w, h, kind);
    for (int y = box.y; y < box.y + box.h; ++y) {
        for (int x = box.x; x < box.x + box.w; ++x) m.set(x, y, true);
    }
    return m;
}

BinaryMask complement(const BinaryMask& m) {
    BinaryMask out(m.width(), m.height(), MaskKind::fragment);
    for (int y = 0; y < m.height(); ++y) {
        for (int x = 0; x < m.width(); ++x) out.set(x, y, !m.at(x, y));
    }
    return out;
}

} // namespace

TEST_CASE("an empty fill region returns the input untouched") {
    std::mt19937_64 rng(3001);
    const Raster img = random_raster(rng, 14, 10);
    const BinaryMask fill(14, 10, MaskKind::fill);
    FillJob job{img, fill, complement(fill), 9, 1};
    const Raster out = fill_regions(job);
    CHECK(out == img);

    // Copy-through works even when no patch would fit.
    const Raster tiny = random_raster(rng, 4, 4);
    FillJob tiny_job{tiny, BinaryMask(4, 4, MaskKind::fill),
                     BinaryMask(4, 4, MaskKind::fragment, true), 9, 1};
    CHECK(fill_regions(tiny_job) == tiny);
}

TEST_CASE("a hole in a constant raster is restored exactly") {
    const Raster img(31, 31, {150, 105, 70});
    Raster holed = img;
    const BinaryMask fill = rect_mask(31, 31, {13, 13, 5, 5});
    for (int y = 13; y < 18; ++y) {
        for (int x = 13; x < 18; ++x) holed.at(x, y) = {0, 0, 0};
    }
    FillJob job{holed, fill, complement(fill), 9, 1};
    FillStats stats;
    const Raster out = fill_regions(job, &stats);
    CHECK(out == img);
    CHECK(stats.iterations > 0);
}

TEST_CASE("a hole in periodic stripes is restored exactly") {
    const Raster truth = striped_raster(64, 64);
    Raster holed = truth;
    const BinaryMask fill = rect_mask(64, 64, {28, 28, 9, 9});
    for (int y = 28; y < 37; ++y) {
        for (int x = 28; x < 37; ++x) holed.at(x, y) = {0, 0, 0};
    }
    FillJob job{holed, fill, complement(fill), 9, 1};
    const Raster out = fill_regions(job);
    for (int y = 0; y < 64; ++y) {
        for (int x = 0; x < 64; ++x) {
            REQUIRE(out.at(x, y) == truth.at(x, y));
        }
    }
}

TEST_CASE("parallel scans reproduce the single-threaded fill") {
    const Raster truth = striped_raster(48, 40);
    Raster holed = truth;
    const BinaryMask fill = rect_mask(48, 40, {20, 16, 7, 7});
    for (int y = 16; y < 23; ++y) {
        for (int x = 20; x < 27; ++x) holed.at(x, y) = {3, 3, 3};
    }
    FillJob solo{holed, fill, complement(fill), 9, 1};
    FillJob multi{holed, fill, complement(fill), 9, 3};
    CHECK(fill_regions(solo) == fill_regions(multi));
}

TEST_CASE("random jobs keep untouched pixels identical and always progress") {
    std::mt19937_64 rng(3002);
    for (int trial = 0; trial < 10; ++trial) {
        const int w = 24 + static_cast<int>(rng() % 12);
        const int h = 24 + static_cast<int>(rng() % 12);
        const Raster img = random_raster(rng, w, h);
        const int fw = 3 + static_cast<int>(rng() % 6);
        const int fh = 3 + static_cast<int>(rng() % 6);
        const Rect hole{8 + static_cast<int>(rng() % (w - fw - 16)),
                        8 + static_cast<int>(rng() % (h - fh - 16)), fw, fh};
        const BinaryMask fill = rect_mask(w, h, hole);
        FillJob job{img, fill, complement(fill), 7, 1};

        FillStats stats;
        const Raster out = fill_regions(job, &stats);

        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                if (!fill.at(x, y)) REQUIRE(out.at(x, y) == img.at(x, y));
            }
        }
        REQUIRE(!stats.remaining_history.empty());
        long long prev = fill.count();
        for (long long rem : stats.remaining_history) {
            REQUIRE(rem < prev);
            prev = rem;
        }
        CHECK(stats.remaining_history.back() == 0);
        CHECK(stats.iterations == static_cast<int>(stats.remaining_history.size()));

        const Raster again = fill_regions(job);
        REQUIRE(again == out);
    }
}

TEST_CASE("fill validation rejects malformed jobs") {
    std::mt19937_64 rng(3003);
    const Raster img = random_raster(rng, 16, 16);
    BinaryMask fill = rect_mask(16, 16, {6, 6, 4, 4});

    FillJob wrong_dims{img, BinaryMask(8, 8, MaskKind::fill),
                       BinaryMask(16, 16, MaskKind::fragment, true), 9, 1};
    CHECK_ERROR_KIND(fill_regions(wrong_dims), "dimension_mismatch");

    FillJob even_patch{img, fill, complement(fill), 8, 1};
    CHECK_ERROR_KIND(fill_regions(even_patch), "invalid_argument");
    FillJob tiny_patch{img, fill, complement(fill), 1, 1};
    CHECK_ERROR_KIND(fill_regions(tiny_patch), "invalid_argument");

    BinaryMask overlapping = complement(fill);
    overlapping.set(6, 6, true); // also a fill pixel
    FillJob overlap{img, fill, overlapping, 9, 1};
    CHECK_ERROR_MSG(fill_regions(overlap), "invalid_argument", "disjoint");
}

TEST_CASE("a source with no complete window is rejected") {
    std::mt19937_64 rng(3004);
    const Raster img = random_raster(rng, 12, 12);
    // Source is a one-pixel frame: no 5x5 window is fully inside it.
    BinaryMask source(12, 12, MaskKind::fragment);
    for (int i = 0; i < 12; ++i) {
        source.set(i, 0, true);
        source.set(i, 11, true);
        source.set(0, i, true);
        source.set(11, i, true);
    }
    BinaryMask fill(12, 12, MaskKind::fill);
    fill.set(6, 6, true);
    FillJob job{img, fill, source, 5, 1};
    CHECK_ERROR_MSG(fill_regions(job), "fill", "no valid source window");

    // And a patch larger than the image cannot fit at all.
    FillJob huge{img, fill, complement(fill), 13, 1};
    CHECK_ERROR_MSG(fill_regions(huge), "fill", "patch exceeds");
}

TEST_CASE("a fill pixel with no known neighbor strands the front") {
    std::mt19937_64 rng(3005);
    const Raster img = random_raster(rng, 15, 15);
    BinaryMask source(15, 15, MaskKind::fragment);
    for (int y = 0; y < 15; ++y) {
        for (int x = 0; x < 5; ++x) source.set(x, y, true);
    }
    BinaryMask fill(15, 15, MaskKind::fill);
    fill.set(12, 12, true);
    FillJob job{img, fill, source, 3, 1};
    CHECK_ERROR_MSG(fill_regions(job), "fill", "stuck");
}

TEST_CASE("residual check is clean on a well-filled constant raster") {
    const Raster img(40, 40, {150, 105, 70});
    const BinaryMask fill = rect_mask(40, 40, {10, 10, 8, 8});
    const ResidualReport r = residual_check(img, fill, 0.1, 11);
    CHECK(r.fill_pixels == 64);
    CHECK(r.deviating_pixels == 0);
    CHECK(r.fraction == 0.0);
    CHECK(r.threshold == 0.1);
    CHECK(r.window == 11);
}

TEST_CASE("residual check with zero threshold counts every off-median pixel") {
    Raster img(30, 30, {100, 50, 50});
    const BinaryMask fill = rect_mask(30, 30, {12, 12, 4, 4});
    for (int y = 12; y < 16; ++y) {
        for (int x = 12; x < 16; ++x) img.at(x, y) = {102, 50, 50};
    }
    const ResidualReport strict = residual_check(img, fill, 0.0, 11);
    CHECK(strict.fill_pixels == 16);
    CHECK(strict.deviating_pixels == 16);
    CHECK(strict.fraction == doctest::Approx(1.0));

    // The same deviation passes a loose threshold.
    const ResidualReport loose = residual_check(img, fill, 0.1, 11);
    CHECK(loose.deviating_pixels == 0);
}

TEST_CASE("unfilled saturated ink stands out as residual at its coverage rate") {
    // White page, scattered pure-red marks, the whole image checked: each mark
    // deviates from its white neighborhood median, so the residual fraction is
    // exactly the mark coverage.
    Raster img(64, 64, {255, 255, 255});
    std::mt19937_64 rng(3006);
    long long marks = 0;
    while (marks < 123) {
        const int x = static_cast<int>(rng() % 64);
        const int y = static_cast<int>(rng() % 64);
        if (img.at(x, y).g == 255) {
            img.at(x, y) = {255, 0, 0};
            ++marks;
        }
    }
    const BinaryMask everything(64, 64, MaskKind::fill, true);
    const ResidualReport r = residual_check(img, everything, 0.1, 11);
    CHECK(r.fill_pixels == 64 * 64);
    CHECK(r.deviating_pixels == 123);
    CHECK(r.fraction == doctest::Approx(123.0 / 4096.0));
}

TEST_CASE("residual check validates its inputs") {
    const Raster img(20, 20, {10, 10, 10});
    CHECK_ERROR_KIND(residual_check(img, BinaryMask(10, 10, MaskKind::fill), 0.1, 11),
                     "dimension_mismatch");
    CHECK_ERROR_KIND(residual_check(img, BinaryMask(20, 20, MaskKind::fill), 0.1, 4),
                     "invalid_argument");

    const ResidualReport empty = residual_check(img, BinaryMask(20, 20, MaskKind::fill));
    CHECK(empty.fill_pixels == 0);
    CHECK(empty.fraction == 0.0);
}
