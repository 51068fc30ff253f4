#include <doctest.h>

#include <fstream>
#include <random>

#include "helpers.hpp"
#include "oracles.hpp"
#include "scrollmat/errors.hpp"
#include "scrollmat/image.hpp"
#include "scrollmat/image_io.hpp"

using namespace scrollmat;

TEST_CASE("saturation of single pixels") {
    CHECK(saturation({255, 255, 255}) == doctest::Approx(0.0));
    CHECK(saturation({0, 0, 0}) == doctest::Approx(0.0));
    CHECK(saturation({255, 0, 0}) == doctest::Approx(1.0));
    CHECK(saturation({128, 64, 64}) == doctest::Approx(0.5));
    CHECK(saturation({200, 200, 200}) == doctest::Approx(0.0));
}

TEST_CASE("saturation ignores channel order") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const auto r = static_cast<std::uint8_t>(rng() % 256);
        const auto g = static_cast<std::uint8_t>(rng() % 256);
        const auto b = static_cast<std::uint8_t>(rng() % 256);
        const double s = saturation({r, g, b});
        CHECK(saturation({g, b, r}) == doctest::Approx(s));
        CHECK(saturation({b, r, g}) == doctest::Approx(s));
        CHECK(s >= 0.0);
        CHECK(s <= 1.0);
    }
}

TEST_CASE("to_saturation maps a gray image to zero everywhere") {
    Raster r(8, 6);
    std::mt19937_64 rng(7);
    for (Rgb& p : r.pixels()) {
        const auto v = static_cast<std::uint8_t>(rng() % 256);
        p = {v, v, v};
    }
    const SaturationMatrix m = to_saturation(r);
    CHECK(m.width == 8);
    CHECK(m.height == 6);
    for (double v : m.values) CHECK(v == doctest::Approx(0.0));
}

TEST_CASE("dilation spreads one interior pixel to a 3x3 block") {
    BinaryMask m(11, 11, MaskKind::text);
    m.set(5, 5, true);
    const BinaryMask d = dilate_mask(m);
    CHECK(d.count() == 9);
    for (int y = 4; y <= 6; ++y) {
        for (int x = 4; x <= 6; ++x) CHECK(d.at(x, y));
    }
}

TEST_CASE("dilation clips at the border") {
    BinaryMask m(11, 11, MaskKind::text);
    m.set(0, 0, true);
    const BinaryMask d = dilate_mask(m);
    CHECK(d.count() == 4);
    CHECK(d.at(0, 0));
    CHECK(d.at(1, 0));
    CHECK(d.at(0, 1));
    CHECK(d.at(1, 1));
}

TEST_CASE("dilation of an empty mask stays empty") {
    BinaryMask m(9, 9, MaskKind::text);
    CHECK(dilate_mask(m).count() == 0);
}

TEST_CASE("dilation equals the 3x3 neighborhood union on random masks") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 25; ++trial) {
        const BinaryMask m = oracle::random_mask(rng, 16, 16, 0.3);
        const BinaryMask d = dilate_mask(m);
        for (int y = 0; y < 16; ++y) {
            for (int x = 0; x < 16; ++x) {
                bool expect = false;
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        const int nx = x + dx, ny = y + dy;
                        if (nx >= 0 && nx < 16 && ny >= 0 && ny < 16 && m.at(nx, ny)) {
                            expect = true;
                        }
                    }
                }
                CHECK(d.at(x, y) == expect);
            }
        }
    }
}

TEST_CASE("mask union merges disjoint singletons") {
    BinaryMask a(5, 5, MaskKind::text);
    BinaryMask b(5, 5, MaskKind::text);
    a.set(1, 1, true);
    b.set(3, 3, true);
    const BinaryMask u = union_masks(a, b);
    CHECK(u.count() == 2);
    CHECK(u.at(1, 1));
    CHECK(u.at(3, 3));
    CHECK(u.kind() == MaskKind::fill);
}

TEST_CASE("mask union laws hold bitwise on random masks") {
    std::mt19937_64 rng(31);
    const BinaryMask empty(16, 16, MaskKind::text);
    for (int trial = 0; trial < 50; ++trial) {
        const BinaryMask a = oracle::random_mask(rng, 16, 16, 0.4);
        const BinaryMask b = oracle::random_mask(rng, 16, 16, 0.4);
        const BinaryMask c = oracle::random_mask(rng, 16, 16, 0.4);
        CHECK(union_masks(a, empty) == a);
        CHECK(union_masks(a, a) == a);
        CHECK(union_masks(a, b) == union_masks(b, a));
        CHECK(union_masks(union_masks(a, b), c) == union_masks(a, union_masks(b, c)));
    }
}

TEST_CASE("mask union rejects mismatched dimensions") {
    BinaryMask a(5, 5, MaskKind::text);
    BinaryMask b(5, 6, MaskKind::text);
    CHECK_ERROR_KIND(union_masks(a, b), "dimension_mismatch");
}

TEST_CASE("interior holes finds gaps enclosed by the region") {
    // A 10x10 solid square with an unset 4x4 center, well inside the canvas.
    BinaryMask region(20, 20, MaskKind::fragment);
    for (int y = 4; y < 14; ++y) {
        for (int x = 4; x < 14; ++x) region.set(x, y, true);
    }
    for (int y = 7; y < 11; ++y) {
        for (int x = 7; x < 11; ++x) region.set(x, y, false);
    }
    const BinaryMask holes = interior_holes(region);
    CHECK(holes.kind() == MaskKind::fill);
    CHECK(holes.count() == 16);
    for (int y = 7; y < 11; ++y) {
        for (int x = 7; x < 11; ++x) CHECK(holes.at(x, y));
    }
}

TEST_CASE("interior holes ignores bays open to the border") {
    // A C-shape: the notch connects to the outside, so nothing is enclosed.
    BinaryMask region(20, 20, MaskKind::fragment);
    for (int y = 4; y < 14; ++y) {
        for (int x = 4; x < 14; ++x) region.set(x, y, true);
    }
    for (int y = 7; y < 11; ++y) {
        for (int x = 7; x < 20; ++x) region.set(x, y, false);
    }
    CHECK(interior_holes(region).count() == 0);
}

TEST_CASE("crop maps pixels by offset") {
    Raster r(10, 8);
    std::mt19937_64 rng(41);
    for (Rgb& p : r.pixels()) {
        p = {static_cast<std::uint8_t>(rng() % 256), static_cast<std::uint8_t>(rng() % 256),
             static_cast<std::uint8_t>(rng() % 256)};
    }
    const Rect box{3, 2, 5, 4};
    const Raster c = crop(r, box);
    CHECK(c.width() == 5);
    CHECK(c.height() == 4);
    for (int y = 0; y < 4; ++y) {
        for (int x = 0; x < 5; ++x) CHECK(c.at(x, y) == r.at(x + 3, y + 2));
    }

    BinaryMask m = oracle::random_mask(rng, 10, 8);
    const BinaryMask mc = crop(m, box);
    for (int y = 0; y < 4; ++y) {
        for (int x = 0; x < 5; ++x) CHECK(mc.at(x, y) == m.at(x + 3, y + 2));
    }
}

TEST_CASE("crop rejects rectangles outside the image") {
    Raster r(10, 8);
    CHECK_ERROR_KIND(crop(r, Rect{6, 0, 5, 4}), "invalid_argument");
    CHECK_ERROR_KIND(crop(r, Rect{0, 0, 10, 9}), "invalid_argument");
}

TEST_CASE("degenerate dimensions are rejected") {
    CHECK_ERROR_KIND(Raster(0, 5), "invalid_argument");
    CHECK_ERROR_KIND((BinaryMask(5, 0, MaskKind::fragment)), "invalid_argument");
}

TEST_CASE("raster round-trips through PNG") {
    TempDir tmp("io");
    Raster r(23, 17);
    std::mt19937_64 rng(51);
    for (Rgb& p : r.pixels()) {
        p = {static_cast<std::uint8_t>(rng() % 256), static_cast<std::uint8_t>(rng() % 256),
             static_cast<std::uint8_t>(rng() % 256)};
    }
    const auto path = tmp.path / "img.png";
    save_image(r, path);
    const Raster back = load_image(path);
    CHECK(back == r);
}

TEST_CASE("mask round-trips through PNG") {
    TempDir tmp("io");
    std::mt19937_64 rng(61);
    const BinaryMask m = oracle::random_mask(rng, 19, 13);
    const auto path = tmp.path / "mask.png";
    save_mask(m, path);
    const BinaryMask back = load_mask(path, MaskKind::fragment);
    CHECK(back == m);
}

TEST_CASE("loading a missing image reports the path") {
    TempDir tmp("io");
    const auto path = tmp.path / "nope.png";
    CHECK_ERROR_MSG(load_image(path), "decode", "nope.png");
}

TEST_CASE("loading a corrupt file fails to decode") {
    TempDir tmp("io");
    const auto path = tmp.path / "broken.png";
    std::ofstream(path) << "this is not an image";
    CHECK_ERROR_KIND(load_image(path), "decode");
}
