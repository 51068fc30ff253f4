#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scrollmat/types.hpp"

namespace scrollmat {

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;
    friend bool operator==(const Rgb&, const Rgb&) = default;
};

// 8-bit RGB image, row-major. `source_id` carries provenance (plate/set).
class Raster {
public:
    Raster(int width, int height, Rgb fill = {}, std::string source_id = "");

    int width() const { return width_; }
    int height() const { return height_; }
    const std::string& source_id() const { return source_id_; }
    void set_source_id(std::string id) { source_id_ = std::move(id); }

    Rgb& at(int x, int y) { return pixels_[static_cast<std::size_t>(y) * width_ + x]; }
    const Rgb& at(int x, int y) const { return pixels_[static_cast<std::size_t>(y) * width_ + x]; }

    const std::vector<Rgb>& pixels() const { return pixels_; }
    std::vector<Rgb>& pixels() { return pixels_; }

    friend bool operator==(const Raster& a, const Raster& b) {
        return a.width_ == b.width_ && a.height_ == b.height_ && a.pixels_ == b.pixels_;
    }

private:
    int width_;
    int height_;
    std::vector<Rgb> pixels_;
    std::string source_id_;
};

enum class MaskKind { fragment, text, fill };

// Per-pixel boolean region stored as bytes, row-major.
class BinaryMask {
public:
    BinaryMask(int width, int height, MaskKind kind, bool value = false);

    int width() const { return width_; }
    int height() const { return height_; }
    MaskKind kind() const { return kind_; }
    void set_kind(MaskKind k) { kind_ = k; }

    bool at(int x, int y) const { return bits_[static_cast<std::size_t>(y) * width_ + x] != 0; }
    void set(int x, int y, bool value) {
        bits_[static_cast<std::size_t>(y) * width_ + x] = value ? 1 : 0;
    }

    // Number of set pixels.
    long long count() const;
    bool any() const { return count() > 0; }

    const std::vector<std::uint8_t>& bits() const { return bits_; }

    friend bool operator==(const BinaryMask& a, const BinaryMask& b) {
        return a.width_ == b.width_ && a.height_ == b.height_ && a.bits_ == b.bits_;
    }

private:
    int width_;
    int height_;
    std::vector<std::uint8_t> bits_;
    MaskKind kind_;
};

// Saturation channel of an image, values in [0,1], row-major.
struct SaturationMatrix {
    int width = 0;
    int height = 0;
    std::vector<double> values;

    double at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
    double& at(int x, int y) { return values[static_cast<std::size_t>(y) * width + x]; }
};

// Hexcone-model saturation: (max - min) / max over the channels, 0 for black.
double saturation(Rgb p);

SaturationMatrix to_saturation(const Raster& r);

// Morphological dilation with a 3x3 square structuring element; the element
// clips at the image border.
BinaryMask dilate_mask(const BinaryMask& m);

// Pixelwise OR of two same-sized masks. The result has kind `fill`.
BinaryMask union_masks(const BinaryMask& a, const BinaryMask& b);

// Unset pixels that cannot be reached from the image border by 4-connected
// steps through unset pixels, i.e. gaps enclosed by the region. Returned with
// kind `fill`.
BinaryMask interior_holes(const BinaryMask& region);

Raster crop(const Raster& r, const Rect& box);
BinaryMask crop(const BinaryMask& m, const Rect& box);

} // namespace scrollmat
