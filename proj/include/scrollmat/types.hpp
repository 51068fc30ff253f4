#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace scrollmat {

enum class Material { parchment, papyrus };
enum class ImageSet { color, multispectral };

// The five per-sample descriptors computed from a patch spectrum.
enum class FeatureKind { grid_mean, grid_sd, ring_mean, ring_sd, weighted_bin };

enum class CellStat { mean, sd };

struct Point {
    int x = 0;
    int y = 0;
    friend bool operator==(const Point&, const Point&) = default;
};

// Axis-aligned rectangle, top-left origin, 0-based pixel offsets.
struct Rect {
    int x = 0;
    int y = 0;
    int w = 0;
    int h = 0;
    long long area() const { return static_cast<long long>(w) * h; }
    friend bool operator==(const Rect&, const Rect&) = default;
};

std::string to_string(Material m);
std::string to_string(ImageSet s);
std::string to_string(FeatureKind k);

Material parse_material(std::string_view text);
ImageSet parse_image_set(std::string_view text);
FeatureKind parse_feature_kind(std::string_view text);

inline constexpr std::array<FeatureKind, 5> all_feature_kinds = {
    FeatureKind::grid_mean, FeatureKind::grid_sd, FeatureKind::ring_mean,
    FeatureKind::ring_sd, FeatureKind::weighted_bin};

inline constexpr std::array<ImageSet, 2> all_image_sets = {
    ImageSet::color, ImageSet::multispectral};

} // namespace scrollmat
