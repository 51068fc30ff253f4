#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "scrollmat/image.hpp"
#include "scrollmat/types.hpp"

namespace scrollmat {

// One fragment cut from a plate image, with its region mask in crop
// coordinates.
struct FragmentRecord {
    std::string fragment_id;
    Raster raster;
    BinaryMask region;
    Material label = Material::parchment;
    ImageSet set = ImageSet::color;
};

struct KmeansParams {
    int k = 3;
    std::uint64_t seed = 0;
    // Connected components smaller than this are dropped (scale bars, labels,
    // specks).
    int min_component_area = 64 * 64;
    int max_iterations = 50;
};

// Cluster the plate's RGB pixels with seeded k-means++ / Lloyd iterations,
// take every cluster except the one dominating the image border, and return
// its 8-connected components as fragment masks, largest first. Deterministic
// for a given (raster, params).
std::vector<BinaryMask> kmeans_segment(const Raster& r, const KmeansParams& params);

// Largest axis-aligned rectangle whose pixels are all set, found with the
// per-row histogram dynamic program in O(W*H). Area ties break toward the
// smallest (y, x, h).
Rect largest_inscribed_rectangle(const BinaryMask& m);

// Top-left corners of a per_side x per_side grid of patch-sized samples
// spread evenly over `area`, row-major. Corner i along an axis sits at
// round(i * (extent - patch) / (per_side - 1)).
std::vector<Point> sample_positions(const Rect& area, int per_side = 5, int patch = 256);

// One patch-sized cut of a fragment's saturation values.
struct SamplePatch {
    SaturationMatrix values;
    std::string fragment_id;
    int sample_index = 0;
    Material label = Material::parchment;
    ImageSet set = ImageSet::color;
};

// Convert the fragment to saturation and cut one patch per position, in
// position order.
std::vector<SamplePatch> extract_patches(const FragmentRecord& fragment,
                                         const std::vector<Point>& positions,
                                         int patch = 256);

} // namespace scrollmat
