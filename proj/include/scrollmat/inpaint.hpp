#pragma once

#include <vector>

#include "scrollmat/image.hpp"

namespace scrollmat {

// Exemplar fill task. `fill_region` marks pixels to synthesize,
// `source_region` the pixels that may be copied from; the two are disjoint.
struct FillJob {
    Raster target;
    BinaryMask fill_region;
    BinaryMask source_region;
    int patch_size = 9;
    int workers = 1;
};

struct FillStats {
    int iterations = 0;
    // Remaining fill pixels after each iteration; strictly decreasing.
    std::vector<long long> remaining_history;
};

// Iterative exemplar fill: each round picks the fill-front pixel with the
// highest confidence * data-term priority, scans every fully-known window of
// the image for the patch with the least sum of squared RGB differences over
// the known pixels, and copies the unknown pixels from it. Already-filled
// pixels become usable source material for later rounds. Pixels outside
// fill_region are returned bit-identical to the input.
Raster fill_regions(const FillJob& job, FillStats* stats = nullptr);

struct ResidualReport {
    long long fill_pixels = 0;
    long long deviating_pixels = 0;
    double fraction = 0.0; // deviating / fill, 0 when the fill region is empty
    double threshold = 0.0;
    int window = 0;
};

// Fraction of fill-region pixels whose saturation deviates more than
// `threshold` from the median saturation of the surrounding window
// (fill-region pixels excluded from the median when possible). A cheap check
// for leftover marks after filling.
ResidualReport residual_check(const Raster& filled, const BinaryMask& fill_region,
                              double threshold = 0.1, int window = 11);

} // namespace scrollmat
