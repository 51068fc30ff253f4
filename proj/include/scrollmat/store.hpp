#pragma once

#include <filesystem>
#include <vector>

#include "scrollmat/spectral.hpp"

namespace scrollmat {

// Line-delimited JSON feature store, one record per (sample, kind):
// {"fragment_id", "sample_index", "kind", "label", "set", "values": [...]}.
// Values round-trip bit-exactly.
void write_feature_store(const std::filesystem::path& path,
                         const std::vector<FeatureVector>& vectors);

std::vector<FeatureVector> read_feature_store(const std::filesystem::path& path);

} // namespace scrollmat
