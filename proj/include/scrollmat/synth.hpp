#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "scrollmat/image.hpp"
#include "scrollmat/types.hpp"

namespace scrollmat {

enum class SynthKind { papyrus_like, parchment_like };

// Parameters for one synthetic fragment image. papyrus_like surfaces carry
// crossed horizontal and vertical striations of the given period;
// parchment_like surfaces are smooth noise fields with correlation length
// `noise_scale` and no dominant frequency.
struct SynthSpec {
    SynthKind kind = SynthKind::parchment_like;
    int size = 640;
    std::uint64_t seed = 1;
    int stripe_period = 16;    // papyrus_like
    double noise_scale = 24.0; // parchment_like
    double hole_fraction = 0.0; // in [0, 0.3]
    double text_coverage = 0.0; // in [0, 0.2]
};

struct SynthResult {
    Raster image;          // with holes punched and glyphs painted
    BinaryMask fragment_mask;
    BinaryMask text_mask;
    Raster ground_truth;   // before holes and glyphs
};

// Deterministic per spec: the same spec always yields bit-identical output.
SynthResult generate(const SynthSpec& spec);

std::string to_string(SynthKind k);
SynthKind parse_synth_kind(std::string_view text);
Material material_of(SynthKind k);

struct CorpusEntry {
    std::string id;
    ImageSet set = ImageSet::color;
    SynthSpec spec;
};

// JSON corpus description: {"entries": [{"id", "kind", "size", "seed", ...}]}.
std::vector<CorpusEntry> load_corpus_spec(const std::filesystem::path& path);

} // namespace scrollmat
