#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "scrollmat/classify.hpp"
#include "scrollmat/types.hpp"

namespace scrollmat {

// One plate image plus optional pre-made masks. A plate may hold several
// fragments; all share the plate's material label.
struct ManifestRecord {
    std::filesystem::path image_path;
    ImageSet set = ImageSet::color;
    std::string plate_id;
    std::optional<Material> material;
    std::optional<std::filesystem::path> fragment_mask_path;
    std::optional<std::filesystem::path> text_mask_path;
};

struct Manifest {
    std::vector<ManifestRecord> records;
};

// CSV or JSON, picked by file extension. CSV columns: image_path, set,
// plate_id, material, fragment_mask_path, text_mask_path (last three may be
// empty).
Manifest load_manifest(const std::filesystem::path& path);

struct RunConfig {
    int grid_n = 7;
    int samples_per_side = 5;
    int patch = 256;
    int rings = 6;
    int bins = 19;
    int inpaint_patch = 9;
    int kmeans_k = 3;
    int kmeans_min_area = 64 * 64;
    std::uint64_t seed = 0;
    int workers = 1;
    double residual_threshold = 0.1;
    int residual_window = 11;
    std::filesystem::path out_dir;
    std::vector<FeatureKind> fv_kinds; // empty = all five
    std::vector<ImageSet> sets;        // empty = every set present
    bool save_intermediate = false;

    std::string to_json() const;
};

// Per-stage outcome summaries. Fragments that fail a stage are recorded and
// the run continues where the stage contract allows it.
struct SegmentSummary {
    std::vector<std::string> fragment_ids;
    std::vector<std::string> log;
};

struct FillSummary {
    std::vector<std::string> filled;     // includes copy-through fragments
    std::vector<std::string> failed;
    std::vector<std::string> log;
};

struct FeatureSummary {
    long long records_written = 0;
    std::vector<std::string> featurized;
    std::vector<std::string> skipped; // sample area smaller than the patch
    std::vector<std::string> log;
};

struct EvaluateSummary {
    std::vector<EvaluationReport> reports;
    std::vector<std::filesystem::path> report_files;
};

struct SynthSummary {
    std::filesystem::path manifest_path;
    std::vector<std::string> ids;
};

// Stage entry points. Each writes its outputs plus a RunConfig snapshot under
// a stage directory inside cfg.out_dir, so later stages and re-runs are
// self-describing.
SegmentSummary run_segment(const Manifest& manifest, const RunConfig& cfg);
FillSummary run_fill(const RunConfig& cfg);
FeatureSummary run_features(const RunConfig& cfg);
EvaluateSummary run_evaluate(const RunConfig& cfg);

// Materialize a synthetic corpus: one PNG + mask pair per entry plus a
// manifest (manifest.json) referencing them.
SynthSummary run_synth(const std::filesystem::path& corpus_spec, const RunConfig& cfg);

// Stage directory layout helpers.
std::filesystem::path fragments_dir(const RunConfig& cfg);
std::filesystem::path filled_dir(const RunConfig& cfg);
std::filesystem::path features_file(const RunConfig& cfg);
std::filesystem::path reports_dir(const RunConfig& cfg);

} // namespace scrollmat
