#include "scrollmat/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <exception>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <thread>
#include <utility>

#include <json.hpp>

#include "scrollmat/errors.hpp"
#include "scrollmat/image_io.hpp"
#include "scrollmat/inpaint.hpp"
#include "scrollmat/segmentation.hpp"
#include "scrollmat/spectral.hpp"
#include "scrollmat/store.hpp"
#include "scrollmat/synth.hpp"

namespace scrollmat {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

void ensure_dir(const fs::path& p) {
    std::error_code ec;
    fs::create_directories(p, ec);
    if (ec) fail("io", "cannot create directory " + p.string() + ": " + ec.message());
}

void write_text_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) fail("io", "cannot write " + p.string());
    out << text;
    if (!out) fail("io", "failed writing " + p.string());
}

void write_config_snapshot(const RunConfig& cfg, const fs::path& dir) {
    write_text_file(dir / "run_config.json", cfg.to_json());
}

bool set_selected(const RunConfig& cfg, ImageSet s) {
    return cfg.sets.empty() || std::find(cfg.sets.begin(), cfg.sets.end(), s) != cfg.sets.end();
}

std::vector<FeatureKind> selected_kinds(const RunConfig& cfg) {
    if (!cfg.fv_kinds.empty()) return cfg.fv_kinds;
    return {all_feature_kinds.begin(), all_feature_kinds.end()};
}

Rect mask_bbox(const BinaryMask& m) {
    int x0 = m.width(), y0 = m.height(), x1 = -1, y1 = -1;
    for (int y = 0; y < m.height(); ++y) {
        for (int x = 0; x < m.width(); ++x) {
            if (!m.at(x, y)) continue;
            x0 = std::min(x0, x);
            y0 = std::min(y0, y);
            x1 = std::max(x1, x);
            y1 = std::max(y1, y);
        }
    }
    if (x1 < 0) fail("empty_mask", "fragment mask has no set pixels");
    return {x0, y0, x1 - x0 + 1, y1 - y0 + 1};
}

void validate_manifest(const Manifest& manifest) {
    std::set<std::pair<int, std::string>> seen;
    for (const ManifestRecord& rec : manifest.records) {
        if (rec.plate_id.empty()) fail("parse", "manifest record without plate_id");
        if (!seen.emplace(static_cast<int>(rec.set), rec.plate_id).second) {
            fail("invalid_argument", "duplicate plate_id " + rec.plate_id + " in set " +
                                         to_string(rec.set));
        }
    }
}

// Per-fragment sidecar carried from stage to stage.
struct FragmentMeta {
    std::string fragment_id;
    std::string plate_id;
    ImageSet set = ImageSet::color;
    std::optional<Material> material;
    std::string segmentation; // "manifest" or "kmeans"
    Rect bbox;
    bool has_text_mask = false;
};

ordered_json meta_to_json(const FragmentMeta& meta) {
    ordered_json doc;
    doc["fragment_id"] = meta.fragment_id;
    doc["plate_id"] = meta.plate_id;
    doc["set"] = to_string(meta.set);
    if (meta.material) {
        doc["material"] = to_string(*meta.material);
    } else {
        doc["material"] = nullptr;
    }
    doc["segmentation"] = meta.segmentation;
    doc["bbox"] = {{"x", meta.bbox.x}, {"y", meta.bbox.y}, {"w", meta.bbox.w}, {"h", meta.bbox.h}};
    doc["has_text_mask"] = meta.has_text_mask;
    return doc;
}

FragmentMeta read_meta(const fs::path& fragment_dir) {
    const fs::path p = fragment_dir / "meta.json";
    std::ifstream in(p);
    if (!in) fail("io", "cannot open " + p.string());
    json doc;
    try {
        in >> doc;
        FragmentMeta meta;
        meta.fragment_id = doc.at("fragment_id").get<std::string>();
        meta.plate_id = doc.at("plate_id").get<std::string>();
        meta.set = parse_image_set(doc.at("set").get<std::string>());
        if (doc.contains("material") && !doc["material"].is_null()) {
            meta.material = parse_material(doc["material"].get<std::string>());
        }
        meta.segmentation = doc.value("segmentation", std::string("manifest"));
        if (doc.contains("bbox")) {
            const json& b = doc["bbox"];
            meta.bbox = {b.at("x").get<int>(), b.at("y").get<int>(), b.at("w").get<int>(),
                         b.at("h").get<int>()};
        }
        meta.has_text_mask = doc.value("has_text_mask", false);
        return meta;
    } catch (const json::exception& e) {
        fail("parse", p.string() + ": " + e.what());
    }
}

std::vector<fs::path> list_fragment_dirs(const fs::path& stage_dir) {
    std::vector<fs::path> dirs;
    if (!fs::exists(stage_dir)) return dirs;
    for (const auto& entry : fs::directory_iterator(stage_dir)) {
        if (entry.is_directory() && fs::exists(entry.path() / "meta.json")) {
            dirs.push_back(entry.path());
        }
    }
    std::sort(dirs.begin(), dirs.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
    return dirs;
}

std::optional<fs::path> resolve_optional(const std::string& field, const fs::path& base) {
    if (field.empty()) return std::nullopt;
    fs::path p(field);
    return p.is_absolute() ? p : base / p;
}

Manifest manifest_from_json(const fs::path& path) {
    std::ifstream in(path);
    if (!in) fail("io", "cannot open manifest: " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        fail("parse", "manifest " + path.string() + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("records") || !doc["records"].is_array()) {
        fail("parse", "manifest must be an object with a \"records\" array");
    }
    const fs::path base = path.parent_path();
    Manifest manifest;
    for (const json& item : doc["records"]) {
        ManifestRecord rec;
        try {
            rec.image_path = *resolve_optional(item.at("image_path").get<std::string>(), base);
            rec.set = parse_image_set(item.at("set").get<std::string>());
            rec.plate_id = item.at("plate_id").get<std::string>();
            if (item.contains("material") && !item["material"].is_null()) {
                const auto text = item["material"].get<std::string>();
                if (!text.empty()) rec.material = parse_material(text);
            }
            if (item.contains("fragment_mask_path") && !item["fragment_mask_path"].is_null()) {
                rec.fragment_mask_path =
                    resolve_optional(item["fragment_mask_path"].get<std::string>(), base);
            }
            if (item.contains("text_mask_path") && !item["text_mask_path"].is_null()) {
                rec.text_mask_path =
                    resolve_optional(item["text_mask_path"].get<std::string>(), base);
            }
        } catch (const json::exception& e) {
            fail("parse", "manifest record: " + std::string(e.what()));
        }
        manifest.records.push_back(std::move(rec));
    }
    return manifest;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

// Plain comma-separated values, no quoting; the named header row fixes the
// column order.
Manifest manifest_from_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) fail("io", "cannot open manifest: " + path.string());
    std::string line;
    if (!std::getline(in, line)) fail("parse", "manifest " + path.string() + " is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    std::map<std::string, std::size_t> columns;
    const std::vector<std::string> header = split_csv_line(line);
    for (std::size_t i = 0; i < header.size(); ++i) columns[header[i]] = i;
    for (const char* required : {"image_path", "set", "plate_id"}) {
        if (!columns.count(required)) {
            fail("parse", "manifest header lacks required column: " + std::string(required));
        }
    }
    auto cell = [&](const std::vector<std::string>& row, const char* name) -> std::string {
        auto it = columns.find(name);
        if (it == columns.end() || it->second >= row.size()) return "";
        return row[it->second];
    };

    const fs::path base = path.parent_path();
    Manifest manifest;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> row = split_csv_line(line);
        ManifestRecord rec;
        const std::string image = cell(row, "image_path");
        if (image.empty()) {
            fail("parse", path.string() + ":" + std::to_string(line_no) + ": missing image_path");
        }
        rec.image_path = *resolve_optional(image, base);
        rec.set = parse_image_set(cell(row, "set"));
        rec.plate_id = cell(row, "plate_id");
        const std::string material = cell(row, "material");
        if (!material.empty()) rec.material = parse_material(material);
        rec.fragment_mask_path = resolve_optional(cell(row, "fragment_mask_path"), base);
        rec.text_mask_path = resolve_optional(cell(row, "text_mask_path"), base);
        manifest.records.push_back(std::move(rec));
    }
    return manifest;
}

std::string lowercase_extension(const fs::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

} // namespace

Manifest load_manifest(const fs::path& path) {
    const std::string ext = lowercase_extension(path);
    Manifest manifest;
    if (ext == ".json") {
        manifest = manifest_from_json(path);
    } else if (ext == ".csv") {
        manifest = manifest_from_csv(path);
    } else {
        fail("invalid_argument", "manifest must be a .csv or .json file: " + path.string());
    }
    validate_manifest(manifest);
    return manifest;
}

std::string RunConfig::to_json() const {
    ordered_json doc;
    doc["grid_n"] = grid_n;
    doc["samples_per_side"] = samples_per_side;
    doc["patch"] = patch;
    doc["rings"] = rings;
    doc["bins"] = bins;
    doc["inpaint_patch"] = inpaint_patch;
    doc["kmeans_k"] = kmeans_k;
    doc["kmeans_min_area"] = kmeans_min_area;
    doc["seed"] = seed;
    doc["workers"] = workers;
    doc["residual_threshold"] = residual_threshold;
    doc["residual_window"] = residual_window;
    doc["out_dir"] = out_dir.generic_string();
    ordered_json kinds = ordered_json::array();
    for (FeatureKind k : fv_kinds) kinds.push_back(to_string(k));
    doc["fv_kinds"] = kinds;
    ordered_json set_names = ordered_json::array();
    for (ImageSet s : sets) set_names.push_back(to_string(s));
    doc["sets"] = set_names;
    doc["save_intermediate"] = save_intermediate;
    return doc.dump(2) + "\n";
}

fs::path fragments_dir(const RunConfig& cfg) { return cfg.out_dir / "fragments"; }
fs::path filled_dir(const RunConfig& cfg) { return cfg.out_dir / "filled"; }
fs::path features_file(const RunConfig& cfg) { return cfg.out_dir / "features" / "features.jsonl"; }
fs::path reports_dir(const RunConfig& cfg) { return cfg.out_dir / "reports"; }

SegmentSummary run_segment(const Manifest& manifest, const RunConfig& cfg) {
    if (manifest.records.empty()) fail("invalid_argument", "manifest has no records");
    validate_manifest(manifest);

    const fs::path dir = fragments_dir(cfg);
    ensure_dir(dir);
    write_config_snapshot(cfg, dir);

    SegmentSummary summary;
    int row = 0;
    for (const ManifestRecord& rec : manifest.records) {
        ++row;
        if (!set_selected(cfg, rec.set)) continue;
        const std::string context =
            "manifest row " + std::to_string(row) + " (plate " + rec.plate_id + "): ";

        Raster plate = [&] {
            try {
                return load_image(rec.image_path);
            } catch (const Error& e) {
                fail("io", context + e.what());
            }
        }();
        plate.set_source_id(rec.plate_id);

        std::optional<BinaryMask> plate_text;
        std::vector<std::pair<std::string, BinaryMask>> regions;
        try {
            if (rec.text_mask_path) {
                plate_text = load_mask(*rec.text_mask_path, MaskKind::text);
                if (plate_text->width() != plate.width() ||
                    plate_text->height() != plate.height()) {
                    fail("dimension_mismatch", "text mask does not match the plate image");
                }
            }
            if (rec.fragment_mask_path) {
                BinaryMask m = load_mask(*rec.fragment_mask_path, MaskKind::fragment);
                if (m.width() != plate.width() || m.height() != plate.height()) {
                    fail("dimension_mismatch", "fragment mask does not match the plate image");
                }
                regions.emplace_back(rec.plate_id, std::move(m));
                summary.log.push_back("plate " + rec.plate_id +
                                      ": provided fragment mask; k-means skipped");
            } else {
                KmeansParams params;
                params.k = cfg.kmeans_k;
                params.seed = cfg.seed;
                params.min_component_area = cfg.kmeans_min_area;
                std::vector<BinaryMask> components = kmeans_segment(plate, params);
                summary.log.push_back("plate " + rec.plate_id + ": k-means segmentation found " +
                                      std::to_string(components.size()) + " fragment(s)");
                for (std::size_t i = 0; i < components.size(); ++i) {
                    regions.emplace_back(rec.plate_id + "-f" + std::to_string(i),
                                         std::move(components[i]));
                }
            }

            for (auto& [fragment_id, region] : regions) {
                FragmentMeta meta;
                meta.fragment_id = fragment_id;
                meta.plate_id = rec.plate_id;
                meta.set = rec.set;
                meta.material = rec.material;
                meta.segmentation = rec.fragment_mask_path ? "manifest" : "kmeans";
                meta.bbox = mask_bbox(region);

                Raster cut = crop(plate, meta.bbox);
                cut.set_source_id(fragment_id);
                BinaryMask cut_region = crop(region, meta.bbox);

                const fs::path fdir = dir / fragment_id;
                ensure_dir(fdir);
                save_image(cut, fdir / "raster.png");
                save_mask(cut_region, fdir / "region.png");
                if (plate_text) {
                    BinaryMask cut_text = crop(*plate_text, meta.bbox);
                    for (int y = 0; y < cut_text.height(); ++y) {
                        for (int x = 0; x < cut_text.width(); ++x) {
                            if (cut_text.at(x, y) && !cut_region.at(x, y)) {
                                cut_text.set(x, y, false);
                            }
                        }
                    }
                    save_mask(cut_text, fdir / "text.png");
                    meta.has_text_mask = true;
                }
                write_text_file(fdir / "meta.json", meta_to_json(meta).dump(2) + "\n");
                summary.fragment_ids.push_back(fragment_id);
            }
        } catch (const Error& e) {
            if (std::string(e.what()).rfind("manifest row", 0) == 0) throw;
            fail(e.kind(), context + e.what());
        }
    }
    if (summary.fragment_ids.empty()) fail("empty_mask", "zero fragments found across the manifest");
    return summary;
}

FillSummary run_fill(const RunConfig& cfg) {
    const std::vector<fs::path> dirs = list_fragment_dirs(fragments_dir(cfg));
    if (dirs.empty()) {
        fail("io", "no segmented fragments under " + fragments_dir(cfg).string() +
                       "; run the segment stage first");
    }
    const fs::path dst = filled_dir(cfg);
    ensure_dir(dst);
    write_config_snapshot(cfg, dst);

    FillSummary summary;
    for (const fs::path& fdir : dirs) {
        const FragmentMeta meta = read_meta(fdir);
        if (!set_selected(cfg, meta.set)) continue;
        try {
            const Raster raster = load_image(fdir / "raster.png");
            BinaryMask region = load_mask(fdir / "region.png", MaskKind::fragment);
            const BinaryMask holes = interior_holes(region);

            BinaryMask fill = holes;
            if (meta.has_text_mask) {
                const BinaryMask text = load_mask(fdir / "text.png", MaskKind::text);
                const BinaryMask dilated = dilate_mask(text);
                for (int y = 0; y < fill.height(); ++y) {
                    for (int x = 0; x < fill.width(); ++x) {
                        if (dilated.at(x, y) && region.at(x, y)) fill.set(x, y, true);
                    }
                }
            }

            FillStats stats;
            Raster filled = raster;
            const long long fill_pixels = fill.count();
            if (fill_pixels > 0) {
                BinaryMask source(region.width(), region.height(), MaskKind::fragment);
                for (int y = 0; y < region.height(); ++y) {
                    for (int x = 0; x < region.width(); ++x) {
                        if (region.at(x, y) && !fill.at(x, y)) source.set(x, y, true);
                    }
                }
                FillJob job{raster, fill, source, cfg.inpaint_patch, cfg.workers};
                filled = fill_regions(job, &stats);
            }
            const ResidualReport residual =
                residual_check(filled, fill, cfg.residual_threshold, cfg.residual_window);

            BinaryMask sampling = union_masks(region, holes);
            sampling.set_kind(MaskKind::fragment);

            const fs::path out = dst / meta.fragment_id;
            ensure_dir(out);
            save_image(filled, out / "filled.png");
            save_mask(sampling, out / "region_filled.png");

            ordered_json rj;
            rj["fill_pixels"] = residual.fill_pixels;
            rj["deviating_pixels"] = residual.deviating_pixels;
            rj["fraction"] = residual.fraction;
            rj["threshold"] = residual.threshold;
            rj["window"] = residual.window;
            write_text_file(out / "residual.json", rj.dump(2) + "\n");

            ordered_json mj = meta_to_json(meta);
            mj["fill"] = {{"copy_through", fill_pixels == 0},
                          {"fill_pixels", fill_pixels},
                          {"iterations", stats.iterations}};
            write_text_file(out / "meta.json", mj.dump(2) + "\n");

            summary.filled.push_back(meta.fragment_id);
            if (fill_pixels == 0) {
                summary.log.push_back("fragment " + meta.fragment_id +
                                      ": nothing to fill; copied through");
            } else {
                summary.log.push_back("fragment " + meta.fragment_id + ": filled " +
                                      std::to_string(fill_pixels) + " pixels in " +
                                      std::to_string(stats.iterations) + " iterations");
            }
        } catch (const Error& e) {
            summary.failed.push_back(meta.fragment_id);
            summary.log.push_back("fragment " + meta.fragment_id + ": " + e.what());
        }
    }
    return summary;
}

FeatureSummary run_features(const RunConfig& cfg) {
    const std::vector<fs::path> all_dirs = list_fragment_dirs(filled_dir(cfg));
    if (all_dirs.empty()) {
        fail("io", "no filled fragments under " + filled_dir(cfg).string() +
                       "; run the fill stage first");
    }
    const fs::path out_dir = features_file(cfg).parent_path();
    ensure_dir(out_dir);
    write_config_snapshot(cfg, out_dir);

    struct Item {
        FragmentMeta meta;
        fs::path dir;
        std::vector<FeatureVector> vectors;
        std::string skip_reason;
        std::exception_ptr error;
    };
    std::vector<Item> items;
    FeatureSummary summary;
    for (const fs::path& fdir : all_dirs) {
        FragmentMeta meta = read_meta(fdir);
        if (!set_selected(cfg, meta.set)) continue;
        if (!meta.material) {
            summary.skipped.push_back(meta.fragment_id);
            summary.log.push_back("fragment " + meta.fragment_id +
                                  ": no material label; skipped");
            continue;
        }
        items.push_back({std::move(meta), fdir, {}, {}, nullptr});
    }

    const std::vector<FeatureKind> kinds = selected_kinds(cfg);
    const SpectralConfig scfg{cfg.grid_n, cfg.rings, cfg.bins, cfg.patch};
    auto process = [&](Item& item) {
        try {
            const Raster filled = load_image(item.dir / "filled.png");
            BinaryMask region = load_mask(item.dir / "region_filled.png", MaskKind::fragment);
            const Rect area = largest_inscribed_rectangle(region);
            const std::vector<Point> positions =
                sample_positions(area, cfg.samples_per_side, cfg.patch);
            FragmentRecord rec{item.meta.fragment_id, filled, std::move(region),
                               *item.meta.material, item.meta.set};
            const std::vector<SamplePatch> patches = extract_patches(rec, positions, cfg.patch);
            for (const SamplePatch& patch : patches) {
                std::array<FeatureVector, 5> five = featurize_patch(patch, scfg);
                for (FeatureVector& fv : five) {
                    if (std::find(kinds.begin(), kinds.end(), fv.kind) != kinds.end()) {
                        item.vectors.push_back(std::move(fv));
                    }
                }
            }
        } catch (const Error& e) {
            if (std::string(e.kind()) == "fragment_too_small") {
                item.skip_reason = e.what();
            } else {
                item.error = std::current_exception();
            }
        } catch (...) {
            item.error = std::current_exception();
        }
    };

    const int workers = std::max(1, cfg.workers);
    if (workers <= 1 || items.size() <= 1) {
        for (Item& item : items) process(item);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        const int n = std::min<int>(workers, static_cast<int>(items.size()));
        for (int t = 0; t < n; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < items.size();
                     i = next.fetch_add(1)) {
                    process(items[i]);
                }
            });
        }
        for (std::thread& th : pool) th.join();
    }

    std::vector<FeatureVector> all;
    for (Item& item : items) {
        if (item.error) std::rethrow_exception(item.error);
        if (!item.skip_reason.empty()) {
            summary.skipped.push_back(item.meta.fragment_id);
            summary.log.push_back("fragment " + item.meta.fragment_id + ": " +
                                  item.skip_reason + "; skipped");
            continue;
        }
        summary.featurized.push_back(item.meta.fragment_id);
        std::move(item.vectors.begin(), item.vectors.end(), std::back_inserter(all));
        item.vectors.clear();
    }
    if (all.empty()) fail("empty_mask", "no fragment produced features");
    write_feature_store(features_file(cfg), all);
    summary.records_written = static_cast<long long>(all.size());
    return summary;
}

EvaluateSummary run_evaluate(const RunConfig& cfg) {
    const std::vector<FeatureVector> vectors = read_feature_store(features_file(cfg));
    if (vectors.empty()) {
        fail("io", "feature store " + features_file(cfg).string() + " is empty");
    }

    std::vector<ImageSet> sets = cfg.sets;
    if (sets.empty()) {
        for (ImageSet s : all_image_sets) {
            if (std::any_of(vectors.begin(), vectors.end(),
                            [&](const FeatureVector& v) { return v.set == s; })) {
                sets.push_back(s);
            }
        }
    }
    const std::vector<FeatureKind> kinds = selected_kinds(cfg);

    std::vector<std::string> missing;
    for (ImageSet s : sets) {
        for (FeatureKind k : kinds) {
            const bool present = std::any_of(vectors.begin(), vectors.end(),
                                             [&](const FeatureVector& v) {
                                                 return v.set == s && v.kind == k;
                                             });
            if (!present) missing.push_back(to_string(s) + "/" + to_string(k));
        }
    }
    if (!missing.empty()) {
        std::string joined;
        for (const std::string& m : missing) {
            if (!joined.empty()) joined += ", ";
            joined += m;
        }
        fail("invalid_argument", "feature store has no records for: " + joined);
    }

    const fs::path rdir = reports_dir(cfg);
    ensure_dir(rdir);
    write_config_snapshot(cfg, rdir);

    const int per_fragment = cfg.samples_per_side * cfg.samples_per_side;
    EvaluateSummary summary;
    for (ImageSet s : sets) {
        for (FeatureKind k : kinds) {
            std::vector<FeatureVector> subset;
            for (const FeatureVector& v : vectors) {
                if (v.set == s && v.kind == k) subset.push_back(v);
            }
            const Dictionary dict = build_dictionary(std::move(subset), per_fragment);
            EvaluationReport report = loo_evaluate(dict);
            report.kind = k;
            report.set = s;

            const std::string stem = "report_" + to_string(s) + "_" + to_string(k);
            const fs::path text_path = rdir / (stem + ".txt");
            const fs::path json_path = rdir / (stem + ".json");
            write_text_file(text_path, render_report_text(report));
            write_text_file(json_path, render_report_json(report));
            summary.report_files.push_back(text_path);
            summary.report_files.push_back(json_path);
            summary.reports.push_back(std::move(report));
        }
    }
    return summary;
}

SynthSummary run_synth(const fs::path& corpus_spec, const RunConfig& cfg) {
    const std::vector<CorpusEntry> entries = load_corpus_spec(corpus_spec);
    {
        std::set<std::string> ids;
        for (const CorpusEntry& e : entries) {
            if (!ids.insert(e.id).second) {
                fail("invalid_argument", "duplicate corpus id: " + e.id);
            }
        }
    }

    ensure_dir(cfg.out_dir / "images");
    ensure_dir(cfg.out_dir / "masks");
    ensure_dir(cfg.out_dir / "truth");
    write_config_snapshot(cfg, cfg.out_dir);

    SynthSummary summary;
    ordered_json records = ordered_json::array();
    for (const CorpusEntry& entry : entries) {
        const SynthResult result = generate(entry.spec);
        const std::string image_rel = "images/" + entry.id + ".png";
        const std::string fragment_rel = "masks/" + entry.id + "_fragment.png";
        const std::string text_rel = "masks/" + entry.id + "_text.png";
        save_image(result.image, cfg.out_dir / image_rel);
        save_mask(result.fragment_mask, cfg.out_dir / fragment_rel);
        save_mask(result.text_mask, cfg.out_dir / text_rel);
        save_image(result.ground_truth, cfg.out_dir / "truth" / (entry.id + ".png"));

        ordered_json rec;
        rec["image_path"] = image_rel;
        rec["set"] = to_string(entry.set);
        rec["plate_id"] = entry.id;
        rec["material"] = to_string(material_of(entry.spec.kind));
        rec["fragment_mask_path"] = fragment_rel;
        rec["text_mask_path"] = text_rel;
        records.push_back(std::move(rec));
        summary.ids.push_back(entry.id);
    }

    ordered_json manifest;
    manifest["records"] = std::move(records);
    summary.manifest_path = cfg.out_dir / "manifest.json";
    write_text_file(summary.manifest_path, manifest.dump(2) + "\n");
    return summary;
}

} // namespace scrollmat
