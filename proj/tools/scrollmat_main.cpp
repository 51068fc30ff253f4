#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "scrollmat/errors.hpp"
#include "scrollmat/pipeline.hpp"
#include "scrollmat/types.hpp"

namespace {

void emit_error(const std::string& kind, const std::string& message) {
    nlohmann::ordered_json doc;
    doc["error"] = {{"kind", kind}, {"message", message}};
    std::cerr << doc.dump() << "\n";
}

int run(int argc, char** argv) {
    CLI::App app{"scrollmat: writing-surface classification for manuscript fragment images"};
    app.require_subcommand(1);

    std::string manifest_path;
    std::string out_dir;
    std::vector<std::string> fv_names;
    std::vector<std::string> set_names;
    scrollmat::RunConfig cfg;

    auto add_common = [&](CLI::App* sub, const char* manifest_help) {
        if (manifest_help) {
            sub->add_option("--manifest", manifest_path, manifest_help)->required();
        }
        sub->add_option("--out", out_dir, "Pipeline output directory")->required();
        sub->add_option("--grid-n", cfg.grid_n, "Grid cells per spectrum axis");
        sub->add_option("--samples", cfg.samples_per_side, "Sample positions per fragment axis");
        sub->add_option("--patch", cfg.patch, "Sample patch side in pixels");
        sub->add_option("--rings", cfg.rings, "Concentric ring count");
        sub->add_option("--bins", cfg.bins, "Weighted phase bin count");
        sub->add_option("--inpaint-patch", cfg.inpaint_patch, "Exemplar window side in pixels");
        sub->add_option("--kmeans-k", cfg.kmeans_k, "Cluster count for plate segmentation");
        sub->add_option("--seed", cfg.seed, "Seed for all randomized steps");
        sub->add_option("--fv", fv_names,
                        "Feature kinds (grid_mean, grid_sd, ring_mean, ring_sd, weighted_bin); "
                        "default all")
            ->delimiter(',');
        sub->add_option("--set", set_names, "Image sets (color, multispectral); default all")
            ->delimiter(',');
        sub->add_option("--workers", cfg.workers, "Worker thread count");
    };

    CLI::App* segment =
        app.add_subcommand("segment", "Cut fragments out of the manifest's plate images");
    add_common(segment, "Manifest file (.csv or .json)");
    CLI::App* fill =
        app.add_subcommand("fill", "Inpaint text and damage gaps in segmented fragments");
    add_common(fill, nullptr);
    CLI::App* features =
        app.add_subcommand("features", "Sample patches and compute spectral descriptors");
    add_common(features, nullptr);
    CLI::App* evaluate =
        app.add_subcommand("evaluate", "Leave-one-fragment-out evaluation and reports");
    add_common(evaluate, nullptr);
    CLI::App* synth =
        app.add_subcommand("synth", "Materialize a synthetic corpus from a spec file");
    add_common(synth, "Corpus spec file (.json)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        emit_error("cli", e.what());
        return e.get_exit_code();
    }

    cfg.out_dir = out_dir;
    for (const std::string& name : fv_names) {
        cfg.fv_kinds.push_back(scrollmat::parse_feature_kind(name));
    }
    for (const std::string& name : set_names) {
        cfg.sets.push_back(scrollmat::parse_image_set(name));
    }

    if (segment->parsed()) {
        const scrollmat::Manifest manifest = scrollmat::load_manifest(manifest_path);
        const scrollmat::SegmentSummary summary = scrollmat::run_segment(manifest, cfg);
        for (const std::string& line : summary.log) std::cout << line << "\n";
        std::cout << "segmented " << summary.fragment_ids.size() << " fragment(s) into "
                  << scrollmat::fragments_dir(cfg).string() << "\n";
    } else if (fill->parsed()) {
        const scrollmat::FillSummary summary = scrollmat::run_fill(cfg);
        for (const std::string& line : summary.log) std::cout << line << "\n";
        std::cout << "filled " << summary.filled.size() << " fragment(s), "
                  << summary.failed.size() << " failed\n";
    } else if (features->parsed()) {
        const scrollmat::FeatureSummary summary = scrollmat::run_features(cfg);
        for (const std::string& line : summary.log) std::cout << line << "\n";
        std::cout << "wrote " << summary.records_written << " feature record(s) to "
                  << scrollmat::features_file(cfg).string() << "\n";
    } else if (evaluate->parsed()) {
        const scrollmat::EvaluateSummary summary = scrollmat::run_evaluate(cfg);
        for (const scrollmat::EvaluationReport& report : summary.reports) {
            std::cout << scrollmat::render_report_text(report) << "\n";
        }
        std::cout << "wrote " << summary.report_files.size() << " report file(s) under "
                  << scrollmat::reports_dir(cfg).string() << "\n";
    } else if (synth->parsed()) {
        const scrollmat::SynthSummary summary = scrollmat::run_synth(manifest_path, cfg);
        std::cout << "materialized " << summary.ids.size() << " image(s) under "
                  << cfg.out_dir.string() << "; manifest at "
                  << summary.manifest_path.string() << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const scrollmat::Error& e) {
        emit_error(e.kind(), e.what());
        return 1;
    } catch (const std::exception& e) {
        emit_error("internal", e.what());
        return 2;
    }
}
