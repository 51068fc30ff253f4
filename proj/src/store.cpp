#include "scrollmat/store.hpp"

#include <algorithm>
#include <fstream>
#include <tuple>

#include <json.hpp>

#include "scrollmat/errors.hpp"

namespace scrollmat {

void write_feature_store(const std::filesystem::path& path,
                         const std::vector<FeatureVector>& vectors) {
    std::vector<const FeatureVector*> ordered;
    ordered.reserve(vectors.size());
    for (const FeatureVector& v : vectors) ordered.push_back(&v);
    std::sort(ordered.begin(), ordered.end(), [](const FeatureVector* a, const FeatureVector* b) {
        return std::tie(a->set, a->fragment_id, a->sample_index, a->kind) <
               std::tie(b->set, b->fragment_id, b->sample_index, b->kind);
    });

    std::ofstream out(path, std::ios::binary);
    if (!out) fail("io", "cannot write feature store: " + path.string());
    for (const FeatureVector* v : ordered) {
        nlohmann::ordered_json record;
        record["fragment_id"] = v->fragment_id;
        record["sample_index"] = v->sample_index;
        record["kind"] = to_string(v->kind);
        record["label"] = to_string(v->label);
        record["set"] = to_string(v->set);
        record["values"] = v->values;
        out << record.dump() << "\n";
    }
    if (!out) fail("io", "failed writing feature store: " + path.string());
}

std::vector<FeatureVector> read_feature_store(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("io", "cannot open feature store: " + path.string());

    std::vector<FeatureVector> vectors;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json record;
        try {
            record = nlohmann::json::parse(line);
            FeatureVector v;
            v.fragment_id = record.at("fragment_id").get<std::string>();
            v.sample_index = record.at("sample_index").get<int>();
            v.kind = parse_feature_kind(record.at("kind").get<std::string>());
            v.label = parse_material(record.at("label").get<std::string>());
            v.set = parse_image_set(record.at("set").get<std::string>());
            v.values = record.at("values").get<std::vector<double>>();
            vectors.push_back(std::move(v));
        } catch (const nlohmann::json::exception& e) {
            fail("parse", path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return vectors;
}

} // namespace scrollmat
