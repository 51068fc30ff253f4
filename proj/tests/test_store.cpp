#include <doctest.h>

#include <fstream>

#include "helpers.hpp"
#include "scrollmat/errors.hpp"
#include "scrollmat/store.hpp"

using namespace scrollmat;

namespace {

FeatureVector entry(std::string fragment, int sample, FeatureKind kind, ImageSet set,
                    Material label, std::vector<double> values) {
    FeatureVector fv;
    fv.fragment_id = std::move(fragment);
    fv.sample_index = sample;
    fv.kind = kind;
    fv.set = set;
    fv.label = label;
    fv.values = std::move(values);
    return fv;
}

} // namespace

TEST_CASE("feature values round-trip bit-exactly") {
    TempDir tmp("store");
    const auto path = tmp.path / "features.jsonl";
    const std::vector<double> gnarly = {0.1,
                                        1.0 / 3.0,
                                        1e-17,
                                        -2.2250738585072014e-308,
                                        123456789.123456789,
                                        0.0,
                                        -0.0,
                                        6.02214076e23};
    std::vector<FeatureVector> vectors;
    vectors.push_back(entry("f1", 0, FeatureKind::grid_mean, ImageSet::color,
                            Material::parchment, gnarly));
    write_feature_store(path, vectors);

    const std::vector<FeatureVector> back = read_feature_store(path);
    REQUIRE(back.size() == 1);
    REQUIRE(back[0].values.size() == gnarly.size());
    for (std::size_t i = 0; i < gnarly.size(); ++i) {
        REQUIRE(back[0].values[i] == gnarly[i]);
    }
    CHECK(back[0].fragment_id == "f1");
    CHECK(back[0].sample_index == 0);
    CHECK(back[0].kind == FeatureKind::grid_mean);
    CHECK(back[0].set == ImageSet::color);
    CHECK(back[0].label == Material::parchment);
}

TEST_CASE("records are stored in a canonical order") {
    TempDir tmp("store");
    const auto path = tmp.path / "features.jsonl";
    std::vector<FeatureVector> vectors;
    vectors.push_back(entry("zz", 1, FeatureKind::ring_sd, ImageSet::multispectral,
                            Material::papyrus, {1.0}));
    vectors.push_back(entry("aa", 3, FeatureKind::weighted_bin, ImageSet::color,
                            Material::parchment, {2.0}));
    vectors.push_back(entry("aa", 3, FeatureKind::grid_mean, ImageSet::color,
                            Material::parchment, {3.0}));
    vectors.push_back(entry("aa", 1, FeatureKind::grid_mean, ImageSet::color,
                            Material::parchment, {4.0}));
    vectors.push_back(entry("mm", 0, FeatureKind::grid_sd, ImageSet::color,
                            Material::papyrus, {5.0}));
    write_feature_store(path, vectors);

    const std::vector<FeatureVector> back = read_feature_store(path);
    REQUIRE(back.size() == 5);
    // (set, fragment, sample, kind), ascending.
    CHECK(back[0].fragment_id == "aa");
    CHECK(back[0].sample_index == 1);
    CHECK(back[1].fragment_id == "aa");
    CHECK(back[1].kind == FeatureKind::grid_mean);
    CHECK(back[2].kind == FeatureKind::weighted_bin);
    CHECK(back[3].fragment_id == "mm");
    CHECK(back[4].set == ImageSet::multispectral);

    // Same content in a different input order writes identical bytes.
    const auto path2 = tmp.path / "features2.jsonl";
    std::reverse(vectors.begin(), vectors.end());
    write_feature_store(path2, vectors);
    std::ifstream a(path, std::ios::binary), b(path2, std::ios::binary);
    const std::string bytes_a((std::istreambuf_iterator<char>(a)), {});
    const std::string bytes_b((std::istreambuf_iterator<char>(b)), {});
    CHECK(bytes_a == bytes_b);
}

TEST_CASE("an empty store round-trips") {
    TempDir tmp("store");
    const auto path = tmp.path / "empty.jsonl";
    write_feature_store(path, {});
    CHECK(read_feature_store(path).empty());
}

TEST_CASE("store errors carry the file location") {
    TempDir tmp("store");
    CHECK_ERROR_KIND(read_feature_store(tmp.path / "missing.jsonl"), "io");

    const auto path = tmp.path / "mangled.jsonl";
    std::ofstream(path) << R"({"fragment_id":"a","sample_index":0,"kind":"grid_mean",)"
                        << R"("label":"parchment","set":"color","values":[1.0]})"
                        << "\n"
                        << "{oops\n";
    CHECK_ERROR_MSG(read_feature_store(path), "parse", ":2");
}
