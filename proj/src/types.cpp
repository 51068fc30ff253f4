#include "scrollmat/types.hpp"

#include "scrollmat/errors.hpp"

namespace scrollmat {

std::string to_string(Material m) {
    return m == Material::parchment ? "parchment" : "papyrus";
}

std::string to_string(ImageSet s) {
    return s == ImageSet::color ? "color" : "multispectral";
}

std::string to_string(FeatureKind k) {
    switch (k) {
        case FeatureKind::grid_mean: return "grid_mean";
        case FeatureKind::grid_sd: return "grid_sd";
        case FeatureKind::ring_mean: return "ring_mean";
        case FeatureKind::ring_sd: return "ring_sd";
        case FeatureKind::weighted_bin: return "weighted_bin";
    }
    return "grid_mean";
}

Material parse_material(std::string_view text) {
    if (text == "parchment") return Material::parchment;
    if (text == "papyrus") return Material::papyrus;
    fail("parse", "unknown material '" + std::string(text) + "'");
}

ImageSet parse_image_set(std::string_view text) {
    if (text == "color") return ImageSet::color;
    if (text == "multispectral") return ImageSet::multispectral;
    fail("parse", "unknown image set '" + std::string(text) + "'");
}

FeatureKind parse_feature_kind(std::string_view text) {
    for (FeatureKind k : all_feature_kinds) {
        if (to_string(k) == text) return k;
    }
    fail("parse", "unknown feature kind '" + std::string(text) + "'");
}

} // namespace scrollmat
