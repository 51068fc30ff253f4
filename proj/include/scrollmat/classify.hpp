#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "scrollmat/spectral.hpp"
#include "scrollmat/types.hpp"

namespace scrollmat {

// Feature vectors of one kind for one image set, indexed by fragment.
class Dictionary {
public:
    Dictionary(FeatureKind kind, std::vector<FeatureVector> entries,
               std::map<std::string, std::vector<std::size_t>> by_fragment,
               int per_fragment);

    FeatureKind kind() const { return kind_; }
    const std::vector<FeatureVector>& entries() const { return entries_; }
    const std::map<std::string, std::vector<std::size_t>>& by_fragment() const {
        return by_fragment_;
    }
    int per_fragment() const { return per_fragment_; }
    std::size_t size() const { return entries_.size(); }

private:
    FeatureKind kind_;
    std::vector<FeatureVector> entries_;
    std::map<std::string, std::vector<std::size_t>> by_fragment_;
    int per_fragment_;
};

// Validates that all vectors share one kind and every fragment contributes
// exactly `per_fragment` of them.
Dictionary build_dictionary(std::vector<FeatureVector> vectors, int per_fragment = 25);

struct NearestMatch {
    std::size_t entry_index = 0;
    std::string fragment_id;
    int sample_index = 0;
    Material label = Material::parchment;
    double distance = 0.0;
};

// Entry with the least Euclidean distance to the query among entries whose
// fragment differs from `excluded_fragment`. Distance ties break toward the
// lexicographically smallest (fragment_id, sample_index).
NearestMatch nearest_label(const FeatureVector& query, const Dictionary& dict,
                           std::string_view excluded_fragment);

struct SampleMatch {
    int sample_index = 0;
    std::string matched_fragment_id;
    Material matched_label = Material::parchment;
};

struct FragmentResult {
    std::string fragment_id;
    Material true_label = Material::parchment;
    Material predicted_label = Material::parchment;
    int votes_parchment = 0;
    int votes_papyrus = 0;
    double belief_percent = 0.0; // majority votes / total votes * 100
    std::vector<SampleMatch> per_sample_matches;
};

// Match each of the fragment's vectors against the dictionary with the
// fragment itself excluded, then vote.
FragmentResult classify_fragment(const Dictionary& dict, const std::string& fragment_id);

struct ClassMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    bool degenerate = false; // a denominator was zero and the value was pinned to 0
};

struct EvaluationReport {
    FeatureKind kind = FeatureKind::grid_mean;
    ImageSet set = ImageSet::color;

    // Rows are the true class, columns the predicted class, both ordered
    // (parchment, papyrus). `*_confusion` rows are percentages summing to 100.
    std::array<std::array<long long, 2>, 2> fragment_counts{};
    std::array<std::array<double, 2>, 2> fragment_confusion{};
    std::array<std::array<long long, 2>, 2> sample_counts{};
    std::array<std::array<double, 2>, 2> sample_confusion{};

    // Indexed (parchment, papyrus).
    std::array<ClassMetrics, 2> fragment_metrics{};
    std::array<ClassMetrics, 2> sample_metrics{};

    double overall_accuracy_percent = 0.0; // correctly classified fragments / total
    std::vector<FragmentResult> fragments;
};

// Leave-one-fragment-out pass over every fragment in the dictionary.
EvaluationReport loo_evaluate(const Dictionary& dict);

// Balanced F1 = 2*p*r / (p + r); defined as 0 when both terms are 0.
double f1_score(double precision, double recall);

// Fixed-width text rendering of a report (confusion matrices plus
// precision/recall/F1 blocks at fragment and sample level).
std::string render_report_text(const EvaluationReport& report);

// Full JSON rendering, including per-sample matches.
std::string render_report_json(const EvaluationReport& report);

} // namespace scrollmat
