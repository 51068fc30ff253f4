#include "scrollmat/classify.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "scrollmat/errors.hpp"

namespace scrollmat {

Dictionary::Dictionary(FeatureKind kind, std::vector<FeatureVector> entries,
                       std::map<std::string, std::vector<std::size_t>> by_fragment,
                       int per_fragment)
    : kind_(kind), entries_(std::move(entries)), by_fragment_(std::move(by_fragment)),
      per_fragment_(per_fragment) {}

Dictionary build_dictionary(std::vector<FeatureVector> vectors, int per_fragment) {
    if (vectors.empty()) fail("invalid_argument", "cannot build an empty dictionary");
    const FeatureKind kind = vectors.front().kind;
    const std::size_t dim = vectors.front().values.size();
    std::map<std::string, std::vector<std::size_t>> by_fragment;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i].kind != kind) {
            fail("invalid_argument", "dictionary vectors must share one feature kind");
        }
        if (vectors[i].values.size() != dim) {
            fail("invalid_argument", "dictionary vectors must share one length");
        }
        by_fragment[vectors[i].fragment_id].push_back(i);
    }
    for (const auto& [id, indices] : by_fragment) {
        if (static_cast<int>(indices.size()) != per_fragment) {
            fail("invalid_argument", "fragment " + id + " contributes " +
                                         std::to_string(indices.size()) + " vectors, expected " +
                                         std::to_string(per_fragment));
        }
    }
    return Dictionary(kind, std::move(vectors), std::move(by_fragment), per_fragment);
}

NearestMatch nearest_label(const FeatureVector& query, const Dictionary& dict,
                           std::string_view excluded_fragment) {
    if (query.kind != dict.kind()) {
        fail("invalid_argument", "query kind does not match dictionary kind");
    }
    const auto& entries = dict.entries();
    bool found = false;
    NearestMatch best;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const FeatureVector& e = entries[i];
        if (e.fragment_id == excluded_fragment) continue;
        if (e.values.size() != query.values.size()) {
            fail("invalid_argument", "query length does not match dictionary entries");
        }
        double d2 = 0.0;
        for (std::size_t j = 0; j < e.values.size(); ++j) {
            const double d = e.values[j] - query.values[j];
            d2 += d * d;
        }
        const bool better =
            !found || d2 < best_d2 ||
            (d2 == best_d2 && (e.fragment_id < best.fragment_id ||
                               (e.fragment_id == best.fragment_id &&
                                e.sample_index < best.sample_index)));
        if (better) {
            found = true;
            best_d2 = d2;
            best = {i, e.fragment_id, e.sample_index, e.label, std::sqrt(d2)};
        }
    }
    if (!found) fail("invalid_argument", "no candidate entries outside the excluded fragment");
    return best;
}

FragmentResult classify_fragment(const Dictionary& dict, const std::string& fragment_id) {
    const auto it = dict.by_fragment().find(fragment_id);
    if (it == dict.by_fragment().end()) {
        fail("invalid_argument", "fragment " + fragment_id + " is not in the dictionary");
    }
    FragmentResult result;
    result.fragment_id = fragment_id;
    result.true_label = dict.entries()[it->second.front()].label;
    for (const std::size_t idx : it->second) {
        const FeatureVector& query = dict.entries()[idx];
        const NearestMatch m = nearest_label(query, dict, fragment_id);
        result.per_sample_matches.push_back(
            {query.sample_index, m.fragment_id, m.label});
        if (m.label == Material::parchment) {
            ++result.votes_parchment;
        } else {
            ++result.votes_papyrus;
        }
    }
    const int total = result.votes_parchment + result.votes_papyrus;
    if (result.votes_parchment == result.votes_papyrus) {
        fail("invalid_argument", "vote tie: the per-fragment sample count must be odd");
    }
    result.predicted_label = result.votes_parchment > result.votes_papyrus
                                 ? Material::parchment
                                 : Material::papyrus;
    result.belief_percent =
        100.0 * std::max(result.votes_parchment, result.votes_papyrus) / total;
    return result;
}

double f1_score(double precision, double recall) {
    if (precision == 0.0 && recall == 0.0) return 0.0;
    return 2.0 * precision * recall / (precision + recall);
}

namespace {

constexpr int class_index(Material m) { return m == Material::parchment ? 0 : 1; }

std::array<ClassMetrics, 2> metrics_from_counts(
    const std::array<std::array<long long, 2>, 2>& counts) {
    std::array<ClassMetrics, 2> out{};
    for (int c = 0; c < 2; ++c) {
        const long long tp = counts[c][c];
        const long long fp = counts[1 - c][c];
        const long long fn = counts[c][1 - c];
        ClassMetrics& m = out[c];
        if (tp + fp > 0) {
            m.precision = static_cast<double>(tp) / (tp + fp);
        } else {
            m.degenerate = true;
        }
        if (tp + fn > 0) {
            m.recall = static_cast<double>(tp) / (tp + fn);
        } else {
            m.degenerate = true;
        }
        if (m.precision == 0.0 && m.recall == 0.0) m.degenerate = true;
        m.f1 = f1_score(m.precision, m.recall);
    }
    return out;
}

std::array<std::array<double, 2>, 2> row_percentages(
    const std::array<std::array<long long, 2>, 2>& counts) {
    std::array<std::array<double, 2>, 2> out{};
    for (int t = 0; t < 2; ++t) {
        const long long row = counts[t][0] + counts[t][1];
        for (int p = 0; p < 2; ++p) {
            out[t][p] = row > 0 ? 100.0 * counts[t][p] / row : 0.0;
        }
    }
    return out;
}

} // namespace

EvaluationReport loo_evaluate(const Dictionary& dict) {
    if (dict.by_fragment().size() < 2) {
        fail("degenerate_evaluation", "leave-one-out needs at least two fragments");
    }
    bool has[2] = {false, false};
    for (const auto& [id, indices] : dict.by_fragment()) {
        has[class_index(dict.entries()[indices.front()].label)] = true;
    }
    if (!has[0] || !has[1]) {
        fail("degenerate_evaluation", "both materials must be present in the dictionary");
    }

    EvaluationReport report;
    report.kind = dict.kind();
    report.set = dict.entries().front().set;
    for (const auto& [id, indices] : dict.by_fragment()) {
        FragmentResult r = classify_fragment(dict, id);
        const int t = class_index(r.true_label);
        ++report.fragment_counts[t][class_index(r.predicted_label)];
        for (const SampleMatch& m : r.per_sample_matches) {
            ++report.sample_counts[t][class_index(m.matched_label)];
        }
        report.fragments.push_back(std::move(r));
    }

    report.fragment_confusion = row_percentages(report.fragment_counts);
    report.sample_confusion = row_percentages(report.sample_counts);
    report.fragment_metrics = metrics_from_counts(report.fragment_counts);
    report.sample_metrics = metrics_from_counts(report.sample_counts);

    const long long correct = report.fragment_counts[0][0] + report.fragment_counts[1][1];
    const long long total = correct + report.fragment_counts[0][1] + report.fragment_counts[1][0];
    report.overall_accuracy_percent = 100.0 * correct / total;
    return report;
}

namespace {

std::string pct(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(1) << v;
    return os.str();
}

std::string score(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(2) << v;
    return os.str();
}

void render_confusion(std::ostringstream& os, const char* level,
                      const std::array<std::array<double, 2>, 2>& confusion) {
    os << "Confusion matrix (%), " << level << " level\n";
    os << "  True class    Parchment   Papyrus\n";
    os << "  Parchment     " << std::setw(9) << pct(confusion[0][0]) << "   " << std::setw(7)
       << pct(confusion[0][1]) << "\n";
    os << "  Papyrus       " << std::setw(9) << pct(confusion[1][0]) << "   " << std::setw(7)
       << pct(confusion[1][1]) << "\n";
}

void render_metrics(std::ostringstream& os, const char* level,
                    const std::array<ClassMetrics, 2>& metrics) {
    os << "Precision, recall and F-score, " << level << " level\n";
    os << "  Material      Precision   Recall   F-score\n";
    const char* names[2] = {"Parchment", "Papyrus  "};
    for (int c = 0; c < 2; ++c) {
        os << "  " << names[c] << "     " << std::setw(9) << score(metrics[c].precision) << "   "
           << std::setw(6) << score(metrics[c].recall) << "   " << std::setw(7)
           << score(metrics[c].f1) << (metrics[c].degenerate ? "   (degenerate)" : "") << "\n";
    }
}

} // namespace

std::string render_report_text(const EvaluationReport& report) {
    std::ostringstream os;
    os << "Feature vector: " << to_string(report.kind) << "\n";
    os << "Image set:      " << to_string(report.set) << "\n";
    os << "Classification success (%): " << pct(report.overall_accuracy_percent) << "\n\n";
    render_confusion(os, "fragment", report.fragment_confusion);
    os << "\n";
    render_confusion(os, "sample", report.sample_confusion);
    os << "\n";
    render_metrics(os, "fragment", report.fragment_metrics);
    os << "\n";
    render_metrics(os, "sample", report.sample_metrics);
    return os.str();
}

std::string render_report_json(const EvaluationReport& report) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["kind"] = to_string(report.kind);
    j["set"] = to_string(report.set);
    j["overall_accuracy_percent"] = report.overall_accuracy_percent;

    auto counts_json = [](const std::array<std::array<long long, 2>, 2>& counts) {
        return ordered_json{{"parchment", {counts[0][0], counts[0][1]}},
                            {"papyrus", {counts[1][0], counts[1][1]}}};
    };
    auto confusion_json = [](const std::array<std::array<double, 2>, 2>& conf) {
        return ordered_json{{"parchment", {conf[0][0], conf[0][1]}},
                            {"papyrus", {conf[1][0], conf[1][1]}}};
    };
    auto metrics_json = [](const std::array<ClassMetrics, 2>& metrics) {
        ordered_json out;
        const char* names[2] = {"parchment", "papyrus"};
        for (int c = 0; c < 2; ++c) {
            out[names[c]] = {{"precision", metrics[c].precision},
                             {"recall", metrics[c].recall},
                             {"f1", metrics[c].f1},
                             {"degenerate", metrics[c].degenerate}};
        }
        return out;
    };

    j["fragment_level"] = {{"counts", counts_json(report.fragment_counts)},
                           {"confusion_percent", confusion_json(report.fragment_confusion)},
                           {"metrics", metrics_json(report.fragment_metrics)}};
    j["sample_level"] = {{"counts", counts_json(report.sample_counts)},
                         {"confusion_percent", confusion_json(report.sample_confusion)},
                         {"metrics", metrics_json(report.sample_metrics)}};

    ordered_json fragments = ordered_json::array();
    for (const FragmentResult& r : report.fragments) {
        ordered_json matches = ordered_json::array();
        for (const SampleMatch& m : r.per_sample_matches) {
            matches.push_back({{"sample_index", m.sample_index},
                               {"matched_fragment_id", m.matched_fragment_id},
                               {"matched_label", to_string(m.matched_label)}});
        }
        fragments.push_back({{"fragment_id", r.fragment_id},
                             {"true_label", to_string(r.true_label)},
                             {"predicted_label", to_string(r.predicted_label)},
                             {"votes_parchment", r.votes_parchment},
                             {"votes_papyrus", r.votes_papyrus},
                             {"belief_percent", r.belief_percent},
                             {"matches", matches}});
    }
    j["fragments"] = fragments;
    return j.dump(2) + "\n";
}

} // namespace scrollmat
