#include "kns/eval.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>
#include <set>

namespace kns {

namespace {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

}  // namespace

LabelMap labels_by_id(const Dataset& ds) {
    if (!ds.has_labels()) throw data_error("eval: dataset carries no labels");
    LabelMap out;
    for (std::size_t j = 0; j < ds.n(); ++j)
        out.emplace(ds.point_id(j), ds.label(j));
    return out;
}

PrCurve pr_curve(const std::vector<int>& ranking, const LabelMap& labels) {
    std::size_t total_outliers = 0;
    for (const auto& [id, l] : labels)
        if (l == Label::outlier) ++total_outliers;
    if (total_outliers == 0) throw data_error("pr_curve: no true outliers");
    if (ranking.size() != labels.size())
        throw data_error("pr_curve: ranking does not cover the labeled points");

    PrCurve curve;
    std::size_t found = 0;
    std::set<int> seen;
    for (std::size_t pos = 0; pos < ranking.size(); ++pos) {
        const int id = ranking[pos];
        auto it = labels.find(id);
        if (it == labels.end() || !seen.insert(id).second)
            throw data_error("pr_curve: ranking id " + std::to_string(id) +
                             " not a unique labeled point");
        if (it->second != Label::outlier) continue;
        ++found;
        PrLevel level;
        level.recall = static_cast<double>(found) / total_outliers;
        level.cutoff = static_cast<int>(pos) + 1;
        level.precision = static_cast<double>(found) / level.cutoff;
        level.f_measure = 2.0 * level.precision * level.recall /
                          (level.precision + level.recall);
        curve.levels.push_back(level);
    }
    if (found != total_outliers)
        throw data_error("pr_curve: ranking misses some outliers");
    for (const auto& l : curve.levels)
        curve.max_f = std::max(curve.max_f, l.f_measure);
    curve.precision_at_full_recall = curve.levels.back().precision;
    return curve;
}

ComparisonSummary compare(const std::vector<MethodResult>& reports,
                          const LabelMap& labels) {
    if (reports.empty()) throw data_error("compare: no reports");
    std::set<int> reference;
    for (const auto& [id, l] : labels) reference.insert(id);

    ComparisonSummary summary;
    for (const auto& r : reports) {
        std::set<int> ids(r.ranking.begin(), r.ranking.end());
        if (ids != reference)
            throw data_error("compare: point-id set mismatch for method '" +
                             r.name + "'");
        const PrCurve curve = pr_curve(r.ranking, labels);
        summary.rows.push_back({r.name, curve.max_f,
                                curve.precision_at_full_recall, r.seconds});
    }
    return summary;
}

void write_pr_csv(std::ostream& out, const std::string& method,
                  const PrCurve& curve,
                  const std::vector<std::string>& header_comments) {
    for (const auto& c : header_comments) out << "# " << c << "\n";
    out << "method,recall_level,cutoff,precision,f_measure\n";
    for (const auto& l : curve.levels)
        out << method << "," << format_double(l.recall) << "," << l.cutoff << ","
            << format_double(l.precision) << "," << format_double(l.f_measure)
            << "\n";
}

void write_summary_csv(std::ostream& out, const ComparisonSummary& summary,
                       const std::vector<std::string>& header_comments) {
    for (const auto& c : header_comments) out << "# " << c << "\n";
    out << "method,max_f,precision_at_full_recall,seconds\n";
    for (const auto& r : summary.rows)
        out << r.name << "," << format_double(r.max_f) << ","
            << format_double(r.precision_at_full_recall) << ","
            << format_double(r.seconds) << "\n";
}

}  // namespace kns
