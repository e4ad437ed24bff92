#pragma once

#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "kns/dataset.hpp"

namespace kns {

struct PrLevel {
    double recall = 0.0;
    int cutoff = 0;  // minimal rank position achieving this recall
    double precision = 0.0;
    double f_measure = 0.0;
};

struct PrCurve {
    std::vector<PrLevel> levels;  // one per true outlier, recall 1/T .. 1
    double max_f = 0.0;
    double precision_at_full_recall = 0.0;
};

using LabelMap = std::unordered_map<int, Label>;

LabelMap labels_by_id(const Dataset& ds);

/// Walk the ranking; at the t-th true outlier record recall t/T and
/// precision t/position. Noise-labeled points count as non-outliers.
/// Throws data_error when labels contain no outliers or the ranking does
/// not cover exactly the labeled points.
PrCurve pr_curve(const std::vector<int>& ranking, const LabelMap& labels);

struct MethodResult {
    std::string name;
    std::vector<int> ranking;
    double seconds = 0.0;
};

struct MethodSummary {
    std::string name;
    double max_f = 0.0;
    double precision_at_full_recall = 0.0;
    double seconds = 0.0;
};

struct ComparisonSummary {
    std::vector<MethodSummary> rows;
};

/// Evaluate several rankings against one label set. All rankings must cover
/// the same point-id set.
ComparisonSummary compare(const std::vector<MethodResult>& reports,
                          const LabelMap& labels);

/// Per-level CSV: method,recall_level,cutoff,precision,f_measure.
void write_pr_csv(std::ostream& out, const std::string& method,
                  const PrCurve& curve,
                  const std::vector<std::string>& header_comments = {});

/// Summary CSV: method,max_f,precision_at_full_recall,seconds.
void write_summary_csv(std::ostream& out, const ComparisonSummary& summary,
                       const std::vector<std::string>& header_comments = {});

}  // namespace kns
