#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "kns/dataset.hpp"

namespace kns {

struct LofParams {
    int k_nn = 10;  // Euclidean distance over all dimensions
};

struct LofPointScore {
    int point_id = 0;
    double lrd = 0.0;
    double lof = 0.0;
    int rank = 0;
};

struct LofReport {
    LofParams params;
    std::size_t n = 0;
    std::size_t m = 0;
    double seconds = 0.0;
    std::vector<LofPointScore> points;  // sorted by rank (descending lof)
};

/// Local Outlier Factor with tie-inclusive k-distance neighborhoods.
/// Coincident-duplicate degeneracy is handled by flooring the reach-dist
/// sum at 1e-12, keeping lrd and lof finite.
LofReport lof_score(const Dataset& ds, const LofParams& params);

/// Same report CSV shape as the k-NS detector: point_id,lrd,lof,rank.
void write_lof_csv(std::ostream& out, const LofReport& report,
                   const std::vector<std::string>& header_comments = {});

}  // namespace kns
